use std::time::Instant;

use thiserror::Error;

use super::external::{invoke_external, ExternalTool, ToolRequest};
use super::{syncorr, Outcome, RepairConfig, RepairReport, Source, TrajectoryPoint};
use crate::engine::Engine;
use crate::evaluation::{consistent, fitness, ExampleSet};
use crate::regex::Regex;

#[derive(Debug, Clone)]
pub enum RepairInput {
    Candidate(Regex),
    Description(String),
}

#[derive(Debug, Error)]
pub enum TransRegexError {
    #[error("a description needs a synthesizer to turn it into a candidate")]
    NoSynthesizer,
}

fn empty_report(original: Option<String>) -> RepairReport {
    RepairReport {
        outcome: Outcome::Unrepaired { original },
        source: Source::None,
        initial_fitness: None,
        final_fitness: None,
        trajectory: Vec::new(),
        steps: Vec::new(),
        stages: Vec::new(),
        tool_errors: Vec::new(),
        success_vs_target: None,
        elapsed_ms: 0,
    }
}

/// Synthesize if needed, return a consistent candidate as is, otherwise
/// repair by search and finally hand over to the fallback tool.
pub fn transregex(
    engine: &Engine,
    input: &RepairInput,
    ex: &ExampleSet,
    synthesizer: Option<&ExternalTool>,
    fallback: Option<&ExternalTool>,
    cfg: &RepairConfig,
) -> Result<RepairReport, TransRegexError> {
    let start = Instant::now();
    let finish = |mut rep: RepairReport| {
        rep.elapsed_ms = start.elapsed().as_millis() as u64;
        rep
    };

    let (candidate, description) = match input {
        RepairInput::Candidate(r) => (r.clone(), None),
        RepairInput::Description(d) => {
            let tool = synthesizer.ok_or(TransRegexError::NoSynthesizer)?;
            match invoke_external(tool, &ToolRequest::new(None, Some(d), ex), engine.alphabet()) {
                Ok(r) => (r, Some(d.as_str())),
                Err(e) => {
                    let mut rep = empty_report(None);
                    rep.tool_errors.push(format!("synthesizer: {e}"));
                    return Ok(finish(rep));
                }
            }
        }
    };
    let text = candidate.to_string();

    if consistent(engine, &candidate, ex).unwrap_or(false) {
        let f = fitness(engine, &candidate, ex).ok();
        let mut rep = empty_report(Some(text.clone()));
        rep.outcome = Outcome::Repaired { regex: text.clone() };
        rep.source = Source::Input;
        rep.initial_fitness = f;
        rep.final_fitness = f;
        if let Some(f) = f {
            rep.trajectory.push(TrajectoryPoint {
                iteration: 0,
                l_max: cfg.l_max_range.first().copied().unwrap_or(0),
                fitness: f,
                regex: text,
            });
        }
        return Ok(finish(rep));
    }

    let mut rep = syncorr(engine, &candidate, ex, cfg);
    if rep.outcome.repaired().is_some() || fallback.is_none() {
        return Ok(finish(rep));
    }
    let tool = fallback.expect("checked above");
    match invoke_external(tool, &ToolRequest::new(Some(&candidate), description, ex), engine.alphabet()) {
        Ok(r) => {
            // Never trust the fallback blindly.
            if consistent(engine, &r, ex).unwrap_or(false) {
                rep.outcome = Outcome::Repaired { regex: r.to_string() };
                rep.source = Source::Fallback;
                rep.final_fitness = fitness(engine, &r, ex).ok();
            } else {
                rep.tool_errors.push(format!("fallback: output {r} is not consistent with the examples"));
            }
        }
        Err(e) => rep.tool_errors.push(format!("fallback: {e}")),
    }
    Ok(finish(rep))
}
