//! Benchmark records, example materialization, invalid-regex generation
//! and the success-rate harness.

mod harness;
mod mutate;

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Engine, EngineError};
use crate::evaluation::{consistent, ExampleError, ExampleSet};
use crate::regex::{parse, ParseError, Regex};

pub use harness::{run_harness, HarnessOptions, HarnessReport, HarnessRow, RowStatus, Summary};
pub use mutate::{make_invalid_pairs, EditKind, InvalidPair, MutationEdit, MutationReport, MAX_ATTEMPTS, MAX_EDITS};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid target: {0}")]
    Target(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Examples(#[from] ExampleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub target: String,
    #[serde(default)]
    pub positive: Vec<String>,
    #[serde(default)]
    pub negative: Vec<String>,
    /// The incorrect regex to repair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
}

impl BenchmarkRecord {
    pub fn has_examples(&self) -> bool {
        !self.positive.is_empty() || !self.negative.is_empty()
    }

    pub fn target_regex(&self, engine: &Engine) -> Result<Regex, ParseError> {
        parse(&self.target, engine.alphabet())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedLine {
    /// 1-based.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LoadReport {
    pub records: Vec<BenchmarkRecord>,
    pub skipped: Vec<SkippedLine>,
}

fn check_record(engine: &Engine, rec: &BenchmarkRecord) -> Result<(), String> {
    let target = rec.target_regex(engine).map_err(|e| format!("target: {e}"))?;
    if rec.has_examples() {
        let ex = ExampleSet::new(rec.positive.clone(), rec.negative.clone()).map_err(|e| e.to_string())?;
        ex.check_alphabet(engine.alphabet()).map_err(|e| e.to_string())?;
        match consistent(engine, &target, &ex) {
            Ok(true) => {}
            Ok(false) => return Err("examples disagree with target".into()),
            Err(e) => return Err(format!("target: {e}")),
        }
    }
    Ok(())
}

/// Parse a JSON-lines benchmark. Blank lines are ignored; bad lines are
/// collected in `skipped` instead of failing the load.
pub fn parse_benchmark(engine: &Engine, text: &str) -> LoadReport {
    let mut out = LoadReport::default();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let checked = serde_json::from_str::<BenchmarkRecord>(line)
            .map_err(|e| format!("schema: {e}"))
            .and_then(|rec| check_record(engine, &rec).map(|_| rec));
        match checked {
            Ok(rec) => out.records.push(rec),
            Err(reason) => out.skipped.push(SkippedLine { line: i + 1, reason }),
        }
    }
    out
}

pub fn load_benchmark(engine: &Engine, path: &Path) -> Result<LoadReport, CorpusError> {
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_benchmark(engine, &text))
}

/// The record's own examples when it has any, otherwise `k_pos` + `k_neg`
/// strings sampled from the target.
pub fn materialize_examples(
    engine: &Engine,
    rec: &BenchmarkRecord,
    k_pos: usize,
    k_neg: usize,
    max_len: usize,
    seed: u64,
) -> Result<ExampleSet, CorpusError> {
    if rec.has_examples() {
        return Ok(ExampleSet::new(rec.positive.clone(), rec.negative.clone())?);
    }
    let target = rec.target_regex(engine)?;
    let pos = engine.sample_positive(&target, k_pos, max_len, seed)?;
    let neg = engine.sample_negative(&target, k_neg, max_len, seed)?;
    Ok(ExampleSet::new(pos, neg)?)
}
