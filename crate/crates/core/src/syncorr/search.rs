use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{Outcome, RepairConfig, RepairReport, Source, StageReport, Step, StopReason, TrajectoryPoint};
use crate::abstraction::preprocess;
use crate::engine::Engine;
use crate::evaluation::{fitness, ExampleSet, Fitness};
use crate::neighborhood::neighbors;
use crate::regex::{parse, Regex};

struct Scored {
    regex: Regex,
    text: String,
    size: usize,
    fitness: Fitness,
    member: usize,
}

/// Greater fitness first, then smaller AST, then the smaller string.
fn better(a: &Scored, b: &Scored) -> bool {
    (a.fitness.value, std::cmp::Reverse(a.size), std::cmp::Reverse(&a.text))
        > (b.fitness.value, std::cmp::Reverse(b.size), std::cmp::Reverse(&b.text))
}

fn score(engine: &Engine, r: &Regex, ex: &ExampleSet) -> Fitness {
    fitness(engine, r, ex).unwrap_or_else(|_| Fitness::worst())
}

fn ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

/// Hill climbing over abstract neighborhoods, once per abstraction level.
/// Returns as soon as a neighbor reaches f = 1.
pub fn syncorr(engine: &Engine, r0: &Regex, ex: &ExampleSet, cfg: &RepairConfig) -> RepairReport {
    let start = Instant::now();
    let global = Duration::from_millis(cfg.global_time_budget_ms);
    let stage_budget = Duration::from_millis(cfg.stage_time_budget_ms);
    let f0 = score(engine, r0, ex);
    let text0 = r0.to_string();
    let mut report = RepairReport {
        outcome: Outcome::Unrepaired {
            original: Some(text0.clone()),
        },
        source: Source::None,
        initial_fitness: Some(f0),
        final_fitness: Some(f0),
        trajectory: vec![TrajectoryPoint {
            iteration: 0,
            l_max: cfg.l_max_range.first().copied().unwrap_or(0),
            fitness: f0,
            regex: text0.clone(),
        }],
        steps: Vec::new(),
        stages: Vec::new(),
        tool_errors: Vec::new(),
        success_vs_target: None,
        elapsed_ms: 0,
    };
    if f0.is_perfect() {
        report.outcome = Outcome::Repaired { regex: text0 };
        report.source = Source::Syncorr;
        report.elapsed_ms = ms(start.elapsed());
        return report;
    }

    let mut cache: HashMap<String, Fitness> = HashMap::new();
    cache.insert(text0.clone(), f0);

    for &l_max in &cfg.l_max_range {
        let stage_start = Instant::now();
        let mut current = r0.clone();
        let mut current_text = text0.clone();
        let mut f = f0;
        let mut stop = StopReason::MaxIterations;
        let mut iterations = 0;
        let mut evaluated = 0;
        for iteration in 1..=cfg.max_iterations {
            if start.elapsed() >= global {
                stop = StopReason::GlobalTimeout;
                break;
            }
            if stage_start.elapsed() >= stage_budget {
                stop = StopReason::StageTimeout;
                break;
            }
            iterations = iteration;
            // Re-abstract from the printed form so every iteration starts
            // from a parser-shaped tree.
            let reparsed = parse(&current_text, engine.alphabet()).unwrap_or_else(|_| current.clone());
            let abs = preprocess(&reparsed, l_max, engine.alphabet());
            let hood = neighbors(&abs, ex, &cfg.kinds, engine, cfg.neighborhood_cap);
            if hood.is_empty() {
                stop = StopReason::EmptyNeighborhood;
                break;
            }

            let mut firsts: HashMap<String, usize> = HashMap::new();
            let mut pending: Vec<(String, Regex, usize)> = Vec::new();
            for (i, m) in hood.members.iter().enumerate() {
                let r = hood.concrete(m);
                let text = r.to_string();
                if text == current_text || firsts.contains_key(&text) {
                    continue;
                }
                firsts.insert(text.clone(), i);
                pending.push((text, r, i));
            }
            evaluated += pending.len();
            let fresh: Vec<(String, Fitness)> = pending
                .par_iter()
                .filter(|(t, _, _)| !cache.contains_key(t))
                .map(|(t, r, _)| (t.clone(), score(engine, r, ex)))
                .collect();
            cache.extend(fresh);

            let mut best: Option<Scored> = None;
            for (text, regex, member) in pending {
                let cand = Scored {
                    size: regex.ast_size(),
                    fitness: cache[&text],
                    regex,
                    text,
                    member,
                };
                if best.as_ref().is_none_or(|b| better(&cand, b)) {
                    best = Some(cand);
                }
            }
            let Some(best) = best else {
                stop = StopReason::EmptyNeighborhood;
                break;
            };
            if best.fitness.value <= f.value {
                stop = StopReason::LocalOptimum;
                break;
            }
            let m = &hood.members[best.member];
            report.steps.push(Step {
                l_max,
                iteration,
                kind: m.kind,
                site: m.site.clone(),
                detail: m.detail.clone(),
                abstract_before: abs.to_string(),
                abstract_after: m.node.to_string(),
                regex_before: current_text.clone(),
                regex: best.text.clone(),
            });
            report.trajectory.push(TrajectoryPoint {
                iteration,
                l_max,
                fitness: best.fitness,
                regex: best.text.clone(),
            });
            current = best.regex;
            current_text = best.text;
            f = best.fitness;
            if f.is_perfect() {
                stop = StopReason::Repaired;
                break;
            }
        }
        report.stages.push(StageReport {
            l_max,
            iterations,
            neighbors_evaluated: evaluated,
            stop,
            best: current_text.clone(),
            best_fitness: f,
            elapsed_ms: ms(stage_start.elapsed()),
        });
        if stop == StopReason::Repaired {
            report.outcome = Outcome::Repaired { regex: current_text };
            report.source = Source::Syncorr;
            report.final_fitness = Some(f);
            break;
        }
        if stop == StopReason::GlobalTimeout {
            break;
        }
    }
    report.elapsed_ms = ms(start.elapsed());
    report
}
