//! Neighborhood-search repair and the orchestration around it.

mod external;
mod search;
mod transregex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Engine, EngineBudget, EngineError};
use crate::evaluation::{consistent, ExampleSet, Fitness};
use crate::neighborhood::{TransformationKind, DEFAULT_CAP};
use crate::regex::Regex;

pub use external::{invoke_external, ExternalTool, ToolError, ToolRequest, ToolRole};
pub use search::syncorr;
pub use transregex::{transregex, RepairInput, TransRegexError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("l_max_range must be non-empty")]
    EmptyLevels,
    #[error("l_max {0} is not in 0..=2")]
    BadLevel(u8),
    #[error("l_max {0} appears twice")]
    RepeatedLevel(u8),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RepairConfig {
    /// Abstraction levels to search, in order.
    pub l_max_range: Vec<u8>,
    pub max_iterations: usize,
    pub stage_time_budget_ms: u64,
    pub global_time_budget_ms: u64,
    pub engine: EngineBudget,
    pub neighborhood_cap: usize,
    pub kinds: Vec<TransformationKind>,
    /// Seed for example sampling where the caller needs it.
    pub seed: u64,
}

impl Default for RepairConfig {
    fn default() -> Self {
        RepairConfig {
            l_max_range: vec![0, 1, 2],
            max_iterations: 50,
            stage_time_budget_ms: 10_000,
            global_time_budget_ms: 60_000,
            engine: EngineBudget::default(),
            neighborhood_cap: DEFAULT_CAP,
            kinds: TransformationKind::ALL.to_vec(),
            seed: 0,
        }
    }
}

impl RepairConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.l_max_range.is_empty() {
            return Err(ConfigError::EmptyLevels);
        }
        let mut seen = [false; 3];
        for &l in &self.l_max_range {
            if l > 2 {
                return Err(ConfigError::BadLevel(l));
            }
            if std::mem::replace(&mut seen[l as usize], true) {
                return Err(ConfigError::RepeatedLevel(l));
            }
        }
        for (name, v) in [
            ("max_iterations", self.max_iterations as u64),
            ("stage_time_budget_ms", self.stage_time_budget_ms),
            ("global_time_budget_ms", self.global_time_budget_ms),
            ("neighborhood_cap", self.neighborhood_cap as u64),
            ("engine.max_states", self.engine.max_states as u64),
            ("engine.max_quantifier_bound", self.engine.max_quantifier_bound as u64),
        ] {
            if v == 0 {
                return Err(ConfigError::NonPositive(name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Repaired { regex: String },
    Unrepaired { original: Option<String> },
}

impl Outcome {
    pub fn repaired(&self) -> Option<&str> {
        match self {
            Outcome::Repaired { regex } => Some(regex),
            Outcome::Unrepaired { .. } => None,
        }
    }
}

/// Which part of the pipeline produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Input,
    Syncorr,
    Fallback,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Repaired,
    LocalOptimum,
    MaxIterations,
    StageTimeout,
    GlobalTimeout,
    EmptyNeighborhood,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub iteration: usize,
    pub l_max: u8,
    pub fitness: Fitness,
    pub regex: String,
}

/// One accepted hill-climbing step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step {
    pub l_max: u8,
    pub iteration: usize,
    pub kind: TransformationKind,
    pub site: Vec<usize>,
    pub detail: String,
    pub abstract_before: String,
    pub abstract_after: String,
    pub regex_before: String,
    pub regex: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageReport {
    pub l_max: u8,
    pub iterations: usize,
    pub neighbors_evaluated: usize,
    pub stop: StopReason,
    pub best: String,
    pub best_fitness: Fitness,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepairReport {
    pub outcome: Outcome,
    pub source: Source,
    pub initial_fitness: Option<Fitness>,
    pub final_fitness: Option<Fitness>,
    pub trajectory: Vec<TrajectoryPoint>,
    pub steps: Vec<Step>,
    pub stages: Vec<StageReport>,
    pub tool_errors: Vec<String>,
    pub success_vs_target: Option<bool>,
    pub elapsed_ms: u64,
}

impl RepairReport {
    /// Consistent with the examples and equivalent to `target`.
    pub fn classify(&mut self, engine: &Engine, target: &Regex, ex: &ExampleSet) -> Result<bool, EngineError> {
        let ok = match self.outcome.repaired() {
            Some(s) => match crate::regex::parse(s, engine.alphabet()) {
                Ok(r) => consistent(engine, &r, ex)? && engine.equivalent(&r, target)?,
                Err(_) => false,
            },
            None => false,
        };
        self.success_vs_target = Some(ok);
        Ok(ok)
    }
}
