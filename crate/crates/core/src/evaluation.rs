//! Example sets, the f fitness measure and the consistency predicate.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::engine::{Engine, EngineError};
use crate::regex::Regex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("example set has no positive and no negative examples")]
    Empty,
    #[error("{0:?} is both a positive and a negative example")]
    Overlap(String),
    #[error("example {example:?} uses {ch:?}, which is not in the alphabet")]
    AlphabetViolation { example: String, ch: char },
}

#[derive(Deserialize)]
struct RawExamples {
    #[serde(default)]
    positive: Vec<String>,
    #[serde(default)]
    negative: Vec<String>,
}

/// Positive and negative strings. Duplicates are dropped on construction,
/// keeping first occurrences in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawExamples")]
pub struct ExampleSet {
    positive: Vec<String>,
    negative: Vec<String>,
}

impl TryFrom<RawExamples> for ExampleSet {
    type Error = ExampleError;

    fn try_from(raw: RawExamples) -> Result<Self, Self::Error> {
        ExampleSet::new(raw.positive, raw.negative)
    }
}

fn dedup(items: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

impl ExampleSet {
    pub fn new(positive: Vec<String>, negative: Vec<String>) -> Result<Self, ExampleError> {
        let positive = dedup(positive);
        let negative = dedup(negative);
        if positive.is_empty() && negative.is_empty() {
            return Err(ExampleError::Empty);
        }
        let pos: HashSet<&String> = positive.iter().collect();
        if let Some(s) = negative.iter().find(|s| pos.contains(s)) {
            return Err(ExampleError::Overlap(s.clone()));
        }
        Ok(ExampleSet { positive, negative })
    }

    pub fn from_strs(positive: &[&str], negative: &[&str]) -> Result<Self, ExampleError> {
        Self::new(
            positive.iter().map(|s| s.to_string()).collect(),
            negative.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<(), ExampleError> {
        for s in self.positive.iter().chain(&self.negative) {
            if let Some(ch) = alphabet.first_foreign(s) {
                return Err(ExampleError::AlphabetViolation {
                    example: s.clone(),
                    ch,
                });
            }
        }
        Ok(())
    }

    pub fn positive(&self) -> &[String] {
        &self.positive
    }

    pub fn negative(&self) -> &[String] {
        &self.negative
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Agreement score in [-1, 1], kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fitness {
    #[serde(serialize_with = "ratio_as_string")]
    pub value: Ratio<i64>,
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

fn ratio_as_string<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Fitness {
    pub fn from_counts(tp: usize, tn: usize, fp: usize, fn_: usize) -> Self {
        let total = (tp + tn + fp + fn_) as i64;
        assert!(total > 0, "fitness over an empty example set");
        let num = tp as i64 + tn as i64 - fp as i64 - fn_ as i64;
        Fitness {
            value: Ratio::new(num, total),
            tp,
            tn,
            fp,
            fn_,
        }
    }

    /// Score given to candidates the engine cannot evaluate.
    pub fn worst() -> Self {
        Fitness {
            value: Ratio::from_integer(-1),
            tp: 0,
            tn: 0,
            fp: 0,
            fn_: 0,
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.value == Ratio::from_integer(1)
    }

    pub fn to_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (tp {} tn {} fp {} fn {})",
            self.value, self.tp, self.tn, self.fp, self.fn_
        )
    }
}

pub fn fitness(engine: &Engine, r: &Regex, ex: &ExampleSet) -> Result<Fitness, EngineError> {
    let mut m = engine.matcher(r)?;
    let mut tp = 0;
    for w in &ex.positive {
        tp += m.matches(w)? as usize;
    }
    let mut fp = 0;
    for w in &ex.negative {
        fp += m.matches(w)? as usize;
    }
    Ok(Fitness::from_counts(
        tp,
        ex.negative.len() - fp,
        fp,
        ex.positive.len() - tp,
    ))
}

/// Every positive accepted and every negative rejected.
pub fn consistent(engine: &Engine, r: &Regex, ex: &ExampleSet) -> Result<bool, EngineError> {
    let mut m = engine.matcher(r)?;
    for w in &ex.positive {
        if !m.matches(w)? {
            return Ok(false);
        }
    }
    for w in &ex.negative {
        if m.matches(w)? {
            return Ok(false);
        }
    }
    Ok(true)
}
