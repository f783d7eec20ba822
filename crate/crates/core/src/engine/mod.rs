//! Membership, DFA construction, equivalence and sampling, all driven by
//! Brzozowski derivatives extended to intersection and complement.

mod dfa;
mod sample;
mod symset;
mod term;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dfa::Dfa;

use crate::alphabet::Alphabet;
use crate::regex::Regex;
use term::{TermId, TermPool, EMPTY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("character {ch:?} is not in the alphabet")]
    AlphabetViolation { ch: char },
    #[error("automaton exceeds {max_states} states")]
    BudgetExceeded { max_states: usize },
    #[error("quantifier bound {bound} exceeds limit {limit}")]
    QuantifierTooLarge { bound: u32, limit: u32 },
    #[error("language is empty")]
    EmptyLanguage,
    #[error("language has only {} members within the length bound", found.len())]
    InsufficientLanguage { found: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineBudget {
    pub max_states: usize,
    pub max_quantifier_bound: u32,
}

impl Default for EngineBudget {
    fn default() -> Self {
        EngineBudget {
            max_states: 10_000,
            max_quantifier_bound: 1_000,
        }
    }
}

/// Default length bound for sampled examples.
pub const DEFAULT_MAX_LEN: usize = 30;

#[derive(Debug, Clone, Default)]
pub struct Engine {
    alphabet: Alphabet,
    budget: EngineBudget,
}

impl Engine {
    pub fn new(alphabet: Alphabet, budget: EngineBudget) -> Self {
        Engine { alphabet, budget }
    }

    pub fn with_alphabet(alphabet: Alphabet) -> Self {
        Self::new(alphabet, EngineBudget::default())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn budget(&self) -> &EngineBudget {
        &self.budget
    }

    fn pool_for(&self, r: &Regex) -> Result<(TermPool, TermId), EngineError> {
        let mut pool = TermPool::new(self.alphabet.len());
        let root = pool.from_regex(r, &self.alphabet, &self.budget)?;
        Ok((pool, root))
    }

    /// A reusable matcher; derivatives are cached across calls.
    pub fn matcher(&self, r: &Regex) -> Result<Matcher<'_>, EngineError> {
        let (pool, root) = self.pool_for(r)?;
        Ok(Matcher {
            engine: self,
            pool,
            root,
        })
    }

    pub fn matches(&self, r: &Regex, w: &str) -> Result<bool, EngineError> {
        self.matcher(r)?.matches(w)
    }

    /// The residual of `r` after reading `c`, in normalized form.
    pub fn derivative(&self, r: &Regex, c: char) -> Result<Regex, EngineError> {
        let (mut pool, root) = self.pool_for(r)?;
        let sym = self
            .alphabet
            .index_of(c)
            .ok_or(EngineError::AlphabetViolation { ch: c })?;
        let d = pool.derivative(root, sym as u32);
        Ok(pool.to_regex(d, &self.alphabet))
    }

    pub fn compile_dfa(&self, r: &Regex) -> Result<Dfa, EngineError> {
        let (mut pool, root) = self.pool_for(r)?;
        Dfa::build(&mut pool, root, &self.alphabet, &self.budget)
    }

    pub fn equivalent(&self, r1: &Regex, r2: &Regex) -> Result<bool, EngineError> {
        let d1 = self.compile_dfa(r1)?;
        let d2 = self.compile_dfa(r2)?;
        Ok(d1.equivalent(&d2))
    }

    pub fn is_empty(&self, r: &Regex) -> Result<bool, EngineError> {
        Ok(self.compile_dfa(r)?.is_empty())
    }

    /// `k` distinct members of `L(r)` of length at most `max_len`.
    pub fn sample_positive(
        &self,
        r: &Regex,
        k: usize,
        max_len: usize,
        seed: u64,
    ) -> Result<Vec<String>, EngineError> {
        let dfa = self.compile_dfa(r)?;
        sample::sample_positive(&dfa, k, max_len, seed)
    }

    /// `k` distinct strings outside `L(r)` of length at most `max_len`.
    pub fn sample_negative(
        &self,
        r: &Regex,
        k: usize,
        max_len: usize,
        seed: u64,
    ) -> Result<Vec<String>, EngineError> {
        let dfa = self.compile_dfa(r)?;
        sample::sample_negative(&dfa, k, max_len, seed)
    }
}

/// Lazy derivative matcher for a single regex.
pub struct Matcher<'e> {
    engine: &'e Engine,
    pool: TermPool,
    root: TermId,
}

impl Matcher<'_> {
    pub fn matches(&mut self, w: &str) -> Result<bool, EngineError> {
        let alphabet = &self.engine.alphabet;
        let mut t = self.root;
        for c in w.chars() {
            let sym = alphabet
                .index_of(c)
                .ok_or(EngineError::AlphabetViolation { ch: c })?;
            if t != EMPTY {
                t = self.pool.derivative(t, sym as u32);
            }
        }
        // Term growth is bounded by the inputs seen; the cap guards against
        // pathological counters.
        let cap = self.engine.budget.max_states.saturating_mul(64);
        if self.pool.len() > cap {
            return Err(EngineError::BudgetExceeded {
                max_states: self.engine.budget.max_states,
            });
        }
        Ok(self.pool.nullable(t))
    }
}
