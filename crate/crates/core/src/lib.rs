//! Example-guided repair of extended regular expressions by neighborhood
//! search over abstracted regexes.

pub mod abstraction;
pub mod alphabet;
pub mod corpus;
pub mod engine;
pub mod evaluation;
pub mod neighborhood;
pub mod regex;
pub mod syncorr;

pub use alphabet::Alphabet;
pub use engine::{Dfa, Engine, EngineBudget, EngineError};
pub use evaluation::{consistent, fitness, ExampleSet, Fitness};
pub use regex::{parse, validate, ParseError, Regex};
pub use syncorr::{syncorr, transregex, RepairConfig, RepairReport};
