//! The extended regex language: AST, parser and canonical printer.

mod ast;
mod parse;
mod print;

pub use ast::{CharClass, Regex, RegexMetrics, RepeatHint};
pub use parse::{parse, validate, ParseError, EMPTY_SYMBOL};
pub(crate) use print::write_class;
