use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::{CharClass, Regex, RepeatHint};
use crate::alphabet::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid syntax at position {position}: {reason}")]
    InvalidSyntax { position: usize, reason: String },
    #[error("character {ch:?} at position {position} is not in the alphabet")]
    AlphabetViolation { ch: char, position: usize },
}

/// Unescaped `∅` denotes the empty language.
pub const EMPTY_SYMBOL: char = '∅';

pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    let r = p.alt()?;
    if p.pos < p.chars.len() {
        let c = p.chars[p.pos];
        return Err(p.syntax(if c == ')' {
            "unbalanced ')'".to_string()
        } else {
            format!("unexpected {c:?}")
        }));
    }
    Ok(r)
}

pub fn validate(text: &str, alphabet: &Alphabet) -> bool {
    parse(text, alphabet).is_ok()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn syntax(&self, reason: impl Into<String>) -> ParseError {
        ParseError::InvalidSyntax {
            position: self.pos,
            reason: reason.into(),
        }
    }

    fn member(&self, c: char, position: usize) -> Result<char, ParseError> {
        if self.alphabet.contains(c) {
            Ok(c)
        } else {
            Err(ParseError::AlphabetViolation { ch: c, position })
        }
    }

    fn alt(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.and()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            r = Regex::alt(r, self.and()?);
        }
        Ok(r)
    }

    fn and(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.concat()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            r = Regex::and(r, self.concat()?);
        }
        Ok(r)
    }

    fn concat(&mut self) -> Result<Regex, ParseError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '&' | ')') {
                break;
            }
            items.push(self.postfix()?);
        }
        Ok(Regex::concat_all(items))
    }

    fn postfix(&mut self) -> Result<Regex, ParseError> {
        let r = self.unary()?;
        let Some((min, max, hint)) = self.quantifier()? else {
            return Ok(r);
        };
        if matches!(self.peek(), Some('?' | '*' | '+' | '{')) {
            return Err(self.syntax("stacked quantifier"));
        }
        Ok(Regex::repeat_with(r, min, max, hint))
    }

    fn unary(&mut self) -> Result<Regex, ParseError> {
        if self.peek() == Some('~') {
            self.pos += 1;
            if matches!(self.peek(), None | Some('|' | '&' | ')')) {
                return Err(self.syntax("'~' needs an operand"));
            }
            return Ok(Regex::not(self.unary()?));
        }
        self.atom()
    }

    fn quantifier(&mut self) -> Result<Option<(u32, Option<u32>, RepeatHint)>, ParseError> {
        let q = match self.peek() {
            Some('?') => (0, Some(1), RepeatHint::Optional),
            Some('*') => (0, None, RepeatHint::Star),
            Some('+') => (1, None, RepeatHint::Plus),
            Some('{') => return self.braces().map(Some),
            _ => return Ok(None),
        };
        self.pos += 1;
        Ok(Some(q))
    }

    fn braces(&mut self) -> Result<(u32, Option<u32>, RepeatHint), ParseError> {
        let open = self.pos;
        self.pos += 1;
        let min = self
            .number()?
            .ok_or_else(|| self.syntax("expected a number after '{'"))?;
        let result = match self.peek() {
            Some('}') => (min, Some(min), RepeatHint::Exact),
            Some(',') => {
                self.pos += 1;
                match self.number()? {
                    Some(max) if max < min => {
                        return Err(ParseError::InvalidSyntax {
                            position: open,
                            reason: format!("quantifier bounds out of order: {{{min},{max}}}"),
                        })
                    }
                    Some(max) => (min, Some(max), RepeatHint::Range),
                    None => (min, None, RepeatHint::AtLeast),
                }
            }
            _ => return Err(self.syntax("malformed quantifier")),
        };
        if self.peek() != Some('}') {
            return Err(self.syntax("malformed quantifier"));
        }
        self.pos += 1;
        Ok(result)
    }

    fn number(&mut self) -> Result<Option<u32>, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<u32>()
            .map(Some)
            .map_err(|_| ParseError::InvalidSyntax {
                position: start,
                reason: "quantifier bound too large".to_string(),
            })
    }

    fn atom(&mut self) -> Result<Regex, ParseError> {
        let position = self.pos;
        let Some(c) = self.peek() else {
            return Err(self.syntax("unexpected end of input"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("missing ')'"));
                }
                self.pos += 1;
                Ok(Regex::group(inner))
            }
            '[' => self.class(),
            '.' => {
                self.pos += 1;
                Ok(Regex::Class(CharClass::dot(self.alphabet)))
            }
            EMPTY_SYMBOL => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            '\\' => {
                let c = self.escape()?;
                Ok(Regex::Literal(self.member(c, position)?))
            }
            '?' | '*' | '+' | '{' => Err(self.syntax("quantifier without operand")),
            '}' | ']' | ')' => Err(self.syntax(format!("unexpected {c:?}"))),
            _ => {
                self.pos += 1;
                Ok(Regex::Literal(self.member(c, position)?))
            }
        }
    }

    /// Consumes `\x` and returns `x`. Only non-alphanumeric characters may be
    /// escaped.
    fn escape(&mut self) -> Result<char, ParseError> {
        self.pos += 1;
        match self.peek() {
            None => Err(self.syntax("dangling '\\'")),
            Some(c) if c.is_alphanumeric() => Err(self.syntax(format!("unknown escape \\{c}"))),
            Some(c) => {
                self.pos += 1;
                Ok(c)
            }
        }
    }

    fn class_char(&mut self) -> Result<(char, usize), ParseError> {
        let position = self.pos;
        match self.peek() {
            None => Err(self.syntax("unterminated character class")),
            Some('\\') => Ok((self.escape()?, position)),
            Some(c) => {
                self.pos += 1;
                Ok((c, position))
            }
        }
    }

    fn class(&mut self) -> Result<Regex, ParseError> {
        let open = self.pos;
        self.pos += 1;
        let negated = self.peek() == Some('^');
        if negated {
            self.pos += 1;
        }
        let mut members = BTreeSet::new();
        loop {
            match self.peek() {
                None => return Err(self.syntax("unterminated character class")),
                Some(']') => break,
                _ => {}
            }
            let (lo, lo_pos) = self.class_char()?;
            let is_range = self.peek() == Some('-')
                && !matches!(self.chars.get(self.pos + 1), None | Some(']'));
            if !is_range {
                members.insert(self.member(lo, lo_pos)?);
                continue;
            }
            self.pos += 1;
            let (hi, hi_pos) = self.class_char()?;
            if hi < lo {
                return Err(ParseError::InvalidSyntax {
                    position: lo_pos,
                    reason: format!("reversed range {lo}-{hi}"),
                });
            }
            self.member(lo, lo_pos)?;
            self.member(hi, hi_pos)?;
            members.extend((lo..=hi).filter(|&c| self.alphabet.contains(c)));
        }
        self.pos += 1;
        if members.is_empty() {
            return Err(ParseError::InvalidSyntax {
                position: open,
                reason: "empty character class".to_string(),
            });
        }
        Ok(Regex::Class(CharClass {
            members,
            negated,
            dot: false,
        }))
    }
}
