use std::fmt::{self, Write};

use super::ast::{CharClass, Regex, RepeatHint};
use super::parse::EMPTY_SYMBOL;

const ALT: u8 = 0;
const AND: u8 = 1;
const CONCAT: u8 = 2;
const REPEAT: u8 = 3;
const NOT: u8 = 4;
const ATOM: u8 = 5;

fn precedence(r: &Regex) -> u8 {
    match r {
        Regex::Alt(..) => ALT,
        Regex::And(..) => AND,
        Regex::Concat(..) => CONCAT,
        Regex::Const(s) if s.chars().count() > 1 => CONCAT,
        Regex::Repeat { .. } => REPEAT,
        Regex::Not(_) => NOT,
        _ => ATOM,
    }
}

fn is_special(c: char) -> bool {
    matches!(
        c,
        '|' | '&' | '~' | '(' | ')' | '[' | ']' | '{' | '}' | '?' | '*' | '+' | '.' | '\\'
    ) || c == EMPTY_SYMBOL
}

fn write_literal(out: &mut impl Write, c: char) -> fmt::Result {
    if is_special(c) {
        out.write_char('\\')?;
    }
    out.write_char(c)
}

fn write_class_char(out: &mut impl Write, c: char) -> fmt::Result {
    if matches!(c, ']' | '[' | '\\' | '^' | '-') {
        out.write_char('\\')?;
    }
    out.write_char(c)
}

pub(crate) fn write_class(out: &mut impl Write, class: &CharClass) -> fmt::Result {
    if class.is_dot() {
        return out.write_char('.');
    }
    out.write_char('[')?;
    if class.negated {
        out.write_char('^')?;
    }
    let members: Vec<char> = class.members.iter().copied().collect();
    let mut i = 0;
    while i < members.len() {
        let mut j = i;
        while j + 1 < members.len() && members[j + 1] as u32 == members[j] as u32 + 1 {
            j += 1;
        }
        if j - i >= 2 {
            write_class_char(out, members[i])?;
            out.write_char('-')?;
            write_class_char(out, members[j])?;
        } else {
            for &c in &members[i..=j] {
                write_class_char(out, c)?;
            }
        }
        i = j + 1;
    }
    out.write_char(']')
}

fn write_quantifier(out: &mut impl Write, min: u32, max: Option<u32>, hint: RepeatHint) -> fmt::Result {
    match (hint, max) {
        (RepeatHint::Optional, _) => out.write_char('?'),
        (RepeatHint::Star, _) => out.write_char('*'),
        (RepeatHint::Plus, _) => out.write_char('+'),
        (RepeatHint::Exact, _) => write!(out, "{{{min}}}"),
        (_, None) => write!(out, "{{{min},}}"),
        (_, Some(max)) => write!(out, "{{{min},{max}}}"),
    }
}

/// `eps_bare`: ε may print as nothing here (top level or a `|`/`&` operand).
fn write(out: &mut impl Write, r: &Regex, min_prec: u8, eps_bare: bool) -> fmt::Result {
    if precedence(r) < min_prec {
        out.write_char('(')?;
        write(out, r, ALT, true)?;
        return out.write_char(')');
    }
    match r {
        Regex::Empty => out.write_char(EMPTY_SYMBOL),
        Regex::Epsilon if eps_bare => Ok(()),
        Regex::Epsilon => out.write_str("()"),
        Regex::Literal(c) => write_literal(out, *c),
        Regex::Class(class) => write_class(out, class),
        Regex::Const(s) => s.chars().try_for_each(|c| write_literal(out, c)),
        Regex::Concat(a, b) => {
            write(out, a, CONCAT, false)?;
            write(out, b, REPEAT, false)
        }
        Regex::Alt(a, b) => {
            write(out, a, ALT, true)?;
            out.write_char('|')?;
            write(out, b, AND, true)
        }
        Regex::And(a, b) => {
            write(out, a, AND, true)?;
            out.write_char('&')?;
            write(out, b, CONCAT, true)
        }
        Regex::Not(a) => {
            out.write_char('~')?;
            write(out, a, NOT, false)
        }
        Regex::Repeat { child, min, max, hint } => {
            write(out, child, NOT, false)?;
            write_quantifier(out, *min, *max, *hint)
        }
        Regex::Group(a) => {
            out.write_char('(')?;
            write(out, a, ALT, true)?;
            out.write_char(')')
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write(f, self, ALT, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::regex::parse;

    fn round(s: &str) -> String {
        parse(s, &Alphabet::default()).unwrap().to_string()
    }

    #[test]
    fn sugar_is_preserved() {
        assert_eq!(Regex::star(Regex::literal('a')).to_string(), "a*");
        assert_eq!(
            Regex::repeat_with(Regex::literal('a'), 3, Some(3), RepeatHint::Exact).to_string(),
            "a{3}"
        );
        assert_eq!(
            Regex::repeat_with(Regex::literal('a'), 3, Some(3), RepeatHint::Range).to_string(),
            "a{3,3}"
        );
    }

    #[test]
    fn benchmark_regexes_print_back_verbatim() {
        for s in [
            "[A-Za-z]{2,3}[a-z]{3}[A-Z]{3,4}",
            "[AEIOUaeiou].*[0-9]{7,}.*",
            "([AEIOUaeiou].*[0-9].*){7,}",
            ".{6,8}&(.*[A-Za-z].*)",
            "([A-Z]|[a-z]){1,}&.{6,8}&(.*([A-Z]|[a-z]).*)",
            "[A-Z]{3,}[0-9]{3,}(N|g)[A-Za-z]{2,4}",
            "ab{1,3}",
            "a|",
            "~(a)b?c+",
            "[^\\]x]\\.",
        ] {
            assert_eq!(round(s), s);
        }
    }

    #[test]
    fn minimal_parentheses_for_built_trees() {
        let a = || Regex::literal('a');
        let b = || Regex::literal('b');
        assert_eq!(Regex::alt(a(), Regex::concat(a(), b())).to_string(), "a|ab");
        assert_eq!(Regex::concat(Regex::alt(a(), b()), a()).to_string(), "(a|b)a");
        assert_eq!(Regex::star(Regex::concat(a(), b())).to_string(), "(ab)*");
        assert_eq!(Regex::not(Regex::star(a())).to_string(), "~(a*)");
        assert_eq!(Regex::star(Regex::not(a())).to_string(), "~a*");
        assert_eq!(Regex::star(Regex::Const("ab".into())).to_string(), "(ab)*");
        assert_eq!(Regex::concat(a(), Regex::concat(a(), b())).to_string(), "a(ab)");
        assert_eq!(Regex::star(Regex::Epsilon).to_string(), "()*");
        assert_eq!(Regex::Empty.to_string(), "∅");
    }
}
