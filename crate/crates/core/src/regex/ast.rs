use std::collections::BTreeSet;

use crate::alphabet::Alphabet;

/// Surface form a counted repetition was written in. Only affects printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum RepeatHint {
    /// `?`
    Optional,
    /// `*`
    Star,
    /// `+`
    Plus,
    /// `{i}`
    Exact,
    /// `{m,}`
    AtLeast,
    /// `{m,n}`
    Range,
}

impl RepeatHint {
    /// The hint a bare pair of bounds would be printed with.
    pub fn for_bounds(min: u32, max: Option<u32>) -> Self {
        match (min, max) {
            (0, None) => RepeatHint::Star,
            (1, None) => RepeatHint::Plus,
            (0, Some(1)) => RepeatHint::Optional,
            (_, None) => RepeatHint::AtLeast,
            (m, Some(n)) if m == n => RepeatHint::Exact,
            _ => RepeatHint::Range,
        }
    }

    /// Whether this hint can print the given bounds faithfully.
    pub fn fits(self, min: u32, max: Option<u32>) -> bool {
        match self {
            RepeatHint::Optional => (min, max) == (0, Some(1)),
            RepeatHint::Star => (min, max) == (0, None),
            RepeatHint::Plus => (min, max) == (1, None),
            RepeatHint::Exact => max == Some(min),
            RepeatHint::AtLeast => max.is_none(),
            RepeatHint::Range => max.is_some(),
        }
    }
}

/// A bracketed character class, or the `.` wildcard.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharClass {
    pub members: BTreeSet<char>,
    pub negated: bool,
    /// Written as `.`; members are then the whole alphabet.
    pub dot: bool,
}

impl CharClass {
    pub fn of<I: IntoIterator<Item = char>>(members: I) -> Self {
        CharClass {
            members: members.into_iter().collect(),
            negated: false,
            dot: false,
        }
    }

    pub fn range(lo: char, hi: char) -> Self {
        Self::of(lo..=hi)
    }

    pub fn dot(alphabet: &Alphabet) -> Self {
        CharClass {
            members: alphabet.chars().iter().copied().collect(),
            negated: false,
            dot: true,
        }
    }

    /// Whether `c` is matched, given the alphabet negation is relative to.
    pub fn matches(&self, c: char) -> bool {
        self.members.contains(&c) != self.negated
    }

    /// The effective set over `alphabet`.
    pub fn effective(&self, alphabet: &Alphabet) -> BTreeSet<char> {
        if self.negated {
            alphabet
                .chars()
                .iter()
                .copied()
                .filter(|c| !self.members.contains(c))
                .collect()
        } else {
            self.members.clone()
        }
    }

    pub fn is_dot(&self) -> bool {
        self.dot && !self.negated
    }
}

/// The extended regex AST: classes, counted repetition, union,
/// concatenation, intersection and complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regex {
    /// ∅
    Empty,
    /// ε
    Epsilon,
    Literal(char),
    Class(CharClass),
    /// A run of literal characters. Never produced by the parser.
    Const(String),
    Concat(Box<Regex>, Box<Regex>),
    Alt(Box<Regex>, Box<Regex>),
    And(Box<Regex>, Box<Regex>),
    Not(Box<Regex>),
    Repeat {
        child: Box<Regex>,
        min: u32,
        max: Option<u32>,
        hint: RepeatHint,
    },
    /// Explicit parentheses.
    Group(Box<Regex>),
}

impl Regex {
    pub fn literal(c: char) -> Self {
        Regex::Literal(c)
    }

    pub fn class(class: CharClass) -> Self {
        Regex::Class(class)
    }

    pub fn concat(a: Regex, b: Regex) -> Self {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn alt(a: Regex, b: Regex) -> Self {
        Regex::Alt(Box::new(a), Box::new(b))
    }

    pub fn and(a: Regex, b: Regex) -> Self {
        Regex::And(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Regex) -> Self {
        Regex::Not(Box::new(a))
    }

    pub fn group(a: Regex) -> Self {
        Regex::Group(Box::new(a))
    }

    /// Repetition printed in the most natural surface form for its bounds.
    pub fn repeat(child: Regex, min: u32, max: Option<u32>) -> Self {
        Self::repeat_with(child, min, max, RepeatHint::for_bounds(min, max))
    }

    pub fn repeat_with(child: Regex, min: u32, max: Option<u32>, hint: RepeatHint) -> Self {
        debug_assert!(max.is_none_or(|n| min <= n));
        let hint = if hint.fits(min, max) {
            hint
        } else {
            RepeatHint::for_bounds(min, max)
        };
        Regex::Repeat {
            child: Box::new(child),
            min,
            max,
            hint,
        }
    }

    pub fn star(child: Regex) -> Self {
        Self::repeat(child, 0, None)
    }

    /// `.*` over the given alphabet.
    pub fn any_string(alphabet: &Alphabet) -> Self {
        Self::star(Regex::Class(CharClass::dot(alphabet)))
    }

    /// Left-nested concatenation of `items`; ε when empty.
    pub fn concat_all<I: IntoIterator<Item = Regex>>(items: I) -> Self {
        items.into_iter().reduce(Regex::concat).unwrap_or(Regex::Epsilon)
    }

    pub fn alt_all<I: IntoIterator<Item = Regex>>(items: I) -> Self {
        items.into_iter().reduce(Regex::alt).unwrap_or(Regex::Empty)
    }

    pub fn and_all<I: IntoIterator<Item = Regex>>(items: I) -> Self {
        items.into_iter().reduce(Regex::and).unwrap_or(Regex::Empty)
    }

    /// `.*` as written by the parser: the dot class under a `*`.
    pub fn is_any_string(&self) -> bool {
        matches!(
            self,
            Regex::Repeat { child, min: 0, max: None, hint: RepeatHint::Star }
                if matches!(&**child, Regex::Class(c) if c.is_dot())
        )
    }

    pub fn children(&self) -> Vec<&Regex> {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Literal(_) | Regex::Class(_) | Regex::Const(_) => {
                Vec::new()
            }
            Regex::Concat(a, b) | Regex::Alt(a, b) | Regex::And(a, b) => vec![a, b],
            Regex::Not(a) | Regex::Group(a) => vec![a],
            Regex::Repeat { child, .. } => vec![child],
        }
    }

    /// Operands of an unparenthesised concatenation chain, left to right.
    /// `Const` runs are expanded into literals.
    pub fn concat_items(&self) -> Vec<&Regex> {
        fn walk<'a>(r: &'a Regex, out: &mut Vec<&'a Regex>) {
            match r {
                Regex::Concat(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Regex::Epsilon => {}
                _ => out.push(r),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Same AST with every `Group` node removed.
    pub fn strip_groups(&self) -> Regex {
        match self {
            Regex::Group(a) => a.strip_groups(),
            Regex::Concat(a, b) => Regex::concat(a.strip_groups(), b.strip_groups()),
            Regex::Alt(a, b) => Regex::alt(a.strip_groups(), b.strip_groups()),
            Regex::And(a, b) => Regex::and(a.strip_groups(), b.strip_groups()),
            Regex::Not(a) => Regex::not(a.strip_groups()),
            Regex::Repeat { child, min, max, hint } => Regex::Repeat {
                child: Box::new(child.strip_groups()),
                min: *min,
                max: *max,
                hint: *hint,
            },
            other => other.clone(),
        }
    }

    /// Largest repetition bound appearing anywhere in the tree.
    pub fn max_quantifier_bound(&self) -> u32 {
        let own = match self {
            Regex::Repeat { min, max, .. } => (*min).max(max.unwrap_or(0)),
            _ => 0,
        };
        self.children()
            .into_iter()
            .map(Regex::max_quantifier_bound)
            .fold(own, u32::max)
    }

    /// Every literal and class member in the tree.
    pub fn symbols(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Literal(c) => {
                out.insert(*c);
            }
            Regex::Class(class) => out.extend(class.members.iter().copied()),
            Regex::Const(s) => out.extend(s.chars()),
            _ => {
                for child in self.children() {
                    child.collect_symbols(out);
                }
            }
        }
    }
}

/// Structural size measures, used for deterministic tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct RegexMetrics {
    pub ast_size: usize,
    pub depth: usize,
    pub length: usize,
}

impl Regex {
    pub fn metrics(&self) -> RegexMetrics {
        RegexMetrics {
            ast_size: self.ast_size(),
            depth: self.depth(),
            length: self.to_string().chars().count(),
        }
    }

    pub fn ast_size(&self) -> usize {
        1 + self.children().into_iter().map(Regex::ast_size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Regex::depth)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metrics_of_small_trees() {
        let eps = Regex::Epsilon.metrics();
        assert_eq!((eps.ast_size, eps.depth, eps.length), (1, 1, 0));
        let ab = Regex::concat(Regex::literal('a'), Regex::literal('b')).metrics();
        assert_eq!((ab.ast_size, ab.depth, ab.length), (3, 2, 2));
    }

    #[test]
    fn hint_is_corrected_when_it_does_not_fit() {
        let r = Regex::repeat_with(Regex::literal('a'), 2, Some(3), RepeatHint::Star);
        assert!(matches!(r, Regex::Repeat { hint: RepeatHint::Range, .. }));
    }

    #[test]
    fn concat_items_flattens_chain_only() {
        let r = Regex::concat(
            Regex::concat(Regex::literal('a'), Regex::group(Regex::concat(Regex::literal('b'), Regex::literal('c')))),
            Regex::literal('d'),
        );
        assert_eq!(r.concat_items().len(), 3);
    }
}
