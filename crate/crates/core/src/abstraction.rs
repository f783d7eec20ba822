//! Rewriting concrete regexes into token trees (preprocess) and back
//! (unpreprocess).
//!
//! Three rule levels are applied, highest first:
//!
//! | level | pattern        | token      |
//! |-------|----------------|------------|
//! | 2     | `~(.*r)`       | `NSL_r`    |
//! | 2     | `~(r.*)`       | `NSR_r`    |
//! | 2     | `~(.*r.*)`     | `NSLR_r`   |
//! | 1     | `~(r)`         | `N_r`      |
//! | 1     | `.*r`          | `SL_r`     |
//! | 1     | `r.*`          | `SR_r`     |
//! | 1     | `.*r.*`        | `SLR_r`    |
//! | 0     | `[C]`, literal, const | `C_..` or an alias |
//! | 0     | `{m,n}` etc.   | `Q_{m,n}`  |
//! | 0     | `.*`           | `S`        |
//!
//! where `r` is a class, a literal or a const (a maximal run of two or more
//! literals).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::regex::{write_class, CharClass, Regex, RepeatHint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbstractionError {
    #[error("token <{0}> is not in the dictionary")]
    UnknownToken(String),
}

/// Bounds carried by a quantifier token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quantifier {
    pub min: u32,
    pub max: Option<u32>,
    pub hint: RepeatHint,
}

impl Quantifier {
    pub fn new(min: u32, max: Option<u32>) -> Self {
        Quantifier {
            min,
            max,
            hint: RepeatHint::for_bounds(min, max),
        }
    }

    /// Bounds printed as `{m,n}` even when `m == n`.
    pub fn range(min: u32, max: Option<u32>) -> Self {
        let hint = if max.is_some() {
            RepeatHint::Range
        } else {
            RepeatHint::AtLeast
        };
        Quantifier { min, max, hint }
    }

    pub fn name(&self) -> String {
        let body = match (self.hint, self.max) {
            (RepeatHint::Optional, _) => "?".to_string(),
            (RepeatHint::Star, _) => "*".to_string(),
            (RepeatHint::Plus, _) => "+".to_string(),
            (RepeatHint::Exact, _) => format!("{{{}}}", self.min),
            (_, None) => format!("{{{},}}", self.min),
            (_, Some(n)) => format!("{{{},{n}}}", self.min),
        };
        format!("Q_{body}")
    }

    pub fn apply(&self, r: Regex) -> Regex {
        Regex::repeat_with(r, self.min, self.max, self.hint)
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.name())
    }
}

/// An abstract regex. Alternation and intersection only occur at the root
/// of an expression (top level or directly inside a `Group`); sequences hold
/// units: tokens, groups, quantified units and negations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Token(Arc<str>),
    Seq(Vec<Node>),
    Alt(Vec<Node>),
    And(Vec<Node>),
    Group(Box<Node>),
    Quant(Box<Node>, Quantifier),
    Not(Box<Node>),
}

impl Node {
    pub fn token(name: &str) -> Node {
        Node::Token(Arc::from(name))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Node::Token(_) | Node::Group(_) | Node::Quant(..) | Node::Not(_))
    }

    pub fn children(&self) -> &[Node] {
        match self {
            Node::Token(_) => &[],
            Node::Seq(v) | Node::Alt(v) | Node::And(v) => v,
            Node::Group(c) | Node::Quant(c, _) | Node::Not(c) => std::slice::from_ref(&**c),
        }
    }

    pub fn children_mut(&mut self) -> &mut [Node] {
        match self {
            Node::Token(_) => &mut [],
            Node::Seq(v) | Node::Alt(v) | Node::And(v) => v,
            Node::Group(c) | Node::Quant(c, _) | Node::Not(c) => std::slice::from_mut(&mut **c),
        }
    }

    /// Number of tokens, quantifiers included.
    pub fn token_count(&self) -> usize {
        let own = matches!(self, Node::Token(_) | Node::Quant(..)) as usize;
        own + self.children().iter().map(Node::token_count).sum::<usize>()
    }

    fn fmt_unit(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            fmt::Display::fmt(self, f)
        } else {
            write!(f, "({self})")
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Token(name) => write!(f, "⟨{name}⟩"),
            Node::Seq(items) => items.iter().try_for_each(|n| n.fmt_unit(f)),
            Node::Alt(ops) | Node::And(ops) => {
                let sep = if matches!(self, Node::Alt(_)) { '|' } else { '&' };
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    let nested = matches!(op, Node::Alt(_))
                        || (matches!(self, Node::And(_)) && matches!(op, Node::And(_)));
                    if nested {
                        write!(f, "({op})")?;
                    } else {
                        write!(f, "{op}")?;
                    }
                }
                Ok(())
            }
            Node::Group(inner) => write!(f, "({inner})"),
            Node::Quant(inner, q) => {
                if matches!(**inner, Node::Quant(..)) {
                    write!(f, "({inner})")?;
                } else {
                    inner.fmt_unit(f)?;
                }
                write!(f, "{q}")
            }
            Node::Not(inner) => {
                write!(f, "~")?;
                inner.fmt_unit(f)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EntryKind {
    /// Usable as a replacement or insertion candidate.
    Element,
    Quantifier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub level: u8,
    pub kind: EntryKind,
    pub regex: Regex,
}

/// Fixed aliases for common classes, in candidate order.
pub const ALIASES: [(&str, &str); 4] = [
    ("NUM", "0123456789"),
    ("LET", "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"),
    ("CAP", "ABCDEFGHIJKLMNOPQRSTUVWXYZ"),
    ("VOW", "AEIOUaeiou"),
];
pub const ANY_STRING: &str = "S";
pub const EMPTY_TOKEN: &str = "EMPTY";

/// Token name to concrete sub-regex, per level. Names are derived from the
/// concrete content, so equal sub-regexes always share a token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteDictionary {
    entries: BTreeMap<Arc<str>, Entry>,
    alphabet: Alphabet,
}

impl RewriteDictionary {
    /// A dictionary holding the aliases whose members all lie in `alphabet`.
    pub fn new(alphabet: &Alphabet) -> Self {
        let mut d = RewriteDictionary {
            entries: BTreeMap::new(),
            alphabet: alphabet.clone(),
        };
        for (name, members) in ALIASES {
            if members.chars().all(|c| alphabet.contains(c)) {
                d.insert(name.into(), 0, EntryKind::Element, Regex::Class(CharClass::of(members.chars())));
            }
        }
        d.insert(ANY_STRING.into(), 0, EntryKind::Element, Regex::any_string(alphabet));
        d
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn insert(&mut self, name: String, level: u8, kind: EntryKind, regex: Regex) -> Arc<str> {
        let name: Arc<str> = Arc::from(name);
        self.entries
            .entry(name.clone())
            .or_insert(Entry { level, kind, regex });
        name
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Arc<str>, &Entry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Element tokens usable as candidates, in name order. Aliases are
    /// always present when the alphabet allows them.
    pub fn elements(&self) -> Vec<Arc<str>> {
        self.entries
            .iter()
            .filter(|(_, e)| e.kind == EntryKind::Element)
            .map(|(n, _)| n.clone())
            .collect()
    }

    pub fn quantifiers(&self) -> Vec<Quantifier> {
        self.entries
            .values()
            .filter_map(|e| match &e.regex {
                Regex::Repeat { min, max, hint, .. } if e.kind == EntryKind::Quantifier => Some(Quantifier {
                    min: *min,
                    max: *max,
                    hint: *hint,
                }),
                _ => None,
            })
            .collect()
    }

    pub fn add_quantifier(&mut self, q: Quantifier) {
        self.insert(q.name(), 0, EntryKind::Quantifier, q.apply(Regex::Epsilon));
    }

    /// Adds every entry of `other` not already present.
    pub fn merge(&mut self, other: &RewriteDictionary) {
        for (name, e) in &other.entries {
            self.entries.entry(name.clone()).or_insert_with(|| e.clone());
        }
    }

    /// No two entries of the same level map to the same sub-regex.
    pub fn is_bijective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.entries
            .values()
            .all(|e| seen.insert((e.level, e.kind, e.regex.clone())))
    }

    fn element_token(&mut self, r: &Regex) -> Arc<str> {
        let name = format!("C_{}", self.content_name(r));
        let name = match r {
            Regex::Class(c) => alias_of(c).map(str::to_string).unwrap_or(name),
            _ if r.is_any_string() => ANY_STRING.to_string(),
            Regex::Empty => EMPTY_TOKEN.to_string(),
            _ => name,
        };
        self.insert(name, 0, EntryKind::Element, r.clone())
    }

    /// Display form of an element inside a level 1 or 2 token name.
    fn content_name(&self, r: &Regex) -> String {
        match r {
            Regex::Class(c) => {
                if let Some(a) = alias_of(c) {
                    return a.to_string();
                }
                let mut s = String::new();
                let _ = write_class(&mut s, c);
                s
            }
            other => other.to_string(),
        }
    }

    fn compound_token(&mut self, prefix: &str, level: u8, element: &Regex, whole: Regex) -> Arc<str> {
        let name = format!("{prefix}_{}", self.content_name(element));
        self.insert(name, level, EntryKind::Element, whole)
    }
}

fn alias_of(c: &CharClass) -> Option<&'static str> {
    if c.negated || c.dot {
        return None;
    }
    ALIASES
        .iter()
        .find(|(_, m)| m.chars().count() == c.members.len() && m.chars().all(|x| c.members.contains(&x)))
        .map(|(n, _)| *n)
}

/// A token tree plus the dictionary that resolves its tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractRegex {
    pub root: Node,
    pub dict: Arc<RewriteDictionary>,
    pub l_max: u8,
}

impl fmt::Display for AbstractRegex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl AbstractRegex {
    pub fn unpreprocess(&self) -> Result<Regex, AbstractionError> {
        unpreprocess_node(&self.root, &self.dict)
    }
}

pub fn preprocess(r: &Regex, l_max: u8, alphabet: &Alphabet) -> AbstractRegex {
    preprocess_with(r, l_max, RewriteDictionary::new(alphabet))
}

/// Preprocess into an existing dictionary, extending it.
pub fn preprocess_with(r: &Regex, l_max: u8, dict: RewriteDictionary) -> AbstractRegex {
    let l_max = l_max.min(2);
    let mut p = Preprocessor { dict, level: l_max };
    let root = p.expr(r);
    AbstractRegex {
        root,
        dict: Arc::new(p.dict),
        l_max,
    }
}

pub fn unpreprocess(a: &AbstractRegex) -> Result<Regex, AbstractionError> {
    a.unpreprocess()
}

struct Preprocessor {
    dict: RewriteDictionary,
    level: u8,
}

/// A sequence item after literal runs have been merged.
enum Piece<'a> {
    Const(String),
    Item(&'a Regex),
}

impl Piece<'_> {
    fn element(&self) -> Option<Regex> {
        match self {
            Piece::Const(s) => Some(Regex::Const(s.clone())),
            Piece::Item(r @ (Regex::Literal(_) | Regex::Class(_))) => Some((*r).clone()),
            _ => None,
        }
    }

    fn is_any_string(&self) -> bool {
        matches!(self, Piece::Item(r) if r.is_any_string())
    }
}

fn pieces(items: Vec<&Regex>) -> Vec<Piece<'_>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let mut j = i;
        while j < items.len() && matches!(items[j], Regex::Literal(_)) {
            j += 1;
        }
        if j - i >= 2 {
            let run = items[i..j]
                .iter()
                .map(|r| match r {
                    Regex::Literal(c) => *c,
                    _ => unreachable!(),
                })
                .collect();
            out.push(Piece::Const(run));
            i = j;
        } else {
            out.push(Piece::Item(items[i]));
            i += 1;
        }
    }
    out
}

/// Operands of an unparenthesised chain of one binary operator.
fn flatten<'a>(r: &'a Regex, out: &mut Vec<&'a Regex>, alt: bool) {
    match (r, alt) {
        (Regex::Alt(a, b), true) | (Regex::And(a, b), false) => {
            flatten(a, out, alt);
            flatten(b, out, alt);
        }
        _ => out.push(r),
    }
}

impl Preprocessor {
    fn expr(&mut self, r: &Regex) -> Node {
        match r {
            Regex::Alt(..) => {
                let mut ops = Vec::new();
                flatten(r, &mut ops, true);
                Node::Alt(ops.into_iter().map(|o| self.and_operand(o)).collect())
            }
            _ => self.and_operand(r),
        }
    }

    fn and_operand(&mut self, r: &Regex) -> Node {
        match r {
            Regex::And(..) => {
                let mut ops = Vec::new();
                flatten(r, &mut ops, false);
                Node::And(ops.into_iter().map(|o| self.seq(o)).collect())
            }
            _ => self.seq(r),
        }
    }

    fn seq(&mut self, r: &Regex) -> Node {
        let pieces = pieces(r.concat_items());
        let mut out = Vec::new();
        let mut i = 0;
        while i < pieces.len() {
            if self.level >= 1 {
                if let Some((node, used)) = self.level1_at(&pieces[i..]) {
                    out.push(node);
                    i += used;
                    continue;
                }
            }
            out.push(match &pieces[i] {
                Piece::Const(s) => Node::Token(self.dict.element_token(&Regex::Const(s.clone()))),
                Piece::Item(item) => self.unit(item),
            });
            i += 1;
        }
        Node::Seq(out)
    }

    /// Longest of `.*r.*`, `.*r`, `r.*` starting at the head of `p`.
    fn level1_at(&mut self, p: &[Piece]) -> Option<(Node, usize)> {
        let any = || p.first().is_some_and(Piece::is_any_string);
        if any() && p.len() >= 3 && p[2].is_any_string() {
            if let Some(e) = p[1].element() {
                return Some((self.wrap("SLR", 1, &e), 3));
            }
        }
        if any() && p.len() >= 2 {
            if let Some(e) = p[1].element() {
                return Some((self.wrap("SL", 1, &e), 2));
            }
        }
        if p.len() >= 2 && p[1].is_any_string() {
            if let Some(e) = p[0].element() {
                return Some((self.wrap("SR", 1, &e), 2));
            }
        }
        None
    }

    fn star(&self) -> Regex {
        Regex::any_string(self.dict.alphabet())
    }

    /// Token for element `e` with the `.*` context and negation that
    /// `prefix` names.
    fn wrap(&mut self, prefix: &str, level: u8, e: &Regex) -> Node {
        let core = prefix.trim_start_matches('N');
        let mut items = Vec::new();
        if core.starts_with("SL") {
            items.push(self.star());
        }
        items.extend(splice(e));
        if core.ends_with('R') {
            items.push(self.star());
        }
        let body = Regex::concat_all(items);
        let whole = if prefix.starts_with('N') {
            Regex::not(Regex::group(body))
        } else {
            body
        };
        Node::Token(self.dict.compound_token(prefix, level, e, whole))
    }

    fn unit(&mut self, r: &Regex) -> Node {
        match r {
            Regex::Literal(_) | Regex::Class(_) | Regex::Const(_) | Regex::Empty => {
                Node::Token(self.dict.element_token(r))
            }
            Regex::Repeat { .. } if r.is_any_string() => Node::Token(self.dict.element_token(r)),
            Regex::Repeat { child, min, max, hint } => {
                let inner = match &**child {
                    Regex::Repeat { .. } if !child.is_any_string() => {
                        Node::Group(Box::new(Node::Seq(vec![self.unit(child)])))
                    }
                    c => self.unit(c),
                };
                let q = Quantifier {
                    min: *min,
                    max: *max,
                    hint: *hint,
                };
                self.dict.add_quantifier(q);
                Node::Quant(Box::new(inner), q)
            }
            Regex::Group(inner) => Node::Group(Box::new(self.expr(inner))),
            Regex::Not(inner) => self
                .negation_token(inner)
                .unwrap_or_else(|| Node::Not(Box::new(self.unit(inner)))),
            Regex::Epsilon => Node::Group(Box::new(Node::Seq(Vec::new()))),
            Regex::Concat(..) | Regex::Alt(..) | Regex::And(..) => Node::Group(Box::new(self.expr(r))),
        }
    }

    /// `~(r)` at level 1, `~(.*r)`, `~(r.*)`, `~(.*r.*)` at level 2.
    fn negation_token(&mut self, inner: &Regex) -> Option<Node> {
        let Regex::Group(body) = inner else {
            return None;
        };
        if self.level < 1 || matches!(**body, Regex::Alt(..) | Regex::And(..)) {
            return None;
        }
        let items = body.concat_items();
        let p = pieces(items);
        match p.len() {
            1 => p[0].element().map(|e| self.wrap("N", 1, &e)),
            2 | 3 if self.level >= 2 => {
                let prefix = match (p.len(), p[0].is_any_string(), p[p.len() - 1].is_any_string()) {
                    (3, true, true) => "NSLR",
                    (2, true, false) => "NSL",
                    (2, false, true) => "NSR",
                    _ => return None,
                };
                let e = if prefix == "NSR" { &p[0] } else { &p[1] };
                e.element().map(|e| self.wrap(prefix, 2, &e))
            }
            _ => None,
        }
    }
}

/// Items a token contributes to an enclosing concatenation.
fn splice(r: &Regex) -> Vec<Regex> {
    r.concat_items()
        .into_iter()
        .flat_map(|item| match item {
            Regex::Const(s) => s.chars().map(Regex::Literal).collect(),
            other => vec![other.clone()],
        })
        .collect()
}

fn resolve<'d>(name: &str, dict: &'d RewriteDictionary) -> Result<&'d Entry, AbstractionError> {
    dict.get(name)
        .ok_or_else(|| AbstractionError::UnknownToken(name.to_string()))
}

pub fn unpreprocess_node(node: &Node, dict: &RewriteDictionary) -> Result<Regex, AbstractionError> {
    match node {
        Node::Seq(items) => {
            let mut out = Vec::new();
            for item in items {
                match item {
                    Node::Token(name) => out.extend(splice(&resolve(name, dict)?.regex)),
                    Node::Seq(_) => out.extend(splice(&unpreprocess_node(item, dict)?)),
                    other => out.push(unit_regex(other, dict)?),
                }
            }
            Ok(Regex::concat_all(out))
        }
        Node::Alt(ops) => {
            let mut out = Vec::new();
            for op in ops {
                let r = unpreprocess_node(op, dict)?;
                out.push(if matches!(r, Regex::Alt(..)) { Regex::group(r) } else { r });
            }
            Ok(Regex::alt_all(out))
        }
        Node::And(ops) => {
            let mut out = Vec::new();
            for op in ops {
                let r = unpreprocess_node(op, dict)?;
                out.push(if matches!(r, Regex::Alt(..) | Regex::And(..)) {
                    Regex::group(r)
                } else {
                    r
                });
            }
            Ok(Regex::and_all(out))
        }
        unit => unit_regex(unit, dict),
    }
}

/// A node in a position that binds tighter than concatenation.
fn unit_regex(node: &Node, dict: &RewriteDictionary) -> Result<Regex, AbstractionError> {
    Ok(match node {
        Node::Token(name) => {
            let r = &resolve(name, dict)?.regex;
            let items = splice(r);
            if items.len() > 1 {
                Regex::group(Regex::concat_all(items))
            } else {
                items.into_iter().next().unwrap_or_else(|| Regex::group(Regex::Epsilon))
            }
        }
        Node::Group(inner) => Regex::group(unpreprocess_node(inner, dict)?),
        Node::Quant(inner, q) => {
            let child = match &**inner {
                Node::Quant(..) => Regex::group(unit_regex(inner, dict)?),
                other => unit_regex(other, dict)?,
            };
            q.apply(child)
        }
        Node::Not(inner) => Regex::not(unit_regex(inner, dict)?),
        Node::Seq(_) | Node::Alt(_) | Node::And(_) => {
            let r = unpreprocess_node(node, dict)?;
            match r {
                Regex::Concat(..) | Regex::Alt(..) | Regex::And(..) | Regex::Epsilon => Regex::group(r),
                other => other,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse;

    const VOWEL: &str = "([AEIOUaeiou].*[0-9].*){7,}";

    fn pre(s: &str, l: u8) -> AbstractRegex {
        let a = Alphabet::default();
        preprocess(&parse(s, &a).unwrap(), l, &a)
    }

    #[test]
    fn worked_trace() {
        assert_eq!(pre(VOWEL, 2).to_string(), "(⟨SR_VOW⟩⟨SR_NUM⟩)⟨Q_{7,}⟩");
        assert_eq!(pre(VOWEL, 1).to_string(), "(⟨SR_VOW⟩⟨SR_NUM⟩)⟨Q_{7,}⟩");
        assert_eq!(pre(VOWEL, 0).to_string(), "(⟨VOW⟩⟨S⟩⟨NUM⟩⟨S⟩)⟨Q_{7,}⟩");
    }

    #[test]
    fn round_trip_is_structural() {
        let a = Alphabet::default();
        for s in [
            VOWEL,
            "[AEIOUaeiou].*[0-9]{7,}.*",
            "[A-Za-z]{2,3}[a-z]{3}[A-Z]{3,4}",
            "([A-Z]|[a-z]){1,}&.{6,8}&(.*([A-Z]|[a-z]).*)",
            "[A-Z]{3,}[0-9]{3,}(N|g)[A-Za-z]{2,4}",
            "abc.*x~(.*ab.*)~(q)~(z.*)|~a*",
            "(ab)*x|",
            "",
            "∅|()",
        ] {
            let r = parse(s, &a).unwrap();
            for l in 0..=2 {
                let ab = preprocess(&r, l, &a);
                assert_eq!(ab.unpreprocess().unwrap(), r, "{s} at level {l}: {ab}");
                assert!(ab.dict.is_bijective());
            }
        }
    }

    #[test]
    fn level_tokens() {
        assert_eq!(pre("~(.*ab.*)", 2).to_string(), "⟨NSLR_ab⟩");
        assert_eq!(pre("~(.*ab.*)", 1).to_string(), "~(⟨SLR_ab⟩)");
        assert_eq!(pre("~(.*ab.*)", 0).to_string(), "~(⟨S⟩⟨C_ab⟩⟨S⟩)");
        assert_eq!(pre("~([a-z])x", 1).to_string(), "⟨N_[a-z]⟩⟨C_x⟩");
        assert_eq!(pre(".*x[0-9]", 1).to_string(), "⟨SL_x⟩⟨NUM⟩");
        let p = pre("~([0-9].*)", 2);
        let entry = &p.dict.get("NSR_NUM").unwrap().regex;
        assert_eq!(entry.to_string(), "~([0-9].*)");
    }

    #[test]
    fn fixed_expansion() {
        let a = Alphabet::default();
        let dict = RewriteDictionary::new(&a);
        let node = Node::Seq(vec![
            Node::token("VOW"),
            Node::token("S"),
            Node::Quant(Box::new(Node::token("NUM")), Quantifier::new(7, None)),
            Node::token("S"),
        ]);
        assert_eq!(
            unpreprocess_node(&node, &dict).unwrap(),
            parse("[AEIOUaeiou].*[0-9]{7,}.*", &a).unwrap()
        );
        assert_eq!(
            unpreprocess_node(&Node::token("C_zz"), &dict),
            Err(AbstractionError::UnknownToken("C_zz".into()))
        );
    }

    #[test]
    fn tokens_are_shared() {
        let p = pre("[0-9]x[0-9]y{2}z{2}", 0);
        assert_eq!(p.to_string(), "⟨NUM⟩⟨C_x⟩⟨NUM⟩⟨C_y⟩⟨Q_{2}⟩⟨C_z⟩⟨Q_{2}⟩");
    }

    #[test]
    fn level_two_entries_contain_level_one() {
        let p = pre("~(.*ab)~(ab.*)~(.*ab.*)", 2);
        let one = pre(".*ab|ab.*|.*ab.*", 1);
        for (two, one_name) in [("NSL_ab", "SL_ab"), ("NSR_ab", "SR_ab"), ("NSLR_ab", "SLR_ab")] {
            let outer = p.dict.get(two).unwrap().regex.to_string();
            let inner = one.dict.get(one_name).unwrap().regex.to_string();
            assert!(outer.contains(&inner), "{outer} / {inner}");
        }
    }
}
