//! Hash-consed regex terms in similarity-normal form, with cached
//! nullability and derivatives.

use std::collections::HashMap;

use super::symset::SymSet;
use super::{EngineBudget, EngineError};
use crate::alphabet::Alphabet;
use crate::regex::{CharClass, Regex};

pub(crate) type TermId = u32;

pub(crate) const EMPTY: TermId = 0;
pub(crate) const EPS: TermId = 1;
pub(crate) const FULL: TermId = 2;
/// Σ*, the complement of ∅.
pub(crate) const UNIVERSAL: TermId = 3;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Term {
    Empty,
    Eps,
    Set(SymSet),
    /// Always right-nested: the left operand is never a `Concat`.
    Concat(TermId, TermId),
    /// Sorted, deduplicated, at least two operands, at most one `Set`.
    Alt(Box<[TermId]>),
    And(Box<[TermId]>),
    Not(TermId),
    Repeat(TermId, u32, Option<u32>),
}

pub(crate) struct TermPool {
    nsyms: usize,
    terms: Vec<Term>,
    nullable: Vec<bool>,
    index: HashMap<Term, TermId>,
    derivs: HashMap<(TermId, u32), TermId>,
}

impl TermPool {
    pub fn new(nsyms: usize) -> Self {
        let mut pool = TermPool {
            nsyms,
            terms: Vec::new(),
            nullable: Vec::new(),
            index: HashMap::new(),
            derivs: HashMap::new(),
        };
        pool.intern(Term::Empty, false);
        pool.intern(Term::Eps, true);
        pool.intern(Term::Set(SymSet::full(nsyms)), false);
        pool.intern(Term::Repeat(FULL, 0, None), true);
        pool
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id as usize]
    }

    #[inline]
    pub fn nullable(&self, id: TermId) -> bool {
        self.nullable[id as usize]
    }

    fn intern(&mut self, t: Term, nullable: bool) -> TermId {
        if let Some(&id) = self.index.get(&t) {
            return id;
        }
        let id = self.terms.len() as TermId;
        self.terms.push(t.clone());
        self.nullable.push(nullable);
        self.index.insert(t, id);
        id
    }

    pub fn set(&mut self, s: SymSet) -> TermId {
        if s.is_empty() {
            EMPTY
        } else {
            self.intern(Term::Set(s), false)
        }
    }

    pub fn concat(&mut self, a: TermId, b: TermId) -> TermId {
        if a == EMPTY || b == EMPTY {
            return EMPTY;
        }
        if a == EPS {
            return b;
        }
        if b == EPS {
            return a;
        }
        if let Term::Concat(x, y) = *self.term(a) {
            let tail = self.concat(y, b);
            return self.concat(x, tail);
        }
        let n = self.nullable(a) && self.nullable(b);
        self.intern(Term::Concat(a, b), n)
    }

    pub fn alt(&mut self, items: impl IntoIterator<Item = TermId>) -> TermId {
        let mut ops = Vec::new();
        let mut chars: Option<SymSet> = None;
        for id in items {
            match self.term(id) {
                Term::Alt(inner) => ops.extend(inner.iter().copied()),
                _ => ops.push(id),
            }
        }
        let mut rest = Vec::with_capacity(ops.len());
        for id in ops {
            match self.term(id) {
                Term::Empty => {}
                _ if id == UNIVERSAL => return UNIVERSAL,
                Term::Set(s) => {
                    chars = Some(match chars {
                        Some(c) => c.union(s),
                        None => s.clone(),
                    })
                }
                _ => rest.push(id),
            }
        }
        if let Some(c) = chars {
            let id = self.set(c);
            rest.push(id);
        }
        rest.sort_unstable();
        rest.dedup();
        match rest.len() {
            0 => EMPTY,
            1 => rest[0],
            _ => {
                let n = rest.iter().any(|&id| self.nullable(id));
                self.intern(Term::Alt(rest.into_boxed_slice()), n)
            }
        }
    }

    pub fn and(&mut self, items: impl IntoIterator<Item = TermId>) -> TermId {
        let mut ops = Vec::new();
        for id in items {
            match self.term(id) {
                Term::And(inner) => ops.extend(inner.iter().copied()),
                _ => ops.push(id),
            }
        }
        let mut chars: Option<SymSet> = None;
        let mut rest = Vec::with_capacity(ops.len());
        for id in ops {
            match self.term(id) {
                Term::Empty => return EMPTY,
                _ if id == UNIVERSAL => {}
                Term::Set(s) => {
                    chars = Some(match chars {
                        Some(c) => c.intersection(s),
                        None => s.clone(),
                    })
                }
                _ => rest.push(id),
            }
        }
        if let Some(c) = chars {
            let id = self.set(c);
            if id == EMPTY {
                return EMPTY;
            }
            rest.push(id);
        }
        rest.sort_unstable();
        rest.dedup();
        match rest.len() {
            0 => UNIVERSAL,
            1 => rest[0],
            _ => {
                let n = rest.iter().all(|&id| self.nullable(id));
                self.intern(Term::And(rest.into_boxed_slice()), n)
            }
        }
    }

    pub fn not(&mut self, a: TermId) -> TermId {
        match *self.term(a) {
            Term::Not(inner) => inner,
            Term::Empty => UNIVERSAL,
            _ if a == UNIVERSAL => EMPTY,
            _ => {
                let n = !self.nullable(a);
                self.intern(Term::Not(a), n)
            }
        }
    }

    pub fn repeat(&mut self, a: TermId, min: u32, max: Option<u32>) -> TermId {
        if max == Some(0) || a == EPS {
            return EPS;
        }
        if a == EMPTY {
            return if min == 0 { EPS } else { EMPTY };
        }
        if (min, max) == (1, Some(1)) {
            return a;
        }
        if let Term::Repeat(_, 0, None) = *self.term(a) {
            if (min, max) == (0, None) {
                return a;
            }
        }
        let n = min == 0 || self.nullable(a);
        self.intern(Term::Repeat(a, min, max), n)
    }

    pub fn derivative(&mut self, id: TermId, sym: u32) -> TermId {
        if let Some(&d) = self.derivs.get(&(id, sym)) {
            return d;
        }
        let d = match self.term(id).clone() {
            Term::Empty | Term::Eps => EMPTY,
            Term::Set(s) => {
                if s.contains(sym as usize) {
                    EPS
                } else {
                    EMPTY
                }
            }
            Term::Concat(a, b) => {
                let da = self.derivative(a, sym);
                let left = self.concat(da, b);
                if self.nullable(a) {
                    let db = self.derivative(b, sym);
                    self.alt([left, db])
                } else {
                    left
                }
            }
            Term::Alt(ops) => {
                let ds: Vec<TermId> = ops.iter().map(|&o| self.derivative(o, sym)).collect();
                self.alt(ds)
            }
            Term::And(ops) => {
                let ds: Vec<TermId> = ops.iter().map(|&o| self.derivative(o, sym)).collect();
                self.and(ds)
            }
            Term::Not(a) => {
                let da = self.derivative(a, sym);
                self.not(da)
            }
            Term::Repeat(a, min, max) => {
                let da = self.derivative(a, sym);
                let rest = self.repeat(a, min.saturating_sub(1), max.map(|n| n - 1));
                self.concat(da, rest)
            }
        };
        self.derivs.insert((id, sym), d);
        d
    }

    /// Every character set occurring in the terms reachable from `roots`.
    pub fn sets_under(&self, roots: &[TermId]) -> Vec<SymSet> {
        let mut seen = vec![false; self.terms.len()];
        let mut stack: Vec<TermId> = roots.to_vec();
        let mut out = Vec::new();
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id as usize], true) {
                continue;
            }
            match self.term(id) {
                Term::Empty | Term::Eps => {}
                Term::Set(s) => out.push(s.clone()),
                Term::Concat(a, b) => stack.extend([*a, *b]),
                Term::Alt(ops) | Term::And(ops) => stack.extend(ops.iter().copied()),
                Term::Not(a) | Term::Repeat(a, _, _) => stack.push(*a),
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[cfg(test)]
    pub fn nsyms(&self) -> usize {
        self.nsyms
    }

    /// Converts a regex, checking alphabet membership and quantifier limits.
    pub fn from_regex(
        &mut self,
        r: &Regex,
        alphabet: &Alphabet,
        budget: &EngineBudget,
    ) -> Result<TermId, EngineError> {
        Ok(match r {
            Regex::Empty => EMPTY,
            Regex::Epsilon => EPS,
            Regex::Literal(c) => {
                let mut s = SymSet::empty(self.nsyms);
                s.insert(index(alphabet, *c)?);
                self.set(s)
            }
            Regex::Class(class) => {
                let s = class_set(class, alphabet)?;
                self.set(s)
            }
            Regex::Const(text) => {
                let mut ids = Vec::new();
                for c in text.chars() {
                    let mut s = SymSet::empty(self.nsyms);
                    s.insert(index(alphabet, c)?);
                    ids.push(self.set(s));
                }
                ids.into_iter().rev().fold(EPS, |acc, id| self.concat(id, acc))
            }
            Regex::Concat(a, b) => {
                let a = self.from_regex(a, alphabet, budget)?;
                let b = self.from_regex(b, alphabet, budget)?;
                self.concat(a, b)
            }
            Regex::Alt(a, b) => {
                let a = self.from_regex(a, alphabet, budget)?;
                let b = self.from_regex(b, alphabet, budget)?;
                self.alt([a, b])
            }
            Regex::And(a, b) => {
                let a = self.from_regex(a, alphabet, budget)?;
                let b = self.from_regex(b, alphabet, budget)?;
                self.and([a, b])
            }
            Regex::Not(a) => {
                let a = self.from_regex(a, alphabet, budget)?;
                self.not(a)
            }
            Regex::Group(a) => self.from_regex(a, alphabet, budget)?,
            Regex::Repeat { child, min, max, .. } => {
                let bound = (*min).max(max.unwrap_or(0));
                if bound > budget.max_quantifier_bound {
                    return Err(EngineError::QuantifierTooLarge {
                        bound,
                        limit: budget.max_quantifier_bound,
                    });
                }
                let a = self.from_regex(child, alphabet, budget)?;
                self.repeat(a, *min, *max)
            }
        })
    }

    pub fn to_regex(&self, id: TermId, alphabet: &Alphabet) -> Regex {
        match self.term(id) {
            Term::Empty => Regex::Empty,
            Term::Eps => Regex::Epsilon,
            Term::Set(s) => {
                if s.len() == 1 {
                    Regex::Literal(alphabet.symbol(s.first().unwrap()))
                } else if id == FULL {
                    Regex::Class(CharClass::dot(alphabet))
                } else {
                    Regex::Class(CharClass::of(s.iter().map(|i| alphabet.symbol(i))))
                }
            }
            Term::Concat(a, b) => Regex::concat(self.to_regex(*a, alphabet), self.to_regex(*b, alphabet)),
            Term::Alt(ops) => Regex::alt_all(ops.iter().map(|&o| self.to_regex(o, alphabet))),
            Term::And(ops) => Regex::and_all(ops.iter().map(|&o| self.to_regex(o, alphabet))),
            Term::Not(a) => Regex::not(self.to_regex(*a, alphabet)),
            Term::Repeat(a, min, max) => Regex::repeat(self.to_regex(*a, alphabet), *min, *max),
        }
    }
}

fn index(alphabet: &Alphabet, c: char) -> Result<usize, EngineError> {
    alphabet
        .index_of(c)
        .ok_or(EngineError::AlphabetViolation { ch: c })
}

fn class_set(class: &CharClass, alphabet: &Alphabet) -> Result<SymSet, EngineError> {
    let n = alphabet.len();
    let mut s = SymSet::empty(n);
    if class.negated {
        for (i, c) in alphabet.chars().iter().enumerate() {
            if !class.members.contains(c) {
                s.insert(i);
            }
        }
    } else {
        for &c in &class.members {
            s.insert(index(alphabet, c)?);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(pool: &mut TermPool, i: usize) -> TermId {
        let mut s = SymSet::empty(pool.nsyms());
        s.insert(i);
        pool.set(s)
    }

    #[test]
    fn alt_is_aci_normal() {
        let mut p = TermPool::new(3);
        let a = single(&mut p, 0);
        let b = single(&mut p, 1);
        let aa = p.concat(a, a);
        let bb = p.concat(b, b);
        let x = p.alt([aa, bb, aa]);
        let inner = p.alt([aa, EMPTY]);
        let y = p.alt([bb, inner]);
        assert_eq!(x, y);
        assert_eq!(p.alt([x, UNIVERSAL]), UNIVERSAL);
    }

    #[test]
    fn double_negation_and_identities() {
        let mut p = TermPool::new(2);
        let a = single(&mut p, 0);
        let na = p.not(a);
        assert_eq!(p.not(na), a);
        assert_eq!(p.not(EMPTY), UNIVERSAL);
        assert_eq!(p.and([a, UNIVERSAL]), a);
        let b = single(&mut p, 1);
        assert_eq!(p.and([a, b]), EMPTY);
    }

    #[test]
    fn concat_reassociates_right() {
        let mut p = TermPool::new(3);
        let (a, b, c) = (single(&mut p, 0), single(&mut p, 1), single(&mut p, 2));
        let ab = p.concat(a, b);
        let bc = p.concat(b, c);
        assert_eq!(p.concat(ab, c), p.concat(a, bc));
    }

    #[test]
    fn counted_repeat_derivative() {
        let mut p = TermPool::new(2);
        let a = single(&mut p, 0);
        let r = p.repeat(a, 2, Some(3));
        let d = p.derivative(r, 0);
        assert_eq!(d, p.repeat(a, 1, Some(2)));
        assert!(!p.nullable(d));
        let dd = p.derivative(d, 0);
        assert!(p.nullable(dd));
        assert_eq!(p.derivative(r, 1), EMPTY);
    }
}
