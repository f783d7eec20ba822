use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use super::symset::{minterms, SymSet};
use super::term::{TermId, TermPool};
use super::{EngineBudget, EngineError};
use crate::alphabet::Alphabet;

/// A complete DFA whose transitions are indexed by partition block.
#[derive(Clone, Debug)]
pub struct Dfa {
    alphabet: Alphabet,
    blocks: Vec<SymSet>,
    /// Alphabet index to block index.
    block_of: Vec<u32>,
    /// Row-major `state * blocks.len() + block`.
    delta: Vec<u32>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub(crate) fn build(
        pool: &mut TermPool,
        root: TermId,
        alphabet: &Alphabet,
        budget: &EngineBudget,
    ) -> Result<Dfa, EngineError> {
        let n = alphabet.len();
        let sets = pool.sets_under(&[root]);
        let blocks = minterms(SymSet::full(n), sets.iter());
        let mut block_of = vec![0u32; n];
        for (b, block) in blocks.iter().enumerate() {
            for i in block.iter() {
                block_of[i] = b as u32;
            }
        }
        let reps: Vec<u32> = blocks.iter().map(|b| b.first().unwrap() as u32).collect();

        let mut ids: HashMap<TermId, u32> = HashMap::new();
        let mut terms = vec![root];
        ids.insert(root, 0);
        let mut queue = VecDeque::from([0u32]);
        let mut delta = Vec::new();
        while let Some(s) = queue.pop_front() {
            debug_assert_eq!(delta.len(), s as usize * reps.len());
            let t = terms[s as usize];
            for &sym in &reps {
                let d = pool.derivative(t, sym);
                let next = match ids.get(&d) {
                    Some(&i) => i,
                    None => {
                        if terms.len() >= budget.max_states {
                            return Err(EngineError::BudgetExceeded {
                                max_states: budget.max_states,
                            });
                        }
                        let i = terms.len() as u32;
                        terms.push(d);
                        ids.insert(d, i);
                        queue.push_back(i);
                        i
                    }
                };
                delta.push(next);
            }
        }
        let accepting = terms.iter().map(|&t| pool.nullable(t)).collect();
        Ok(Dfa {
            alphabet: alphabet.clone(),
            blocks,
            block_of,
            delta,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The partition of the alphabet that transitions are defined over.
    pub fn partition(&self) -> Vec<Vec<char>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|i| self.alphabet.symbol(i)).collect())
            .collect()
    }

    pub(crate) fn block_symbols(&self, block: usize) -> &SymSet {
        &self.blocks[block]
    }

    pub(crate) fn block_of_index(&self, sym: usize) -> usize {
        self.block_of[sym] as usize
    }

    #[inline]
    pub fn next(&self, state: usize, block: usize) -> usize {
        self.delta[state * self.blocks.len() + block] as usize
    }

    /// Transition on a character; `None` if it is outside the alphabet.
    pub fn step(&self, state: usize, c: char) -> Option<usize> {
        let i = self.alphabet.index_of(c)?;
        Some(self.next(state, self.block_of[i] as usize))
    }

    pub fn accepts(&self, w: &str) -> Result<bool, EngineError> {
        let mut s = self.start();
        for c in w.chars() {
            s = self.step(s, c).ok_or(EngineError::AlphabetViolation { ch: c })?;
        }
        Ok(self.accepting[s])
    }

    /// Same automaton with accepting and rejecting states swapped.
    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for a in &mut d.accepting {
            *a = !*a;
        }
        d
    }

    /// True iff no accepting state is reachable from the start state.
    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !(0..self.num_states()).any(|s| reach[s] && self.accepting[s])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.start()];
        seen[self.start()] = true;
        while let Some(s) = stack.pop() {
            for b in 0..self.num_blocks() {
                let t = self.next(s, b);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Shortest distance from each state to an accepting state, or `None`
    /// when no accepting state is reachable.
    pub fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let n = self.num_states();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for b in 0..self.num_blocks() {
                preds[self.next(s, b)].push(s);
            }
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for (s, d) in dist.iter_mut().enumerate() {
            if self.accepting[s] {
                *d = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            let ds = dist[s].unwrap();
            for &p in &preds[s] {
                if dist[p].is_none() {
                    dist[p] = Some(ds + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// Diagnostic state table. One line per state: id, `*` if accepting,
    /// then the successor for each partition block.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "states {} start {}", self.num_states(), self.start());
        for (b, block) in self.partition().iter().enumerate() {
            let _ = writeln!(out, "block {b} {}", summarize(block));
        }
        for s in 0..self.num_states() {
            let mark = if self.accepting[s] { "*" } else { " " };
            let _ = write!(out, "{s:>4}{mark}");
            for b in 0..self.num_blocks() {
                let _ = write!(out, " {}", self.next(s, b));
            }
            out.push('\n');
        }
        out
    }

    /// Hopcroft-Karp union-find equivalence over the joint refinement of
    /// both partitions.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        let offset = self.num_states();
        let mut parent: Vec<usize> = (0..offset + other.num_states()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        // One representative symbol per pair of blocks that actually co-occur.
        let mut seen = HashMap::new();
        let mut pairs = Vec::new();
        for i in 0..self.alphabet.len() {
            let key = (self.block_of[i], other.block_of[i]);
            if seen.insert(key, ()).is_none() {
                pairs.push((key.0 as usize, key.1 as usize));
            }
        }
        let mut stack = vec![(self.start(), other.start())];
        let (a, b) = (find(&mut parent, 0), find(&mut parent, offset));
        parent[a] = b;
        while let Some((p, q)) = stack.pop() {
            if self.accepting[p] != other.accepting[q] {
                return false;
            }
            for &(b1, b2) in &pairs {
                let p2 = self.next(p, b1);
                let q2 = other.next(q, b2);
                let (rp, rq) = (find(&mut parent, p2), find(&mut parent, offset + q2));
                if rp != rq {
                    parent[rp] = rq;
                    stack.push((p2, q2));
                }
            }
        }
        true
    }
}

fn summarize(block: &[char]) -> String {
    let mut s: String = block.iter().take(24).collect();
    if block.len() > 24 {
        let _ = write!(s, "... ({} symbols)", block.len());
    }
    format!("{s:?}")
}
