//! Seeded random walks over a DFA.
//!
//! At each step the walk chooses uniformly among the options that can
//! still reach an accepting state within the remaining length: stopping
//! (when the current state accepts) or following one partition block. The
//! concrete character is then uniform within the block.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dfa::Dfa;
use super::EngineError;

struct Walker<'a> {
    dfa: &'a Dfa,
    dist: Vec<Option<usize>>,
    max_len: usize,
}

impl<'a> Walker<'a> {
    fn new(dfa: &'a Dfa, max_len: usize) -> Self {
        Walker {
            dfa,
            dist: dfa.distance_to_accept(),
            max_len,
        }
    }

    fn reachable_within(&self, state: usize, len: usize) -> bool {
        self.dist[state].is_some_and(|d| d <= len)
    }

    fn char_in_block(&self, block: usize, rng: &mut ChaCha8Rng) -> char {
        let syms = self.dfa.block_symbols(block);
        let pick = rng.random_range(0..syms.len());
        self.dfa.alphabet().symbol(syms.iter().nth(pick).unwrap())
    }

    fn walk(&self, rng: &mut ChaCha8Rng) -> Option<String> {
        let mut s = self.dfa.start();
        if !self.reachable_within(s, self.max_len) {
            return None;
        }
        let mut out = String::new();
        let mut len = 0;
        loop {
            let rem = self.max_len - len;
            let stop = self.dfa.is_accepting(s);
            let moves: Vec<usize> = if rem == 0 {
                Vec::new()
            } else {
                (0..self.dfa.num_blocks())
                    .filter(|&b| self.reachable_within(self.dfa.next(s, b), rem - 1))
                    .collect()
            };
            let options = moves.len() + stop as usize;
            if options == 0 {
                return None;
            }
            let pick = rng.random_range(0..options);
            if pick == moves.len() {
                return Some(out);
            }
            let b = moves[pick];
            out.push(self.char_in_block(b, rng));
            s = self.dfa.next(s, b);
            len += 1;
        }
    }

    /// Number of accepted strings of length at most `max_len`, saturating.
    fn count(&self) -> u64 {
        let n = self.dfa.num_states();
        let mut cur: Vec<u64> = (0..n).map(|s| self.dfa.is_accepting(s) as u64).collect();
        for _ in 0..self.max_len {
            let next: Vec<u64> = (0..n)
                .map(|s| {
                    let mut total = self.dfa.is_accepting(s) as u64;
                    for b in 0..self.dfa.num_blocks() {
                        let width = self.dfa.block_symbols(b).len() as u64;
                        total = total.saturating_add(width.saturating_mul(cur[self.dfa.next(s, b)]));
                    }
                    total
                })
                .collect();
            cur = next;
        }
        cur[self.dfa.start()]
    }

    /// Depth-first enumeration in alphabet order, skipping `have`, until
    /// `out` holds `limit` strings.
    fn enumerate(&self, have: &HashSet<String>, out: &mut Vec<String>, limit: usize) {
        let mut prefix = String::new();
        self.dfs(self.dfa.start(), &mut prefix, 0, have, out, limit);
    }

    fn dfs(
        &self,
        s: usize,
        prefix: &mut String,
        len: usize,
        have: &HashSet<String>,
        out: &mut Vec<String>,
        limit: usize,
    ) {
        if out.len() >= limit || !self.reachable_within(s, self.max_len - len) {
            return;
        }
        if self.dfa.is_accepting(s) && !have.contains(prefix.as_str()) {
            out.push(prefix.clone());
        }
        if len == self.max_len {
            return;
        }
        for (i, &c) in self.dfa.alphabet().chars().iter().enumerate() {
            if out.len() >= limit {
                return;
            }
            let t = self.dfa.next(s, self.dfa.block_of_index(i));
            prefix.push(c);
            self.dfs(t, prefix, len + 1, have, out, limit);
            prefix.pop();
        }
    }
}

/// Shared tail: check feasibility, then top up `found` to `k` strings.
fn finish(walker: &Walker, mut found: Vec<String>, k: usize) -> Result<Vec<String>, EngineError> {
    if found.len() >= k {
        found.truncate(k);
        return Ok(found);
    }
    let have: HashSet<String> = found.iter().cloned().collect();
    walker.enumerate(&have, &mut found, k);
    if found.len() < k {
        return Err(EngineError::InsufficientLanguage { found });
    }
    Ok(found)
}

fn precheck(walker: &Walker, k: usize) -> Result<Option<Vec<String>>, EngineError> {
    if walker.dfa.is_empty() {
        return Err(EngineError::EmptyLanguage);
    }
    if walker.count() < k as u64 {
        let mut all = Vec::new();
        walker.enumerate(&HashSet::new(), &mut all, usize::MAX);
        return Err(EngineError::InsufficientLanguage { found: all });
    }
    Ok(None)
}

fn attempts(k: usize) -> usize {
    64 * k + 256
}

pub(crate) fn sample_positive(dfa: &Dfa, k: usize, max_len: usize, seed: u64) -> Result<Vec<String>, EngineError> {
    let walker = Walker::new(dfa, max_len);
    precheck(&walker, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for _ in 0..attempts(k) {
        if found.len() >= k {
            break;
        }
        if let Some(w) = walker.walk(&mut rng) {
            if seen.insert(w.clone()) {
                found.push(w);
            }
        }
    }
    finish(&walker, found, k)
}

/// Negatives mix free walks on the complement with near misses: a walk on
/// the original automaton followed by one random edit, kept only when it
/// leaves the language. Near misses probe the boundary of `L(r)` that free
/// walks almost never reach.
pub(crate) fn sample_negative(dfa: &Dfa, k: usize, max_len: usize, seed: u64) -> Result<Vec<String>, EngineError> {
    let complement = dfa.complement();
    let walker = Walker::new(&complement, max_len);
    precheck(&walker, k)?;
    let source = Walker::new(dfa, max_len);
    let source_ok = source.reachable_within(dfa.start(), max_len);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for attempt in 0..attempts(k) {
        if found.len() >= k {
            break;
        }
        let candidate = if source_ok && attempt % 2 == 0 {
            source
                .walk(&mut rng)
                .and_then(|w| near_miss(&source, w, &mut rng))
                .filter(|w| w.chars().count() <= max_len && complement.accepts(w).unwrap_or(false))
        } else {
            walker.walk(&mut rng)
        };
        if let Some(w) = candidate {
            if seen.insert(w.clone()) {
                found.push(w);
            }
        }
    }
    finish(&walker, found, k)
}

fn near_miss(source: &Walker, w: String, rng: &mut ChaCha8Rng) -> Option<String> {
    let mut chars: Vec<char> = w.chars().collect();
    let kind = rng.random_range(0..3);
    match kind {
        0 if !chars.is_empty() => {
            let i = rng.random_range(0..chars.len());
            chars.remove(i);
        }
        1 if !chars.is_empty() => {
            let i = rng.random_range(0..chars.len());
            let b = rng.random_range(0..source.dfa.num_blocks());
            chars[i] = source.char_in_block(b, rng);
        }
        _ => {
            let i = rng.random_range(0..=chars.len());
            let b = rng.random_range(0..source.dfa.num_blocks());
            chars.insert(i, source.char_in_block(b, rng));
        }
    }
    Some(chars.into_iter().collect())
}
