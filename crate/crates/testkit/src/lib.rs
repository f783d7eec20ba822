//! Independent oracles and generators for the regexmend test suites.
//!
//! Nothing here goes through the derivative engine. Membership is decided
//! by dynamic programming over spans of the input, and bounded languages
//! are computed bottom-up as bitsets over all short strings.

use rand::Rng;
use regexmend::regex::{CharClass, Regex};

/// Whether `c` is in the class, with dot and negation taken relative to
/// `alphabet`.
fn class_has(class: &CharClass, c: char, alphabet: &[char]) -> bool {
    if !alphabet.contains(&c) {
        return false;
    }
    class.dot || class.matches(c)
}

/// Span table: `m[i][j]` says whether w[i..j] is in the language.
type Spans = Vec<Vec<bool>>;

fn compose(a: &Spans, b: &Spans) -> Spans {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in i..n {
            if a[i][k] {
                for j in k..n {
                    if b[k][j] {
                        out[i][j] = true;
                    }
                }
            }
        }
    }
    out
}

fn identity(n: usize) -> Spans {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    m
}

fn union_into(acc: &mut Spans, other: &Spans) {
    for (r, o) in acc.iter_mut().zip(other) {
        for (x, y) in r.iter_mut().zip(o) {
            *x |= *y;
        }
    }
}

fn spans(r: &Regex, w: &[char], alphabet: &[char]) -> Spans {
    let n = w.len() + 1;
    let mut m = vec![vec![false; n]; n];
    match r {
        Regex::Empty => {}
        Regex::Epsilon => m = identity(n),
        Regex::Literal(c) => {
            for i in 0..w.len() {
                m[i][i + 1] = w[i] == *c && alphabet.contains(c);
            }
        }
        Regex::Class(class) => {
            for i in 0..w.len() {
                m[i][i + 1] = class_has(class, w[i], alphabet);
            }
        }
        Regex::Const(s) => {
            let s: Vec<char> = s.chars().collect();
            for i in 0..n {
                if i + s.len() < n && w[i..i + s.len()] == s[..] {
                    m[i][i + s.len()] = true;
                }
            }
        }
        Regex::Group(a) => m = spans(a, w, alphabet),
        Regex::Concat(a, b) => m = compose(&spans(a, w, alphabet), &spans(b, w, alphabet)),
        Regex::Alt(a, b) => {
            m = spans(a, w, alphabet);
            union_into(&mut m, &spans(b, w, alphabet));
        }
        Regex::And(a, b) => {
            let (x, y) = (spans(a, w, alphabet), spans(b, w, alphabet));
            for i in 0..n {
                for j in i..n {
                    m[i][j] = x[i][j] && y[i][j];
                }
            }
        }
        Regex::Not(a) => {
            let x = spans(a, w, alphabet);
            for i in 0..n {
                for j in i..n {
                    m[i][j] = !x[i][j] && w[i..j].iter().all(|c| alphabet.contains(c));
                }
            }
        }
        Regex::Repeat { child, min, max, .. } => {
            let c = spans(child, w, alphabet);
            // More than |w| + 1 extra rounds cannot reach a new span.
            let mut power = identity(n);
            for _ in 0..*min {
                power = compose(&power, &c);
            }
            m = power.clone();
            let extra = match max {
                Some(mx) => (mx - min) as usize,
                None => n + 1,
            };
            let mut cur = power;
            for _ in 0..extra.min(n + 1) {
                cur = compose(&cur, &c);
                union_into(&mut m, &cur);
            }
        }
    }
    m
}

/// Brute-force membership of `w` in `L(r)` over `alphabet`.
pub fn brute_matches(r: &Regex, w: &str, alphabet: &[char]) -> bool {
    let w: Vec<char> = w.chars().collect();
    if w.iter().any(|c| !alphabet.contains(c)) {
        return false;
    }
    spans(r, &w, alphabet)[0][w.len()]
}

/// All strings over an alphabet up to a length bound, in shortlex order,
/// with languages represented as bitsets over that list.
pub struct BoundedStrings {
    alphabet: Vec<char>,
    strings: Vec<String>,
    /// `splits[i]` lists (j, k) with strings[j] + strings[k] = strings[i].
    splits: Vec<Vec<(usize, usize)>>,
}

pub type Lang = Vec<u64>;

impl BoundedStrings {
    pub fn new(alphabet: &[char], max_len: usize) -> Self {
        let mut strings = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let next: Vec<String> = layer
                .iter()
                .flat_map(|s| alphabet.iter().map(move |c| format!("{s}{c}")))
                .collect();
            strings.extend(next.iter().cloned());
            layer = next;
        }
        let index: std::collections::HashMap<&str, usize> =
            strings.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let splits = strings
            .iter()
            .map(|s| {
                let cut: Vec<usize> = s.char_indices().map(|(b, _)| b).chain([s.len()]).collect();
                cut.iter().map(|&b| (index[&s[..b]], index[&s[b..]])).collect()
            })
            .collect();
        BoundedStrings {
            alphabet: alphabet.to_vec(),
            strings,
            splits,
        }
    }

    pub fn strings(&self) -> &[String] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    fn words(&self) -> usize {
        self.strings.len().div_ceil(64)
    }

    fn empty(&self) -> Lang {
        vec![0; self.words()]
    }

    fn full(&self) -> Lang {
        let mut l = self.empty();
        for i in 0..self.len() {
            set(&mut l, i);
        }
        l
    }

    fn concat(&self, a: &Lang, b: &Lang) -> Lang {
        let mut out = self.empty();
        for (i, sp) in self.splits.iter().enumerate() {
            if sp.iter().any(|&(j, k)| get(a, j) && get(b, k)) {
                set(&mut out, i);
            }
        }
        out
    }

    /// Language of `r` truncated to the bounded strings.
    pub fn lang(&self, r: &Regex) -> Lang {
        match r {
            Regex::Empty => self.empty(),
            Regex::Epsilon => {
                let mut l = self.empty();
                set(&mut l, 0);
                l
            }
            Regex::Literal(_) | Regex::Class(_) | Regex::Const(_) => {
                // A single-character leaf only matches strings of length one.
                let mut l = self.empty();
                let ones = self.strings.iter().enumerate().skip(1).take(self.alphabet.len());
                for (i, s) in ones {
                    if brute_matches(r, s, &self.alphabet) {
                        set(&mut l, i);
                    }
                }
                l
            }
            Regex::Group(a) => self.lang(a),
            Regex::Concat(a, b) => self.concat(&self.lang(a), &self.lang(b)),
            Regex::Alt(a, b) => zip(&self.lang(a), &self.lang(b), |x, y| x | y),
            Regex::And(a, b) => zip(&self.lang(a), &self.lang(b), |x, y| x & y),
            Regex::Not(a) => zip(&self.full(), &self.lang(a), |x, y| x & !y),
            Regex::Repeat { child, min, max, .. } => {
                let c = self.lang(child);
                let mut eps = self.empty();
                set(&mut eps, 0);
                let mut power = eps;
                for _ in 0..*min {
                    power = self.concat(&power, &c);
                }
                let mut acc = power.clone();
                match max {
                    // Past max_len + 1 extra rounds the powers are either
                    // empty or saturated.
                    Some(mx) => {
                        let max_len = self.strings.last().map_or(0, |s| s.chars().count());
                        for _ in 0..(mx - min).min(max_len as u32 + 1) {
                            power = self.concat(&power, &c);
                            acc = zip(&acc, &power, |x, y| x | y);
                        }
                    }
                    None => loop {
                        let next = zip(&acc, &self.concat(&acc, &c), |x, y| x | y);
                        if next == acc {
                            break;
                        }
                        acc = next;
                    },
                }
                acc
            }
        }
    }

    pub fn contains(&self, l: &Lang, i: usize) -> bool {
        get(l, i)
    }
}

fn get(l: &Lang, i: usize) -> bool {
    l[i / 64] >> (i % 64) & 1 == 1
}

fn set(l: &mut Lang, i: usize) {
    l[i / 64] |= 1 << (i % 64);
}

fn zip(a: &Lang, b: &Lang, f: impl Fn(u64, u64) -> u64) -> Lang {
    a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unary {
    Not,
    Repeat(u32, Option<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binary {
    Concat,
    Alt,
    And,
}

/// Every regex tree up to a node budget, addressable by index so callers
/// can walk the space without holding it in memory.
pub struct RegexSpace {
    leaves: Vec<Regex>,
    unary: Vec<Unary>,
    binary: Vec<Binary>,
    counts: Vec<u64>,
}

impl RegexSpace {
    pub fn new(leaves: Vec<Regex>, unary: Vec<Unary>, binary: Vec<Binary>, max_size: usize) -> Self {
        let mut counts = vec![0u64; max_size + 1];
        for n in 1..=max_size {
            counts[n] = if n == 1 {
                leaves.len() as u64
            } else {
                let mut c = unary.len() as u64 * counts[n - 1];
                for i in 1..n - 1 {
                    c += binary.len() as u64 * counts[i] * counts[n - 1 - i];
                }
                c
            };
        }
        RegexSpace {
            leaves,
            unary,
            binary,
            counts,
        }
    }

    /// Trees with exactly `size` nodes.
    pub fn count(&self, size: usize) -> u64 {
        self.counts[size]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn get(&self, size: usize, mut idx: u64) -> Regex {
        assert!(idx < self.counts[size]);
        if size == 1 {
            return self.leaves[idx as usize].clone();
        }
        let unary_block = self.counts[size - 1];
        if idx < self.unary.len() as u64 * unary_block {
            let child = self.get(size - 1, idx % unary_block);
            return match self.unary[(idx / unary_block) as usize] {
                Unary::Not => Regex::not(child),
                Unary::Repeat(lo, hi) => Regex::repeat(child, lo, hi),
            };
        }
        idx -= self.unary.len() as u64 * unary_block;
        for &op in &self.binary {
            for left in 1..size - 1 {
                let right = size - 1 - left;
                let block = self.counts[left] * self.counts[right];
                if idx < block {
                    let a = self.get(left, idx / self.counts[right]);
                    let b = self.get(right, idx % self.counts[right]);
                    return match op {
                        Binary::Concat => Regex::concat(a, b),
                        Binary::Alt => Regex::alt(a, b),
                        Binary::And => Regex::and(a, b),
                    };
                }
                idx -= block;
            }
        }
        unreachable!("index within count")
    }

    /// Iterator over every (size, index) pair, smallest trees first.
    pub fn indices(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        (1..self.counts.len()).flat_map(move |s| (0..self.counts[s]).map(move |i| (s, i)))
    }
}

/// Random regex with roughly `budget` nodes over `alphabet`, using every
/// operator including `&` and `~`. Bounds stay small.
pub fn random_regex<R: Rng>(rng: &mut R, alphabet: &[char], budget: usize) -> Regex {
    if budget <= 1 {
        return match rng.random_range(0..10) {
            0 => Regex::Epsilon,
            1 => Regex::Class(CharClass::of(alphabet.iter().copied().filter(|_| rng.random_bool(0.5)).chain([alphabet[0]]))),
            _ => Regex::literal(alphabet[rng.random_range(0..alphabet.len())]),
        };
    }
    match rng.random_range(0..9) {
        0 | 1 | 2 => {
            let left = rng.random_range(1..budget);
            Regex::concat(
                random_regex(rng, alphabet, left),
                random_regex(rng, alphabet, budget - left),
            )
        }
        3 | 4 => {
            let left = rng.random_range(1..budget);
            Regex::alt(
                random_regex(rng, alphabet, left),
                random_regex(rng, alphabet, budget - left),
            )
        }
        5 => {
            let left = rng.random_range(1..budget);
            Regex::and(
                random_regex(rng, alphabet, left),
                random_regex(rng, alphabet, budget - left),
            )
        }
        6 => Regex::not(random_regex(rng, alphabet, budget - 1)),
        _ => {
            let min = rng.random_range(0..3);
            let max = match rng.random_range(0..3) {
                0 => None,
                _ => Some(min + rng.random_range(0..3)),
            };
            Regex::repeat(random_regex(rng, alphabet, budget - 1), min, max)
        }
    }
}

/// Random string over `alphabet` with length in `0..=max_len`.
pub fn random_string<R: Rng>(rng: &mut R, alphabet: &[char], max_len: usize) -> String {
    let n = rng.random_range(0..=max_len);
    (0..n).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect()
}

/// Levenshtein distance over chars.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut cur = vec![i; b.len() + 1];
        for j in 1..=b.len() {
            let sub = prev[j - 1] + (a[i - 1] != b[j - 1]) as usize;
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

/// Drop every object key starting with `elapsed`, recursively, so reports
/// can be compared byte for byte.
pub fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.retain(|k, _| !k.starts_with("elapsed"));
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Path of a shared fixture file under the workspace `fixtures/` directory.
pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<char> {
        vec!['a', 'b']
    }

    #[test]
    fn span_oracle_basics() {
        let a = Regex::literal('a');
        let b = Regex::literal('b');
        let ab_star = Regex::star(Regex::concat(a.clone(), b.clone()));
        assert!(brute_matches(&ab_star, "", &ab()));
        assert!(brute_matches(&ab_star, "abab", &ab()));
        assert!(!brute_matches(&ab_star, "aba", &ab()));
        let not_a = Regex::not(a.clone());
        assert!(brute_matches(&not_a, "", &ab()));
        assert!(!brute_matches(&not_a, "a", &ab()));
        assert!(brute_matches(&not_a, "aa", &ab()));
        let two_three = Regex::repeat(a, 2, Some(3));
        let hits: Vec<bool> = ["a", "aa", "aaa", "aaaa"].iter().map(|w| brute_matches(&two_three, w, &ab())).collect();
        assert_eq!(hits, [false, true, true, false]);
    }

    #[test]
    fn bounded_lang_agrees_with_spans() {
        let space = BoundedStrings::new(&ab(), 4);
        assert_eq!(space.len(), 31);
        let r = Regex::and(
            Regex::not(Regex::star(Regex::literal('a'))),
            Regex::repeat(Regex::Class(CharClass::of(ab())), 1, Some(3)),
        );
        let l = space.lang(&r);
        for (i, s) in space.strings().iter().enumerate() {
            assert_eq!(space.contains(&l, i), brute_matches(&r, s, &ab()), "{s}");
        }
    }

    #[test]
    fn space_counts_and_unranking() {
        let space = RegexSpace::new(
            vec![Regex::literal('a'), Regex::Epsilon],
            vec![Unary::Not],
            vec![Binary::Concat],
            3,
        );
        // size 1: 2, size 2: 2, size 3: 2 + 4
        assert_eq!((space.count(1), space.count(2), space.count(3)), (2, 2, 6));
        let all: std::collections::BTreeSet<Regex> = space.indices().map(|(s, i)| space.get(s, i)).collect();
        assert_eq!(all.len() as u64, space.total());
        assert!(space.indices().all(|(s, i)| space.get(s, i).ast_size() == s));
    }

    #[test]
    fn levenshtein() {
        assert_eq!(edit_distance("ab{1,3}", "ab{1,,3}"), 1);
        assert_eq!(edit_distance("", "abc"), 3);
        assert_eq!(edit_distance("kitten", "sitting"), 3);
    }
}
