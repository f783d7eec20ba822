use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::regex::validate;

pub const MAX_EDITS: usize = 5;
pub const MAX_ATTEMPTS: usize = 100;

const META: &str = "()[]{}|&~*+?.\\,-^0123456789";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EditKind {
    Insert,
    Delete,
    Modify,
}

/// One character-level edit. `position` is a char index into the string as
/// it was when the edit was applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MutationEdit {
    pub kind: EditKind,
    pub position: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<char>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvalidPair {
    pub invalid: String,
    pub valid: String,
    pub edits: Vec<MutationEdit>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MutationReport {
    pub pairs: Vec<InvalidPair>,
    /// Targets that produced fewer than the requested number of pairs,
    /// with the count actually produced.
    pub shortfall: Vec<(String, usize)>,
}

fn mutate(text: &str, palette: &[char], rng: &mut ChaCha8Rng) -> (String, Vec<MutationEdit>) {
    let mut chars: Vec<char> = text.chars().collect();
    let n = rng.random_range(1..=MAX_EDITS);
    let mut edits = Vec::with_capacity(n);
    for _ in 0..n {
        let kind = match rng.random_range(0..3) {
            _ if chars.is_empty() => EditKind::Insert,
            0 => EditKind::Insert,
            1 => EditKind::Delete,
            _ => EditKind::Modify,
        };
        let edit = match kind {
            EditKind::Insert => {
                let position = rng.random_range(0..=chars.len());
                let c = palette[rng.random_range(0..palette.len())];
                chars.insert(position, c);
                MutationEdit { kind, position, payload: Some(c) }
            }
            EditKind::Delete => {
                let position = rng.random_range(0..chars.len());
                chars.remove(position);
                MutationEdit { kind, position, payload: None }
            }
            EditKind::Modify => {
                let position = rng.random_range(0..chars.len());
                let c = palette[rng.random_range(0..palette.len())];
                chars[position] = c;
                MutationEdit { kind, position, payload: Some(c) }
            }
        };
        edits.push(edit);
    }
    (chars.into_iter().collect(), edits)
}

/// For each target, up to `n_per_target` distinct mutants with 1 to 5
/// string edits that no longer validate. Mutants that still validate are
/// discarded; each pair gets at most `MAX_ATTEMPTS` tries.
pub fn make_invalid_pairs(targets: &[String], n_per_target: usize, seed: u64, alphabet: &Alphabet) -> MutationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MutationReport::default();
    for target in targets {
        let mut palette: Vec<char> = META.chars().chain(target.chars()).collect();
        palette.sort_unstable();
        palette.dedup();
        let mut seen = HashSet::new();
        let mut produced = 0;
        for _ in 0..n_per_target {
            for _ in 0..MAX_ATTEMPTS {
                let (text, edits) = mutate(target, &palette, &mut rng);
                if validate(&text, alphabet) || !seen.insert(text.clone()) {
                    continue;
                }
                report.pairs.push(InvalidPair {
                    invalid: text,
                    valid: target.clone(),
                    edits,
                });
                produced += 1;
                break;
            }
        }
        if produced < n_per_target {
            report.shortfall.push((target.clone(), produced));
        }
    }
    report
}
