//! The finite symbol set every regex, example string and automaton is
//! defined over.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one symbol")]
    Empty,
    #[error("duplicate symbol {0:?} in alphabet")]
    Duplicate(char),
}

const NO_INDEX: u16 = u16::MAX;

/// An ordered set of symbols. Symbol indices follow insertion order and are
/// what the engine uses internally.
#[derive(Clone)]
pub struct Alphabet {
    chars: Vec<char>,
    ascii: [u16; 128],
    other: HashMap<char, u16>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(chars: I) -> Result<Self, AlphabetError> {
        let mut alphabet = Alphabet {
            chars: Vec::new(),
            ascii: [NO_INDEX; 128],
            other: HashMap::new(),
        };
        for c in chars {
            if alphabet.contains(c) {
                return Err(AlphabetError::Duplicate(c));
            }
            let idx = alphabet.chars.len() as u16;
            if (c as u32) < 128 {
                alphabet.ascii[c as usize] = idx;
            } else {
                alphabet.other.insert(c, idx);
            }
            alphabet.chars.push(c);
        }
        if alphabet.chars.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(alphabet)
    }

    /// Printable ASCII, 0x20 through 0x7E.
    pub fn printable_ascii() -> Self {
        Self::new((0x20u8..=0x7e).map(char::from)).expect("printable ASCII is a valid alphabet")
    }

    #[inline]
    pub fn index_of(&self, c: char) -> Option<usize> {
        let idx = if (c as u32) < 128 {
            self.ascii[c as usize]
        } else {
            *self.other.get(&c).unwrap_or(&NO_INDEX)
        };
        (idx != NO_INDEX).then_some(idx as usize)
    }

    #[inline]
    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    #[inline]
    pub fn symbol(&self, idx: usize) -> char {
        self.chars[idx]
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    /// First character of `s` that is not a member, if any.
    pub fn first_foreign(&self, s: &str) -> Option<char> {
        s.chars().find(|&c| !self.contains(c))
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::printable_ascii()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.chars == other.chars
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.chars.iter().collect();
        f.debug_tuple("Alphabet").field(&s).finish()
    }
}
