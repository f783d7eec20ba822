/// A set of alphabet indices, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) struct SymSet {
    words: Box<[u64]>,
}

impl SymSet {
    pub fn empty(n: usize) -> Self {
        SymSet {
            words: vec![0; n.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        SymSet {
            words: self.words.iter().zip(other.words.iter()).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// Splits `universe` into the coarsest blocks that every set in `sets`
/// either contains or is disjoint from.
pub(crate) fn minterms<'a>(universe: SymSet, sets: impl IntoIterator<Item = &'a SymSet>) -> Vec<SymSet> {
    let mut blocks = vec![universe];
    for s in sets {
        let mut next = Vec::with_capacity(blocks.len() + 1);
        for b in blocks {
            let inside = b.intersection(s);
            let outside = b.difference(s);
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        blocks = next;
    }
    blocks.sort_by_key(|b| b.first());
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let mut a = SymSet::empty(130);
        a.insert(3);
        a.insert(129);
        assert!(a.contains(129) && !a.contains(128));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(SymSet::full(130).difference(&a).len(), 128);
    }

    #[test]
    fn minterms_partition() {
        let mut a = SymSet::empty(4);
        a.insert(0);
        a.insert(1);
        let mut b = SymSet::empty(4);
        b.insert(1);
        b.insert(2);
        let blocks = minterms(SymSet::full(4), [&a, &b]);
        let flat: Vec<Vec<usize>> = blocks.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(flat, vec![vec![0], vec![1], vec![2], vec![3]]);
    }
}
