//! Finite ground sets and bitset-backed subsets of them.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// The labels `0..n` with `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        Ok(GroundSet(n))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn check(self, label: usize) -> Result<()> {
        if label < self.0 {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange { label, n: self.0 })
        }
    }

    pub fn full(self) -> ElementSet {
        ElementSet::full(self.0)
    }

    pub fn empty(self) -> ElementSet {
        ElementSet::empty(self.0)
    }

    pub fn labels(self) -> core::ops::Range<usize> {
        0..self.0
    }
}

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A subset of `0..universe`.
///
/// Ordering is lexicographic on the ascending label sequence, so `{0} <
/// {0,1} < {0,2} < {1}`; this is the order used for every sorted list of
/// sets in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { universe, words: vec![0; words_for(universe)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in 0..s.words.len() {
            let hi = core::cmp::min(WORD, universe - w * WORD);
            s.words[w] = if hi == WORD { u64::MAX } else { (1u64 << hi) - 1 };
        }
        s
    }

    /// Builds a set from labels, rejecting any label `>= ground.size()`.
    pub fn from_labels<I>(ground: GroundSet, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty(ground.size());
        for l in labels {
            ground.check(l)?;
            s.insert(l);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Panics when `label` is outside the universe.
    pub fn insert(&mut self, label: usize) {
        assert!(label < self.universe, "label {label} outside universe {}", self.universe);
        self.words[label / WORD] |= 1 << (label % WORD);
    }

    pub fn remove(&mut self, label: usize) {
        if label < self.universe {
            self.words[label / WORD] &= !(1 << (label % WORD));
        }
    }

    pub fn contains(&self, label: usize) -> bool {
        label < self.universe && self.words[label / WORD] & (1 << (label % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        ElementSet { universe: self.universe, words }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        ElementSet { universe: self.universe, words }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        ElementSet { universe: self.universe, words }
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Ascending labels.
    pub fn iter(&self) -> Labels<'_> {
        Labels { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The set `{i : bit i of mask is set}` for a universe of at most 64 labels.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD);
        let mut s = Self::empty(universe);
        if universe > 0 {
            s.words[0] = mask & Self::full(universe).words[0];
        }
        s
    }

    /// Bit mask of a set in a universe of at most 64 labels.
    pub fn mask(&self) -> u64 {
        assert!(self.universe <= WORD);
        self.words.first().copied().unwrap_or(0)
    }
}

pub struct Labels<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Labels<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
