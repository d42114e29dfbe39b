//! Largest members of a hereditary family.
//!
//! For a finite set `M` and a hereditary family, "every subset of `M` is a
//! member" is the same as "`M` is a member", so a largest homogeneous set is
//! simply a largest member.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::HereditaryFamily;
use crate::game::{best_response, delta_exact, ConvexMean};
use crate::rational::Rational;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best: ElementSet,
    pub size: usize,
    pub nodes_explored: u64,
    /// The search finished within its node budget, so no member is larger.
    pub optimal: bool,
}

struct Search<'a> {
    sets: &'a [ElementSet],
    n: usize,
    budget: u64,
    nodes: u64,
    best: ElementSet,
    exhausted: bool,
}

impl Search<'_> {
    /// Extends `current` with labels `>= next`. `containers` are the maximal
    /// sets containing `current`.
    fn expand(&mut self, current: &mut ElementSet, next: usize, containers: &[usize]) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let size = current.len();
        if size > self.best.len() {
            self.best = current.clone();
        }
        let mut tail = ElementSet::empty(self.n);
        (next..self.n).for_each(|s| tail.insert(s));
        let bound = size + containers.iter().map(|&i| self.sets[i].intersection_len(&tail)).max().unwrap_or(0);
        if bound <= self.best.len() {
            return;
        }
        for s in next..self.n {
            let inner: Vec<usize> = containers.iter().copied().filter(|&i| self.sets[i].contains(s)).collect();
            if inner.is_empty() {
                continue;
            }
            current.insert(s);
            self.expand(current, s + 1, &inner);
            current.remove(s);
            if self.exhausted {
                return;
            }
        }
    }
}

/// Branch and bound for a largest member, exploring sets in lexicographic
/// order. A node's bound is its size plus the most labels beyond its last
/// label that one maximal set containing it still offers.
///
/// With `optimal = true` the result is the lexicographically smallest member
/// of maximum size. Otherwise it is the best member found within `budget`
/// nodes.
pub fn max_member(fam: &HereditaryFamily, budget: u64) -> SearchResult {
    let n = fam.n();
    let all: Vec<usize> = (0..fam.maximal().len()).collect();
    let mut search =
        Search { sets: fam.maximal(), n, budget: budget.max(1), nodes: 0, best: ElementSet::empty(n), exhausted: false };
    let mut current = ElementSet::empty(n);
    search.expand(&mut current, 0, &all);
    SearchResult {
        size: search.best.len(),
        best: search.best,
        nodes_explored: search.nodes,
        optimal: !search.exhausted,
    }
}

/// Scans `order`, keeping each label whose addition leaves a member.
pub fn greedy_member(fam: &HereditaryFamily, order: &[usize]) -> Result<ElementSet> {
    let n = fam.n();
    let mut seen = alloc::vec![false; n];
    if order.len() != n || order.iter().any(|&s| s >= n || core::mem::replace(&mut seen[s], true)) {
        return Err(Error::InvalidPermutation);
    }
    let mut containers: Vec<&ElementSet> = fam.maximal().iter().collect();
    let mut out = ElementSet::empty(n);
    for &s in order {
        if containers.iter().any(|f| f.contains(s)) {
            containers.retain(|f| f.contains(s));
            out.insert(s);
        }
    }
    Ok(out)
}

/// Size guarantee from the game value: the uniform mean gives some member
/// weight at least `delta`, i.e. at least `delta * n` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtakBound {
    pub delta: Rational,
    pub n: usize,
    /// `⌈delta * n⌉`.
    pub bound: usize,
    /// Size of a largest member.
    pub achieved: usize,
    /// Best response to the uniform mean, a member of size `>= bound`.
    pub witness: ElementSet,
    pub ok: bool,
}

pub fn ptak_bound_check(fam: &HereditaryFamily) -> PtakBound {
    let n = fam.n();
    let delta = delta_exact(fam).delta;
    let bound = (&delta * &Rational::from(n)).ceil();
    let bound = usize::try_from(bound).expect("delta * n <= n");
    let search = max_member(fam, u64::MAX);
    let witness = best_response(fam, ConvexMean::uniform(n).weights()).expect("dimension matches");
    let ok = search.size >= bound && witness.len() >= bound;
    PtakBound { delta, n, bound, achieved: search.size, witness, ok }
}
