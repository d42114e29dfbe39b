//! Hereditary families stored as antichains of maximal members.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::cliques::Graph;
use crate::error::{Error, Result};
use crate::interval::{trace_family, IntervalSystem};
use crate::set::{ElementSet, GroundSet};

/// A downward-closed family of subsets of a finite ground set.
///
/// Only the inclusion-maximal members are stored, pairwise incomparable and
/// sorted lexicographically. A set is a member iff it is empty or contained
/// in one of them; an empty antichain is the family `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HereditaryFamily {
    ground: GroundSet,
    maximal: Vec<ElementSet>,
}

/// Result of restricting a family to a subset `H` of its ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// The traced family on the ground set `0..|H|`.
    pub family: HereditaryFamily,
    /// `labels[i]` is the original label of new label `i` (ascending).
    pub labels: Vec<usize>,
}

/// Descriptor from which a family can be generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Downward closure of the listed sets.
    Explicit { n: usize, sets: Vec<Vec<usize>> },
    /// All sets with at most `k` elements.
    CardinalityBound { n: usize, k: usize },
    /// Cliques of a simple graph.
    GraphCliques { n: usize, edges: Vec<(usize, usize)> },
    /// Independent sets of a simple graph.
    GraphIndependent { n: usize, edges: Vec<(usize, usize)> },
    /// Index sets of interval sets with a common point.
    IntervalTrace(IntervalSystem),
}

fn check_set(ground: GroundSet, set: &ElementSet) -> Result<()> {
    if set.universe() == ground.size() {
        return Ok(());
    }
    // Different universe: only acceptable if every label is in range.
    for l in set.iter() {
        ground.check(l)?;
    }
    Ok(())
}

fn rebase(ground: GroundSet, set: &ElementSet) -> Result<ElementSet> {
    if set.universe() == ground.size() {
        Ok(set.clone())
    } else {
        ElementSet::from_labels(ground, set.iter())
    }
}

impl HereditaryFamily {
    /// The downward closure of `sets`, canonicalised to its maximal antichain.
    pub fn closure<I>(ground: GroundSet, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let mut distinct = BTreeSet::new();
        for s in sets {
            check_set(ground, &s)?;
            let s = rebase(ground, &s)?;
            if !s.is_empty() {
                distinct.insert(s);
            }
        }
        let mut by_size: Vec<ElementSet> = distinct.into_iter().collect();
        by_size.sort_by_key(|s| core::cmp::Reverse(s.len()));
        let mut maximal: Vec<ElementSet> = Vec::with_capacity(by_size.len());
        for s in by_size {
            // Sets are distinct and visited by non-increasing size, so `s` is
            // dominated only by a strict superset already kept.
            if !maximal.iter().any(|m| s.is_subset(m)) {
                maximal.push(s);
            }
        }
        maximal.sort();
        Ok(HereditaryFamily { ground, maximal })
    }

    /// Closure of sets given as label lists on the ground set `0..n`.
    pub fn from_label_sets<S: AsRef<[usize]>>(n: usize, sets: &[S]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let sets = sets
            .iter()
            .map(|s| ElementSet::from_labels(ground, s.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::closure(ground, sets)
    }

    /// The whole power set of `0..n`.
    pub fn full_powerset(ground: GroundSet) -> Self {
        HereditaryFamily { ground, maximal: alloc::vec![ground.full()] }
    }

    /// The family `{∅}`.
    pub fn trivial(ground: GroundSet) -> Self {
        HereditaryFamily { ground, maximal: Vec::new() }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn maximal(&self) -> &[ElementSet] {
        &self.maximal
    }

    pub fn membership(&self, set: &ElementSet) -> Result<bool> {
        check_set(self.ground, set)?;
        let set = rebase(self.ground, set)?;
        Ok(set.is_empty() || self.maximal.iter().any(|m| set.is_subset(m)))
    }

    /// Labels lying in no member.
    pub fn uncovered(&self) -> impl Iterator<Item = usize> + '_ {
        self.ground.labels().filter(move |&s| !self.maximal.iter().any(|m| m.contains(s)))
    }

    /// Restriction `{F ∩ H : F ∈ fam}`, relabelled densely onto `0..|H|`.
    pub fn trace(&self, subset: &ElementSet) -> Result<Trace> {
        check_set(self.ground, subset)?;
        let labels = subset.to_vec();
        let ground = GroundSet::new(labels.len())?;
        let mut relabel = alloc::vec![usize::MAX; self.n()];
        for (new, &old) in labels.iter().enumerate() {
            relabel[old] = new;
        }
        let traced = self.maximal.iter().map(|m| {
            let mut s = ground.empty();
            for l in m.iter().filter(|&l| relabel[l] != usize::MAX) {
                s.insert(relabel[l]);
            }
            s
        });
        Ok(Trace { family: Self::closure(ground, traced)?, labels })
    }

    /// Every member `B` with `M ⊆ B`, sorted. For a maximal `M` this is `[M]`.
    pub fn maximal_up_set(&self, member: &ElementSet) -> Result<Vec<ElementSet>> {
        if !self.membership(member)? {
            return Err(Error::NotAMember);
        }
        let member = rebase(self.ground, member)?;
        let mut found = BTreeSet::new();
        for top in self.maximal.iter().filter(|m| member.is_subset(m)) {
            let free = top.difference(&member).to_vec();
            if free.len() >= usize::BITS as usize {
                return Err(Error::ScaleExceeded(format!("{} free labels above the member", free.len())));
            }
            for mask in 0usize..(1 << free.len()) {
                let mut b = member.clone();
                for (i, &l) in free.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        b.insert(l);
                    }
                }
                found.insert(b);
            }
        }
        if member.is_empty() && self.maximal.is_empty() {
            found.insert(member);
        }
        Ok(found.into_iter().collect())
    }

    /// True iff the whole ground set is a member.
    pub fn is_full_powerset(&self) -> bool {
        self.maximal.len() == 1 && self.maximal[0].len() == self.n()
    }

    /// Largest member cardinality (0 for `{∅}`).
    pub fn max_member_size(&self) -> usize {
        self.maximal.iter().map(ElementSet::len).max().unwrap_or(0)
    }

    /// Adds a set and re-canonicalises.
    pub fn with_set(&self, set: ElementSet) -> Result<Self> {
        Self::closure(self.ground, self.maximal.iter().cloned().chain(core::iter::once(set)))
    }
}

fn check_edges(n: usize, edges: &[(usize, usize)]) -> Result<()> {
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::MalformedSpec(format!("edge ({u}, {v}) references a label >= {n}")));
        }
        if u == v {
            return Err(Error::MalformedSpec(format!("self-loop at {u}")));
        }
    }
    Ok(())
}

fn k_subsets(n: usize, k: usize) -> Vec<ElementSet> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut s = ElementSet::empty(n);
        idx.iter().for_each(|&i| s.insert(i));
        out.push(s);
        // Advance to the next combination in lexicographic order.
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl FamilySpec {
    pub fn realize(&self) -> Result<HereditaryFamily> {
        let ground = |n: usize| GroundSet::new(n).map_err(|_| Error::MalformedSpec("n must be at least 1".into()));
        match self {
            FamilySpec::Explicit { n, sets } => {
                ground(*n)?;
                HereditaryFamily::from_label_sets(*n, sets)
            }
            FamilySpec::CardinalityBound { n, k } => {
                let g = ground(*n)?;
                if k > n {
                    return Err(Error::MalformedSpec(format!("k = {k} exceeds n = {n}")));
                }
                if *k == 0 {
                    return Ok(HereditaryFamily::trivial(g));
                }
                Ok(HereditaryFamily { ground: g, maximal: k_subsets(*n, *k) })
            }
            FamilySpec::GraphCliques { n, edges } => {
                let g = ground(*n)?;
                check_edges(*n, edges)?;
                Ok(HereditaryFamily { ground: g, maximal: Graph::new(*n, edges).maximal_cliques() })
            }
            FamilySpec::GraphIndependent { n, edges } => {
                let g = ground(*n)?;
                check_edges(*n, edges)?;
                let maximal = Graph::new(*n, edges).complement().maximal_cliques();
                Ok(HereditaryFamily { ground: g, maximal })
            }
            FamilySpec::IntervalTrace(system) => Ok(trace_family(system)),
        }
    }

    /// Edges of the cycle `0-1-…-(n-1)-0`.
    pub fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
        match n {
            0 | 1 => Vec::new(),
            2 => alloc::vec![(0, 1)],
            _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        }
    }

    /// Edges of the complete graph on `0..n`.
    pub fn complete_edges(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }
}
