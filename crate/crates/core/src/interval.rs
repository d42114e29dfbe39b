//! Families generated by systems of interval sets in `[0, 1]`.
//!
//! Each label `s` carries a finite union `C_s` of closed intervals with
//! rational endpoints. The trace family consists of the index sets `A` with
//! `∩_{s ∈ A} C_s ≠ ∅`; it is hereditary, and by the averaging argument
//! `Σ_s λ(s) 𝓛(C_s) = ∫ Σ_{s : x ∈ C_s} λ(s) dx` its game value is at least
//! `min_s 𝓛(C_s)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};
use crate::family::HereditaryFamily;
use crate::game::delta_exact;
use crate::random::rng;
use crate::rational::Rational;
use crate::set::{ElementSet, GroundSet};

/// A canonical finite union of closed intervals `[a, b] ⊆ [0, 1]`: pieces
/// sorted, with a positive gap between consecutive pieces. Single points
/// `[a, a]` are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    pieces: Vec<(Rational, Rational)>,
}

fn check_piece(a: &Rational, b: &Rational) -> Result<()> {
    if a.is_negative() || *b > Rational::one() || a > b {
        return Err(Error::InvalidInterval(format!("[{a}, {b}] is not a sub-interval of [0, 1]")));
    }
    Ok(())
}

impl IntervalSet {
    /// Accepts only canonical input.
    pub fn new(pieces: Vec<(Rational, Rational)>) -> Result<Self> {
        for (a, b) in &pieces {
            check_piece(a, b)?;
        }
        for w in pieces.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err(Error::InvalidInterval(format!(
                    "pieces [{}, {}] and [{}, {}] are unsorted, overlapping or touching",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(IntervalSet { pieces })
    }

    /// Sorts the pieces and merges any that overlap or touch.
    pub fn canonicalize(mut pieces: Vec<(Rational, Rational)>) -> Result<Self> {
        for (a, b) in &pieces {
            check_piece(a, b)?;
        }
        pieces.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(pieces.len());
        for (a, b) in pieces {
            match merged.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        Ok(IntervalSet { pieces: merged })
    }

    pub fn unit() -> Self {
        IntervalSet { pieces: alloc::vec![(Rational::zero(), Rational::one())] }
    }

    pub fn empty() -> Self {
        IntervalSet { pieces: Vec::new() }
    }

    pub fn pieces(&self) -> &[(Rational, Rational)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Lebesgue measure `Σ (b - a)`.
    pub fn measure(&self) -> Rational {
        self.pieces.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|(a, b)| a <= x && x <= b)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.pieces.len() && j < other.pieces.len() {
            let (a1, b1) = &self.pieces[i];
            let (a2, b2) = &other.pieces[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo <= hi {
                out.push((lo.clone(), hi.clone()));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Intersections of canonical sets are separated by the gaps of both inputs.
        IntervalSet { pieces: out }
    }
}

/// Measure of a list of pieces, which must already be canonical.
pub fn measure(pieces: &[(Rational, Rational)]) -> Result<Rational> {
    Ok(IntervalSet::new(pieces.to_vec())?.measure())
}

/// One interval set per label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalSystem {
    sets: Vec<IntervalSet>,
}

impl IntervalSystem {
    pub fn new(sets: Vec<IntervalSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptyGround);
        }
        Ok(IntervalSystem { sets })
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[IntervalSet] {
        &self.sets
    }

    /// `∩_{s ∈ labels} C_s`, or `[0, 1]` for no labels.
    pub fn common_part(&self, labels: impl IntoIterator<Item = usize>) -> IntervalSet {
        labels.into_iter().fold(IntervalSet::unit(), |acc, s| acc.intersection(&self.sets[s]))
    }
}

/// The family `{A : ∩_{s ∈ A} C_s ≠ ∅}` as its maximal antichain.
///
/// Sweeps the elementary regions cut out by all endpoints: every endpoint
/// and one interior point of every gap between consecutive endpoints. Every
/// point of `[0, 1]` has the same stabiliser `{s : x ∈ C_s}` as one of these
/// samples, so the maximal stabilisers are the maximal members.
pub fn trace_family(sys: &IntervalSystem) -> HereditaryFamily {
    let n = sys.n();
    let ground = GroundSet::new(n).expect("systems are non-empty");
    let endpoints: BTreeSet<&Rational> = sys.sets.iter().flat_map(|c| c.pieces.iter().flat_map(|(a, b)| [a, b])).collect();
    let endpoints: Vec<&Rational> = endpoints.into_iter().collect();
    let two = Rational::from_integer(2);
    let mut samples: Vec<Rational> = endpoints.iter().map(|&p| p.clone()).collect();
    samples.extend(endpoints.windows(2).map(|w| (w[0] + w[1]) / two.clone()));

    let stabilisers = samples.iter().map(|x| {
        let mut s = ElementSet::empty(n);
        for (label, c) in sys.sets.iter().enumerate() {
            if c.contains(x) {
                s.insert(label);
            }
        }
        s
    });
    HereditaryFamily::closure(ground, stabilisers).expect("labels are in range")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureBound {
    /// `min_s 𝓛(C_s)`.
    pub bound: Rational,
    /// Game value of the trace family.
    pub delta: Rational,
    /// `delta >= bound`.
    pub ok: bool,
}

pub fn measure_lower_bound(sys: &IntervalSystem) -> MeasureBound {
    let bound = sys.sets.iter().map(IntervalSet::measure).min().expect("systems are non-empty");
    let delta = delta_exact(&trace_family(sys)).delta;
    let ok = delta >= bound;
    MeasureBound { bound, delta, ok }
}

/// Largest system [`helly_check`] will verify exhaustively.
pub const HELLY_MAX_N: usize = 16;

/// For single-interval systems: `A` is a member of the trace family iff the
/// intervals of `A` pairwise intersect. Checked over every `A`.
pub fn helly_check(sys: &IntervalSystem) -> Result<bool> {
    let n = sys.n();
    if let Some(s) = sys.sets.iter().position(|c| c.pieces.len() != 1) {
        return Err(Error::NotSingleInterval(s));
    }
    if n > HELLY_MAX_N {
        return Err(Error::ScaleExceeded(format!("{n} intervals (limit {HELLY_MAX_N})")));
    }
    let fam = trace_family(sys);
    let meets: Vec<u64> = (0..n)
        .map(|s| {
            (0..n)
                .filter(|&t| !sys.sets[s].intersection(&sys.sets[t]).is_empty())
                .fold(0u64, |m, t| m | 1 << t)
        })
        .collect();
    for mask in 0u64..(1 << n) {
        let pairwise = (0..n).filter(|s| mask >> s & 1 == 1).all(|s| mask & !meets[s] == 0);
        let member = fam.membership(&ElementSet::from_mask(n, mask))?;
        if member != pairwise {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Endpoints of generated systems are multiples of `1 / GRID`.
pub const GRID: i64 = 1000;

/// A reproducible random system: `n` sets, each built from `pieces_per_set`
/// pieces on the grid `{k / 1000}` with total length at least
/// `min_measure`. Pieces that happen to touch are merged.
pub fn random_system(seed: u64, n: usize, pieces_per_set: usize, min_measure: &Rational) -> Result<IntervalSystem> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if pieces_per_set == 0 {
        return Err(Error::InvalidParameters("pieces per set must be at least 1".into()));
    }
    if min_measure.is_negative() || *min_measure > Rational::one() {
        return Err(Error::InvalidParameters(format!("min measure {min_measure} is outside [0, 1]")));
    }
    let min_units = (min_measure * &Rational::from_integer(GRID)).ceil().to_i64().expect("at most GRID");
    let mut rng = rng(seed);
    let mut sets = Vec::with_capacity(n);
    for _ in 0..n {
        let length = rng.gen_range(min_units..=GRID);
        let lengths = composition(&mut rng, length, pieces_per_set);
        let gaps = composition(&mut rng, GRID - length, pieces_per_set + 1);
        let mut pos = gaps[0];
        let mut pieces = Vec::with_capacity(pieces_per_set);
        for (len, gap) in lengths.iter().zip(&gaps[1..]) {
            pieces.push((Rational::new(pos, GRID), Rational::new(pos + len, GRID)));
            pos += len + gap;
        }
        sets.push(IntervalSet::canonicalize(pieces)?);
    }
    IntervalSystem::new(sets)
}

/// `parts` non-negative integers summing to `total`.
fn composition<R: Rng>(rng: &mut R, total: i64, parts: usize) -> Vec<i64> {
    let mut cuts: Vec<i64> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(total - prev);
    out
}
