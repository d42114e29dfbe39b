//! The family norm `‖x‖ = max_{F ∈ fam} |Σ_{s ∈ F} x(s)|` and its
//! equivalence with the ℓ1 norm.
//!
//! Because the family is hereditary, the best member for `x` is obtained from
//! a maximal set `F` by keeping only its positive (or only its negative)
//! coordinates, so the maximum over all members reduces to a sign split of
//! each maximal set.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::HereditaryFamily;
use crate::game::delta_exact;
use crate::lp::{Outcome, Tableau};
use crate::rational::Rational;

/// A dense rational vector indexed by the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVector {
    coords: Vec<Rational>,
}

impl FamilyVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        FamilyVector { coords }
    }

    pub fn unit(n: usize, at: usize) -> Self {
        let mut coords = vec![Rational::zero(); n];
        coords[at] = Rational::one();
        FamilyVector { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn l1(&self) -> Rational {
        self.coords.iter().map(Rational::abs).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }
}

fn check_dim(fam: &HereditaryFamily, x: &FamilyVector) -> Result<()> {
    if x.coords.len() != fam.n() {
        return Err(Error::DimensionMismatch { expected: fam.n(), got: x.coords.len() });
    }
    Ok(())
}

pub fn f_norm(fam: &HereditaryFamily, x: &FamilyVector) -> Result<Rational> {
    check_dim(fam, x)?;
    let mut best = Rational::zero();
    for f in fam.maximal() {
        let (mut pos, mut neg) = (Rational::zero(), Rational::zero());
        for c in f.iter().map(|s| &x.coords[s]) {
            if c.is_positive() {
                pos += c;
            } else if c.is_negative() {
                neg -= c;
            }
        }
        best = best.max(pos).max(neg);
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub l1: Rational,
    pub fnorm: Rational,
    pub delta: Rational,
    /// `(delta / 2) * ‖x‖₁ <= ‖x‖`.
    pub lower_ok: bool,
    /// `‖x‖ <= ‖x‖₁`.
    pub upper_ok: bool,
    /// `delta * ‖x‖₁ <= ‖x‖`, checked only for `x >= 0`.
    pub nonneg_ok: Option<bool>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.lower_ok && self.upper_ok && self.nonneg_ok.unwrap_or(true)
    }
}

/// Checks `(δ/2)‖x‖₁ <= ‖x‖ <= ‖x‖₁`, and `δ‖x‖₁ <= ‖x‖` when `x >= 0`.
pub fn check_equivalence(fam: &HereditaryFamily, x: &FamilyVector) -> Result<EquivalenceReport> {
    let delta = delta_exact(fam).delta;
    check_equivalence_with(fam, x, delta)
}

/// [`check_equivalence`] with a precomputed `delta`.
pub fn check_equivalence_with(fam: &HereditaryFamily, x: &FamilyVector, delta: Rational) -> Result<EquivalenceReport> {
    check_dim(fam, x)?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let l1 = x.l1();
    let fnorm = f_norm(fam, x)?;
    let lower_ok = &delta * &l1 / Rational::from_integer(2) <= fnorm;
    let upper_ok = fnorm <= l1;
    let nonneg_ok = x.is_nonneg().then(|| &delta * &l1 <= fnorm);
    Ok(EquivalenceReport { l1, fnorm, delta, lower_ok, upper_ok, nonneg_ok })
}

/// `min ‖x‖ / ‖x‖₁` over non-zero `x >= 0`.
///
/// By homogeneity this is `min t` subject to `Σ_{s ∈ F} x_s <= t` for every
/// maximal `F`, `Σ x_s = 1`, `x >= 0`, solved here directly by two-phase
/// simplex. It is an independent route to the same number as
/// [`delta_exact`], which solves the packing reformulation instead.
pub fn min_ratio_nonneg(fam: &HereditaryFamily) -> Rational {
    let n = fam.n();
    let m = fam.maximal().len();
    // Columns: x_0..x_{n-1}, t, one slack per maximal set, one artificial.
    let t_col = n;
    let artificial = n + 1 + m;
    let cols = artificial + 1;
    let mut a = Vec::with_capacity(m + 1);
    let mut b = Vec::with_capacity(m + 1);
    let mut basis = Vec::with_capacity(m + 1);
    for (i, f) in fam.maximal().iter().enumerate() {
        let mut row = vec![Rational::zero(); cols];
        for s in f.iter() {
            row[s] = Rational::one();
        }
        row[t_col] = -Rational::one();
        row[n + 1 + i] = Rational::one();
        a.push(row);
        b.push(Rational::zero());
        basis.push(n + 1 + i);
    }
    let mut sum_row = vec![Rational::zero(); cols];
    for v in sum_row.iter_mut().take(n) {
        *v = Rational::one();
    }
    sum_row[artificial] = Rational::one();
    a.push(sum_row);
    b.push(Rational::one());
    basis.push(artificial);

    let mut tableau = Tableau::new(a, b, basis, cols);
    let mut phase_one = vec![Rational::zero(); cols];
    phase_one[artificial] = -Rational::one();
    tableau.set_objective(&phase_one);
    let outcome = tableau.maximize();
    debug_assert_eq!(outcome, Outcome::Optimal);
    debug_assert!(tableau.objective_value().is_zero(), "uniform x is feasible");

    // Drive a degenerate artificial out of the basis before phase II.
    if let Some(row) = tableau.basis().iter().position(|&c| c == artificial) {
        if let Some(col) = (0..artificial).find(|&c| !tableau.entry(row, c).is_zero()) {
            tableau.pivot(row, col);
        }
    }
    tableau.bar(artificial);

    let mut phase_two = vec![Rational::zero(); cols];
    phase_two[t_col] = -Rational::one();
    tableau.set_objective(&phase_two);
    let outcome = tableau.maximize();
    // t >= 0 bounds the objective.
    debug_assert_eq!(outcome, Outcome::Optimal);
    -tableau.objective_value()
}

/// Minimum of `‖x‖ / ‖x‖₁` found on a grid, with a vector attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedRatio {
    pub ratio: Rational,
    pub witness: Vec<Rational>,
}

/// Largest number of grid vectors [`min_ratio_signed_bruteforce`] will visit.
pub const MAX_GRID_POINTS: u64 = 4_000_000;

/// Minimises `‖x‖ / ‖x‖₁` over every non-zero `x` with coordinates in
/// `{-1, -(g-1)/g, …, 0, …, 1}`. This probes how close the signed ratio
/// comes to `delta / 2`; it is a grid estimate, not the exact constant.
pub fn min_ratio_signed_bruteforce(fam: &HereditaryFamily, grid: u32) -> Result<SignedRatio> {
    let n = fam.n();
    if grid == 0 {
        return Err(Error::InvalidParameters("grid must be positive".into()));
    }
    let side = 2 * grid as u64 + 1;
    let points = side.checked_pow(n as u32).filter(|&p| n <= 12 && p <= MAX_GRID_POINTS);
    let Some(points) = points else {
        return Err(Error::ScaleExceeded(format!("{side}^{n} grid points (limit n <= 12, {MAX_GRID_POINTS} points)")));
    };
    let sets: Vec<Vec<usize>> = fam.maximal().iter().map(|f| f.to_vec()).collect();
    let g = grid as i64;
    // Ratios are scale-free, so work with the integer vector k = g * x.
    let mut k = vec![-g; n];
    let mut best: Option<(i64, i64, Vec<i64>)> = None;
    for _ in 0..points {
        let l1: i64 = k.iter().map(|v| v.abs()).sum();
        if l1 != 0 {
            let norm = sets
                .iter()
                .map(|f| {
                    let (pos, neg) = f.iter().map(|&s| k[s]).fold((0, 0), |(p, q), v| {
                        if v > 0 {
                            (p + v, q)
                        } else {
                            (p, q - v)
                        }
                    });
                    pos.max(neg)
                })
                .max()
                .unwrap_or(0);
            if best.as_ref().is_none_or(|(bn, bl, _)| norm * bl < bn * l1) {
                best = Some((norm, l1, k.clone()));
            }
        }
        for v in k.iter_mut() {
            if *v < g {
                *v += 1;
                break;
            }
            *v = -g;
        }
    }
    let (norm, l1, witness) = best.expect("grid contains non-zero vectors");
    Ok(SignedRatio {
        ratio: Rational::new(norm, l1),
        witness: witness.into_iter().map(|v| Rational::new(v, g)).collect(),
    })
}

/// `‖e_s‖` for every label: 1 when `{s}` is a member, 0 otherwise.
pub fn basis_vector_norms(fam: &HereditaryFamily) -> Vec<Rational> {
    let n = fam.n();
    (0..n)
        .map(|s| f_norm(fam, &FamilyVector::unit(n, s)).expect("dimension matches"))
        .collect()
}
