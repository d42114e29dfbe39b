//! The covering game behind the minimax constant δ and its exact value.
//!
//! The minimising player picks a convex mean `λ` on the ground set, the
//! maximising player picks a member `F`, and the payoff is `λ(F)`. Only
//! maximal members matter, since `λ(G) <= λ(F)` whenever `G ⊆ F`. The value
//!
//! ```text
//! delta = min_λ max_F λ(F) = max_μ min_s Σ_{F ∋ s} μ(F)
//! ```
//!
//! is computed by an exact simplex run, and both optimal strategies are
//! returned so the equality can be checked independently with
//! [`verify_certificate`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::family::HereditaryFamily;
use crate::lp::{Outcome, Tableau};
use crate::rational::Rational;
use crate::set::ElementSet;

/// Non-negative weights on `0..n` summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexMean {
    weights: Vec<Rational>,
}

impl ConvexMean {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        let mean = ConvexMean { weights };
        if !mean.is_valid() {
            let sum: Rational = mean.weights.iter().sum();
            return Err(Error::NotAMean(alloc::format!("{sum}")));
        }
        Ok(mean)
    }

    /// Wraps weights without validation; see [`ConvexMean::is_valid`].
    pub fn from_raw(weights: Vec<Rational>) -> Self {
        ConvexMean { weights }
    }

    pub fn uniform(n: usize) -> Self {
        ConvexMean { weights: vec![Rational::new(1, n as i64); n] }
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        let mut weights = vec![Rational::zero(); n];
        weights[at] = Rational::one();
        ConvexMean { weights }
    }

    pub fn is_valid(&self) -> bool {
        !self.weights.is_empty()
            && self.weights.iter().all(|w| !w.is_negative())
            && self.weights.iter().sum::<Rational>() == Rational::one()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(s, _)| s)
    }

    /// `λ(F) = Σ_{s ∈ F} λ(s)`.
    pub fn weight_of(&self, set: &ElementSet) -> Rational {
        set_weight(&self.weights, set)
    }
}

fn set_weight(weights: &[Rational], set: &ElementSet) -> Rational {
    set.iter().filter_map(|s| weights.get(s)).sum()
}

/// A probability distribution over the maximal members of a family, indexed
/// like [`HereditaryFamily::maximal`].
///
/// The family `{∅}` has no maximal members; its only cover is the empty one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCover {
    weights: Vec<Rational>,
}

impl FractionalCover {
    pub fn from_raw(weights: Vec<Rational>) -> Self {
        FractionalCover { weights }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_valid_for(&self, fam: &HereditaryFamily) -> bool {
        if self.weights.len() != fam.maximal().len() {
            return false;
        }
        if self.weights.is_empty() {
            return true;
        }
        self.weights.iter().all(|w| !w.is_negative()) && self.weights.iter().sum::<Rational>() == Rational::one()
    }

    /// `min_s Σ_{F ∋ s} μ(F)`; zero when some label is uncovered.
    pub fn min_coverage(&self, fam: &HereditaryFamily) -> Rational {
        let mut cover = vec![Rational::zero(); fam.n()];
        for (w, f) in self.weights.iter().zip(fam.maximal()) {
            for s in f.iter() {
                cover[s] += w;
            }
        }
        cover.into_iter().min().unwrap_or_else(Rational::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameValueResult {
    pub delta: Rational,
    pub primal: ConvexMean,
    pub dual: FractionalCover,
    pub pivots: usize,
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    PrimalDimension { expected: usize, got: usize },
    PrimalNotAMean,
    PrimalValueMismatch { value: Rational, delta: Rational },
    DualDimension { expected: usize, got: usize },
    DualNotACover,
    DualValueMismatch { coverage: Rational, delta: Rational },
}

impl Rejection {
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::PrimalDimension { .. } => "primal_dimension",
            Rejection::PrimalNotAMean => "primal_not_a_mean",
            Rejection::PrimalValueMismatch { .. } => "primal_value_mismatch",
            Rejection::DualDimension { .. } => "dual_dimension",
            Rejection::DualNotACover => "dual_not_a_cover",
            Rejection::DualValueMismatch { .. } => "dual_value_mismatch",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::PrimalDimension { expected, got } => {
                write!(f, "primal has {got} weights, expected {expected}")
            }
            Rejection::PrimalNotAMean => f.write_str("primal weights are not a convex mean"),
            Rejection::PrimalValueMismatch { value, delta } => {
                write!(f, "primal value {value} differs from delta {delta}")
            }
            Rejection::DualDimension { expected, got } => {
                write!(f, "dual has {got} weights, expected {expected}")
            }
            Rejection::DualNotACover => f.write_str("dual weights are not a probability vector"),
            Rejection::DualValueMismatch { coverage, delta } => {
                write!(f, "dual coverage {coverage} differs from delta {delta}")
            }
        }
    }
}

fn check_dim(fam: &HereditaryFamily, got: usize) -> Result<()> {
    if got != fam.n() {
        return Err(Error::DimensionMismatch { expected: fam.n(), got });
    }
    Ok(())
}

/// `max_F λ(F)` over the maximal members; 0 for the family `{∅}`.
pub fn evaluate_mean(fam: &HereditaryFamily, mean: &ConvexMean) -> Result<Rational> {
    check_dim(fam, mean.weights.len())?;
    if !mean.is_valid() {
        let sum: Rational = mean.weights.iter().sum();
        return Err(Error::NotAMean(alloc::format!("{sum}")));
    }
    Ok(fam.maximal().iter().map(|f| mean.weight_of(f)).max().unwrap_or_else(Rational::zero))
}

/// A maximal member of largest weight, ties going to the lexicographically
/// smallest set. Weights need only be non-negative: the answer does not
/// change under positive rescaling. Returns `∅` for the family `{∅}`.
pub fn best_response(fam: &HereditaryFamily, weights: &[Rational]) -> Result<ElementSet> {
    check_dim(fam, weights.len())?;
    if weights.iter().any(Rational::is_negative) {
        return Err(Error::NotAMean(alloc::string::String::from("negative weight")));
    }
    // Maximal sets are stored in lexicographic order, so the first maximum wins.
    let mut best: Option<(&ElementSet, Rational)> = None;
    for f in fam.maximal() {
        let w = set_weight(weights, f);
        if best.as_ref().is_none_or(|(_, bw)| w > *bw) {
            best = Some((f, w));
        }
    }
    Ok(best.map(|(f, _)| f.clone()).unwrap_or_else(|| fam.ground().empty()))
}

/// Exact value of the covering game together with optimal strategies.
///
/// When every label lies in some maximal member the value is positive and
/// `1 / delta` is the optimum of the fractional packing LP
/// `max Σ x_s  s.t.  Σ_{s ∈ F} x_s <= 1  for each maximal F,  x >= 0`,
/// whose dual is the fractional cover LP. Rescaling the optimal packing and
/// cover to unit mass gives the two strategies.
pub fn delta_exact(fam: &HereditaryFamily) -> GameValueResult {
    let n = fam.n();
    let m = fam.maximal().len();
    if m == 0 {
        return GameValueResult {
            delta: Rational::zero(),
            primal: ConvexMean::point_mass(n, 0),
            dual: FractionalCover::from_raw(Vec::new()),
            pivots: 0,
        };
    }
    if let Some(free) = fam.uncovered().next() {
        // A point mass on an uncovered label gives every member weight 0.
        let mut dual = vec![Rational::zero(); m];
        dual[0] = Rational::one();
        return GameValueResult {
            delta: Rational::zero(),
            primal: ConvexMean::point_mass(n, free),
            dual: FractionalCover::from_raw(dual),
            pivots: 0,
        };
    }

    // Columns: x_0..x_{n-1}, then one slack per maximal set.
    let cols = n + m;
    let a: Vec<Vec<Rational>> = fam
        .maximal()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut row = vec![Rational::zero(); cols];
            for s in f.iter() {
                row[s] = Rational::one();
            }
            row[n + i] = Rational::one();
            row
        })
        .collect();
    let mut tableau = Tableau::new(a, vec![Rational::one(); m], (n..cols).collect(), cols);
    let objective: Vec<Rational> =
        (0..cols).map(|j| if j < n { Rational::one() } else { Rational::zero() }).collect();
    tableau.set_objective(&objective);
    let outcome = tableau.maximize();
    // Every x_s sits in some row with coefficient 1, so the LP is bounded.
    debug_assert_eq!(outcome, Outcome::Optimal);

    let packing_value = tableau.objective_value();
    let x = tableau.solution();
    let primal = x[..n].iter().map(|v| v / &packing_value).collect();
    let dual = (0..m).map(|i| -tableau.reduced_cost(n + i) / packing_value.clone()).collect();
    GameValueResult {
        delta: packing_value.recip(),
        primal: ConvexMean::from_raw(primal),
        dual: FractionalCover::from_raw(dual),
        pivots: tableau.pivots,
    }
}

/// Exact check that `res.primal` attains `res.delta` from above and
/// `res.dual` attains it from below. By weak duality this proves `res.delta`
/// is the game value.
pub fn verify_certificate(fam: &HereditaryFamily, res: &GameValueResult) -> core::result::Result<(), Rejection> {
    let n = fam.n();
    let m = fam.maximal().len();
    if res.primal.weights.len() != n {
        return Err(Rejection::PrimalDimension { expected: n, got: res.primal.weights.len() });
    }
    if !res.primal.is_valid() {
        return Err(Rejection::PrimalNotAMean);
    }
    let value = fam.maximal().iter().map(|f| res.primal.weight_of(f)).max().unwrap_or_else(Rational::zero);
    if value != res.delta {
        return Err(Rejection::PrimalValueMismatch { value, delta: res.delta.clone() });
    }
    if res.dual.weights.len() != m {
        return Err(Rejection::DualDimension { expected: m, got: res.dual.weights.len() });
    }
    if !res.dual.is_valid_for(fam) {
        return Err(Rejection::DualNotACover);
    }
    let coverage = res.dual.min_coverage(fam);
    if coverage != res.delta {
        return Err(Rejection::DualValueMismatch { coverage, delta: res.delta.clone() });
    }
    Ok(())
}
