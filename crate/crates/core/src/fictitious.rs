//! Fictitious play for the covering game, used as an oracle for
//! [`delta_exact`](crate::game::delta_exact).
//!
//! Both players repeatedly best-respond to the other's empirical play. The
//! empirical strategies are kept as integer counts, so the value of each
//! average is an exact fraction `count / t`:
//!
//! * the mean player's average `λ_t` gives the upper bound `max_F λ_t(F)`;
//! * the set player's average `μ_t` gives the lower bound `min_s μ_t(s)`.
//!
//! Both bounds hold for every `t` by weak duality, so the running best of
//! each brackets the game value whether or not play has converged.

use alloc::vec;
use alloc::vec::Vec;

use crate::family::HereditaryFamily;
use crate::rational::Rational;

/// An interval `[lower, upper]` known to contain the game value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lower: Rational,
    pub upper: Rational,
    pub iterations: u64,
    /// `upper - lower <= epsilon` was reached within the iteration budget.
    pub converged: bool,
}

impl Bracket {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.upper + &self.lower) / Rational::from_integer(2)
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.lower <= *value && *value <= self.upper
    }
}

/// A fraction `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    fn lt(self, other: Frac) -> bool {
        (self.num as u128) * (other.den as u128) < (other.num as u128) * (self.den as u128)
    }

    fn to_rational(self) -> Rational {
        Rational::from_bigs(self.num.into(), self.den.into())
    }
}

/// Runs at most `max_iters` rounds of simultaneous fictitious play, stopping
/// as soon as the bracket is at most `epsilon` wide.
pub fn fictitious_play(fam: &HereditaryFamily, max_iters: u64, epsilon: &Rational) -> Bracket {
    let n = fam.n();
    let m = fam.maximal().len();
    if m == 0 || fam.uncovered().next().is_some() {
        // Value 0: a point mass on an uncovered label and any cover agree.
        return Bracket { lower: Rational::zero(), upper: Rational::zero(), iterations: 0, converged: true };
    }
    let sets: Vec<Vec<usize>> = fam.maximal().iter().map(|f| f.to_vec()).collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, f) in sets.iter().enumerate() {
        for &s in f {
            containing[s].push(i);
        }
    }

    // set_weight[i] = Σ_{s ∈ F_i} (times s was played); coverage[s] likewise.
    let mut set_weight = vec![0u64; m];
    let mut coverage = vec![0u64; n];
    let mut label_plays = vec![0u64; n];
    let mut set_plays = vec![0u64; m];
    let mut state = BestBounds::new();
    let mut next_refine = 16u64;

    let mut t = 0u64;
    let budget = max_iters.max(1);
    while t < budget {
        let label = argmin(&coverage);
        let set = argmax(&set_weight);
        label_plays[label] += 1;
        set_plays[set] += 1;
        for &i in &containing[label] {
            set_weight[i] += 1;
        }
        for &s in &sets[set] {
            coverage[s] += 1;
        }
        t += 1;

        let up = Frac { num: set_weight[argmax(&set_weight)], den: t };
        let lo = Frac { num: coverage[argmin(&coverage)], den: t };
        let mut improved = state.offer_frac(lo, up);
        if t == next_refine || t == budget {
            next_refine = next_refine.saturating_mul(2);
            let play = Play { sets: &sets, n, t, label_plays: &label_plays, set_plays: &set_plays };
            improved |= refine(&play, &mut state, epsilon);
        }
        if improved && state.width() <= *epsilon {
            return state.into_bracket(t, true);
        }
    }
    let converged = state.width() <= *epsilon;
    state.into_bracket(t, converged)
}

/// Running best bounds, kept both as fast integer fractions and exactly.
struct BestBounds {
    upper_frac: Frac,
    lower_frac: Frac,
    lower: Rational,
    upper: Rational,
}

impl BestBounds {
    fn new() -> Self {
        BestBounds {
            upper_frac: Frac { num: 1, den: 1 },
            lower_frac: Frac { num: 0, den: 1 },
            lower: Rational::zero(),
            upper: Rational::one(),
        }
    }

    fn offer_frac(&mut self, lo: Frac, up: Frac) -> bool {
        let mut improved = false;
        if up.lt(self.upper_frac) {
            self.upper_frac = up;
            improved |= self.offer_upper(up.to_rational());
        }
        if self.lower_frac.lt(lo) {
            self.lower_frac = lo;
            improved |= self.offer_lower(lo.to_rational());
        }
        improved
    }

    fn offer_upper(&mut self, v: Rational) -> bool {
        if v < self.upper {
            self.upper = v;
            return true;
        }
        false
    }

    fn offer_lower(&mut self, v: Rational) -> bool {
        if v > self.lower {
            self.lower = v;
            return true;
        }
        false
    }

    fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    fn into_bracket(self, iterations: u64, converged: bool) -> Bracket {
        Bracket { lower: self.lower, upper: self.upper, iterations, converged }
    }
}

struct Play<'a> {
    sets: &'a [Vec<usize>],
    n: usize,
    t: u64,
    label_plays: &'a [u64],
    set_plays: &'a [u64],
}

/// Support refinement.
///
/// Near equilibrium the empirical strategies reveal which members are
/// (nearly) best responses and which labels are (nearly) least covered. An
/// optimal mean equalises the weight of the active members and an optimal
/// cover equalises the coverage of the tight labels, so both strategies are
/// recovered by solving those equalities exactly. Candidates that come out
/// negative are discarded; surviving strategies are evaluated exactly and
/// can only tighten the bracket, since every mean bounds the value from
/// above and every cover from below.
fn refine(play: &Play<'_>, state: &mut BestBounds, epsilon: &Rational) -> bool {
    let t = play.t as f64;
    let mean: Vec<f64> = play.label_plays.iter().map(|&c| c as f64 / t).collect();
    let cover: Vec<f64> = play.set_plays.iter().map(|&c| c as f64 / t).collect();
    let set_value: Vec<f64> = play.sets.iter().map(|f| f.iter().map(|&s| mean[s]).sum()).collect();
    let mut coverage = vec![0.0; play.n];
    for (f, &w) in play.sets.iter().zip(&cover) {
        for &s in f {
            coverage[s] += w;
        }
    }
    let top = set_value.iter().copied().fold(f64::MIN, f64::max);
    let bottom = coverage.iter().copied().fold(f64::MAX, f64::min);
    let gap = (top - bottom).max(1.0 / t);

    let mut improved = false;
    let mut tried: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for scale in [1.0, 0.25, 4.0, 16.0] {
        let tol = gap * scale;
        let active: Vec<usize> = by_key_desc(play.sets.len(), |i| set_value[i], |v| v >= top - tol);
        let tight: Vec<usize> = by_key_desc(play.n, |s| -coverage[s], |v| -v <= bottom + tol);
        if tried.iter().any(|(a, t)| *a == active && *t == tight) {
            continue;
        }
        // Equations come from the most-played strategies of the other side:
        // sets with positive optimal cover weight are tight at every optimal
        // mean, and labels with positive optimal mean weight are tight at
        // every optimal cover.
        if let Some(v) = equalizing_mean(play, &by_weight(&active, &cover), &tight, &mean) {
            improved |= state.offer_upper(v);
        }
        if let Some(v) = equalizing_cover(play, &active, &by_weight(&tight, &mean), &cover) {
            improved |= state.offer_lower(v);
        }
        if state.width() <= *epsilon {
            break;
        }
        tried.push((active, tight));
    }
    improved
}

/// `items` sorted by descending `weight`, ties by index.
fn by_weight(items: &[usize], weight: &[f64]) -> Vec<usize> {
    let mut v = items.to_vec();
    v.sort_by(|&a, &b| weight[b].total_cmp(&weight[a]).then(a.cmp(&b)));
    v
}

/// Indices `0..len` whose key passes `keep`, ordered by key descending.
fn by_key_desc(len: usize, key: impl Fn(usize) -> f64, keep: impl Fn(f64) -> bool) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..len).filter(|&i| keep(key(i))).collect();
    idx.sort_by(|&a, &b| key(b).total_cmp(&key(a)).then(a.cmp(&b)));
    idx
}

/// Upper bound from a mean on `support` giving every `active` member equal
/// weight.
fn equalizing_mean(play: &Play<'_>, active: &[usize], support: &[usize], mean: &[f64]) -> Option<Rational> {
    let mut support: Vec<usize> = support.to_vec();
    support.sort_by(|&a, &b| mean[b].total_cmp(&mean[a]).then(a.cmp(&b)));
    for _ in 0..play.n {
        // Unknowns: value, then λ_s for s in support.
        let cols = support.len() + 1;
        let mut rows = Vec::with_capacity(active.len() + 1);
        // Σ weights = 1: the value column is 0, the rest (and the
        // right-hand side) are 1.
        let mut sum_row = vec![Rational::one(); cols + 1];
        sum_row[0] = Rational::zero();
        rows.push(sum_row);
        for &i in active {
            let mut row = vec![Rational::zero(); cols + 1];
            row[0] = -Rational::one();
            for (c, &s) in support.iter().enumerate() {
                if play.sets[i].contains(&s) {
                    row[c + 1] = Rational::one();
                }
            }
            rows.push(row);
        }
        let x = solve_greedy(rows, cols)?;
        let negative: Vec<usize> = (0..support.len()).filter(|&c| x[c + 1].is_negative()).collect();
        if negative.is_empty() {
            let mut weights = vec![Rational::zero(); play.n];
            for (c, &s) in support.iter().enumerate() {
                weights[s] = x[c + 1].clone();
            }
            if weights.iter().sum::<Rational>() != Rational::one() {
                return None;
            }
            return play.sets.iter().map(|f| f.iter().map(|&s| &weights[s]).sum::<Rational>()).max();
        }
        support = support.into_iter().enumerate().filter(|(c, _)| !negative.contains(c)).map(|(_, s)| s).collect();
        if support.is_empty() {
            return None;
        }
    }
    None
}

/// Lower bound from a cover on `candidates` giving every `tight` label equal
/// coverage.
fn equalizing_cover(play: &Play<'_>, candidates: &[usize], tight: &[usize], cover: &[f64]) -> Option<Rational> {
    let mut candidates: Vec<usize> = candidates.to_vec();
    candidates.sort_by(|&a, &b| cover[b].total_cmp(&cover[a]).then(a.cmp(&b)));
    // At most `tight.len() + 1` columns become pivots, and the elimination
    // takes the first usable ones, so only a prefix of the candidates is
    // handed to the solver. Discarded columns make room for later ones.
    let window = 4 * (tight.len() + 1) + 8;
    for _ in 0..play.sets.len() {
        let cols_used = &candidates[..candidates.len().min(window)];
        let cols = cols_used.len() + 1;
        let mut rows = Vec::with_capacity(tight.len() + 1);
        // Σ weights = 1: the value column is 0, the rest (and the
        // right-hand side) are 1.
        let mut sum_row = vec![Rational::one(); cols + 1];
        sum_row[0] = Rational::zero();
        rows.push(sum_row);
        for &s in tight {
            let mut row = vec![Rational::zero(); cols + 1];
            row[0] = -Rational::one();
            for (c, &i) in cols_used.iter().enumerate() {
                if play.sets[i].contains(&s) {
                    row[c + 1] = Rational::one();
                }
            }
            rows.push(row);
        }
        let x = solve_greedy(rows, cols)?;
        let negative: Vec<usize> = (0..cols_used.len()).filter(|&c| x[c + 1].is_negative()).collect();
        if negative.is_empty() {
            let mut coverage = vec![Rational::zero(); play.n];
            for (c, &i) in cols_used.iter().enumerate() {
                for &s in &play.sets[i] {
                    coverage[s] += &x[c + 1];
                }
            }
            return coverage.into_iter().min();
        }
        candidates = candidates.into_iter().enumerate().filter(|(c, _)| !negative.contains(c)).map(|(_, i)| i).collect();
        if candidates.is_empty() {
            return None;
        }
    }
    None
}

/// `row -= f * pivot`, touching only the pivot row's non-zero entries.
fn eliminate(row: &mut [Rational], pivot: &[Rational], f: &Rational) {
    for (v, pv) in row.iter_mut().zip(pivot).filter(|(_, pv)| !pv.is_zero()) {
        *v -= &(f * pv);
    }
}

/// Gaussian elimination over the rows in order. A row that is inconsistent
/// with the rows before it is dropped; free variables are set to zero. Each
/// row holds `cols` coefficients followed by the right-hand side. Returns
/// `None` when the first row is unusable.
fn solve_greedy(rows: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (k, mut row) in rows.into_iter().enumerate() {
        // With full column rank the solution is fixed; later rows are
        // either redundant or would be dropped.
        if reduced.len() == cols {
            break;
        }
        for (pc, prow) in &reduced {
            if !row[*pc].is_zero() {
                let f = row[*pc].clone();
                eliminate(&mut row, prow, &f);
            }
        }
        match (0..cols).find(|&c| !row[c].is_zero()) {
            Some(pc) => {
                let p = row[pc].clone();
                for v in row.iter_mut().filter(|v| !v.is_zero()) {
                    *v = &*v / &p;
                }
                for (_, prow) in reduced.iter_mut() {
                    if !prow[pc].is_zero() {
                        let f = prow[pc].clone();
                        eliminate(prow, &row, &f);
                    }
                }
                reduced.push((pc, row));
            }
            None if k == 0 => return None,
            None => {}
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for (pc, row) in reduced {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

fn argmin(v: &[u64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x < v[best] {
            best = i;
        }
    }
    best
}

fn argmax(v: &[u64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = i;
        }
    }
    best
}
