//! Dense exact-rational simplex tableau with Bland's pivot rule.
//!
//! Only what the game-value computations need: maximisation over a tableau
//! that starts from a feasible basis, reduced-cost recomputation for a new
//! objective (phase II), and columns that may be barred from entering.

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal,
    Unbounded,
}

#[derive(Debug, Clone)]
pub(crate) struct Tableau {
    /// Constraint rows; `rows[i][cols]` holds the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry holds minus the objective value.
    reduced: Vec<Rational>,
    basis: Vec<usize>,
    barred: Vec<bool>,
    cols: usize,
    pub(crate) pivots: usize,
}

impl Tableau {
    /// `a x = b` with `b >= 0`, where column `basis[i]` is the `i`-th unit
    /// vector of `a`.
    pub(crate) fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, basis: Vec<usize>, cols: usize) -> Self {
        debug_assert_eq!(a.len(), b.len());
        debug_assert_eq!(a.len(), basis.len());
        debug_assert!(b.iter().all(|v| !v.is_negative()));
        let rows = a
            .into_iter()
            .zip(b)
            .map(|(mut row, rhs)| {
                debug_assert_eq!(row.len(), cols);
                row.push(rhs);
                row
            })
            .collect();
        Tableau { rows, reduced: vec![Rational::zero(); cols + 1], basis, barred: vec![false; cols], cols, pivots: 0 }
    }

    /// Installs `c` as the objective to maximise, pricing out the basis.
    pub(crate) fn set_objective(&mut self, c: &[Rational]) {
        debug_assert_eq!(c.len(), self.cols);
        let mut reduced: Vec<Rational> = c.iter().cloned().chain(core::iter::once(Rational::zero())).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(row) {
                *r -= &(cb * a);
            }
        }
        self.reduced = reduced;
    }

    pub(crate) fn bar(&mut self, col: usize) {
        self.barred[col] = true;
    }

    pub(crate) fn objective_value(&self) -> Rational {
        -&self.reduced[self.cols]
    }

    pub(crate) fn reduced_cost(&self, col: usize) -> &Rational {
        &self.reduced[col]
    }

    pub(crate) fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Current basic solution.
    pub(crate) fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            x[b] = row[self.cols].clone();
        }
        x
    }

    pub(crate) fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }

    pub(crate) fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        debug_assert!(!p.is_zero());
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for (v, pv) in self.reduced.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs primal simplex to optimality. Bland's rule: the lowest-index
    /// improving column enters; among minimum-ratio rows the one whose basic
    /// variable has the lowest index leaves. This cannot cycle.
    pub(crate) fn maximize(&mut self) -> Outcome {
        loop {
            let Some(enter) = (0..self.cols).find(|&j| !self.barred[j] && self.reduced[j].is_positive()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Outcome::Unbounded,
            }
        }
    }
}
