//! Dense revised simplex for `min c·x  s.t.  A x = b, x >= 0`, started from
//! a caller-supplied feasible basis. Columns may be appended between
//! solves (column generation). Bland's rule throughout.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Refactor the basis inverse after this many float pivots.
const REFACTOR_EVERY: usize = 32;

#[derive(Clone, Debug)]
pub struct Column<S> {
    pub cost: S,
    /// `(row, coefficient)` pairs, rows distinct.
    pub entries: Vec<(usize, S)>,
}

impl<S: Scalar> Column<S> {
    pub fn new(cost: S, entries: Vec<(usize, S)>) -> Self {
        Column { cost, entries }
    }
}

#[derive(Clone, Debug)]
pub struct Simplex<S> {
    rows: usize,
    b: Vec<S>,
    cols: Vec<Column<S>>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<S>>,
    xb: Vec<S>,
    since_refactor: usize,
    pivots: usize,
}

impl<S: Scalar> Simplex<S> {
    /// `basis[i]` is the column basic in position `i`; it must be
    /// nonsingular and primal feasible for `b`.
    pub fn new(b: Vec<S>, cols: Vec<Column<S>>, basis: Vec<usize>) -> Result<Self> {
        let rows = b.len();
        if basis.len() != rows {
            return Err(Error::InvalidInput(format!(
                "basis has {} columns for {rows} rows",
                basis.len()
            )));
        }
        let mut is_basic = vec![false; cols.len()];
        for &j in &basis {
            if j >= cols.len() || is_basic[j] {
                return Err(Error::InvalidInput(format!("bad basis column {j}")));
            }
            is_basic[j] = true;
        }
        let mut s = Simplex {
            rows,
            b,
            cols,
            basis,
            is_basic,
            binv: Vec::new(),
            xb: Vec::new(),
            since_refactor: 0,
            pivots: 0,
        };
        s.refactor()?;
        let tol = S::pivot_tol();
        if let Some(i) = s.xb.iter().position(|x| x.is_neg_tol(&tol)) {
            return Err(Error::Infeasible(format!(
                "initial basis infeasible in row {i} ({})",
                s.xb[i]
            )));
        }
        Ok(s)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn num_columns(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &Column<S> {
        &self.cols[j]
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    pub fn add_column(&mut self, col: Column<S>) -> usize {
        self.cols.push(col);
        self.is_basic.push(false);
        self.cols.len() - 1
    }

    /// Recomputes the basis inverse by Gauss–Jordan elimination.
    pub fn refactor(&mut self) -> Result<()> {
        let m = self.rows;
        let mut a = vec![vec![S::zero(); m]; m];
        for (k, &j) in self.basis.iter().enumerate() {
            for (r, v) in &self.cols[j].entries {
                a[*r][k] = v.clone();
            }
        }
        let mut inv: Vec<Vec<S>> = (0..m)
            .map(|i| (0..m).map(|k| if i == k { S::one() } else { S::zero() }).collect())
            .collect();
        for c in 0..m {
            let p = if S::EXACT {
                (c..m).find(|&r| a[r][c] != S::zero())
            } else {
                (c..m)
                    .filter(|&r| a[r][c].abs_val() > S::zero())
                    .max_by(|&x, &y| {
                        a[x][c]
                            .abs_val()
                            .partial_cmp(&a[y][c].abs_val())
                            .unwrap_or(std::cmp::Ordering::Equal)
                    })
            };
            let p = p.ok_or_else(|| Error::Infeasible("singular basis".into()))?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for k in 0..m {
                a[c][k] = a[c][k].clone() / piv.clone();
                inv[c][k] = inv[c][k].clone() / piv.clone();
            }
            for r in 0..m {
                if r == c || a[r][c] == S::zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..m {
                    if a[c][k] != S::zero() {
                        a[r][k] = a[r][k].clone() - f.clone() * a[c][k].clone();
                    }
                    if inv[c][k] != S::zero() {
                        inv[r][k] = inv[r][k].clone() - f.clone() * inv[c][k].clone();
                    }
                }
            }
        }
        // Row k of B^{-1} corresponds to basis position k after elimination.
        self.binv = inv;
        self.xb = (0..m)
            .map(|k| {
                self.binv[k]
                    .iter()
                    .zip(&self.b)
                    .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
            })
            .collect();
        self.since_refactor = 0;
        Ok(())
    }

    /// Simplex multipliers `π = c_B B^{-1}`, one per row.
    pub fn duals(&self) -> Vec<S> {
        let m = self.rows;
        let mut pi = vec![S::zero(); m];
        for (k, &j) in self.basis.iter().enumerate() {
            let c = &self.cols[j].cost;
            if *c == S::zero() {
                continue;
            }
            for (i, p) in pi.iter_mut().enumerate().take(m) {
                let v = &self.binv[k][i];
                if *v != S::zero() {
                    *p = p.clone() + c.clone() * v.clone();
                }
            }
        }
        pi
    }

    pub fn reduced_cost(&self, j: usize, pi: &[S]) -> S {
        let col = &self.cols[j];
        col.entries
            .iter()
            .fold(col.cost.clone(), |acc, (r, v)| acc - pi[*r].clone() * v.clone())
    }

    /// Value of every column at the current basic solution.
    pub fn column_values(&self) -> Vec<S> {
        let mut x = vec![S::zero(); self.cols.len()];
        for (k, &j) in self.basis.iter().enumerate() {
            x[j] = self.xb[k].clone();
        }
        x
    }

    pub fn objective(&self) -> S {
        self.basis
            .iter()
            .zip(&self.xb)
            .fold(S::zero(), |acc, (&j, x)| acc + self.cols[j].cost.clone() * x.clone())
    }

    fn direction(&self, j: usize) -> Vec<S> {
        let mut d = vec![S::zero(); self.rows];
        for (r, v) in &self.cols[j].entries {
            for (k, dk) in d.iter_mut().enumerate() {
                let b = &self.binv[k][*r];
                if *b != S::zero() {
                    *dk = dk.clone() + b.clone() * v.clone();
                }
            }
        }
        d
    }

    /// Pivots to optimality from the current feasible basis.
    pub fn optimize(&mut self, max_pivots: usize) -> Result<()> {
        let cost_tol = S::cost_tol();
        let piv_tol = S::pivot_tol();
        let mut done = 0usize;
        loop {
            let pi = self.duals();
            let entering = (0..self.cols.len())
                .find(|&j| !self.is_basic[j] && self.reduced_cost(j, &pi).is_neg_tol(&cost_tol));
            let Some(j) = entering else {
                if !S::EXACT && self.since_refactor > 0 {
                    // Confirm optimality against a fresh factorisation.
                    self.refactor()?;
                    let pi = self.duals();
                    if (0..self.cols.len()).any(|j| {
                        !self.is_basic[j] && self.reduced_cost(j, &pi).is_neg_tol(&cost_tol)
                    }) {
                        continue;
                    }
                }
                return Ok(());
            };
            if done >= max_pivots {
                return Err(Error::IterationLimit(max_pivots));
            }
            let d = self.direction(j);
            // Ratio test; ties broken by smallest leaving column index.
            let mut best: Option<(usize, S)> = None;
            for k in 0..self.rows {
                if !d[k].is_pos_tol(&piv_tol) {
                    continue;
                }
                let x = if self.xb[k] < S::zero() {
                    S::zero()
                } else {
                    self.xb[k].clone()
                };
                let ratio = x / d[k].clone();
                best = match best {
                    None => Some((k, ratio)),
                    Some((bk, br)) => {
                        let tie_tol = if S::EXACT {
                            S::zero()
                        } else {
                            S::from_f64(1e-12 * (1.0 + br.to_f64().abs()))
                        };
                        let strictly_less = ratio.clone() < br.clone() - tie_tol.clone();
                        let tie_wins = ratio <= br.clone() + tie_tol && self.basis[k] < self.basis[bk];
                        if strictly_less || tie_wins {
                            Some((k, ratio))
                        } else {
                            Some((bk, br))
                        }
                    }
                };
            }
            let Some((r, theta)) = best else {
                return Err(Error::Unbounded);
            };
            self.pivot(r, j, &d, theta);
            done += 1;
            if !S::EXACT && self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize, d: &[S], theta: S) {
        let m = self.rows;
        let dr = d[r].clone();
        for k in 0..m {
            self.binv[r][k] = self.binv[r][k].clone() / dr.clone();
        }
        let row_r = self.binv[r].clone();
        for i in 0..m {
            if i == r || d[i] == S::zero() {
                continue;
            }
            let f = d[i].clone();
            for k in 0..m {
                if row_r[k] != S::zero() {
                    self.binv[i][k] = self.binv[i][k].clone() - f.clone() * row_r[k].clone();
                }
            }
            self.xb[i] = self.xb[i].clone() - f * theta.clone();
        }
        self.xb[r] = theta;
        self.is_basic[self.basis[r]] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
        self.since_refactor += 1;
        self.pivots += 1;
    }
}
