//! Test-only oracles, independent of the library's solvers.
#![allow(dead_code, clippy::needless_range_loop)]

use num::{BigRational, One, Signed, Zero};
use shearer_core::indset::enumerate_all_independent_sets;
use shearer_core::{Graph, IndepSet};

type Rational = BigRational;

/// Dense two-phase tableau simplex with Bland's rule over rationals.
/// Minimises `c·x` subject to `Ax = b`, `x ≥ 0`; returns the optimum value.
pub fn dense_lp_min(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Rational {
    let rows = a.len();
    let cols = c.len();
    // Columns: originals, then one artificial per row, then the RHS.
    let width = cols + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let flip = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..cols {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[cols + i] = Rational::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let phase1: Vec<Rational> = (0..cols + rows)
        .map(|j| if j >= cols { Rational::one() } else { Rational::zero() })
        .collect();
    run_tableau(&mut t, &mut basis, &phase1, cols + rows);
    assert!(objective(&t, &basis, &phase1).is_zero(), "oracle LP infeasible");
    // Drive remaining artificials out where possible.
    for i in 0..rows {
        if basis[i] >= cols {
            if let Some(j) = (0..cols).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            }
        }
    }
    let mut phase2 = c.to_vec();
    phase2.extend(vec![Rational::zero(); rows]);
    run_tableau(&mut t, &mut basis, &phase2, cols);
    objective(&t, &basis, &phase2)
}

fn objective(t: &[Vec<Rational>], basis: &[usize], c: &[Rational]) -> Rational {
    let last = t[0].len() - 1;
    basis
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, &j)| acc + c[j].clone() * t[i][last].clone())
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], r: usize, col: usize) {
    let p = t[r][col].clone();
    for x in t[r].iter_mut() {
        *x = x.clone() / p.clone();
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[col].is_zero() {
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
    }
    basis[r] = col;
}

/// Entering columns restricted to `0..allowed`.
fn run_tableau(t: &mut [Vec<Rational>], basis: &mut [usize], c: &[Rational], allowed: usize) {
    let last = t[0].len() - 1;
    loop {
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let z = basis
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (i, &bj)| acc + c[bj].clone() * t[i][j].clone());
            c[j].clone() - z < Rational::zero()
        });
        let Some(j) = entering else { return };
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = t[i][last].clone() / t[i][j].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let (r, _) = best.expect("oracle LP unbounded");
        pivot(t, basis, r, j);
    }
}

fn q(x: f64) -> Rational {
    BigRational::from_float(x).expect("finite")
}

/// `χ_f` over the full list of independent sets.
pub fn oracle_chi(g: &Graph) -> Rational {
    let n = g.n();
    if n == 0 {
        return Rational::zero();
    }
    let sets: Vec<IndepSet> = enumerate_all_independent_sets(g)
        .unwrap()
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    // Variables: x_I, then surplus s_v.
    let cols = sets.len() + n;
    let mut a = vec![vec![Rational::zero(); cols]; n];
    for (j, s) in sets.iter().enumerate() {
        for &v in s.vertices() {
            a[v][j] = Rational::one();
        }
    }
    for v in 0..n {
        a[v][sets.len() + v] = -Rational::one();
    }
    let mut c = vec![Rational::one(); sets.len()];
    c.extend(vec![Rational::zero(); n]);
    dense_lp_min(&a, &vec![Rational::one(); n], &c)
}

/// Minimum slack `y*` over all independent sets, targets converted exactly.
pub fn oracle_min_slack(g: &Graph, t: &[f64]) -> Rational {
    let n = g.n();
    let sets = enumerate_all_independent_sets(g).unwrap();
    // Variables: y+, y-, x_I, s_v.
    let cols = 2 + sets.len() + n;
    let mut a = vec![vec![Rational::zero(); cols]; n + 1];
    for v in 0..n {
        a[v][0] = Rational::one();
        a[v][1] = -Rational::one();
        a[v][2 + sets.len() + v] = -Rational::one();
    }
    for (j, s) in sets.iter().enumerate() {
        for &v in s.vertices() {
            a[v][2 + j] = Rational::one();
        }
        a[n][2 + j] = Rational::one();
    }
    let mut b: Vec<Rational> = t.iter().map(|&x| q(x)).collect();
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); cols];
    c[0] = Rational::one();
    c[1] = -Rational::one();
    dense_lp_min(&a, &b, &c)
}

/// Brute-force maximum weight over every independent set.
pub fn brute_mwis(g: &Graph, w: &[f64]) -> f64 {
    enumerate_all_independent_sets(g)
        .unwrap()
        .iter()
        .map(|s| s.vertices().iter().map(|&v| w[v]).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest eigenvalue of the adjacency matrix by cyclic Jacobi rotations.
pub fn jacobi_rho(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let mut a = vec![vec![0.0f64; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                if a[p][r].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                let tt = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let tt = if theta == 0.0 { 1.0 } else { tt };
                let c = 1.0 / (tt * tt + 1.0).sqrt();
                let s = tt * c;
                for k in 0..n {
                    let (akp, akr) = (a[k][p], a[k][r]);
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let (apk, ark) = (a[p][k], a[r][k]);
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::NEG_INFINITY, f64::max)
}

pub fn to_f64(q: &BigRational) -> f64 {
    shearer_core::Scalar::to_f64(q)
}
