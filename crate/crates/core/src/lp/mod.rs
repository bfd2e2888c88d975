//! Distributions over independent sets and the two column-generation LPs:
//!
//! * min-slack: `min y` s.t. `y + P[v ∈ I] >= t_v` for all `v`, over
//!   probability vectors on independent sets (`y` free);
//! * fractional cover: `min Σ x_I` s.t. `Σ_{I ∋ v} x_I >= 1`, `x >= 0`,
//!   whose optimum is the fractional chromatic number.
//!
//! Both restricted masters are priced by the exact max-weight independent
//! set solver, so a converged master is optimal over all independent sets.

pub mod simplex;

use std::collections::{BTreeMap, HashSet};

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSubgraph};
use crate::indset::{greedy_maximal_from, is_independent, max_weight_independent_set, IndepSet};
use crate::scalar::{Rational, Scalar};
use simplex::{Column, Simplex};

/// Float probabilities must sum to one within this.
pub const FLOAT_SUM_TOL: f64 = 1e-12;

/// Finitely supported distribution over independent sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<S> {
    support: Vec<(IndepSet, S)>,
}

impl<S: Scalar> Distribution<S> {
    /// Validates non-negativity, distinct sets and total mass one.
    pub fn new(support: Vec<(IndepSet, S)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut total = S::zero();
        for (set, p) in &support {
            if *p < S::zero() {
                return Err(Error::InvalidInput(format!("negative probability {p}")));
            }
            if !seen.insert(set.clone()) {
                return Err(Error::InvalidInput(format!("duplicate support set {set:?}")));
            }
            total = total + p.clone();
        }
        let ok = if S::EXACT {
            total == S::one()
        } else {
            (total.to_f64() - 1.0).abs() <= FLOAT_SUM_TOL
        };
        if !ok {
            return Err(Error::InvalidInput(format!("probabilities sum to {total}")));
        }
        Ok(Distribution { support })
    }

    /// Merges repeated sets, drops zero mass and rescales to total one.
    pub fn from_weighted(entries: impl IntoIterator<Item = (IndepSet, S)>) -> Result<Self> {
        let mut merged: BTreeMap<IndepSet, S> = BTreeMap::new();
        for (set, p) in entries {
            if p < S::zero() {
                return Err(Error::InvalidInput(format!("negative weight {p}")));
            }
            let e = merged.entry(set).or_insert_with(S::zero);
            *e = e.clone() + p;
        }
        merged.retain(|_, p| *p > S::zero());
        let total = merged.values().fold(S::zero(), |a, p| a + p.clone());
        if total <= S::zero() {
            return Err(Error::InvalidInput("distribution has no mass".into()));
        }
        Ok(Distribution {
            support: merged
                .into_iter()
                .map(|(s, p)| (s, p / total.clone()))
                .collect(),
        })
    }

    pub fn point_mass(set: IndepSet) -> Self {
        Distribution {
            support: vec![(set, S::one())],
        }
    }

    pub fn uniform(sets: Vec<IndepSet>) -> Result<Self> {
        Self::from_weighted(sets.into_iter().map(|s| (s, S::one())))
    }

    pub fn support(&self) -> &[(IndepSet, S)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `P[v ∈ I]` for every vertex of an `n`-vertex host graph.
    pub fn marginals(&self, n: usize) -> Vec<S> {
        marginals(self, n)
    }

    pub fn expected_size(&self) -> S {
        self.support.iter().fold(S::zero(), |acc, (s, p)| {
            acc + S::from_i64(s.len() as i64) * p.clone()
        })
    }

    /// Whether every support set is independent in `g`.
    pub fn is_supported_on(&self, g: &Graph) -> bool {
        self.support
            .iter()
            .all(|(s, _)| s.vertices().iter().all(|&v| v < g.n()) && is_independent(g, s.vertices()))
    }

    /// Re-labels the support from subgraph ids to parent ids.
    pub fn lift(&self, sub: &InducedSubgraph) -> Distribution<S> {
        Distribution {
            support: self
                .support
                .iter()
                .map(|(s, p)| {
                    let mut v = sub.lift_all(s.vertices());
                    v.sort_unstable();
                    (IndepSet::from_sorted_unchecked(v), p.clone())
                })
                .collect(),
        }
    }

    pub fn to_f64(&self) -> Distribution<f64> {
        Distribution {
            support: self
                .support
                .iter()
                .map(|(s, p)| (s.clone(), p.to_f64()))
                .collect(),
        }
    }

    /// Exact copy: each probability converted exactly, then rescaled so the
    /// total is exactly one.
    pub fn to_exact(&self) -> Distribution<Rational> {
        let support: Vec<_> = self
            .support
            .iter()
            .map(|(s, p)| (s.clone(), <Rational as Scalar>::from_f64(p.to_f64())))
            .collect();
        Distribution::from_weighted(support).expect("distribution has mass")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.support
                .iter()
                .map(|(s, p)| serde_json::json!({ "set": s, "prob": p.to_json() }))
                .collect(),
        )
    }
}

/// Exact per-vertex marginals `P[v ∈ I]`.
pub fn marginals<S: Scalar>(d: &Distribution<S>, n: usize) -> Vec<S> {
    let mut m = vec![S::zero(); n];
    for (set, p) in &d.support {
        for &v in set.vertices() {
            m[v] = m[v].clone() + p.clone();
        }
    }
    m
}

/// Per-vertex demands, each in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetVector<S>(Vec<S>);

impl<S: Scalar> TargetVector<S> {
    pub fn new(t: Vec<S>) -> Result<Self> {
        if let Some((v, x)) = t
            .iter()
            .enumerate()
            .find(|(_, x)| **x < S::zero() || **x > S::one() || !x.to_f64().is_finite())
        {
            return Err(Error::InvalidInput(format!("target {x} of vertex {v} not in [0, 1]")));
        }
        Ok(TargetVector(t))
    }

    pub fn constant(n: usize, c: S) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn values(&self) -> &[S] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_f64(&self) -> TargetVector<f64> {
        TargetVector(self.0.iter().map(Scalar::to_f64).collect())
    }
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Float pricing: a column enters only if it improves by more than this.
    pub price_tol: f64,
    pub max_rounds: usize,
    pub max_pivots: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            price_tol: 1e-11,
            max_rounds: 20_000,
            max_pivots: 1_000_000,
        }
    }
}

/// Optimal slack, witnessing distribution and dual certificate.
#[derive(Clone, Debug)]
pub struct LpResult<S> {
    pub y_star: S,
    pub distribution: Distribution<S>,
    /// Vertex multipliers, `λ >= 0`, `Σ λ = 1`.
    pub duals: Vec<S>,
    /// `Σ λ_v t_v − max_I λ(I)`, a lower bound on `y*`.
    pub dual_bound: S,
    pub gap: S,
    /// Column-generation rounds.
    pub iterations: usize,
    pub pivots: usize,
}

impl<S: Scalar> LpResult<S> {
    pub fn marginals(&self, n: usize) -> Vec<S> {
        self.distribution.marginals(n)
    }

    pub fn to_f64(&self) -> LpResult<f64> {
        LpResult {
            y_star: self.y_star.to_f64(),
            distribution: self.distribution.to_f64(),
            duals: self.duals.iter().map(Scalar::to_f64).collect(),
            dual_bound: self.dual_bound.to_f64(),
            gap: self.gap.to_f64(),
            iterations: self.iterations,
            pivots: self.pivots,
        }
    }
}

impl<S: Scalar> Serialize for LpResult<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut st = ser.serialize_struct("LpResult", 6)?;
        st.serialize_field("y_star", &self.y_star.to_json())?;
        st.serialize_field("support", &self.distribution.to_json())?;
        st.serialize_field(
            "duals",
            &self.duals.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        )?;
        st.serialize_field("dual_bound", &self.dual_bound.to_json())?;
        st.serialize_field("gap", &self.gap.to_json())?;
        st.serialize_field("iterations", &self.iterations)?;
        st.end()
    }
}

/// Singletons plus the greedy maximal set grown from each vertex.
pub fn warm_start_columns(g: &Graph) -> Vec<IndepSet> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in 0..g.n() {
        for s in [
            IndepSet::from_sorted_unchecked(vec![v]),
            greedy_maximal_from(g, v),
        ] {
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    out
}

fn set_column<S: Scalar>(set: &IndepSet, cost: S, convexity_row: Option<usize>) -> Column<S> {
    let mut entries: Vec<(usize, S)> = set.vertices().iter().map(|&v| (v, S::one())).collect();
    if let Some(r) = convexity_row {
        entries.push((r, S::one()));
    }
    Column::new(cost, entries)
}

fn clamp_nonneg<S: Scalar>(v: &[S]) -> Vec<S> {
    v.iter()
        .map(|x| if *x < S::zero() { S::zero() } else { x.clone() })
        .collect()
}

fn price_tol<S: Scalar>(cfg: &SolveConfig) -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_f64(cfg.price_tol)
    }
}

// Min-slack master layout: column 0 = y+, 1 = y-, 2..2+n = surplus s_v,
// then one column per independent set. Rows 0..n are vertices, row n is
// the convexity row.
const Y_PLUS: usize = 0;
const Y_MINUS: usize = 1;
const FIRST_SURPLUS: usize = 2;

struct MinSlackMaster<S: Scalar> {
    lp: Simplex<S>,
    sets: Vec<IndepSet>,
    present: HashSet<IndepSet>,
}

impl<S: Scalar> MinSlackMaster<S> {
    fn first_set_col(n: usize) -> usize {
        FIRST_SURPLUS + n
    }

    fn build(g: &Graph, t: &[S], sets: Vec<IndepSet>) -> Result<Self> {
        let n = g.n();
        let mut cols = Vec::with_capacity(FIRST_SURPLUS + n + sets.len());
        cols.push(Column::new(S::one(), (0..n).map(|v| (v, S::one())).collect()));
        cols.push(Column::new(-S::one(), (0..n).map(|v| (v, -S::one())).collect()));
        for v in 0..n {
            cols.push(Column::new(S::zero(), vec![(v, -S::one())]));
        }
        let mut present = HashSet::new();
        let mut kept = Vec::new();
        for s in sets {
            if present.insert(s.clone()) {
                cols.push(set_column(&s, S::zero(), Some(n)));
                kept.push(s);
            }
        }
        // Feasible start: point mass on the first set, y just large enough,
        // surplus basic on every row but the tightest.
        let first = &kept[0];
        let gap = |v: usize| {
            let inside = if first.contains(v) { S::one() } else { S::zero() };
            t[v].clone() - inside
        };
        let mut tight = 0;
        for v in 1..n {
            if gap(v) > gap(tight) {
                tight = v;
            }
        }
        let y0 = gap(tight);
        let y_col = if y0 >= S::zero() { Y_PLUS } else { Y_MINUS };
        let mut basis = Vec::with_capacity(n + 1);
        for v in 0..n {
            basis.push(if v == tight { y_col } else { FIRST_SURPLUS + v });
        }
        basis.push(Self::first_set_col(n));
        let mut b: Vec<S> = t.to_vec();
        b.push(S::one());
        Ok(MinSlackMaster {
            lp: Simplex::new(b, cols, basis)?,
            sets: kept,
            present,
        })
    }

    fn add(&mut self, set: IndepSet, n: usize) -> bool {
        if !self.present.insert(set.clone()) {
            return false;
        }
        self.lp.add_column(set_column(&set, S::zero(), Some(n)));
        self.sets.push(set);
        true
    }
}

fn run_min_slack<S: Scalar>(
    g: &Graph,
    t: &[S],
    sets: Vec<IndepSet>,
    cfg: &SolveConfig,
) -> Result<(MinSlackMaster<S>, usize)> {
    let n = g.n();
    let mut master = MinSlackMaster::build(g, t, sets)?;
    let tol = price_tol::<S>(cfg);
    let mut rounds = 0;
    loop {
        master.lp.optimize(cfg.max_pivots)?;
        let pi = master.lp.duals();
        let lambda = clamp_nonneg(&pi[..n]);
        let mu = pi[n].clone();
        let (set, value) = max_weight_independent_set(g, &lambda)?;
        // Reduced cost of the column is -(λ(I) + μ).
        if !(value + mu).is_pos_tol(&tol) {
            break;
        }
        if !master.add(set, n) {
            break;
        }
        rounds += 1;
        if rounds > cfg.max_rounds {
            return Err(Error::PricingBudgetExceeded(cfg.max_rounds));
        }
    }
    Ok((master, rounds))
}

/// Solves the min-slack LP over all independent sets of `g`.
///
/// Exact mode first runs the float solve and seeds the exact master with
/// the columns it generated; exact pricing then certifies optimality.
pub fn solve_min_slack<S: Scalar>(
    g: &Graph,
    targets: &TargetVector<S>,
    cfg: &SolveConfig,
) -> Result<LpResult<S>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("min-slack LP needs a nonempty graph".into()));
    }
    if targets.len() != n {
        return Err(Error::InvalidInput(format!("{} targets for {n} vertices", targets.len())));
    }
    let t = targets.values();
    let mut seed = warm_start_columns(g);
    if S::EXACT {
        let tf: Vec<f64> = t.iter().map(Scalar::to_f64).collect();
        let (float_master, _) = run_min_slack::<f64>(g, &tf, seed.clone(), cfg)?;
        seed.extend(float_master.sets);
    }
    let (master, rounds) = run_min_slack::<S>(g, t, seed, cfg)?;
    let y_star = master.lp.objective();
    let values = master.lp.column_values();
    let first = MinSlackMaster::<S>::first_set_col(n);
    let distribution = extract_distribution(&master.sets, &values[first..])?;

    let pi = master.lp.duals();
    let mut lambda = clamp_nonneg(&pi[..n]);
    if !S::EXACT {
        let sum = lambda.iter().fold(S::zero(), |a, x| a + x.clone());
        if sum > S::zero() {
            lambda = lambda.into_iter().map(|x| x / sum.clone()).collect();
        }
    }
    let (_, best) = max_weight_independent_set(g, &lambda)?;
    let weighted = lambda
        .iter()
        .zip(t)
        .fold(S::zero(), |a, (l, tv)| a + l.clone() * tv.clone());
    let dual_bound = weighted - best;
    let gap = (y_star.clone() - dual_bound.clone()).abs_val();
    Ok(LpResult {
        y_star,
        distribution,
        duals: lambda,
        dual_bound,
        gap,
        iterations: rounds,
        pivots: master.lp.pivots(),
    })
}

fn extract_distribution<S: Scalar>(sets: &[IndepSet], values: &[S]) -> Result<Distribution<S>> {
    let floor = if S::EXACT {
        S::zero()
    } else {
        S::from_f64(1e-14)
    };
    let entries: Vec<(IndepSet, S)> = sets
        .iter()
        .zip(values)
        .filter(|(_, x)| **x > floor)
        .map(|(s, x)| (s.clone(), x.clone()))
        .collect();
    if entries.is_empty() {
        return Err(Error::Infeasible("optimal basis carries no set mass".into()));
    }
    if S::EXACT {
        Distribution::new(entries)
    } else {
        Distribution::from_weighted(entries)
    }
}

/// Fractional chromatic number with primal cover and fractional-clique dual.
#[derive(Clone, Debug)]
pub struct ChiResult<S> {
    pub value: S,
    /// Cover weights `x_I`, summing to `value`.
    pub cover: Vec<(IndepSet, S)>,
    /// Fractional clique: `λ(I) <= 1` for every independent set.
    pub clique: Vec<S>,
    /// `Σ λ`, a lower bound on the value.
    pub dual_bound: S,
    pub gap: S,
    pub iterations: usize,
}

impl<S: Scalar> ChiResult<S> {
    /// The cover normalised to a distribution whose minimum marginal is `1/value`.
    pub fn distribution(&self) -> Result<Distribution<S>> {
        Distribution::from_weighted(self.cover.iter().cloned())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value.to_json(),
            "cover": self.cover.iter()
                .map(|(s, x)| serde_json::json!({ "set": s, "weight": x.to_json() }))
                .collect::<Vec<_>>(),
            "clique": self.clique.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "dual_bound": self.dual_bound.to_json(),
            "gap": self.gap.to_json(),
            "iterations": self.iterations,
        })
    }
}

fn run_chi<S: Scalar>(
    g: &Graph,
    sets: Vec<IndepSet>,
    cfg: &SolveConfig,
) -> Result<(Simplex<S>, Vec<IndepSet>, usize)> {
    let n = g.n();
    let mut cols: Vec<Column<S>> = (0..n)
        .map(|v| Column::new(S::zero(), vec![(v, -S::one())]))
        .collect();
    let mut present = HashSet::new();
    let mut kept = Vec::new();
    // Singletons first so the identity basis exists.
    let singletons = (0..n).map(|v| IndepSet::from_sorted_unchecked(vec![v]));
    for s in singletons.chain(sets) {
        if present.insert(s.clone()) {
            cols.push(set_column(&s, S::one(), None));
            kept.push(s);
        }
    }
    let basis: Vec<usize> = (0..n).map(|v| n + v).collect();
    let mut lp = Simplex::new(vec![S::one(); n], cols, basis)?;
    let tol = price_tol::<S>(cfg);
    let mut rounds = 0;
    loop {
        lp.optimize(cfg.max_pivots)?;
        let lambda = clamp_nonneg(&lp.duals());
        let (set, value) = max_weight_independent_set(g, &lambda)?;
        if !(value - S::one()).is_pos_tol(&tol) {
            break;
        }
        if !present.insert(set.clone()) {
            break;
        }
        lp.add_column(set_column(&set, S::one(), None));
        kept.push(set);
        rounds += 1;
        if rounds > cfg.max_rounds {
            return Err(Error::PricingBudgetExceeded(cfg.max_rounds));
        }
    }
    Ok((lp, kept, rounds))
}

/// Fractional chromatic number by column generation. `χ_f` of the empty
/// graph is 0.
pub fn chi_fractional<S: Scalar>(g: &Graph, cfg: &SolveConfig) -> Result<ChiResult<S>> {
    let n = g.n();
    if n == 0 {
        return Ok(ChiResult {
            value: S::zero(),
            cover: Vec::new(),
            clique: Vec::new(),
            dual_bound: S::zero(),
            gap: S::zero(),
            iterations: 0,
        });
    }
    let mut seed = warm_start_columns(g);
    if S::EXACT {
        let (_, float_sets, _) = run_chi::<f64>(g, seed.clone(), cfg)?;
        seed.extend(float_sets);
    }
    let (lp, sets, rounds) = run_chi::<S>(g, seed, cfg)?;
    let value = lp.objective();
    let x = lp.column_values();
    let floor = if S::EXACT {
        S::zero()
    } else {
        S::from_f64(1e-14)
    };
    let cover: Vec<(IndepSet, S)> = sets
        .iter()
        .zip(&x[n..])
        .filter(|(_, w)| **w > floor)
        .map(|(s, w)| (s.clone(), w.clone()))
        .collect();
    let lambda = clamp_nonneg(&lp.duals());
    let (_, best) = max_weight_independent_set(g, &lambda)?;
    let clique: Vec<S> = if best > S::zero() {
        lambda.into_iter().map(|l| l / best.clone()).collect()
    } else {
        lambda
    };
    let dual_bound = clique.iter().fold(S::zero(), |a, l| a + l.clone());
    let gap = (value.clone() - dual_bound.clone()).abs_val();
    Ok(ChiResult {
        value,
        cover,
        clique,
        dual_bound,
        gap,
        iterations: rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use crate::scalar::parse_rational;
    use crate::shearer::shearer_f;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn set(v: &[usize]) -> IndepSet {
        IndepSet::from_sorted_unchecked(v.to_vec())
    }

    fn cycle(n: usize) -> Graph {
        generate(&GeneratorSpec::Cycle(n)).unwrap()
    }

    #[test]
    fn marginal_examples() {
        let d = Distribution::<f64>::uniform(vec![set(&[0]), set(&[1])]).unwrap();
        assert_eq!(d.marginals(2), vec![0.5, 0.5]);
        let c5 = Distribution::<Rational>::uniform(vec![
            set(&[0, 2]),
            set(&[1, 3]),
            set(&[2, 4]),
            set(&[0, 3]),
            set(&[1, 4]),
        ])
        .unwrap();
        assert_eq!(c5.marginals(5), vec![q("2/5"); 5]);
        assert_eq!(c5.expected_size(), q("2"));
        let empty = Distribution::<f64>::point_mass(IndepSet::empty());
        assert_eq!(empty.marginals(3), vec![0.0; 3]);
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(vec![(set(&[0]), 0.5)]).is_err());
        assert!(Distribution::new(vec![(set(&[0]), 0.5), (set(&[0]), 0.5)]).is_err());
        assert!(Distribution::new(vec![(set(&[0]), 1.5), (set(&[1]), -0.5)]).is_err());
        assert!(Distribution::new(vec![(set(&[0]), q("1/3")), (set(&[1]), q("2/3"))]).is_ok());
    }

    #[test]
    fn min_slack_k2() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let t = TargetVector::new(vec![q("1/2"), q("1/2")]).unwrap();
        let r = solve_min_slack(&k2, &t, &SolveConfig::default()).unwrap();
        assert_eq!(r.y_star, q("0"));
        assert_eq!(r.gap, q("0"));
        assert_eq!(r.marginals(2), vec![q("1/2"), q("1/2")]);
    }

    #[test]
    fn min_slack_c5_constant() {
        let t = TargetVector::constant(5, q("9/20")).unwrap();
        let r = solve_min_slack(&cycle(5), &t, &SolveConfig::default()).unwrap();
        assert_eq!(r.y_star, q("1/20"));
        assert_eq!(r.dual_bound, q("1/20"));
        assert!(r.distribution.len() <= 5 + 2);
    }

    #[test]
    fn min_slack_c5_shearer_targets() {
        let f2 = shearer_f(2.0).unwrap();
        let t = TargetVector::constant(5, f2).unwrap();
        let r = solve_min_slack(&cycle(5), &t, &SolveConfig::default()).unwrap();
        assert!((r.y_star - (f2 - 0.4)).abs() < 1e-12);
        assert!((r.y_star + 0.0137056).abs() < 1e-7);
        assert!(r.gap <= 1e-10);
    }

    #[test]
    fn min_slack_single_vertex() {
        let g = Graph::empty(1);
        let t = TargetVector::new(vec![q("1")]).unwrap();
        let r = solve_min_slack(&g, &t, &SolveConfig::default()).unwrap();
        assert_eq!(r.y_star, q("0"));
        assert_eq!(r.distribution.support(), &[(set(&[0]), q("1"))]);
        let t = TargetVector::new(vec![0.3]).unwrap();
        let r = solve_min_slack(&g, &t, &SolveConfig::default()).unwrap();
        assert!((r.y_star + 0.7).abs() < 1e-15);
    }

    #[test]
    fn min_slack_rejects_bad_input() {
        let cfg = SolveConfig::default();
        let t = TargetVector::<f64>::new(vec![]).unwrap();
        assert!(solve_min_slack(&Graph::empty(0), &t, &cfg).is_err());
        assert!(TargetVector::new(vec![1.5]).is_err());
        let t = TargetVector::new(vec![0.5]).unwrap();
        assert!(solve_min_slack(&cycle(5), &t, &cfg).is_err());
    }

    #[test]
    fn chi_examples() {
        let cfg = SolveConfig::default();
        assert_eq!(chi_fractional::<Rational>(&cycle(5), &cfg).unwrap().value, q("5/2"));
        assert_eq!(chi_fractional::<Rational>(&cycle(4), &cfg).unwrap().value, q("2"));
        let c5 = generate(&GeneratorSpec::Cycle(5)).unwrap();
        let grotzsch = generate(&GeneratorSpec::Mycielski(Box::new(c5))).unwrap();
        let r = chi_fractional::<Rational>(&grotzsch, &cfg).unwrap();
        assert_eq!(r.value, q("29/10"));
        assert_eq!(r.gap, q("0"));
        let sum = r.clique.iter().fold(q("0"), |a, x| a + x.clone());
        assert_eq!(sum, q("29/10"));
    }

    #[test]
    fn chi_small_cases() {
        let cfg = SolveConfig::default();
        assert_eq!(chi_fractional::<f64>(&Graph::empty(0), &cfg).unwrap().value, 0.0);
        assert_eq!(chi_fractional::<Rational>(&Graph::empty(3), &cfg).unwrap().value, q("1"));
        let r = chi_fractional::<f64>(&cycle(7), &cfg).unwrap();
        assert!((r.value - 7.0 / 3.0).abs() < 1e-10);
        let d = r.distribution().unwrap();
        let min = d.marginals(7).into_iter().fold(1.0, f64::min);
        assert!((min - 3.0 / 7.0).abs() < 1e-10);
    }

    #[test]
    fn lp_result_json_shape() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let t = TargetVector::new(vec![q("1/2"), q("1/2")]).unwrap();
        let r = solve_min_slack(&k2, &t, &SolveConfig::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["y_star"], "0");
        assert_eq!(v["support"][0]["prob"], "1/2");
        assert!(v["duals"].is_array());
        assert!(v.get("gap").is_some() && v.get("iterations").is_some());
    }
}
