//! One step of the tilt-and-mix construction and the inequalities it is
//! built from.
//!
//! With probability `1 − ε` the step samples from `D`; otherwise it draws `u`
//! with probability `w(u)` and returns `{u} ∪ I_u` with `I_u ~ D_u` on
//! `G_u = G − N̄(u)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSubgraph};
use crate::indset::{is_independent, IndepSet};
use crate::lp::{solve_min_slack, Distribution, SolveConfig, TargetVector};
use crate::scalar::Scalar;
use crate::shearer::{f_unchecked, ode_cancellation};
use crate::weights::WeightFn;

/// Float identity tolerance for the marginal decomposition.
pub const IDENTITY_TOL: f64 = 1e-10;
pub const ODE_TOL: f64 = 1e-9;
pub const CLAIM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct TiltParams {
    epsilon: f64,
    base_weights: WeightFn<f64>,
}

impl TiltParams {
    pub fn new(epsilon: f64, base_weights: WeightFn<f64>) -> Result<Self> {
        check_open_eps(epsilon)?;
        base_weights.require_normalized()?;
        Ok(TiltParams {
            epsilon,
            base_weights,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn base_weights(&self) -> &WeightFn<f64> {
        &self.base_weights
    }
}

fn check_open_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("epsilon must lie in (0, 1), got {eps}")))
    }
}

/// `w′(v) = w(v)·exp(ε·w(N(v)))`, not renormalised.
pub fn tilt_weights(g: &Graph, w: &WeightFn<f64>, eps: f64) -> Result<WeightFn<f64>> {
    w.check_len(g)?;
    w.require_normalized()?;
    check_open_eps(eps)?;
    WeightFn::new(
        (0..g.n())
            .map(|v| w.get(v) * (eps * w.neighborhood(g, v)).exp())
            .collect(),
    )
}

/// Per-vertex terms of `P_{D′}[v] = (1−ε)P_D[v] + ε·w(v) + ε·Σ_{x∉N̄(v)} P_{D_x}[v]·w(x)`.
#[derive(Clone, Debug, Serialize)]
pub struct MixVertex<S> {
    pub v: usize,
    pub mixed: S,
    pub main_term: S,
    pub self_term: S,
    pub sub_term: S,
    /// `mixed − (main_term + self_term + sub_term)`.
    pub residual: S,
    /// `None` for isolated vertices or graphs with a triangle.
    pub claim_lhs: Option<f64>,
    pub claim_rhs: Option<f64>,
    /// `ε·w(v)·(1 + x(1−x)f′(x) − (1+x)f(x))` at `x = w(N(v))/w(v)`.
    pub ode_cancellation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MixReport<S> {
    pub epsilon: f64,
    pub per_vertex: Vec<MixVertex<S>>,
    /// Residuals all zero (exact) or within [`IDENTITY_TOL`] (float).
    pub identity_holds: bool,
    pub claim_holds: bool,
    pub max_ode_cancellation: f64,
}

impl<S: Scalar> MixReport<S> {
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .per_vertex
            .iter()
            .map(|r| {
                serde_json::json!({
                    "v": r.v,
                    "mixed": r.mixed.to_json(),
                    "main_term": r.main_term.to_json(),
                    "self_term": r.self_term.to_json(),
                    "sub_term": r.sub_term.to_json(),
                    "residual": r.residual.to_json(),
                    "claim_lhs": r.claim_lhs,
                    "claim_rhs": r.claim_rhs,
                    "ode_cancellation": r.ode_cancellation,
                })
            })
            .collect();
        serde_json::json!({
            "epsilon": self.epsilon,
            "per_vertex": rows,
            "identity_holds": self.identity_holds,
            "claim_holds": self.claim_holds,
            "max_ode_cancellation": self.max_ode_cancellation,
        })
    }
}

/// Marks `N̄(v)`.
fn closed_mask(g: &Graph, v: usize) -> Vec<bool> {
    let mut mask = vec![false; g.n()];
    mask[v] = true;
    for &x in g.neighbors(v) {
        mask[x] = true;
    }
    mask
}

/// Exact distribution of one mixing step and its per-vertex decomposition.
///
/// `d_sub[u]` is a distribution on `G_u` written in parent ids. `ε = 0` and
/// `ε = 1` are accepted.
pub fn mix_process<S: Scalar>(
    g: &Graph,
    w: &WeightFn<S>,
    eps: &S,
    d_main: &Distribution<S>,
    d_sub: &[Distribution<S>],
) -> Result<(Distribution<S>, MixReport<S>)> {
    let n = g.n();
    w.check_len(g)?;
    w.require_normalized()?;
    if *eps < S::zero() || *eps > S::one() {
        return Err(Error::DomainError(format!("epsilon must lie in [0, 1], got {eps}")));
    }
    if d_sub.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} sub-distributions for {n} vertices",
            d_sub.len()
        )));
    }
    if !d_main.is_supported_on(g) {
        return Err(Error::InvalidInput("main distribution is not on independent sets".into()));
    }
    for (u, d) in d_sub.iter().enumerate() {
        let blocked = closed_mask(g, u);
        for (set, _) in d.support() {
            let bad = set.vertices().iter().any(|&x| x >= n || blocked[x])
                || !is_independent(g, set.vertices());
            if bad {
                return Err(Error::SupportNotIndependent {
                    u,
                    set: set.vertices().to_vec(),
                });
            }
        }
    }

    let keep = S::one() - eps.clone();
    let mut entries: Vec<(IndepSet, S)> = d_main
        .support()
        .iter()
        .map(|(s, p)| (s.clone(), keep.clone() * p.clone()))
        .collect();
    for (u, d) in d_sub.iter().enumerate() {
        let pick = eps.clone() * w.get(u).clone();
        for (s, p) in d.support() {
            let mut vs = s.vertices().to_vec();
            let at = vs.partition_point(|&x| x < u);
            vs.insert(at, u);
            entries.push((IndepSet::from_sorted_unchecked(vs), pick.clone() * p.clone()));
        }
    }
    let mixed = Distribution::from_weighted(entries)?;

    let mixed_marg = mixed.marginals(n);
    let main_marg = d_main.marginals(n);
    let sub_marg: Vec<Vec<S>> = d_sub.iter().map(|d| d.marginals(n)).collect();
    let wf = w.to_f64();
    let eps_f = eps.to_f64();
    let claims_apply = g.is_triangle_free() && eps_f > 0.0 && eps_f < 1.0;
    let mut per_vertex = Vec::with_capacity(n);
    for v in 0..n {
        let blocked = closed_mask(g, v);
        let main_term = keep.clone() * main_marg[v].clone();
        let self_term = eps.clone() * w.get(v).clone();
        let sub_sum = (0..n)
            .filter(|&x| !blocked[x])
            .fold(S::zero(), |acc, x| {
                acc + sub_marg[x][v].clone() * w.get(x).clone()
            });
        let sub_term = eps.clone() * sub_sum;
        let residual = mixed_marg[v].clone()
            - (main_term.clone() + self_term.clone() + sub_term.clone());
        let (claim_lhs, claim_rhs) = if claims_apply && g.degree(v) > 0 {
            let c = claim_values(g, &wf, eps_f, v);
            (Some(c.lhs), Some(c.rhs))
        } else {
            (None, None)
        };
        let x = wf.ratio(g, v);
        let ode = eps_f * wf.get(v) * ode_cancellation(x);
        per_vertex.push(MixVertex {
            v,
            mixed: mixed_marg[v].clone(),
            main_term,
            self_term,
            sub_term,
            residual,
            claim_lhs,
            claim_rhs,
            ode_cancellation: ode,
        });
    }
    let identity_holds = per_vertex.iter().all(|r| {
        if S::EXACT {
            r.residual == S::zero()
        } else {
            r.residual.to_f64().abs() <= IDENTITY_TOL
        }
    });
    let claim_holds = per_vertex.iter().all(|r| match (r.claim_lhs, r.claim_rhs) {
        (Some(l), Some(r)) => l <= r + CLAIM_TOL,
        _ => true,
    });
    let max_ode_cancellation = per_vertex
        .iter()
        .map(|r| r.ode_cancellation.abs())
        .fold(0.0, f64::max);
    Ok((
        mixed,
        MixReport {
            epsilon: eps_f,
            per_vertex,
            identity_holds,
            claim_holds,
            max_ode_cancellation,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClaimValues {
    pub lhs: f64,
    pub rhs: f64,
}

impl ClaimValues {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + CLAIM_TOL
    }
}

/// `w′(N_{G_x}(v))` for every `x ∉ N̄(v)`, paired with `x`.
fn sub_neighborhood_weights(g: &Graph, tilted: &WeightFn<f64>, v: usize) -> Vec<(usize, f64)> {
    let blocked = closed_mask(g, v);
    (0..g.n())
        .filter(|&x| !blocked[x])
        .map(|x| {
            let s = g
                .neighbors(v)
                .iter()
                .filter(|&&y| !g.has_edge(x, y))
                .map(|&y| tilted.get(y))
                .sum();
            (x, s)
        })
        .collect()
}

fn tilt_unchecked(g: &Graph, w: &WeightFn<f64>, eps: f64) -> WeightFn<f64> {
    WeightFn::new(
        (0..g.n())
            .map(|v| w.get(v) * (eps * w.neighborhood(g, v)).exp())
            .collect(),
    )
    .expect("tilted weights stay positive")
}

fn claim_values(g: &Graph, w: &WeightFn<f64>, eps: f64, v: usize) -> ClaimValues {
    let tilted = tilt_unchecked(g, w, eps);
    let closed = w.get(v) + w.neighborhood(g, v);
    let mut num = (1.0 - eps) * tilted.neighborhood(g, v);
    for (x, s) in sub_neighborhood_weights(g, &tilted, v) {
        num += eps * w.get(x) * s;
    }
    let lhs = num / (tilted.get(v) * (1.0 - eps * closed));
    let wn = w.neighborhood(g, v);
    let rhs = wn / w.get(v) * (eps * (w.get(v) - wn)).exp();
    ClaimValues { lhs, rhs }
}

fn check_claim_inputs(g: &Graph, w: &WeightFn<f64>, eps: f64, v: usize) -> Result<()> {
    g.require_triangle_free()?;
    w.check_len(g)?;
    w.require_normalized()?;
    check_open_eps(eps)?;
    if v >= g.n() {
        return Err(Error::OutOfRange { vertex: v, n: g.n() });
    }
    Ok(())
}

/// Both sides of the upper bound on the averaged tilted ratio at `v`.
pub fn claim_check(g: &Graph, w: &WeightFn<f64>, eps: f64, v: usize) -> Result<ClaimValues> {
    check_claim_inputs(g, w, eps, v)?;
    if g.degree(v) == 0 {
        return Err(Error::IsolatedVertex(v));
    }
    Ok(claim_values(g, w, eps, v))
}

/// Convexity step at `v`: `(1−ε)f(a) + Σ_x ε·w(x)·f(b_x)` against
/// `(1 − ε·w(N̄(v)))·f(weighted average)`. Returns `(lhs, rhs)`.
pub fn jensen_check(g: &Graph, w: &WeightFn<f64>, eps: f64, v: usize) -> Result<(f64, f64)> {
    check_claim_inputs(g, w, eps, v)?;
    let tilted = tilt_unchecked(g, w, eps);
    let wv = tilted.get(v);
    let mut lhs = (1.0 - eps) * f_unchecked(tilted.neighborhood(g, v) / wv);
    for (x, s) in sub_neighborhood_weights(g, &tilted, v) {
        lhs += eps * w.get(x) * f_unchecked(s / wv);
    }
    let closed = w.get(v) + w.neighborhood(g, v);
    let avg = claim_values(g, w, eps, v).lhs;
    Ok((lhs, (1.0 - eps * closed) * f_unchecked(avg)))
}

/// `exp(z) ≤ 1 + z + 2z²` on `[−1, 1]`.
pub fn taylor_bound_check(z: f64) -> Result<bool> {
    if z.is_nan() || z.abs() > 1.0 {
        return Err(Error::DomainError(format!("Taylor bound needs |z| <= 1, got {z}")));
    }
    Ok(z.exp() <= 1.0 + z + 2.0 * z * z + 1e-15)
}

/// Inputs of one mixing step with LP-optimal distributions for the tilted
/// targets on `G` and on every `G_u`.
#[derive(Clone, Debug)]
pub struct MixingInputs {
    pub tilted: WeightFn<f64>,
    pub d_main: Distribution<f64>,
    /// Parent ids.
    pub d_sub: Vec<Distribution<f64>>,
    /// `f(w′(N(v))/w′(v))`.
    pub main_targets: Vec<f64>,
    pub subgraphs: Vec<InducedSubgraph>,
    /// Local ids of `subgraphs[u]`: `f(w′(N_{G_u}(v))/w′(v))`.
    pub sub_targets: Vec<Vec<f64>>,
}

fn tilted_targets(g: &Graph, tilted: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|v| {
            let s: f64 = g.neighbors(v).iter().map(|&x| tilted[x]).sum();
            f_unchecked(s / tilted[v])
        })
        .collect()
}

pub fn optimal_mixing_inputs(
    g: &Graph,
    w: &WeightFn<f64>,
    eps: f64,
    cfg: &SolveConfig,
) -> Result<MixingInputs> {
    let tilted = tilt_weights(g, w, eps)?;
    let main_targets = tilted_targets(g, tilted.values());
    let d_main = solve_min_slack::<f64>(g, &TargetVector::new(main_targets.clone())?, cfg)?.distribution;
    let mut d_sub = Vec::with_capacity(g.n());
    let mut subgraphs = Vec::with_capacity(g.n());
    let mut sub_targets = Vec::with_capacity(g.n());
    for u in 0..g.n() {
        let sub = g.remove_closed_neighborhood(u)?;
        let local_w: Vec<f64> = sub.parent.iter().map(|&p| *tilted.get(p)).collect();
        let t = tilted_targets(&sub.graph, &local_w);
        let d = if sub.graph.n() == 0 {
            Distribution::point_mass(IndepSet::empty())
        } else {
            solve_min_slack::<f64>(&sub.graph, &TargetVector::new(t.clone())?, cfg)?
                .distribution
                .lift(&sub)
        };
        d_sub.push(d);
        subgraphs.push(sub);
        sub_targets.push(t);
    }
    Ok(MixingInputs {
        tilted,
        d_main,
        d_sub,
        main_targets,
        subgraphs,
        sub_targets,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainCheck {
    pub v: usize,
    pub mixed: f64,
    pub bound: f64,
}

impl ChainCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.mixed >= self.bound - tol
    }
}

/// Lower bound on each mixed marginal:
/// `ε·w(v) + (1 − ε·w(N̄(v)))·f(x·e^{ε(w(v) − w(N(v)))})` with `x = w(N(v))/w(v)`,
/// minus the deficits of `D` and the `D_x` below their targets.
pub fn lower_bound_chain(
    g: &Graph,
    w: &WeightFn<f64>,
    eps: f64,
    inputs: &MixingInputs,
) -> Result<Vec<ChainCheck>> {
    g.require_triangle_free()?;
    let (_, report) = mix_process(g, w, &eps, &inputs.d_main, &inputs.d_sub)?;
    let n = g.n();
    let main_marg = inputs.d_main.marginals(n);
    let sub_marg: Vec<Vec<f64>> = inputs.d_sub.iter().map(|d| d.marginals(n)).collect();
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let blocked = closed_mask(g, v);
        let main_deficit = (inputs.main_targets[v] - main_marg[v]).max(0.0);
        let mut sub_deficit = 0.0;
        for x in (0..n).filter(|&x| !blocked[x]) {
            let sub = &inputs.subgraphs[x];
            let local = sub.parent.binary_search(&v).expect("v survives in G_x");
            sub_deficit += w.get(x) * (inputs.sub_targets[x][local] - sub_marg[x][v]).max(0.0);
        }
        let wn = w.neighborhood(g, v);
        let wv = *w.get(v);
        let arg = wn / wv * (eps * (wv - wn)).exp();
        let bound = eps * wv + (1.0 - eps * (wv + wn)) * f_unchecked(arg)
            - (1.0 - eps) * main_deficit
            - eps * sub_deficit;
        out.push(ChainCheck {
            v,
            mixed: report.per_vertex[v].mixed,
            bound,
        });
    }
    Ok(out)
}
