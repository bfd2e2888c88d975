//! Checkable certificates for the local-demand inequalities.
//!
//! Every certificate reduces to a list of `(target, achieved)` pairs with
//! slack `achieved − target`; `pass ⇔ worst_slack ≥ −tolerance`. Global
//! inequalities (eigen identity, `χ_f` bounds, `y*`) are recorded in the
//! same list under vertex `None`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{chi_fractional, solve_min_slack, Distribution, LpResult, SolveConfig, TargetVector};
use crate::scalar::{rational_string, Rational, Scalar};
use crate::shearer::f_unchecked;
use crate::spectral::{eigen_residual, spectral_radius};
use crate::weights::WeightFn;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Exact-mode targets are the float targets lowered by this much, giving a
/// rational lower bound on the irrational `f` value.
pub const EXACT_TARGET_MARGIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    WeightedLocal,
    LocalShearer,
    Spectral,
    EdgeMixture,
    DcoreReduction,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Float { tol: f64 },
    Exact,
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Float {
            tol: DEFAULT_TOLERANCE,
        }
    }
}

impl Mode {
    pub fn tolerance(&self) -> f64 {
        match self {
            Mode::Float { tol } => *tol,
            Mode::Exact => EXACT_TARGET_MARGIN,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexCheck {
    /// `None` for graph-level inequalities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<&'static str>,
    pub target: f64,
    pub achieved: f64,
}

impl VertexCheck {
    fn vertex(v: usize, target: f64, achieved: f64) -> Self {
        VertexCheck {
            v: Some(v),
            label: None,
            target,
            achieved,
        }
    }

    fn global(label: &'static str, target: f64, achieved: f64) -> Self {
        VertexCheck {
            v: None,
            label: Some(label),
            target,
            achieved,
        }
    }

    pub fn slack(&self) -> f64 {
        self.achieved - self.target
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Float(LpResult<f64>),
    Exact(LpResult<Rational>),
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub graph_hash: String,
    pub n: usize,
    pub m: usize,
    pub tolerance: f64,
    pub per_vertex: Vec<VertexCheck>,
    pub worst_slack: f64,
    pub pass: bool,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, serde_json::Value>,
}

impl Certificate {
    fn build(
        theorem: Theorem,
        g: &Graph,
        tolerance: f64,
        per_vertex: Vec<VertexCheck>,
        witness: Option<Witness>,
        notes: BTreeMap<String, serde_json::Value>,
    ) -> Self {
        let worst_slack = per_vertex
            .iter()
            .map(VertexCheck::slack)
            .fold(f64::INFINITY, f64::min);
        let worst_slack = if worst_slack.is_finite() { worst_slack } else { 0.0 };
        Certificate {
            theorem,
            graph_hash: g.hash(),
            n: g.n(),
            m: g.m(),
            tolerance,
            per_vertex,
            worst_slack,
            pass: worst_slack >= -tolerance,
            witness,
            notes,
        }
    }

    pub fn witness_distribution(&self) -> Option<Distribution<f64>> {
        match &self.witness {
            Some(Witness::Float(r)) => Some(r.distribution.clone()),
            Some(Witness::Exact(r)) => Some(r.distribution.to_f64()),
            None => None,
        }
    }

    pub fn y_star(&self) -> Option<f64> {
        match &self.witness {
            Some(Witness::Float(r)) => Some(r.y_star),
            Some(Witness::Exact(r)) => Some(r.y_star.to_f64()),
            None => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serialises")
    }
}

fn local_targets(g: &Graph, w: &WeightFn<f64>) -> Vec<f64> {
    (0..g.n()).map(|v| f_unchecked(w.ratio(g, v))).collect()
}

/// Witness distribution for targets `t`, in the requested arithmetic.
fn witness_for(g: &Graph, t: &[f64], mode: Mode, cfg: &SolveConfig) -> Result<(Witness, Vec<f64>)> {
    match mode {
        Mode::Float { .. } => {
            let r = solve_min_slack::<f64>(g, &TargetVector::new(t.to_vec())?, cfg)?;
            let marg = r.marginals(g.n());
            Ok((Witness::Float(r), marg))
        }
        Mode::Exact => {
            let margin = <Rational as Scalar>::from_f64(EXACT_TARGET_MARGIN);
            let lowered: Vec<Rational> = t
                .iter()
                .map(|&x| {
                    let q = <Rational as Scalar>::from_f64(x) - margin.clone();
                    Scalar::max_of(q, <Rational as Scalar>::zero())
                })
                .collect();
            let r = solve_min_slack::<Rational>(g, &TargetVector::new(lowered)?, cfg)?;
            let marg = r.marginals(g.n()).iter().map(Scalar::to_f64).collect();
            Ok((Witness::Exact(r), marg))
        }
    }
}

fn weighted_certificate(
    theorem: Theorem,
    g: &Graph,
    w: &WeightFn<f64>,
    mode: Mode,
    cfg: &SolveConfig,
) -> Result<Certificate> {
    g.require_triangle_free()?;
    w.check_len(g)?;
    let mut notes = BTreeMap::new();
    if g.n() == 0 {
        return Ok(Certificate::build(theorem, g, mode.tolerance(), Vec::new(), None, notes));
    }
    let t = local_targets(g, w);
    let (witness, marg) = witness_for(g, &t, mode, cfg)?;
    let per_vertex = (0..g.n())
        .map(|v| VertexCheck::vertex(v, t[v], marg[v]))
        .collect();
    let (y, gap) = match &witness {
        Witness::Float(r) => (r.y_star, r.gap),
        Witness::Exact(r) => (r.y_star.to_f64(), r.gap.to_f64()),
    };
    notes.insert("y_star".into(), serde_json::json!(y));
    notes.insert("dual_gap".into(), serde_json::json!(gap));
    Ok(Certificate::build(
        theorem,
        g,
        mode.tolerance(),
        per_vertex,
        Some(witness),
        notes,
    ))
}

/// Every vertex reaches `f(w(N(v))/w(v))` under one distribution.
pub fn verify_weighted_theorem(g: &Graph, w: &WeightFn<f64>, mode: Mode) -> Result<Certificate> {
    weighted_certificate(Theorem::WeightedLocal, g, w, mode, &SolveConfig::default())
}

/// Unit weights: targets `f(d(v))`.
pub fn verify_local_shearer(g: &Graph, mode: Mode) -> Result<Certificate> {
    let w = WeightFn::unit(g.n());
    weighted_certificate(Theorem::LocalShearer, g, &w, mode, &SolveConfig::default())
}

/// `χ_f(G) ≤ 1/f(ρ)` for a connected triangle-free graph, through Perron
/// weights whose local targets all equal `f(ρ)`.
pub fn verify_spectral_bound(g: &Graph, mode: Mode) -> Result<Certificate> {
    g.require_triangle_free()?;
    let sp = spectral_radius(g)?;
    let w = WeightFn::new(sp.perron.clone())?;
    let cfg = SolveConfig::default();
    let mut cert = weighted_certificate(Theorem::Spectral, g, &w, mode, &cfg)?;
    let f_rho = f_unchecked(sp.rho);
    let deviation = local_targets(g, &w)
        .iter()
        .map(|t| (t - f_rho).abs())
        .fold(0.0, f64::max);
    let chi = match mode {
        Mode::Float { .. } => chi_fractional::<f64>(g, &cfg)?.value,
        Mode::Exact => {
            let c = chi_fractional::<Rational>(g, &cfg)?;
            cert.notes
                .insert("chi_f_exact".into(), serde_json::json!(rational_string(&c.value)));
            c.value.to_f64()
        }
    };
    let bound = if g.n() == 0 { 0.0 } else { 1.0 / f_rho };
    cert.per_vertex
        .push(VertexCheck::global("eigen_target_deviation", deviation, 0.0));
    cert.per_vertex.push(VertexCheck::global("chi_f_le_bound", chi, bound));
    cert.notes.insert("rho".into(), serde_json::json!(sp.rho));
    cert.notes.insert(
        "eigen_residual".into(),
        serde_json::json!(eigen_residual(g, &sp.perron, sp.rho)),
    );
    cert.notes.insert("chi_f".into(), serde_json::json!(chi));
    cert.notes.insert("spectral_bound".into(), serde_json::json!(bound));
    Ok(Certificate::build(
        cert.theorem,
        g,
        cert.tolerance,
        cert.per_vertex,
        cert.witness,
        cert.notes,
    ))
}

/// `S(v)`, the degree sum over `N(v)`.
pub fn neighbor_degree_sum(g: &Graph, v: usize) -> usize {
    g.neighbors(v).iter().map(|&x| g.degree(x)).sum()
}

/// Neighbourhood sampler: `N(u)` with probability `d(u)/2m`.
pub fn neighborhood_sampler<S: Scalar>(g: &Graph) -> Result<Distribution<S>> {
    if g.m() == 0 {
        return Err(Error::InvalidInput("neighbourhood sampler needs an edge".into()));
    }
    Distribution::from_weighted((0..g.n()).filter(|&u| g.degree(u) > 0).map(|u| {
        (
            crate::indset::IndepSet::from_sorted_unchecked(g.neighbors(u).to_vec()),
            S::from_i64(g.degree(u) as i64),
        )
    }))
}

/// `(ln m)^{2/3} / (18 m)^{1/3}`; zero for `m < 2`.
pub fn edge_closed_form(m: usize) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let m = m as f64;
    m.ln().powf(2.0 / 3.0) / (18.0 * m).cbrt()
}

fn mixture_marginals<S: Scalar>(
    g: &Graph,
    parts: [&Distribution<S>; 3],
) -> Result<(Distribution<S>, Vec<f64>)> {
    let third = S::one() / S::from_i64(3);
    let mix = Distribution::from_weighted(parts.iter().flat_map(|d| {
        d.support()
            .iter()
            .map(|(s, p)| (s.clone(), p.clone() * third.clone()))
    }))?;
    let marg = mix.marginals(g.n()).iter().map(Scalar::to_f64).collect();
    Ok((mix, marg))
}

/// Equal-weight mixture of the unit-weight witness, the degree-weight
/// witness and the neighbourhood sampler.
pub fn edge_bound_mixture(g: &Graph, mode: Mode) -> Result<Certificate> {
    g.require_triangle_free()?;
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(v));
    }
    let mut notes = BTreeMap::new();
    if g.n() == 0 {
        return Ok(Certificate::build(
            Theorem::EdgeMixture,
            g,
            mode.tolerance(),
            Vec::new(),
            None,
            notes,
        ));
    }
    let cfg = SolveConfig::default();
    let unit = WeightFn::unit(g.n());
    let deg = WeightFn::<f64>::degree(g)?;
    let (w1, _) = witness_for(g, &local_targets(g, &unit), mode, &cfg)?;
    let (w2, _) = witness_for(g, &local_targets(g, &deg), mode, &cfg)?;
    let (mix_json, support, marg) = match (&w1, &w2) {
        (Witness::Float(a), Witness::Float(b)) => {
            let d3 = neighborhood_sampler::<f64>(g)?;
            let (mix, marg) = mixture_marginals(g, [&a.distribution, &b.distribution, &d3])?;
            (mix.to_json(), mix.len(), marg)
        }
        (Witness::Exact(a), Witness::Exact(b)) => {
            let d3 = neighborhood_sampler::<Rational>(g)?;
            let (mix, marg) = mixture_marginals(g, [&a.distribution, &b.distribution, &d3])?;
            (mix.to_json(), mix.len(), marg)
        }
        _ => unreachable!("both witnesses share the mode"),
    };
    let two_m = 2.0 * g.m() as f64;
    let per_vertex = (0..g.n())
        .map(|v| {
            let d = g.degree(v) as f64;
            let s = neighbor_degree_sum(g, v) as f64;
            let target = (f_unchecked(d) + f_unchecked(s / d) + s / two_m) / 3.0;
            VertexCheck::vertex(v, target, marg[v])
        })
        .collect();
    notes.insert("closed_form_bound".into(), serde_json::json!(edge_closed_form(g.m())));
    notes.insert("mixture_support".into(), serde_json::json!(support));
    notes.insert("mixture".into(), mix_json);
    Ok(Certificate::build(
        Theorem::EdgeMixture,
        g,
        mode.tolerance(),
        per_vertex,
        None,
        notes,
    ))
}

fn chi_value(g: &Graph, mode: Mode, cfg: &SolveConfig) -> Result<Rational> {
    Ok(match mode {
        Mode::Float { .. } => <Rational as Scalar>::from_f64(chi_fractional::<f64>(g, cfg)?.value),
        Mode::Exact => chi_fractional::<Rational>(g, cfg)?.value,
    })
}

/// Replays the `d`-core peeling: each step checks
/// `χ_f(H) ≤ max{χ_f(H − v), d_H(v) + 1}`, and the chain gives
/// `χ_f(G) ≤ max{χ_f(core), d + 1}`.
pub fn dcore_reduction_check(g: &Graph, d: usize, mode: Mode) -> Result<Certificate> {
    let cfg = SolveConfig::default();
    let tol = match mode {
        Mode::Float { tol } => tol,
        Mode::Exact => 0.0,
    };
    let (core, order) = g.d_core_with_order(d);
    let mut alive = vec![true; g.n()];
    let mut current = g.clone();
    let mut current_ids: Vec<usize> = (0..g.n()).collect();
    let mut chi = chi_value(&current, mode, &cfg)?;
    let chi_g = chi.clone();
    let mut per_vertex = Vec::with_capacity(order.len() + 1);
    for &v in &order {
        let local = current_ids.binary_search(&v).expect("peeled vertex is alive");
        let deg = current.degree(local);
        alive[v] = false;
        let next = g.induced(&alive);
        let chi_next = chi_value(&next.graph, mode, &cfg)?;
        let bound = Scalar::max_of(chi_next.clone(), <Rational as Scalar>::from_i64(deg as i64 + 1));
        per_vertex.push(VertexCheck::vertex(v, chi.to_f64(), bound.to_f64()));
        current = next.graph;
        current_ids = next.parent;
        chi = chi_next;
    }
    let chi_core = chi;
    let final_bound = Scalar::max_of(chi_core.clone(), <Rational as Scalar>::from_i64(d as i64 + 1));
    per_vertex.push(VertexCheck::global(
        "chi_f_le_core_bound",
        chi_g.to_f64(),
        final_bound.to_f64(),
    ));
    let mut notes = BTreeMap::new();
    notes.insert("d".into(), serde_json::json!(d));
    notes.insert("core_size".into(), serde_json::json!(core.graph.n()));
    notes.insert("chi_f".into(), chi_json(&chi_g, mode));
    notes.insert("chi_f_core".into(), chi_json(&chi_core, mode));
    Ok(Certificate::build(
        Theorem::DcoreReduction,
        g,
        tol,
        per_vertex,
        None,
        notes,
    ))
}

fn chi_json(q: &Rational, mode: Mode) -> serde_json::Value {
    match mode {
        Mode::Exact => serde_json::json!(rational_string(q)),
        Mode::Float { .. } => serde_json::json!(q.to_f64()),
    }
}

/// Informational comparison of `χ_f` with the size, spectral and degree
/// bounds. Nothing here is asserted.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub chi_f: String,
    pub chi_f_value: f64,
    pub rho: f64,
    pub max_degree: usize,
    /// Name and value of each bound.
    pub bounds: BTreeMap<&'static str, f64>,
    /// Bounds at least `χ_f` at this size.
    pub dominating: Vec<&'static str>,
    pub tightest: Option<&'static str>,
}

pub fn bound_report(g: &Graph) -> Result<BoundReport> {
    g.require_triangle_free()?;
    let chi = chi_fractional::<Rational>(g, &SolveConfig::default())?.value;
    let chi_f = chi.to_f64();
    let rho = crate::spectral::spectral_of(g)?;
    let delta = g.max_degree();
    let (n, m) = (g.n() as f64, g.m() as f64);
    let mut bounds = BTreeMap::new();
    if g.n() >= 2 {
        bounds.insert("n_bound", 2f64.sqrt() * (n / n.ln()).sqrt());
    }
    if g.m() >= 2 {
        bounds.insert("m_bound", 18f64.cbrt() * m.cbrt() / m.ln().powf(2.0 / 3.0));
    }
    if g.n() > 0 {
        bounds.insert("spectral", 1.0 / f_unchecked(rho));
        bounds.insert("degree", 1.0 / f_unchecked(delta as f64));
    }
    bounds.insert("wilf", rho + 1.0);
    let dominating: Vec<&'static str> = bounds
        .iter()
        .filter(|(_, &b)| b >= chi_f - 1e-12)
        .map(|(&k, _)| k)
        .collect();
    let tightest = dominating
        .iter()
        .copied()
        .min_by(|a, b| bounds[a].total_cmp(&bounds[b]));
    Ok(BoundReport {
        n: g.n(),
        m: g.m(),
        chi_f: rational_string(&chi),
        chi_f_value: chi_f,
        rho,
        max_degree: delta,
        bounds,
        dominating,
        tightest,
    })
}
