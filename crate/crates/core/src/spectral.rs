//! Spectral radius and Perron vector of the adjacency matrix.
//!
//! Power iteration runs on `A + I`: bipartite graphs have both `±ρ` in the
//! spectrum and the unshifted iteration oscillates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ITERATIONS: usize = 1_000_000;
const RAYLEIGH_TOL: f64 = 1e-13;
const RESIDUAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// Positive eigenvector, scaled to unit maximum entry.
    pub perron: Vec<f64>,
    /// `max_v |Σ_{x ∈ N(v)} u_x − ρ u_v|`.
    pub residual: f64,
    pub iterations: usize,
}

fn adjacency_times(g: &Graph, u: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&x| u[x]).sum())
        .collect()
}

/// Max-norm eigen-identity residual of `u` for the value `rho`.
pub fn eigen_residual(g: &Graph, u: &[f64], rho: f64) -> f64 {
    adjacency_times(g, u)
        .iter()
        .zip(u)
        .map(|(au, uv)| (au - rho * uv).abs())
        .fold(0.0, f64::max)
}

fn rayleigh(g: &Graph, u: &[f64]) -> f64 {
    let au = adjacency_times(g, u);
    let num: f64 = au.iter().zip(u).map(|(a, b)| a * b).sum();
    let den: f64 = u.iter().map(|x| x * x).sum();
    num / den
}

/// Perron pair of a connected graph.
pub fn spectral_radius(g: &Graph) -> Result<SpectralResult> {
    let (_, count) = g.component_labels();
    if count > 1 {
        return Err(Error::Disconnected(count));
    }
    let n = g.n();
    if g.m() == 0 {
        return Ok(SpectralResult {
            rho: 0.0,
            perron: vec![1.0; n],
            residual: 0.0,
            iterations: 0,
        });
    }
    let mut u = vec![1.0; n];
    let mut prev = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let au = adjacency_times(g, &u);
        let mut next: Vec<f64> = au.iter().zip(&u).map(|(a, b)| a + b).collect();
        let top = next.iter().copied().fold(0.0, f64::max);
        for x in &mut next {
            *x /= top;
        }
        u = next;
        let rho = rayleigh(g, &u);
        let residual = eigen_residual(g, &u, rho);
        if (rho - prev).abs() <= RAYLEIGH_TOL && residual <= RESIDUAL_TOL * rho.max(1.0) {
            return Ok(SpectralResult {
                rho,
                perron: u,
                residual,
                iterations: it,
            });
        }
        prev = rho;
    }
    Err(Error::NotConverged(MAX_ITERATIONS))
}

/// `ρ(G)`, the maximum over components. Zero for edgeless graphs.
pub fn spectral_of(g: &Graph) -> Result<f64> {
    let mut rho: f64 = 0.0;
    for c in g.components() {
        if c.graph.m() > 0 {
            rho = rho.max(spectral_radius(&c.graph)?.rho);
        }
    }
    Ok(rho)
}

/// Per-component Perron vectors stitched into one strictly positive weight
/// vector on `g`. Isolated vertices get weight 1.
pub fn perron_weights(g: &Graph) -> Result<Vec<f64>> {
    let mut w = vec![1.0; g.n()];
    for c in g.components() {
        let r = spectral_radius(&c.graph)?;
        for (local, &p) in c.parent.iter().enumerate() {
            w[p] = r.perron[local];
        }
    }
    Ok(w)
}
