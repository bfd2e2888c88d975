use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::TargetVector;
use crate::scalar::{Rational, Scalar};
use crate::shearer::f_unchecked;

/// Strictly positive vertex weights; `w(X)` is the sum over `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFn<S> {
    values: Vec<S>,
}

impl<S: Scalar> WeightFn<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if let Some(v) = values
            .iter()
            .position(|x| *x <= S::zero() || !x.to_f64().is_finite())
        {
            return Err(Error::NonPositiveWeight(v));
        }
        Ok(WeightFn { values })
    }

    pub fn unit(n: usize) -> Self {
        WeightFn {
            values: vec![S::one(); n],
        }
    }

    /// `w(v) = d(v)`; fails on isolated vertices.
    pub fn degree(g: &Graph) -> Result<Self> {
        if let Some(&v) = g.isolated_vertices().first() {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(WeightFn {
            values: (0..g.n()).map(|v| S::from_i64(g.degree(v) as i64)).collect(),
        })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> &S {
        &self.values[v]
    }

    pub fn total(&self) -> S {
        self.of(0..self.values.len())
    }

    pub fn of(&self, set: impl IntoIterator<Item = usize>) -> S {
        set.into_iter()
            .fold(S::zero(), |acc, v| acc + self.values[v].clone())
    }

    /// Scaled to total 1.
    pub fn normalized(&self) -> Self {
        let total = self.total();
        WeightFn {
            values: self.values.iter().map(|x| x.clone() / total.clone()).collect(),
        }
    }

    /// Exactly 1 for rationals, within `1e-9` for floats.
    pub fn is_normalized(&self) -> bool {
        let t = self.total();
        if S::EXACT {
            t == S::one()
        } else {
            (t.to_f64() - 1.0).abs() <= 1e-9
        }
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(self.total().to_f64()))
        }
    }

    /// `w(N(v))`.
    pub fn neighborhood(&self, g: &Graph, v: usize) -> S {
        self.of(g.neighbors(v).iter().copied())
    }

    /// `w(N(v)) / w(v)`, the argument of the local target.
    pub fn ratio(&self, g: &Graph, v: usize) -> S {
        self.neighborhood(g, v) / self.values[v].clone()
    }

    pub fn to_f64(&self) -> WeightFn<f64> {
        WeightFn {
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Exact copy of the float values.
    pub fn to_exact(&self) -> WeightFn<Rational> {
        WeightFn {
            values: self
                .values
                .iter()
                .map(|x| <Rational as Scalar>::from_f64(x.to_f64()))
                .collect(),
        }
    }

    pub fn check_len(&self, g: &Graph) -> Result<()> {
        if self.values.len() != g.n() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} vertices",
                self.values.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

impl WeightFn<f64> {
    /// Independent log-uniform draws from `[lo, hi]`.
    pub fn random_log_uniform(n: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> Self {
        let (a, b) = (lo.ln(), hi.ln());
        WeightFn {
            values: (0..n).map(|_| rng.gen_range(a..=b).exp()).collect(),
        }
    }

    pub fn random_seeded(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_log_uniform(n, 1e-3, 1e3, &mut rng)
    }
}

/// `t_v = f(w(N(v)) / w(v))` for every vertex.
pub fn shearer_targets(g: &Graph, w: &WeightFn<f64>) -> Result<TargetVector<f64>> {
    w.check_len(g)?;
    TargetVector::new((0..g.n()).map(|v| f_unchecked(w.ratio(g, v))).collect())
}
