//! Fractional colouring and local-demand distributions for triangle-free
//! graphs, with exact LP certificates for Shearer-type bounds.

pub mod certify;
pub mod corpus;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod indset;
pub mod lp;
pub mod scalar;
pub mod shearer;
pub mod spectral;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{generate, GeneratorSpec, Graph, GraphStats, InducedSubgraph};
pub use indset::IndepSet;
pub use lp::{chi_fractional, solve_min_slack, ChiResult, Distribution, LpResult, SolveConfig, TargetVector};
pub use scalar::{Rational, Scalar};
pub use certify::{Certificate, Mode, Theorem};
pub use dynamics::{MixReport, TiltParams};
pub use spectral::SpectralResult;
pub use weights::WeightFn;
