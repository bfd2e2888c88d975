use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("graph too large for {what}: n = {n}, limit = {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("argument outside domain: {0}")]
    DomainError(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal error: master LP infeasible ({0})")]
    Infeasible(String),

    #[error("internal error: master LP unbounded")]
    Unbounded,

    #[error("pricing budget of {0} column-generation rounds exceeded")]
    PricingBudgetExceeded(usize),

    #[error("simplex iteration limit of {0} exceeded")]
    IterationLimit(usize),

    #[error("graph is not triangle-free (triangle {0:?})")]
    NotTriangleFree([usize; 3]),

    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),

    #[error("power iteration did not converge within {0} iterations")]
    NotConverged(usize),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("weights must sum to 1 (sum = {0})")]
    NotNormalized(f64),

    #[error("weights must be finite and strictly positive (vertex {0})")]
    NonPositiveWeight(usize),

    #[error("support set {set:?} of the distribution for vertex {u} is not independent of its closed neighbourhood")]
    SupportNotIndependent { u: usize, set: Vec<usize> },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
