use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("edges cross in the universal cover: {0}")]
    Crossing(String),

    #[error("embedding is not cellular on the torus: {0}")]
    NotCellular(String),

    #[error("graph is not balanced: {black} black vs {white} white vertices")]
    Unbalanced { black: usize, white: usize },

    #[error("size cap exceeded: {size} > {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("evaluation at zero")]
    ZeroArgument,

    #[error("integer reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("Mahler quadrature did not converge: value {value}, last difference {difference} after {points} points")]
    NonConvergence {
        value: f64,
        difference: f64,
        points: usize,
    },

    #[error("factorization breakdown at pivot {0} (graph disconnected?)")]
    Breakdown(usize),

    #[error("Kasteleyn system inconsistent: {0}")]
    Inconsistent(String),

    #[error("no sign combination reproduces the dimer count {0}")]
    Calibration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
