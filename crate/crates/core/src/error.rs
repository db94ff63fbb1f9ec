use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("depth mismatch: {0:?} vs {1:?}")]
    DepthMismatch((usize, usize), (usize, usize)),

    #[error("degenerate rectangle")]
    DegenerateRectangle,

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("operator produced non-finite values")]
    NonFinite,

    #[error("operator is not linear (spot check residual {0:e})")]
    NotLinear(f64),

    #[error("power iteration did not converge after {iterations} iterations (last bound {bound})")]
    NonConvergence { iterations: usize, bound: f64 },

    #[error("too many cells for exhaustive search: {0} (max 16)")]
    TooManyCells(usize),

    #[error("unsupported paraproduct signature")]
    UnsupportedSignature,

    #[error("insufficient depth headroom")]
    InsufficientHeadroom,

    #[error("evaluation at jump x = {0}")]
    EvaluationAtJump(f64),

    #[error("support exceeds the grid window [-{0}, {0}]")]
    WindowOverflow(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
