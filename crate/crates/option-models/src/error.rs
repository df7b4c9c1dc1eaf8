use thiserror::Error;

/// Errors raised by the model algebra, MDP construction and the planners.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} states, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a nonempty model set")]
    EmptyModelSet,

    #[error("no candidate model is available in state {state}")]
    NoCandidate { state: usize },

    #[error("policy references model {model} which is not in the base set of {len}")]
    MissingModel { model: usize, len: usize },

    #[error("policy weights for state {state} are invalid: {reason}")]
    InvalidWeights { state: usize, reason: String },

    #[error("termination probability {value} at state {state} is outside [0, 1]")]
    BetaRange { state: usize, value: f64 },

    #[error("invalid MDP: {0}")]
    InvalidMdp(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("fixed-point iteration did not converge within {max_iters} iterations (last residual {residual:e})")]
    Diverged { max_iters: usize, residual: f64 },

    #[error("linear system is singular or badly conditioned (pivot {pivot:e})")]
    SingularSystem { pivot: f64 },

    #[error("invalid domain parameter: {0}")]
    InvalidDomain(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
