use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Error)]
pub enum ZakharovError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("zero mode does not vanish (|c0| = {value:e}, max |c| = {scale:e})")]
    ZeroMode { value: f64, scale: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("regularity s = {s} is not above the threshold 9/10")]
    Threshold { s: f64 },

    #[error("fixed point did not contract within {iterations} iterations (last factor {factor:.3e})")]
    NonContraction { factor: f64, iterations: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("trajectory covers [{have_start}, {have_end}] but [{want_start}, {want_end}] was requested")]
    Coverage {
        have_start: f64,
        have_end: f64,
        want_start: f64,
        want_end: f64,
    },

    #[error("probe failure: {0}")]
    ProbeFailure(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed snapshot: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ZakharovError>;
