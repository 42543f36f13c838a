use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Shape or conformability violation (e.g. multiplying a 2x3 by a 2x2).
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A pivot fell below the singularity threshold during elimination.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// Input outside the mathematical domain of the operation
    /// (negative argument to a mean, p < 1, |eta| > 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative kernel failed to reach its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A textual descriptor (space, sampler, symbol) could not be parsed.
    #[error("invalid descriptor: {0}")]
    Descriptor(String),

    /// Malformed external input (matrix JSON, NaN entries, ...).
    #[error("input error: {0}")]
    Input(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
