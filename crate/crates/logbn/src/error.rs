//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Domain specification produced no interior points.
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    /// Field length does not match the grid's interior point count.
    #[error("shape mismatch: field has {got} values, grid interior has {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    /// Invalid configuration or precondition violation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A field contains NaN or infinite values.
    #[error("invalid field: {0}")]
    InvalidField(String),

    /// An iterative method did not reach its tolerance.
    #[error("no convergence in {what}: residual {residual:.3e} after {iterations} iterations")]
    Convergence {
        what: String,
        residual: f64,
        iterations: usize,
    },

    /// A quadrature or fit did not reach the requested accuracy.
    #[error("accuracy failure: {0}")]
    Accuracy(String),

    /// Parameters lie outside the regime an operation is defined for.
    #[error("regime error: {0}")]
    Regime(String),

    /// A scalar root or maximum could not be bracketed.
    #[error("bracket failure: {0}")]
    Bracket(String),

    /// The positive part of the field vanishes; no Nehari projection exists.
    #[error("no projection: positive part of the field is identically zero")]
    NoProjection,

    /// A test-function scale is unresolvable on the grid.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Ray scaling overflowed before reaching negative energy.
    #[error("scaling error: {0}")]
    Scaling(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A file artifact failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
