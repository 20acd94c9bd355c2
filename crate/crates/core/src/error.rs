use thiserror::Error;

pub type Result<T> = std::result::Result<T, CopulaError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CopulaError {
    /// A coordinate or probability fell outside `[0, 1]` (or was NaN).
    #[error("{name} = {value} is outside [0, 1]")]
    Domain { name: &'static str, value: f64 },

    /// Parameters that violate the constraints required by the operation.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("root finder did not reach tolerance {tol:e} within {iterations} iterations (residual {residual:e})")]
    Convergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    /// Rank statistics are undefined for a constant coordinate.
    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    Argument(String),
}
