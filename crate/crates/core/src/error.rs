use thiserror::Error;

/// Errors raised by the spectral-ball routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("invalid eigenvalue order: {0}")]
    InvalidOrder(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("no solution: residual {residual:.3e} exceeds {threshold:.3e}")]
    NoSolution { residual: f64, threshold: f64 },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to inputs
    /// that violate a precondition.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Numeric(_) | Error::Internal(_) | Error::DegenerateData(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
