//! Error type shared by all modules.

use thiserror::Error;

/// Failures raised by covariance-matrix construction and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (relative defect {defect:e})")]
    NotSymmetric { defect: f64 },

    #[error("covariance diagonal entry {index} is not strictly positive ({value:e})")]
    NonPositiveDiagonal { index: usize, value: f64 },

    #[error("wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("eigenvalues fail to form +/- i nu pairs (relative defect {residual:e})")]
    PairingDefect { residual: f64 },

    #[error("iteration failed to converge (residual {residual:e})")]
    ConvergenceFailure { residual: f64 },

    #[error("twist phase {twist:e} exceeds the bound 1/(k delta^2) = {bound:e}")]
    TwistBoundViolation { twist: f64, bound: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{name} = {value:e} is out of range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error(
        "no valid mixture with component waist {waist:e} m (remainder eigenvalue {min_eigenvalue:e})"
    )]
    InfeasibleWaist { waist: f64, min_eigenvalue: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
