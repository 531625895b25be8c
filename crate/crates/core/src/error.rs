use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ConeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid cone descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("non-finite input in {0}")]
    NonFiniteInput(&'static str),
    #[error("solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: u64, residual: f64 },
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("iterates diverged: |x| = {norm:.3e}")]
    NumericalBlowup { norm: f64 },
}

pub type Result<T> = std::result::Result<T, ConeError>;
