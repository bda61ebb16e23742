use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension {dim} exceeds the configured maximum {max}")]
    SizeLimit { dim: usize, max: usize },

    #[error("eigensolver did not converge for eigenvalue {index} within {iterations} iterations")]
    ConvergenceFailure { index: usize, iterations: usize },

    #[error("exponent {exponent:.3e} exceeds the double-precision range (limit {limit})")]
    Overflow { exponent: f64, limit: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("subsystem Hamiltonians do not commute (commutator norm {norm:.3e})")]
    NonCommutingParts { norm: f64 },

    #[error("state does not commute with the measured Hamiltonian (commutator norm {norm:.3e})")]
    NotPinched { norm: f64 },

    #[error("negative probability {value:.3e} beyond rounding tolerance")]
    NegativeProbability { value: f64 },

    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
