//! Dense complex linear algebra.

mod eigh;
mod matrix;
mod ops;
pub mod random;

pub(crate) use eigh::check_exponent;
pub use eigh::{
    eigh, eigvalsh, expm_hermitian, EigenSystem, HermitianOperator, EXP_LIMIT, HERMITIAN_TOL,
    MAX_QL_ITERATIONS,
};
pub use matrix::ComplexMatrix;
pub use ops::{kron, kron_with_limit, op_norm, trace_product, DEFAULT_MAX_DIM};
