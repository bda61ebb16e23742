//! Full counting statistics of the total energy variation in partitioned
//! finite quantum systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense complex matrices, a Hermitian eigensolver, spectral
//!   functions and operator norms.
//! * [`models`]: partitioned Hamiltonians (the 2D XY lattice, the Anderson
//!   impurity model, explicit matrices) and initial states.
//! * [`fcs`]: the two-time energy measurement protocol, the distribution of
//!   the energy variation and its moment generating function.
//! * [`bounds`]: the regularity functional `R(alpha)`, the exponential moment
//!   bound, tail bounds, first-law identities and the two matrix inequalities
//!   the bound rests on.

// Negated comparisons below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod fcs;
pub mod linalg;
pub mod models;

pub use error::{Error, Result};
pub use fcs::{FcsDistribution, SpectralDecomposition};
pub use linalg::{ComplexMatrix, EigenSystem, HermitianOperator};
pub use models::{DensityMatrix, PartitionedSystem};
pub use num_complex::Complex64;
