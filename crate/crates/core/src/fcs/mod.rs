//! Full counting statistics of the energy variation in the two-time
//! measurement protocol.

mod distribution;
pub mod oracle;
mod protocol;
mod spectral;
mod state;

pub use distribution::{
    mgf_from_distribution, moments, Atom, FcsDistribution, MASS_TOL, NEGATIVE_PROB_TOL,
};
pub use protocol::{
    fcs_distribution, mgf_trace_formula, pinched_state, FcsEngine, FcsOutcome, FcsTolerances,
    JointTable, MAX_LEVEL_PAIRS, PINCHED_TOL,
};
pub use spectral::{default_cluster_tol, pinch, spectral_decompose, Level, SpectralDecomposition};
pub use state::{DensityMatrix, PSD_TOL, TRACE_TOL};
