//! Partitioned Hamiltonians and initial states.

mod anderson;
pub mod fermion;
pub mod pauli;
mod state;
mod system;
mod xy;

pub use anderson::{
    anderson_parts, build_anderson, build_anderson_with_limit, AndersonParts, AndersonSpec, Lead,
    LeadCoupling, Spin,
};
pub use state::{gibbs_product_state, random_pure};
pub use system::{build_explicit, PartitionedSystem, COMMUTATOR_TOL};
pub use xy::{build_xy_lattice, build_xy_lattice_with_limit, XYLatticeSpec};

pub use crate::fcs::DensityMatrix;
