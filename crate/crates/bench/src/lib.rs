//! Fixtures shared by the benchmarks in `benches/`.

use fcstat_core::models::{build_anderson, build_xy_lattice, AndersonSpec, XYLatticeSpec};
use fcstat_core::PartitionedSystem;

/// XY lattice with `half_width = l`, `J = 1`, `ε = 0.5`.
pub fn xy_lattice(l: usize) -> PartitionedSystem {
    build_xy_lattice(&XYLatticeSpec {
        half_width: l,
        coupling: 1.0,
        boundary_strength: 0.5,
    })
    .expect("XY fixture")
}

/// Anderson impurity with `lead_length = l`, `ε_d = 0.3`, `U = 1`, `λ = 0.5`.
pub fn anderson(l: usize) -> PartitionedSystem {
    build_anderson(&AndersonSpec::with_nearest_site_coupling(l, 0.3, 1.0, 0.5))
        .expect("Anderson fixture")
}
