#![allow(dead_code)]

use fcstat_core::linalg::kron;
use fcstat_core::models::pauli::Pauli;
use fcstat_core::models::{
    build_anderson, build_explicit, build_xy_lattice, AndersonSpec, XYLatticeSpec,
};
use fcstat_core::{ComplexMatrix, HermitianOperator, PartitionedSystem};

pub fn herm(m: ComplexMatrix) -> HermitianOperator {
    HermitianOperator::new(m).unwrap()
}

/// `(σ³⊗I, I⊗σ³, g σ¹⊗σ¹)`.
pub fn two_qubit(g: f64) -> PartitionedSystem {
    let i2 = ComplexMatrix::identity(2);
    let z = Pauli::Z.matrix();
    let x = Pauli::X.matrix();
    build_explicit(
        herm(kron(&z, &i2).unwrap()),
        herm(kron(&i2, &z).unwrap()),
        herm(kron(&x, &x).unwrap().scale_real(g)),
    )
    .unwrap()
}

pub fn xy_l1() -> PartitionedSystem {
    build_xy_lattice(&XYLatticeSpec {
        half_width: 1,
        coupling: 1.0,
        boundary_strength: 0.5,
    })
    .unwrap()
}

pub fn anderson_l1(include_dot: bool) -> PartitionedSystem {
    let mut spec = AndersonSpec::with_nearest_site_coupling(1, 0.3, 1.0, 0.5);
    spec.include_dot_in_measured_energy = include_dot;
    build_anderson(&spec).unwrap()
}
