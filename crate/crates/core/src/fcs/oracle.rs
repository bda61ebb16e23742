//! Reference evaluation of the joint weights by explicit projector
//! sandwiches, `w(e′, e) = tr(P_{e′} U P_e ρ P_e U†)`.
//!
//! This is the defining formula evaluated literally, with the propagator from
//! [`expm_hermitian`]; it is `O(levels² n³)` and meant for cross-checking
//! [`super::FcsEngine`] at small dimension.

use num_complex::Complex64;

use super::protocol::JointTable;
use super::spectral::{default_cluster_tol, spectral_decompose};
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{eigh, expm_hermitian, trace_product};
use crate::models::PartitionedSystem;

pub fn projector_joint_table(
    system: &PartitionedSystem,
    rho: &DensityMatrix,
    t: f64,
    cluster_tol: Option<f64>,
) -> Result<JointTable> {
    if rho.dim() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            found: rho.dim(),
        });
    }
    let h = system.h_total();
    let tol = match cluster_tol {
        Some(t) => t,
        None => default_cluster_tol(&eigh(&h)?.eigenvalues),
    };
    let dec = spectral_decompose(&h, tol)?;
    let projections: Vec<_> = (0..dec.levels().len()).map(|k| dec.projection(k)).collect();
    let u = expm_hermitian(&system.h_coupled(), Complex64::new(0.0, -t))?;
    let u_dag = u.adjoint();
    let n_levels = projections.len();
    let mut weights = vec![0.0; n_levels * n_levels];
    for (e, p_e) in projections.iter().enumerate() {
        let sandwiched = &(&(&(&u * p_e) * rho.matrix()) * p_e) * &u_dag;
        for (f, p_f) in projections.iter().enumerate() {
            weights[f * n_levels + e] = trace_product(p_f, &sandwiched)?.re;
        }
    }
    Ok(JointTable::new(dec.energies(), weights))
}
