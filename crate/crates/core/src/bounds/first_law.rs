use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fcs::{
    moments, pinched_state, DensityMatrix, FcsDistribution, FcsEngine, FcsTolerances,
};
use crate::linalg::{eigh, trace_product, ComplexMatrix};
use crate::models::PartitionedSystem;

/// Relative tolerance of the mean-heating identity.
pub const FIRST_LAW_TOL: f64 = 1e-8;

/// `𝔼_t(ΔE)` from the distribution against `⟨V⟩_0 − ⟨V⟩_t` in the pinched
/// state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstLawReport {
    pub t: f64,
    pub mean_from_fcs: f64,
    pub heat_from_v: f64,
    pub residual: f64,
    /// `𝔼_t(ΔE)/t`, zero at `t = 0`.
    pub mean_over_t: f64,
    pub pass: bool,
}

impl FirstLawReport {
    pub fn from_parts(t: f64, mean_from_fcs: f64, heat_from_v: f64) -> Self {
        let residual = (mean_from_fcs - heat_from_v).abs();
        let mean_over_t = if t > 0.0 { mean_from_fcs / t } else { 0.0 };
        Self {
            t,
            mean_from_fcs,
            heat_from_v,
            residual,
            mean_over_t,
            pass: residual <= FIRST_LAW_TOL * (1.0 + mean_from_fcs.abs()),
        }
    }
}

/// `tr(V ρ̃) − tr(V e^{−itH_V} ρ̃ e^{itH_V})`, with `V` and `ρ̃` held in the
/// eigenbasis of `H_V` so that each time costs `O(dim²)`.
#[derive(Debug, Clone)]
pub struct HeatFromCoupling {
    energies: Vec<f64>,
    coupling: ComplexMatrix,
    state: ComplexMatrix,
    initial: f64,
}

impl HeatFromCoupling {
    pub fn new(system: &PartitionedSystem, rho_tilde: &DensityMatrix) -> Result<Self> {
        if rho_tilde.dim() != system.dim() {
            return Err(Error::DimensionMismatch {
                expected: system.dim(),
                found: rho_tilde.dim(),
            });
        }
        let eigen = eigh(&system.h_coupled())?;
        let u = &eigen.eigenvectors;
        let v = system.v().matrix();
        let initial = trace_product(v, rho_tilde.matrix())?.re;
        let coupling = u.adjoint_matmul(&v.matmul_unchecked(u));
        let state = u.adjoint_matmul(&rho_tilde.matrix().matmul_unchecked(u));
        Ok(Self {
            energies: eigen.eigenvalues,
            coupling,
            state,
            initial,
        })
    }

    pub fn at(&self, t: f64) -> f64 {
        let n = self.energies.len();
        let phases: Vec<Complex64> = self
            .energies
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -t * l))
            .collect();
        let mut later = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                later += self.coupling[(j, i)] * phases[i] * phases[j].conj() * self.state[(i, j)];
            }
        }
        self.initial - later.re
    }
}

pub fn heat_from_coupling(
    system: &PartitionedSystem,
    rho_tilde: &DensityMatrix,
    t: f64,
) -> Result<f64> {
    Ok(HeatFromCoupling::new(system, rho_tilde)?.at(t))
}

pub fn first_law_report(
    system: &PartitionedSystem,
    rho: &DensityMatrix,
    d: &FcsDistribution,
    t: f64,
) -> Result<FirstLawReport> {
    let rho_tilde = pinched_state(system, rho)?;
    Ok(FirstLawReport::from_parts(
        t,
        moments(d, 1),
        heat_from_coupling(system, &rho_tilde, t)?,
    ))
}

pub fn verify_first_law(
    system: &PartitionedSystem,
    rho: &DensityMatrix,
    t: f64,
) -> Result<FirstLawReport> {
    let d = FcsEngine::new(system, rho, FcsTolerances::default())?.distribution(t)?;
    first_law_report(system, rho, &d, t)
}
