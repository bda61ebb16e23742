//! Two-time measurement of `H = H_A + H_B` with evolution under
//! `H_V = H + V` in between.
//!
//! The joint weights `w(e′, e) = tr(P_{e′} U P_e ρ P_e U†)`, `U = e^{−itH_V}`,
//! are evaluated in the eigenbasis of `H`: with `W = U_H† U U_H` and `ρ̃` the
//! block-diagonal pinched state there, `w(e′, e)` is the sum over `i ∈ e′` of
//! the diagonal of `W_{·,e} ρ̃_{ee} W_{·,e}†`. A single `n³` transform per time
//! replaces the `levels²` projector sandwiches (kept in [`super::oracle`]).

use num_complex::Complex64;

use super::distribution::{FcsDistribution, NEGATIVE_PROB_TOL};
use super::spectral::{default_cluster_tol, pinch, SpectralDecomposition};
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{check_exponent, eigh, trace_product, ComplexMatrix, EigenSystem};
use crate::models::PartitionedSystem;

/// Cap on the number of `(e′, e)` level pairs in a joint table.
pub const MAX_LEVEL_PAIRS: usize = 1 << 24;

/// Relative tolerance of the `[H, ρ̃] = 0` check.
pub const PINCHED_TOL: f64 = 1e-8;

/// Level-clustering and `ΔE`-binning tolerances. `None` picks the defaults:
/// `cluster_tol = 1e−9 × range(H)`, `bin_tol = 2 × cluster_tol`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FcsTolerances {
    pub cluster_tol: Option<f64>,
    pub bin_tol: Option<f64>,
}

/// `w(e′, e)` over the levels of `H`, row index `e′`, column index `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    pub energies: Vec<f64>,
    weights: Vec<f64>,
}

impl JointTable {
    pub fn new(energies: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(
            weights.len(),
            energies.len() * energies.len(),
            "joint table shape"
        );
        Self { energies, weights }
    }

    pub fn n_levels(&self) -> usize {
        self.energies.len()
    }

    pub fn get(&self, e_final: usize, e_initial: usize) -> f64 {
        self.weights[e_final * self.n_levels() + e_initial]
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `½ Σ |w − w′|` against a table on the same levels.
    pub fn total_variation(&self, other: &Self) -> f64 {
        assert_eq!(self.n_levels(), other.n_levels(), "level mismatch");
        0.5 * self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    /// Bins `ΔE = e′ − e` into a distribution.
    pub fn to_distribution(&self, bin_tol: f64) -> Result<FcsDistribution> {
        let n = self.n_levels();
        let mut samples = Vec::with_capacity(n * n);
        for (f, &ef) in self.energies.iter().enumerate() {
            for (i, &ei) in self.energies.iter().enumerate() {
                let w = self.get(f, i);
                if w < -NEGATIVE_PROB_TOL {
                    return Err(Error::NegativeProbability { value: w });
                }
                samples.push((ef - ei, w.max(0.0)));
            }
        }
        FcsDistribution::from_weighted(samples, bin_tol)
    }
}

/// Distribution plus the joint table it was binned from.
#[derive(Debug, Clone)]
pub struct FcsOutcome {
    pub distribution: FcsDistribution,
    pub joint: JointTable,
}

/// Precomputed spectral data for repeated evaluation of one
/// `(system, ρ)` pair at many times.
#[derive(Debug, Clone)]
pub struct FcsEngine {
    decomposition: SpectralDecomposition,
    coupled: EigenSystem,
    /// `U_{H_V}† U_H`.
    overlap: ComplexMatrix,
    /// Pinched state in the eigenbasis of `H`.
    pinched_in_basis: ComplexMatrix,
    pinched: DensityMatrix,
    bin_tol: f64,
}

impl FcsEngine {
    pub fn new(
        system: &PartitionedSystem,
        rho: &DensityMatrix,
        tolerances: FcsTolerances,
    ) -> Result<Self> {
        if rho.dim() != system.dim() {
            return Err(Error::DimensionMismatch {
                expected: system.dim(),
                found: rho.dim(),
            });
        }
        let eigen_h = eigh(&system.h_total())?;
        let cluster_tol = tolerances
            .cluster_tol
            .unwrap_or_else(|| default_cluster_tol(&eigen_h.eigenvalues));
        let bin_tol = tolerances.bin_tol.unwrap_or(2.0 * cluster_tol);
        if !(bin_tol >= 0.0) || !bin_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "bin_tol must be nonnegative, got {bin_tol}"
            )));
        }
        let decomposition = SpectralDecomposition::from_eigen(eigen_h, cluster_tol)?;
        let n_levels = decomposition.levels().len();
        if n_levels.saturating_mul(n_levels) > MAX_LEVEL_PAIRS {
            return Err(Error::SizeLimit {
                dim: n_levels * n_levels,
                max: MAX_LEVEL_PAIRS,
            });
        }
        let coupled = eigh(&system.h_coupled())?;
        let overlap = coupled
            .eigenvectors
            .adjoint_matmul(&decomposition.eigen().eigenvectors);
        let mut pinched_in_basis = decomposition.to_eigenbasis(rho.matrix());
        decomposition.mask_off_block(&mut pinched_in_basis);
        let pinched = DensityMatrix::from_trusted(decomposition.from_eigenbasis(&pinched_in_basis));
        Ok(Self {
            decomposition,
            coupled,
            overlap,
            pinched_in_basis,
            pinched,
            bin_tol,
        })
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    /// `ρ̃ = Σ_e P_e ρ P_e`.
    pub fn pinched_state(&self) -> &DensityMatrix {
        &self.pinched
    }

    pub fn bin_tol(&self) -> f64 {
        self.bin_tol
    }

    /// `W(t) = U_H† e^{−itH_V} U_H`.
    pub fn propagator_in_basis(&self, t: f64) -> ComplexMatrix {
        let g = &self.overlap;
        let n = g.dim();
        let mut scaled = g.clone();
        for (k, &lambda) in self.coupled.eigenvalues.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -t * lambda);
            for j in 0..n {
                scaled[(k, j)] *= phase;
            }
        }
        g.adjoint_matmul(&scaled)
    }

    /// `e^{−itH_V}` in the original basis.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        self.coupled
            .apply_function(|l| Complex64::from_polar(1.0, -t * l))
    }

    pub fn joint_table(&self, t: f64) -> Result<JointTable> {
        if !t.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "time must be finite, got {t}"
            )));
        }
        let w = self.propagator_in_basis(t);
        let n = w.dim();
        let levels = self.decomposition.levels();
        let level_of = self.decomposition.level_of_columns();
        let n_levels = levels.len();
        let rho = &self.pinched_in_basis;
        let mut weights = vec![0.0; n_levels * n_levels];
        for (e, level) in levels.iter().enumerate() {
            let cols = level.columns.clone();
            for i in 0..n {
                // [W_{·,e} ρ_ee W_{·,e}†]_{ii}
                let mut acc = Complex64::new(0.0, 0.0);
                for j in cols.clone() {
                    let wij = w[(i, j)];
                    if wij == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let inner: Complex64 =
                        cols.clone().map(|k| rho[(j, k)] * w[(i, k)].conj()).sum();
                    acc += wij * inner;
                }
                weights[level_of[i] * n_levels + e] += acc.re;
            }
        }
        Ok(JointTable::new(self.decomposition.energies(), weights))
    }

    pub fn at(&self, t: f64) -> Result<FcsOutcome> {
        let joint = self.joint_table(t)?;
        let distribution = joint.to_distribution(self.bin_tol)?;
        Ok(FcsOutcome {
            distribution,
            joint,
        })
    }

    pub fn distribution(&self, t: f64) -> Result<FcsDistribution> {
        Ok(self.at(t)?.distribution)
    }
}

/// `ℙ_t(ΔE) = Σ_{e′−e=ΔE} tr(P_{e′} e^{−itH_V} P_e ρ P_e e^{itH_V})`.
pub fn fcs_distribution(
    system: &PartitionedSystem,
    rho: &DensityMatrix,
    t: f64,
    tolerances: FcsTolerances,
) -> Result<FcsOutcome> {
    FcsEngine::new(system, rho, tolerances)?.at(t)
}

/// `χ_t(α) = tr(e^{αH} e^{−itH_V} e^{−αH} ρ̃ e^{itH_V})` for an already
/// pinched `ρ̃`.
pub fn mgf_trace_formula(
    system: &PartitionedSystem,
    rho_tilde: &DensityMatrix,
    t: f64,
    alpha: Complex64,
) -> Result<Complex64> {
    let h = system.h_total();
    if rho_tilde.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho_tilde.dim(),
        });
    }
    if !t.is_finite() || !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::InvalidArgument(
            "time and alpha must be finite".into(),
        ));
    }
    let comm = h.matrix().commutator(rho_tilde.matrix())?.max_abs();
    if comm > PINCHED_TOL * h.matrix().max_abs().max(1.0) {
        return Err(Error::NotPinched { norm: comm });
    }
    let eigen_h = eigh(&h)?;
    check_exponent(alpha.re, eigen_h.spectral_radius())?;
    let up = eigen_h.exp(alpha)?;
    let down = eigen_h.exp(-alpha)?;
    let eigen_v = eigh(&system.h_coupled())?;
    let forward = eigen_v.apply_function(|l| Complex64::from_polar(1.0, -t * l));
    let backward = forward.adjoint();
    let left = &up * &forward;
    let right = &(&down * rho_tilde.matrix()) * &backward;
    trace_product(&left, &right)
}

/// Pinches `rho` with respect to `H = H_A + H_B` using the default clustering
/// tolerance.
pub fn pinched_state(system: &PartitionedSystem, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let eigen_h = eigh(&system.h_total())?;
    let tol = default_cluster_tol(&eigen_h.eigenvalues);
    pinch(rho, &SpectralDecomposition::from_eigen(eigen_h, tol)?)
}
