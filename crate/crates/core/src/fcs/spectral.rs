use std::ops::Range;

use num_complex::Complex64;

use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{eigh, ComplexMatrix, EigenSystem, HermitianOperator};

/// One eigenvalue cluster: its energy, multiplicity and the contiguous block
/// of eigenvector columns spanning it.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub columns: Range<usize>,
}

impl Level {
    pub fn rank(&self) -> usize {
        self.columns.len()
    }
}

/// Distinct eigenvalues of a Hermitian operator and their eigenprojections.
///
/// Projections are materialised on demand from the shared eigenbasis, which
/// keeps memory at one `n × n` matrix however many levels there are.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigen: EigenSystem,
    levels: Vec<Level>,
    cluster_tol: f64,
}

/// Default clustering tolerance, `1e−9 × spectral range` (or `1e−9` for a
/// scalar operator).
pub fn default_cluster_tol(eigenvalues: &[f64]) -> f64 {
    let range = match (eigenvalues.first(), eigenvalues.last()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0.0,
    };
    if range > 0.0 {
        1e-9 * range
    } else {
        1e-9
    }
}

/// Greedy clustering of ascending eigenvalues: each eigenvalue within
/// `cluster_tol` of its predecessor joins the predecessor's level, whose
/// energy is the mean of its members.
pub fn spectral_decompose(
    a: &HermitianOperator,
    cluster_tol: f64,
) -> Result<SpectralDecomposition> {
    if !(cluster_tol > 0.0) || !cluster_tol.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "cluster_tol must be positive, got {cluster_tol}"
        )));
    }
    SpectralDecomposition::from_eigen(eigh(a)?, cluster_tol)
}

impl SpectralDecomposition {
    pub fn from_eigen(eigen: EigenSystem, cluster_tol: f64) -> Result<Self> {
        if !(cluster_tol > 0.0) || !cluster_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "cluster_tol must be positive, got {cluster_tol}"
            )));
        }
        let vals = &eigen.eigenvalues;
        let mut levels = Vec::new();
        let mut start = 0;
        for i in 1..=vals.len() {
            if i == vals.len() || vals[i] - vals[i - 1] > cluster_tol {
                let energy = vals[start..i].iter().sum::<f64>() / (i - start) as f64;
                levels.push(Level {
                    energy,
                    columns: start..i,
                });
                start = i;
            }
        }
        Ok(Self {
            eigen,
            levels,
            cluster_tol,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    /// Level index of every eigenvector column.
    pub fn level_of_columns(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for (k, level) in self.levels.iter().enumerate() {
            for c in level.columns.clone() {
                out[c] = k;
            }
        }
        out
    }

    /// `P_e = Σ_{i ∈ e} u_i u_i†`.
    pub fn projection(&self, level: usize) -> ComplexMatrix {
        let n = self.dim();
        let u = &self.eigen.eigenvectors;
        let cols = self.levels[level].columns.clone();
        let mut p = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = cols.clone().map(|c| u[(i, c)] * u[(j, c)].conj()).sum();
            }
        }
        p
    }

    /// `U† M U`.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let u = &self.eigen.eigenvectors;
        u.adjoint_matmul(&m.matmul_unchecked(u))
    }

    /// `U M U†`.
    pub fn from_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let u = &self.eigen.eigenvectors;
        u.matmul_unchecked(m).matmul_adjoint(u)
    }

    /// Zeroes every entry of an eigenbasis matrix that couples two
    /// different levels.
    pub(crate) fn mask_off_block(&self, m: &mut ComplexMatrix) {
        let level_of = self.level_of_columns();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if level_of[i] != level_of[j] {
                    m[(i, j)] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }
}

/// `ρ̃ = Σ_e P_e ρ P_e`.
pub fn pinch(rho: &DensityMatrix, dec: &SpectralDecomposition) -> Result<DensityMatrix> {
    if rho.dim() != dec.dim() {
        return Err(Error::DimensionMismatch {
            expected: dec.dim(),
            found: rho.dim(),
        });
    }
    let mut in_basis = dec.to_eigenbasis(rho.matrix());
    dec.mask_off_block(&mut in_basis);
    Ok(DensityMatrix::from_trusted(dec.from_eigenbasis(&in_basis)))
}
