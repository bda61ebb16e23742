use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, ComplexMatrix, HermitianOperator};

/// Smallest eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = 1e-10;
/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;

/// Positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let h = HermitianOperator::new(m).map_err(|e| Error::InvalidState(e.to_string()))?;
        let tr = h.matrix().trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = eigh(&h)?.eigenvalues[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self {
            matrix: h.into_matrix(),
        })
    }

    /// For matrices valid by construction (pinching, Gibbs weights).
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        Self {
            matrix: HermitianOperator::symmetrized(m).into_matrix(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// `|ψ⟩⟨ψ|` for a vector normalised here.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if psi.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(
                "state vector must be nonzero and finite".into(),
            ));
        }
        let n = psi.len();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj() / (norm * norm);
            }
        }
        Ok(Self::from_trusted(m))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `tr(ρ A)`.
    pub fn expectation(&self, a: &ComplexMatrix) -> Result<Complex64> {
        crate::linalg::trace_product(&self.matrix, a)
    }
}
