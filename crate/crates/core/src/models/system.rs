use crate::error::{Error, Result};
use crate::linalg::{op_norm, HermitianOperator};

/// Tolerance on `‖[H_A, H_B]‖_max` for explicitly supplied parts.
pub const COMMUTATOR_TOL: f64 = 1e-10;

/// Two non-interacting subsystem Hamiltonians and their coupling.
///
/// The measured energy is `H = H_A + H_B`; the dynamics between the two
/// measurements is generated by `H_V = H + V`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedSystem {
    h_a: HermitianOperator,
    h_b: HermitianOperator,
    v: HermitianOperator,
    label: String,
}

impl PartitionedSystem {
    /// Validates dimensions and `[H_A, H_B] = 0`.
    pub fn new(
        h_a: HermitianOperator,
        h_b: HermitianOperator,
        v: HermitianOperator,
        label: impl Into<String>,
    ) -> Result<Self> {
        let dim = h_a.dim();
        for other in [&h_b, &v] {
            if other.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: other.dim(),
                });
            }
        }
        let comm = h_a.matrix().commutator(h_b.matrix())?.max_abs();
        let scale = h_a.matrix().max_abs().max(h_b.matrix().max_abs()).max(1.0);
        if comm > COMMUTATOR_TOL * scale {
            return Err(Error::NonCommutingParts { norm: comm });
        }
        Ok(Self::from_parts(h_a, h_b, v, label))
    }

    /// For builders whose parts commute by construction (disjoint tensor
    /// factors or disjoint fermionic modes).
    pub(crate) fn from_parts(
        h_a: HermitianOperator,
        h_b: HermitianOperator,
        v: HermitianOperator,
        label: impl Into<String>,
    ) -> Self {
        Self {
            h_a,
            h_b,
            v,
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.h_a.dim()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn h_a(&self) -> &HermitianOperator {
        &self.h_a
    }

    pub fn h_b(&self) -> &HermitianOperator {
        &self.h_b
    }

    pub fn v(&self) -> &HermitianOperator {
        &self.v
    }

    /// `H = H_A + H_B`.
    pub fn h_total(&self) -> HermitianOperator {
        self.h_a
            .add(&self.h_b)
            .expect("dimensions validated at construction")
    }

    /// `H_V = H_A + H_B + V`.
    pub fn h_coupled(&self) -> HermitianOperator {
        self.h_total()
            .add(&self.v)
            .expect("dimensions validated at construction")
    }

    pub fn v_norm(&self) -> Result<f64> {
        op_norm(self.v.matrix())
    }
}

/// Bundles user-supplied matrices.
pub fn build_explicit(
    h_a: HermitianOperator,
    h_b: HermitianOperator,
    v: HermitianOperator,
) -> Result<PartitionedSystem> {
    PartitionedSystem::new(h_a, h_b, v, "explicit")
}

pub(crate) fn check_dim_budget(dim_log2: usize, max_dim: usize) -> Result<usize> {
    let dim = if dim_log2 >= usize::BITS as usize - 1 {
        usize::MAX
    } else {
        1usize << dim_log2
    };
    if dim > max_dim {
        return Err(Error::SizeLimit { dim, max: max_dim });
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, ComplexMatrix};
    use crate::models::pauli::Pauli;

    fn two_site(a: Pauli, b: Option<Pauli>) -> ComplexMatrix {
        let i2 = ComplexMatrix::identity(2);
        match b {
            Some(b) => kron(&a.matrix(), &b.matrix()).unwrap(),
            None => kron(&a.matrix(), &i2).unwrap(),
        }
    }

    #[test]
    fn explicit_two_qubit_system() {
        let i2 = ComplexMatrix::identity(2);
        let h_a = HermitianOperator::new(two_site(Pauli::Z, None)).unwrap();
        let h_b = HermitianOperator::new(kron(&i2, &Pauli::Z.matrix()).unwrap()).unwrap();
        let v0 = HermitianOperator::zeros(4);
        let sys = build_explicit(h_a.clone(), h_b.clone(), v0).unwrap();
        assert_eq!(sys.dim(), 4);
        assert_eq!(sys.v_norm().unwrap(), 0.0);

        let v = HermitianOperator::new(two_site(Pauli::X, Some(Pauli::X)).scale_real(0.4)).unwrap();
        let sys = build_explicit(h_a, h_b, v).unwrap();
        assert!((sys.v_norm().unwrap() - 0.4).abs() < 1e-14);
    }

    #[test]
    fn non_commuting_parts_rejected() {
        let h_a = HermitianOperator::new(two_site(Pauli::Z, None)).unwrap();
        let h_b = HermitianOperator::new(two_site(Pauli::X, None)).unwrap();
        let v = HermitianOperator::zeros(4);
        assert!(matches!(
            build_explicit(h_a, h_b, v),
            Err(Error::NonCommutingParts { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let r = build_explicit(
            HermitianOperator::zeros(4),
            HermitianOperator::zeros(2),
            HermitianOperator::zeros(4),
        );
        assert!(matches!(
            r,
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 2
            })
        ));
    }
}
