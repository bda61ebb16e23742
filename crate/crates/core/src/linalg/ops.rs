use num_complex::Complex64;

use super::eigh::{eigvalsh, HermitianOperator};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default cap on the dimension of any assembled operator.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Largest singular value, `sqrt(λ_max(M†M))`.
///
/// `M` is rescaled by its largest entry first, so matrices with entries near
/// the top of the double range do not overflow when squared.
pub fn op_norm(m: &ComplexMatrix) -> Result<f64> {
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let scaled = m.scale_real(1.0 / scale);
    let gram = HermitianOperator::symmetrized(scaled.adjoint_matmul(&scaled));
    let top = eigvalsh(&gram)?.last().copied().unwrap_or(0.0).max(0.0);
    Ok(scale * top.sqrt())
}

/// `tr(XY) = Σ_ij X_ij Y_ji` without forming the product.
pub fn trace_product(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<Complex64> {
    x.check_dim(y)?;
    let n = x.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += x[(i, j)] * y[(j, i)];
        }
    }
    Ok(acc)
}

/// Kronecker product under the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_limit(a, b, DEFAULT_MAX_DIM)
}

/// Kronecker product, `(A⊗B)[(i,k),(j,l)] = A[i,j]·B[k,l]`.
pub fn kron_with_limit(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    max_dim: usize,
) -> Result<ComplexMatrix> {
    let (na, nb) = (a.dim(), b.dim());
    let dim = na.saturating_mul(nb);
    if dim > max_dim {
        return Err(Error::SizeLimit { dim, max: max_dim });
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_ginibre, seeded_rng};

    #[test]
    fn norms_of_simple_matrices() {
        assert!((op_norm(&ComplexMatrix::identity(5)).unwrap() - 1.0).abs() < 1e-14);
        let d = ComplexMatrix::from_real_diagonal(&[3.0, -5.0]);
        assert!((op_norm(&d).unwrap() - 5.0).abs() < 1e-14);
        assert_eq!(op_norm(&ComplexMatrix::zeros(3)).unwrap(), 0.0);
    }

    #[test]
    fn norm_survives_huge_entries() {
        let d = ComplexMatrix::from_real_diagonal(&[1e200, -3e200]);
        let n = op_norm(&d).unwrap();
        assert!((n / 3e200 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trace_product_against_identity() {
        let mut rng = seeded_rng(2);
        let y = random_ginibre(&mut rng, 4);
        let id = ComplexMatrix::identity(4);
        assert!((trace_product(&id, &y).unwrap() - y.trace()).norm() < 1e-14);
        assert!((trace_product(&y, &id).unwrap() - y.trace()).norm() < 1e-14);
        assert!(matches!(
            trace_product(&id, &ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_conventions() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert_eq!(
            kron(&z, &i2).unwrap(),
            ComplexMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0])
        );
    }

    #[test]
    fn kron_respects_size_limit() {
        let a = ComplexMatrix::identity(8);
        assert!(kron_with_limit(&a, &a, 64).is_ok());
        assert!(matches!(
            kron_with_limit(&a, &a, 63),
            Err(Error::SizeLimit { dim: 64, max: 63 })
        ));
        let b = ComplexMatrix::identity(65);
        let c = ComplexMatrix::identity(64);
        assert!(matches!(
            kron(&b, &c),
            Err(Error::SizeLimit {
                dim: 4160,
                max: 4096
            })
        ));
    }
}
