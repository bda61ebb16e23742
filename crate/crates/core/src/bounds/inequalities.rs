//! The two matrix inequalities behind the exponential moment bound:
//!
//! * `tr(XY) ≤ ‖X‖ tr(Y)` for positive semidefinite `X`, `Y`;
//! * `‖e^{T+S} e^{−T}‖ ≤ exp(max_{0≤s≤1} ‖e^{sT} S e^{−sT}‖)` for Hermitian
//!   `T`, `S`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::theorem::BOUND_REL_TOL;
use crate::error::{Error, Result};
use crate::fcs::PSD_TOL;
use crate::linalg::{
    check_exponent, eigh, op_norm, trace_product, ComplexMatrix, HermitianOperator, EXP_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

fn require_psd(m: &ComplexMatrix) -> Result<HermitianOperator> {
    let h = HermitianOperator::new(m.clone())?;
    let min = eigh(&h)?.eigenvalues[0];
    if min < -PSD_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(h)
}

/// `tr(XY) ≤ ‖X‖ tr(Y) + 1e−9·max(1, ‖X‖ tr(Y))`.
pub fn check_trace_inequality(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<InequalityCheck> {
    x.check_dim(y)?;
    let x = require_psd(x)?;
    let y = require_psd(y)?;
    let lhs = trace_product(x.matrix(), y.matrix())?.re;
    let rhs = op_norm(x.matrix())? * y.matrix().trace().re;
    Ok(InequalityCheck {
        lhs,
        rhs,
        pass: lhs <= rhs + 1e-9 * rhs.abs().max(1.0),
    })
}

/// Largest `s`-grid size tried while refining the Gronwall maximum.
pub const MAX_GRONWALL_POINTS: usize = (1 << 14) + 1;

/// Gronwall-type bound, with the maximum over `s ∈ [0, 1]` taken on a uniform
/// grid of `s_points` that is doubled until the maximum changes by less than
/// `1e−8` relative (or [`MAX_GRONWALL_POINTS`] is reached).
pub fn check_gronwall_bound(
    t: &HermitianOperator,
    s: &HermitianOperator,
    s_points: usize,
) -> Result<InequalityCheck> {
    if t.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: s.dim(),
        });
    }
    if s_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "s grid needs at least 2 points, got {s_points}"
        )));
    }
    let sum = eigh(&t.add(s)?)?;
    let eig_t = eigh(t)?;
    check_exponent(1.0, sum.spectral_radius())?;
    check_exponent(1.0, eig_t.spectral_radius())?;
    let product = &sum.exp(Complex64::new(1.0, 0.0))? * &eig_t.exp(Complex64::new(-1.0, 0.0))?;
    let lhs = op_norm(&product)?;

    let u = &eig_t.eigenvectors;
    let s_in_basis = u.adjoint_matmul(&s.matrix().matmul_unchecked(u));
    let lambda = &eig_t.eigenvalues;
    let range = lambda.last().unwrap() - lambda[0];
    if range > EXP_LIMIT {
        return Err(Error::Overflow {
            exponent: range,
            limit: EXP_LIMIT,
        });
    }
    let n = lambda.len();
    let conjugated_norm = |x: f64| -> Result<f64> {
        let mut m = s_in_basis.clone();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] *= Complex64::new((x * (lambda[i] - lambda[j])).exp(), 0.0);
            }
        }
        op_norm(&m)
    };

    let mut intervals = s_points - 1;
    let mut max = (0..=intervals)
        .map(|k| conjugated_norm(k as f64 / intervals as f64))
        .try_fold(f64::NEG_INFINITY, |acc, v| v.map(|v| acc.max(v)))?;
    while 2 * intervals < MAX_GRONWALL_POINTS {
        // Only the new midpoints need evaluating.
        let refined = (0..intervals)
            .map(|k| conjugated_norm((2 * k + 1) as f64 / (2 * intervals) as f64))
            .try_fold(max, |acc, v| v.map(|v| acc.max(v)))?;
        intervals *= 2;
        let change = (refined - max).abs() / refined.abs().max(f64::MIN_POSITIVE);
        max = refined;
        if change < 1e-8 {
            break;
        }
    }
    let rhs = max.exp();
    Ok(InequalityCheck {
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + BOUND_REL_TOL),
    })
}
