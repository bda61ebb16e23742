//! The regularity functional
//! `R(α) = 2|α| max_{−1≤s≤1} ‖e^{sαH/2} V e^{−sαH/2}‖`.
//!
//! The maximum over `s` is taken on a uniform odd grid (so `s = 0, ±1` are
//! always sampled). A grid maximum can only undershoot the true maximum.
//! `argmax_s` is reported in `[0, 1]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigh, op_norm, ComplexMatrix, EXP_LIMIT};
use crate::models::PartitionedSystem;

pub const DEFAULT_S_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub alpha: f64,
    pub r_value: f64,
    pub s_grid_points: usize,
    pub argmax_s: f64,
}

pub(crate) fn check_grid(s_points: usize) -> Result<()> {
    if s_points < 3 || s_points.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "s grid needs an odd number of points ≥ 3, got {s_points}"
        )));
    }
    Ok(())
}

/// `V` expressed in the eigenbasis of `H`, reusable across `α` and `s`.
#[derive(Debug, Clone)]
pub struct Regularity {
    energies: Vec<f64>,
    coupling: ComplexMatrix,
}

impl Regularity {
    pub fn new(system: &PartitionedSystem) -> Result<Self> {
        let eigen = eigh(&system.h_total())?;
        let u = &eigen.eigenvectors;
        let coupling = u.adjoint_matmul(&system.v().matrix().matmul_unchecked(u));
        Ok(Self {
            energies: eigen.eigenvalues,
            coupling,
        })
    }

    fn range(&self) -> f64 {
        match (self.energies.first(), self.energies.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// `‖e^{xH} V e^{−xH}‖`: in the eigenbasis of `H` the conjugation scales
    /// entry `(i, j)` by `e^{x(λ_i − λ_j)}`.
    pub fn conjugated_norm(&self, x: f64) -> Result<f64> {
        let exponent = x.abs() * self.range();
        if !exponent.is_finite() || exponent > EXP_LIMIT {
            return Err(Error::Overflow {
                exponent,
                limit: EXP_LIMIT,
            });
        }
        let n = self.energies.len();
        let mut m = self.coupling.clone();
        for i in 0..n {
            for j in 0..n {
                let f = (x * (self.energies[i] - self.energies[j])).exp();
                m[(i, j)] *= Complex64::new(f, 0.0);
            }
        }
        op_norm(&m)
    }

    /// Grid evaluation with exactly `s_points` points.
    pub fn evaluate(&self, alpha: f64, s_points: usize) -> Result<RegularityReport> {
        check_grid(s_points)?;
        if !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "alpha must be finite, got {alpha}"
            )));
        }
        // Conjugation by e^{−xH} gives the adjoint of conjugation by e^{xH}, so
        // the norm is even in s and the s ≥ 0 half of the grid suffices.
        let half = (s_points - 1) / 2;
        let mut best = (f64::NEG_INFINITY, 0.0);
        for k in 0..=half {
            let s = k as f64 / half as f64;
            let norm = self.conjugated_norm(s * alpha / 2.0)?;
            if norm > best.0 {
                best = (norm, s);
            }
        }
        Ok(RegularityReport {
            alpha,
            r_value: 2.0 * alpha.abs() * best.0,
            s_grid_points: s_points,
            argmax_s: best.1,
        })
    }

    /// Evaluates on the doubled grid `2·s_points − 1`, which contains the
    /// `s_points` grid.
    pub fn evaluate_refined(&self, alpha: f64, s_points: usize) -> Result<RegularityReport> {
        check_grid(s_points)?;
        self.evaluate(alpha, 2 * s_points - 1)
    }
}

/// `R(α)` on a uniform `s_points` grid.
pub fn compute_r(
    system: &PartitionedSystem,
    alpha: f64,
    s_points: usize,
) -> Result<RegularityReport> {
    Regularity::new(system)?.evaluate(alpha, s_points)
}

/// `R(α)` after one grid doubling.
pub fn compute_r_refined(
    system: &PartitionedSystem,
    alpha: f64,
    s_points: usize,
) -> Result<RegularityReport> {
    Regularity::new(system)?.evaluate_refined(alpha, s_points)
}
