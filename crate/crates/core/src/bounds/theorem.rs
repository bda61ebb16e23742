use serde::{Deserialize, Serialize};

use super::regularity::{Regularity, RegularityReport};
use crate::error::{Error, Result};
use crate::fcs::{DensityMatrix, FcsDistribution, FcsEngine, FcsTolerances};
use crate::linalg::EXP_LIMIT;
use crate::models::PartitionedSystem;

/// Multiplicative slack allowed on every bound comparison.
pub const BOUND_REL_TOL: f64 = 1e-8;

/// `𝔼_t(e^{α_m|ΔE|})` against `2e^{R(α_m)}` at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub t: f64,
    pub alpha_m: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    /// `rhs − lhs`.
    pub slack: f64,
}

/// `𝔼(e^{α|ΔE|})` under `d`.
pub fn exponential_moment(d: &FcsDistribution, alpha: f64) -> Result<f64> {
    let exponent = alpha.abs() * d.max_abs_delta_e();
    if !exponent.is_finite() || exponent > EXP_LIMIT {
        return Err(Error::Overflow {
            exponent,
            limit: EXP_LIMIT,
        });
    }
    Ok(d.expectation(|x| (alpha * x.abs()).exp()))
}

/// Compares the exponential moment of `d` with `2e^{R}` for a precomputed
/// `R(α_m)`.
pub fn theorem_report(
    d: &FcsDistribution,
    t: f64,
    alpha_m: f64,
    r: &RegularityReport,
) -> Result<TheoremReport> {
    let lhs = exponential_moment(d, alpha_m)?;
    let rhs = 2.0 * r.r_value.exp();
    Ok(TheoremReport {
        t,
        alpha_m,
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + BOUND_REL_TOL),
        slack: rhs - lhs,
    })
}

/// Full pipeline: distribution at `t`, `R(α_m)` on the refined `s` grid.
pub fn verify_theorem(
    system: &PartitionedSystem,
    rho: &DensityMatrix,
    t: f64,
    alpha_m: f64,
    s_points: usize,
) -> Result<TheoremReport> {
    if !(alpha_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha_m must be positive, got {alpha_m}"
        )));
    }
    let d = FcsEngine::new(system, rho, FcsTolerances::default())?.distribution(t)?;
    let r = Regularity::new(system)?.evaluate_refined(alpha_m, s_points)?;
    theorem_report(&d, t, alpha_m, &r)
}

/// Theorem reports over a list of times, plus the largest exponential moment
/// seen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSweep {
    pub regularity: RegularityReport,
    pub reports: Vec<TheoremReport>,
    pub max_lhs: f64,
}

impl MomentSweep {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

pub fn exponential_moment_sweep(
    system: &PartitionedSystem,
    rho: &DensityMatrix,
    alpha_m: f64,
    t_values: &[f64],
    s_points: usize,
) -> Result<MomentSweep> {
    if let Some(bad) = t_values.iter().find(|t| !t.is_finite() || **t < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "times must be finite and nonnegative, got {bad}"
        )));
    }
    let engine = FcsEngine::new(system, rho, FcsTolerances::default())?;
    let regularity = Regularity::new(system)?.evaluate_refined(alpha_m, s_points)?;
    let reports = t_values
        .iter()
        .map(|&t| theorem_report(&engine.distribution(t)?, t, alpha_m, &regularity))
        .collect::<Result<Vec<_>>>()?;
    let max_lhs = reports
        .iter()
        .map(|r| r.lhs)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MomentSweep {
        regularity,
        reports,
        max_lhs,
    })
}
