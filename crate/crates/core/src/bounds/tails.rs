use serde::{Deserialize, Serialize};

use super::regularity::Regularity;
use super::theorem::BOUND_REL_TOL;
use crate::error::{Error, Result};
use crate::fcs::FcsDistribution;
use crate::models::PartitionedSystem;

/// `ℙ_t(|ΔE|/t ≥ ε)` against an exponential bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailCheck {
    pub empirical: f64,
    pub bound: f64,
    pub pass: bool,
}

impl TailCheck {
    fn new(empirical: f64, bound: f64) -> Self {
        Self {
            empirical,
            bound,
            pass: empirical <= bound * (1.0 + BOUND_REL_TOL),
        }
    }
}

/// `Σ_{|ΔE_i| ≥ tε} p_i`.
pub fn tail_probability(d: &FcsDistribution, t: f64, epsilon: f64) -> f64 {
    let threshold = t * epsilon;
    d.atoms()
        .iter()
        .filter(|a| a.delta_e.abs() >= threshold)
        .fold(0.0, |acc, a| acc + a.prob)
}

fn check_tail_args(t: f64, epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "time must be finite and nonnegative, got {t}"
        )));
    }
    Ok(())
}

/// `ℙ_t(|ΔE|/t ≥ ε) ≤ 2e^{−tεα_m + R(α_m)}` with `r = R(α_m)`.
pub fn tail_bound_check(
    d: &FcsDistribution,
    t: f64,
    epsilon: f64,
    alpha_m: f64,
    r: f64,
) -> Result<TailCheck> {
    check_tail_args(t, epsilon)?;
    let bound = 2.0 * (-t * epsilon * alpha_m + r).exp();
    Ok(TailCheck::new(tail_probability(d, t, epsilon), bound))
}

/// `ℙ_t(|ΔE|/t ≥ ε) ≤ 2e^{R(C/ε) − Ct}` with `R` from a prepared evaluator.
pub fn strong_tail_check_with(
    regularity: &Regularity,
    d: &FcsDistribution,
    t: f64,
    epsilon: f64,
    c: f64,
    s_points: usize,
) -> Result<TailCheck> {
    check_tail_args(t, epsilon)?;
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "C must be positive, got {c}"
        )));
    }
    let r = regularity.evaluate_refined(c / epsilon, s_points)?;
    strong_tail_from_r(d, t, epsilon, c, r.r_value)
}

/// Strong bound for a precomputed `r = R(C/ε)`.
pub fn strong_tail_from_r(
    d: &FcsDistribution,
    t: f64,
    epsilon: f64,
    c: f64,
    r: f64,
) -> Result<TailCheck> {
    check_tail_args(t, epsilon)?;
    let bound = 2.0 * (r - c * t).exp();
    Ok(TailCheck::new(tail_probability(d, t, epsilon), bound))
}

pub fn strong_tail_check(
    system: &PartitionedSystem,
    d: &FcsDistribution,
    t: f64,
    epsilon: f64,
    c: f64,
    s_points: usize,
) -> Result<TailCheck> {
    strong_tail_check_with(&Regularity::new(system)?, d, t, epsilon, c, s_points)
}

/// The `C` minimising the strong bound on a log grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrongTailOptimum {
    pub c: f64,
    pub check: TailCheck,
}

/// Log-spaced grid of `points` values over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && points >= 2, "invalid log grid");
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|k| (a + (b - a) * k as f64 / (points - 1) as f64).exp())
        .collect()
}

pub const DEFAULT_C_GRID: (f64, f64, usize) = (1e-2, 1e2, 41);

/// Scans `c_grid` and keeps the smallest finite bound; values of `C` whose
/// `R(C/ε)` leaves the double range are skipped. `None` if every value was.
pub fn optimal_strong_c(
    regularity: &Regularity,
    d: &FcsDistribution,
    t: f64,
    epsilon: f64,
    s_points: usize,
    c_grid: &[f64],
) -> Result<Option<StrongTailOptimum>> {
    let mut best: Option<StrongTailOptimum> = None;
    for &c in c_grid {
        let check = match strong_tail_check_with(regularity, d, t, epsilon, c, s_points) {
            Ok(check) => check,
            Err(Error::Overflow { .. }) => continue,
            Err(e) => return Err(e),
        };
        if !check.bound.is_finite() {
            continue;
        }
        if best.is_none_or(|b| check.bound < b.check.bound) {
            best = Some(StrongTailOptimum { c, check });
        }
    }
    Ok(best)
}
