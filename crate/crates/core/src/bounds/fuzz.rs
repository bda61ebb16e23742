//! Randomised suites for the two matrix inequalities.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::inequalities::{check_gronwall_bound, check_trace_inequality};
use crate::error::Result;
use crate::linalg::random::{random_hermitian, random_psd};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub trials: usize,
    pub failures: usize,
    /// Largest `lhs / rhs` observed.
    pub worst_ratio: f64,
}

impl SuiteSummary {
    fn record(&mut self, lhs: f64, rhs: f64, pass: bool) {
        self.trials += 1;
        if !pass {
            self.failures += 1;
        }
        if rhs > 0.0 {
            self.worst_ratio = self.worst_ratio.max(lhs / rhs);
        }
    }
}

fn empty() -> SuiteSummary {
    SuiteSummary {
        trials: 0,
        failures: 0,
        worst_ratio: f64::NEG_INFINITY,
    }
}

/// `trials` random psd pairs of dimension `1..=max_dim`.
pub fn trace_inequality_suite<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    max_dim: usize,
) -> Result<SuiteSummary> {
    let mut summary = empty();
    for _ in 0..trials {
        let dim = rng.random_range(1..=max_dim);
        let x = random_psd(rng, dim).scale_real(rng.random_range(0.1..10.0));
        let y = random_psd(rng, dim).scale_real(rng.random_range(0.1..10.0));
        let check = check_trace_inequality(&x, &y)?;
        summary.record(check.lhs, check.rhs, check.pass);
    }
    Ok(summary)
}

/// `trials` random Hermitian pairs of dimension `1..=max_dim` with operator
/// norms drawn uniformly from `(0, max_norm]`.
pub fn gronwall_suite<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    max_dim: usize,
    max_norm: f64,
    s_points: usize,
) -> Result<SuiteSummary> {
    let mut summary = empty();
    for _ in 0..trials {
        let dim = rng.random_range(1..=max_dim);
        let nt = max_norm * (1.0 - rng.random::<f64>());
        let ns = max_norm * (1.0 - rng.random::<f64>());
        let t = random_hermitian(rng, dim, nt);
        let s = random_hermitian(rng, dim, ns);
        let check = check_gronwall_bound(&t, &s, s_points)?;
        summary.record(check.lhs, check.rhs, check.pass);
    }
    Ok(summary)
}
