use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::EXP_LIMIT;

/// Negative probabilities down to this value are rounding and are clamped.
pub const NEGATIVE_PROB_TOL: f64 = 1e-12;
/// Allowed deviation of the total mass from one.
pub const MASS_TOL: f64 = 1e-9;

/// One support point of the energy-variation distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub delta_e: f64,
    pub prob: f64,
}

/// Finite distribution of the energy variation `ΔE`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FcsDistribution {
    atoms: Vec<Atom>,
    bin_tol: f64,
}

impl FcsDistribution {
    /// Validates ascending, `bin_tol`-separated support and unit mass, clamps
    /// rounding-level negative weights and renormalises.
    pub fn new(atoms: Vec<Atom>, bin_tol: f64) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidArgument(
                "distribution needs at least one atom".into(),
            ));
        }
        if !(bin_tol >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bin_tol must be nonnegative, got {bin_tol}"
            )));
        }
        for w in atoms.windows(2) {
            if !(w[1].delta_e - w[0].delta_e > bin_tol) {
                return Err(Error::InvalidArgument(format!(
                    "atoms at {} and {} are not separated by more than {bin_tol}",
                    w[0].delta_e, w[1].delta_e
                )));
            }
        }
        let mut atoms = atoms;
        for a in &mut atoms {
            if !a.delta_e.is_finite() || !a.prob.is_finite() {
                return Err(Error::NonFinite);
            }
            if a.prob < -NEGATIVE_PROB_TOL {
                return Err(Error::NegativeProbability { value: a.prob });
            }
            a.prob = a.prob.max(0.0);
        }
        let mass: f64 = atoms.iter().map(|a| a.prob).sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {mass}, not 1"
            )));
        }
        for a in &mut atoms {
            a.prob /= mass;
        }
        Ok(Self { atoms, bin_tol })
    }

    pub fn point_mass(delta_e: f64) -> Self {
        Self {
            atoms: vec![Atom { delta_e, prob: 1.0 }],
            bin_tol: 0.0,
        }
    }

    /// Merges raw `(ΔE, weight)` candidates: after sorting, every value within
    /// `bin_tol` of its predecessor joins the predecessor's atom, which sits at
    /// the mean of its members and carries their total weight. Atoms of
    /// exactly zero weight are dropped.
    pub fn from_weighted(mut samples: Vec<(f64, f64)>, bin_tol: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("no samples to bin".into()));
        }
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms = Vec::new();
        let mut start = 0;
        for i in 1..=samples.len() {
            if i == samples.len() || samples[i].0 - samples[i - 1].0 > bin_tol {
                let group = &samples[start..i];
                let delta_e = group.iter().map(|s| s.0).sum::<f64>() / group.len() as f64;
                let prob = group.iter().map(|s| s.1).sum::<f64>();
                if prob != 0.0 {
                    atoms.push(Atom {
                        delta_e: if delta_e == 0.0 { 0.0 } else { delta_e },
                        prob,
                    });
                }
                start = i;
            }
        }
        Self::new(atoms, bin_tol)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn bin_tol(&self) -> f64 {
        self.bin_tol
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn max_abs_delta_e(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.delta_e.abs())
            .fold(0.0, f64::max)
    }

    /// Probability of the atom within `tol` of `delta_e` (zero if none).
    pub fn prob_at(&self, delta_e: f64, tol: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| (a.delta_e - delta_e).abs() <= tol)
            .map(|a| a.prob)
            .sum()
    }

    /// Atoms with probability above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<Atom> {
        self.atoms
            .iter()
            .copied()
            .filter(|a| a.prob > threshold)
            .collect()
    }

    /// `Σ_i p_i f(ΔE_i)`.
    pub fn expectation(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms.iter().map(|a| a.prob * f(a.delta_e)).sum()
    }

    /// Total-variation distance, pairing atoms whose positions agree within
    /// `tol`.
    pub fn total_variation(&self, other: &Self, tol: f64) -> f64 {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.atoms, &other.atoms);
        let mut acc = 0.0;
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if (x.delta_e - y.delta_e).abs() <= tol => {
                    acc += (x.prob - y.prob).abs();
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.delta_e < y.delta_e => {
                    acc += x.prob;
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    acc += y.prob;
                    j += 1;
                }
                (Some(x), None) => {
                    acc += x.prob;
                    i += 1;
                }
                (None, Some(y)) => {
                    acc += y.prob;
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        0.5 * acc
    }
}

/// `Σ_i p_i ΔE_i^k`.
pub fn moments(d: &FcsDistribution, k: u32) -> f64 {
    d.expectation(|x| x.powi(k as i32))
}

/// `χ(α) = Σ_i p_i e^{α ΔE_i}`.
pub fn mgf_from_distribution(d: &FcsDistribution, alpha: Complex64) -> Result<Complex64> {
    let exponent = alpha.re.abs() * d.max_abs_delta_e();
    if !exponent.is_finite() || exponent > EXP_LIMIT {
        return Err(Error::Overflow {
            exponent,
            limit: EXP_LIMIT,
        });
    }
    Ok(d.atoms
        .iter()
        .map(|a| (alpha * a.delta_e).exp() * a.prob)
        .sum())
}
