use num_complex::Complex64;

use super::system::PartitionedSystem;
use crate::error::{Error, Result};
use crate::fcs::DensityMatrix;
use crate::linalg::eigh;
use crate::linalg::random::{random_pure_state, seeded_rng};

/// `ρ = e^{−β_A H_A} e^{−β_B H_B} / Z`.
///
/// `H_A` and `H_B` commute, so this is the Gibbs state of
/// `β_A H_A + β_B H_B`; its spectrum is shifted to a zero minimum before
/// exponentiating so no weight overflows.
pub fn gibbs_product_state(
    system: &PartitionedSystem,
    beta_a: f64,
    beta_b: f64,
) -> Result<DensityMatrix> {
    if !beta_a.is_finite() || !beta_b.is_finite() {
        return Err(Error::InvalidArgument(
            "inverse temperatures must be finite".into(),
        ));
    }
    let generator = system
        .h_a()
        .scale(beta_a)
        .add(&system.h_b().scale(beta_b))?;
    let es = eigh(&generator)?;
    let e0 = es.eigenvalues[0];
    let weights: Vec<f64> = es.eigenvalues.iter().map(|&e| (-(e - e0)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let values: Vec<Complex64> = weights.iter().map(|w| Complex64::new(w / z, 0.0)).collect();
    Ok(DensityMatrix::from_trusted(es.reconstruct_with(&values)))
}

/// Haar-random pure state from a seeded complex Gaussian vector.
pub fn random_pure(dim: usize, seed: u64) -> DensityMatrix {
    let mut rng = seeded_rng(seed);
    let psi = random_pure_state(&mut rng, dim);
    DensityMatrix::pure(&psi).expect("normalised gaussian vector")
}
