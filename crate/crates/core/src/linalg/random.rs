//! Seeded random matrices and states.
//!
//! Gaussian ensembles are drawn from ChaCha8 so that a seed pins the exact
//! sample on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::eigh::HermitianOperator;
use super::matrix::ComplexMatrix;
use super::ops::op_norm;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Square matrix with i.i.d. standard complex Gaussian entries.
pub fn random_ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_vec(dim, data).expect("finite gaussian samples")
}

/// Hermitian matrix rescaled to operator norm `norm`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize, norm: f64) -> HermitianOperator {
    let g = random_ginibre(rng, dim);
    let h = HermitianOperator::symmetrized(&g + &g.adjoint());
    let current = op_norm(h.matrix()).expect("eigensolver on random input");
    if current == 0.0 {
        return h;
    }
    h.scale(norm / current)
}

/// Positive semidefinite `G G†`, normalised to unit operator norm and with
/// random rank in `1..=dim`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let rank = rng.random_range(1..=dim);
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..rank {
            g[(i, j)] = complex_gaussian(rng);
        }
    }
    let p = g.matmul_adjoint(&g);
    let norm = op_norm(&p).expect("eigensolver on random input");
    p.scale_real(1.0 / norm)
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix
/// (Gram–Schmidt on the columns).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut g = random_ginibre(rng, dim);
    for j in 0..dim {
        for i in 0..j {
            let overlap: Complex64 = (0..dim).map(|r| g[(r, i)].conj() * g[(r, j)]).sum();
            for r in 0..dim {
                let gi = g[(r, i)];
                g[(r, j)] -= overlap * gi;
            }
        }
        let norm = (0..dim).map(|r| g[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..dim {
            g[(r, j)] /= norm;
        }
    }
    g
}

/// Unit vector from the unitarily invariant measure.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}
