//! Pauli strings on `n` spin-½ sites, assembled directly in the computational
//! basis.
//!
//! Site `0` is the most significant bit of a basis index (the leftmost
//! Kronecker factor); bit value `0` is the `σ³ = +1` state.

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    /// The 2×2 matrix `σ^(1)`, `σ^(2)` or `σ^(3)`.
    pub fn matrix(self) -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let data = match self {
            Pauli::X => vec![z, one, one, z],
            Pauli::Y => vec![z, -i, i, z],
            Pauli::Z => vec![one, z, z, -one],
        };
        ComplexMatrix::from_vec(2, data).expect("static 2x2")
    }
}

#[inline]
fn site_mask(site: usize, n_sites: usize) -> usize {
    1usize << (n_sites - 1 - site)
}

/// Adds `coeff · Π_k σ^(p_k)_{s_k}` to `target`.
pub fn add_pauli_term(
    target: &mut ComplexMatrix,
    coeff: Complex64,
    factors: &[(usize, Pauli)],
    n_sites: usize,
) {
    let dim = target.dim();
    debug_assert_eq!(dim, 1usize << n_sites);
    for col in 0..dim {
        let mut row = col;
        let mut amp = coeff;
        // Rightmost factor acts first.
        for &(site, p) in factors.iter().rev() {
            let mask = site_mask(site, n_sites);
            let up = row & mask == 0;
            match p {
                Pauli::X => row ^= mask,
                Pauli::Y => {
                    amp *= if up {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                    row ^= mask;
                }
                Pauli::Z => {
                    if !up {
                        amp = -amp;
                    }
                }
            }
        }
        target[(row, col)] += amp;
    }
}
