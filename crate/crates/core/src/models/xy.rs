//! Two-dimensional XY spin lattice split into left and right halves.
//!
//! The lattice `Λ_L` has coordinates `x = (x₁, x₂)` with
//! `x₁, x₂ ∈ {−L+1, …, L}`; the left half is `x₁ ≤ 0`, so the two halves meet
//! between the columns `x₁ = 0` and `x₁ = 1`. Sites are numbered row-major
//! over `(x₁, x₂)`: `index = (x₁ + L − 1)·2L + (x₂ + L − 1)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pauli::{add_pauli_term, Pauli};
use super::system::{check_dim_budget, PartitionedSystem};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, DEFAULT_MAX_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XYLatticeSpec {
    /// `L`; the lattice has `2L × 2L` sites.
    pub half_width: usize,
    /// Nearest-neighbour coupling `J` inside each half.
    pub coupling: f64,
    /// Strength `ε` of the coupling across the boundary.
    pub boundary_strength: f64,
}

impl XYLatticeSpec {
    pub fn n_sites(&self) -> usize {
        4 * self.half_width * self.half_width
    }

    pub fn coordinates(&self) -> std::ops::RangeInclusive<i64> {
        let l = self.half_width as i64;
        (-l + 1)..=l
    }

    pub fn site_index(&self, x1: i64, x2: i64) -> usize {
        let l = self.half_width as i64;
        let side = 2 * l;
        ((x1 + l - 1) * side + (x2 + l - 1)) as usize
    }

    /// Boundary coupling `K_{x,y}` for `x = (0, x₂)`, `y = (1, x₂)`.
    pub fn boundary_coupling(&self, x2: i64) -> f64 {
        self.boundary_strength / (1.0 + (x2 * x2) as f64)
    }

    /// Nearest-neighbour bonds `(site, site)` inside the left (`right = false`)
    /// or right half.
    pub fn bonds(&self, right: bool) -> Vec<(usize, usize)> {
        let l = self.half_width as i64;
        let in_half = |x1: i64| if right { x1 >= 1 } else { x1 <= 0 };
        let mut out = Vec::new();
        for x1 in self.coordinates().filter(|&x1| in_half(x1)) {
            for x2 in self.coordinates() {
                let here = self.site_index(x1, x2);
                if x2 < l {
                    out.push((here, self.site_index(x1, x2 + 1)));
                }
                if x1 < l && in_half(x1 + 1) {
                    out.push((here, self.site_index(x1 + 1, x2)));
                }
            }
        }
        out
    }

    /// Pairs `(x, y, K_{x,y})` coupled across the boundary.
    pub fn boundary_pairs(&self) -> Vec<(usize, usize, f64)> {
        self.coordinates()
            .map(|x2| {
                (
                    self.site_index(0, x2),
                    self.site_index(1, x2),
                    self.boundary_coupling(x2),
                )
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.half_width == 0 {
            return Err(Error::InvalidSpec("half_width must be at least 1".into()));
        }
        if !self.coupling.is_finite() || !self.boundary_strength.is_finite() {
            return Err(Error::InvalidSpec("couplings must be finite".into()));
        }
        Ok(())
    }
}

fn add_xy_bond(m: &mut ComplexMatrix, coeff: f64, a: usize, b: usize, n_sites: usize) {
    let c = Complex64::new(coeff, 0.0);
    add_pauli_term(m, c, &[(a, Pauli::X), (b, Pauli::X)], n_sites);
    add_pauli_term(m, c, &[(a, Pauli::Y), (b, Pauli::Y)], n_sites);
}

pub fn build_xy_lattice(spec: &XYLatticeSpec) -> Result<PartitionedSystem> {
    build_xy_lattice_with_limit(spec, DEFAULT_MAX_DIM)
}

/// `H^{(L,±)} = −(J/2) Σ_{⟨x,y⟩ ∈ Λ^±} (σ¹_xσ¹_y + σ²_xσ²_y)` and
/// `V = −½ Σ K_{x,y} (σ¹_xσ¹_y + σ²_xσ²_y)`.
pub fn build_xy_lattice_with_limit(
    spec: &XYLatticeSpec,
    max_dim: usize,
) -> Result<PartitionedSystem> {
    spec.validate()?;
    let n = spec.n_sites();
    let dim = check_dim_budget(n, max_dim)?;

    let half = |right: bool| {
        let mut m = ComplexMatrix::zeros(dim);
        for (a, b) in spec.bonds(right) {
            add_xy_bond(&mut m, -0.5 * spec.coupling, a, b, n);
        }
        HermitianOperator::symmetrized(m)
    };
    let h_a = half(false);
    let h_b = half(true);

    let mut v = ComplexMatrix::zeros(dim);
    for (x, y, k) in spec.boundary_pairs() {
        add_xy_bond(&mut v, -0.5 * k, x, y, n);
    }
    let label = format!(
        "xy_lattice(L={}, J={}, eps={})",
        spec.half_width, spec.coupling, spec.boundary_strength
    );
    Ok(PartitionedSystem::from_parts(
        h_a,
        h_b,
        HermitianOperator::symmetrized(v),
        label,
    ))
}
