//! Jordan–Wigner encoding of fermionic modes on `n` qubits.
//!
//! Mode `j` lives on bit `n-1-j` of the basis index (same ordering as
//! [`super::pauli`]); bit value `1` means occupied. The annihilator is
//! `c_j = Z_0 ⋯ Z_{j-1} ⊗ |0⟩⟨1|_j`, so the sign picked up by a ladder
//! operator is the parity of the occupied modes `< j`.

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create(usize),
    Annihilate(usize),
}

#[inline]
fn mode_mask(mode: usize, n_modes: usize) -> usize {
    1usize << (n_modes - 1 - mode)
}

/// Applies one ladder operator to a Fock basis state.
pub fn apply_ladder(op: Ladder, state: usize, n_modes: usize) -> Option<(f64, usize)> {
    let (mode, create) = match op {
        Ladder::Create(m) => (m, true),
        Ladder::Annihilate(m) => (m, false),
    };
    let mask = mode_mask(mode, n_modes);
    let occupied = state & mask != 0;
    if occupied == create {
        return None;
    }
    // Modes < j occupy the bits above `mask`.
    let parity = (state & !((mask << 1) - 1)).count_ones();
    let sign = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
    Some((sign, state ^ mask))
}

/// Applies a product of ladder operators (rightmost first).
pub fn apply_product(ops: &[Ladder], state: usize, n_modes: usize) -> Option<(f64, usize)> {
    let mut sign = 1.0;
    let mut s = state;
    for &op in ops.iter().rev() {
        let (sg, next) = apply_ladder(op, s, n_modes)?;
        sign *= sg;
        s = next;
    }
    Some((sign, s))
}

/// Adds `coeff · Π ops` to `target`.
pub fn add_fermion_term(
    target: &mut ComplexMatrix,
    coeff: Complex64,
    ops: &[Ladder],
    n_modes: usize,
) {
    for col in 0..target.dim() {
        if let Some((sign, row)) = apply_product(ops, col, n_modes) {
            target[(row, col)] += coeff * sign;
        }
    }
}

/// Dense matrix of a single ladder operator.
pub fn ladder_matrix(op: Ladder, n_modes: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(1 << n_modes);
    add_fermion_term(&mut m, Complex64::new(1.0, 0.0), &[op], n_modes);
    m
}

/// Total particle number `Σ_j c_j† c_j`.
pub fn number_operator(n_modes: usize) -> ComplexMatrix {
    let diag: Vec<f64> = (0..1usize << n_modes)
        .map(|s| s.count_ones() as f64)
        .collect();
    ComplexMatrix::from_real_diagonal(&diag)
}
