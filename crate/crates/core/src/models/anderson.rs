//! Anderson impurity: a spinful quantum dot between two tight-binding leads.
//!
//! Fermionic modes are ordered as
//!
//! ```text
//! left lead  x = −L, …, −1   (spin ↑ then ↓ at each site)
//! dot                        (↑, ↓)
//! right lead x = 1, …, L     (↑ then ↓ at each site)
//! ```
//!
//! and realised on qubits through the Jordan–Wigner map of
//! [`super::fermion`]. Lead hopping has unit amplitude.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fermion::{add_fermion_term, Ladder};
use super::system::{check_dim_budget, PartitionedSystem};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, DEFAULT_MAX_DIM};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    fn offset(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lead {
    Left,
    Right,
}

/// Coupling function of one lead, one entry per site ordered outward from the
/// dot (`[v(∓1), v(∓2), …]`), given separately for each spin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadCoupling {
    pub up: Vec<Complex64>,
    pub down: Vec<Complex64>,
}

impl LeadCoupling {
    /// `v(x) = λ δ_{x,∓1}` for both spins.
    pub fn nearest_site(lead_length: usize, strength: f64) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); lead_length];
        if lead_length > 0 {
            v[0] = Complex64::new(strength, 0.0);
        }
        Self {
            up: v.clone(),
            down: v,
        }
    }

    pub fn spin(&self, s: Spin) -> &[Complex64] {
        match s {
            Spin::Up => &self.up,
            Spin::Down => &self.down,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AndersonSpec {
    /// Sites per lead.
    pub lead_length: usize,
    pub dot_energy: f64,
    /// On-site Coulomb repulsion on the dot.
    pub interaction: f64,
    pub left: LeadCoupling,
    pub right: LeadCoupling,
    /// `true`: `H_A = H_l + H_S`, `H_B = H_r`. `false`: `H_A = H_l`,
    /// `H_B = H_r` and the dot Hamiltonian is moved into the coupling.
    pub include_dot_in_measured_energy: bool,
}

impl AndersonSpec {
    /// Symmetric nearest-site coupling `λ` to both leads.
    pub fn with_nearest_site_coupling(
        lead_length: usize,
        dot_energy: f64,
        interaction: f64,
        strength: f64,
    ) -> Self {
        Self {
            lead_length,
            dot_energy,
            interaction,
            left: LeadCoupling::nearest_site(lead_length, strength),
            right: LeadCoupling::nearest_site(lead_length, strength),
            include_dot_in_measured_energy: true,
        }
    }

    pub fn n_modes(&self) -> usize {
        2 * (2 * self.lead_length + 1)
    }

    /// Mode index of lead site `x` (`x < 0` left, `x > 0` right).
    pub fn lead_mode(&self, x: i64, spin: Spin) -> usize {
        let l = self.lead_length as i64;
        // Sites -l..-1, the dot and 1..l occupy slots 0..=2l in order.
        2 * (x + l) as usize + spin.offset()
    }

    pub fn dot_mode(&self, spin: Spin) -> usize {
        2 * self.lead_length + spin.offset()
    }

    /// Lead site coupled through entry `k` of a [`LeadCoupling`].
    pub fn coupling_site(lead: Lead, k: usize) -> i64 {
        match lead {
            Lead::Left => -(k as i64 + 1),
            Lead::Right => k as i64 + 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.lead_length == 0 {
            return Err(Error::InvalidSpec("lead_length must be at least 1".into()));
        }
        if !self.dot_energy.is_finite() || !self.interaction.is_finite() {
            return Err(Error::InvalidSpec("dot parameters must be finite".into()));
        }
        for (name, c) in [("left", &self.left), ("right", &self.right)] {
            for s in Spin::BOTH {
                let v = c.spin(s);
                if v.len() != self.lead_length {
                    return Err(Error::InvalidSpec(format!(
                        "{name} coupling for spin {s:?} has length {}, expected {}",
                        v.len(),
                        self.lead_length
                    )));
                }
                if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::InvalidSpec(format!("{name} coupling is not finite")));
                }
            }
        }
        Ok(())
    }
}

/// The pieces of the Anderson Hamiltonian before partitioning.
pub struct AndersonParts {
    pub h_left: ComplexMatrix,
    pub h_right: ComplexMatrix,
    pub h_dot: ComplexMatrix,
    pub coupling: ComplexMatrix,
}

pub fn anderson_parts(spec: &AndersonSpec, max_dim: usize) -> Result<AndersonParts> {
    spec.validate()?;
    let n = spec.n_modes();
    let dim = check_dim_budget(n, max_dim)?;
    let l = spec.lead_length as i64;

    // H_l = Σ_{σ, |x−x′|=1} c†_σ(x) c_σ(x′), likewise H_r.
    let hopping = |sites: Vec<i64>| {
        let mut m = ComplexMatrix::zeros(dim);
        for w in sites.windows(2) {
            for s in Spin::BOTH {
                let (a, b) = (spec.lead_mode(w[0], s), spec.lead_mode(w[1], s));
                add_fermion_term(&mut m, ONE, &[Ladder::Create(a), Ladder::Annihilate(b)], n);
                add_fermion_term(&mut m, ONE, &[Ladder::Create(b), Ladder::Annihilate(a)], n);
            }
        }
        m
    };
    let h_left = hopping((-l..=-1).collect());
    let h_right = hopping((1..=l).collect());

    let mut h_dot = ComplexMatrix::zeros(dim);
    let up = spec.dot_mode(Spin::Up);
    let down = spec.dot_mode(Spin::Down);
    for d in [up, down] {
        add_fermion_term(
            &mut h_dot,
            Complex64::new(spec.dot_energy, 0.0),
            &[Ladder::Create(d), Ladder::Annihilate(d)],
            n,
        );
    }
    add_fermion_term(
        &mut h_dot,
        Complex64::new(spec.interaction, 0.0),
        &[
            Ladder::Create(up),
            Ladder::Annihilate(up),
            Ladder::Create(down),
            Ladder::Annihilate(down),
        ],
        n,
    );

    // V = Σ_σ d†_σ (c_{l,σ}(v_l) + c_{r,σ}(v_r)) + h.c., with c(φ) = Σ conj(φ(x)) c(x).
    let mut coupling = ComplexMatrix::zeros(dim);
    for (lead, lc) in [(Lead::Left, &spec.left), (Lead::Right, &spec.right)] {
        for s in Spin::BOTH {
            let d = spec.dot_mode(s);
            for (k, &vk) in lc.spin(s).iter().enumerate() {
                if vk == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let c = spec.lead_mode(AndersonSpec::coupling_site(lead, k), s);
                add_fermion_term(
                    &mut coupling,
                    vk.conj(),
                    &[Ladder::Create(d), Ladder::Annihilate(c)],
                    n,
                );
                add_fermion_term(
                    &mut coupling,
                    vk,
                    &[Ladder::Create(c), Ladder::Annihilate(d)],
                    n,
                );
            }
        }
    }
    Ok(AndersonParts {
        h_left,
        h_right,
        h_dot,
        coupling,
    })
}

pub fn build_anderson(spec: &AndersonSpec) -> Result<PartitionedSystem> {
    build_anderson_with_limit(spec, DEFAULT_MAX_DIM)
}

pub fn build_anderson_with_limit(spec: &AndersonSpec, max_dim: usize) -> Result<PartitionedSystem> {
    let parts = anderson_parts(spec, max_dim)?;
    let (h_a, v) = if spec.include_dot_in_measured_energy {
        (&parts.h_left + &parts.h_dot, parts.coupling)
    } else {
        (parts.h_left, &parts.h_dot + &parts.coupling)
    };
    let label = format!(
        "anderson(L={}, eps_d={}, U={}, dot_measured={})",
        spec.lead_length, spec.dot_energy, spec.interaction, spec.include_dot_in_measured_energy
    );
    Ok(PartitionedSystem::from_parts(
        HermitianOperator::symmetrized(h_a),
        HermitianOperator::symmetrized(parts.h_right),
        HermitianOperator::symmetrized(v),
        label,
    ))
}
