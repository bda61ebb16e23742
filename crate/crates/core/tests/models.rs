mod common;

use common::{anderson_l1, two_qubit, xy_l1};
use fcstat_core::linalg::random::seeded_rng;
use fcstat_core::linalg::{eigh, kron};
use fcstat_core::models::fermion::{ladder_matrix, number_operator, Ladder};
use fcstat_core::models::pauli::Pauli;
use fcstat_core::models::{
    anderson_parts, build_anderson, build_xy_lattice, gibbs_product_state, AndersonSpec,
    LeadCoupling, Spin, XYLatticeSpec,
};
use fcstat_core::{Complex64, ComplexMatrix, HermitianOperator, PartitionedSystem};
use rand::Rng;

/// `σ^{p}_a σ^{p}_b` on four sites from explicit Kronecker strings, site 0
/// as the leftmost factor.
fn two_site_string(p: Pauli, a: usize, b: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for site in 0..4 {
        let factor = if site == a || site == b {
            p.matrix()
        } else {
            ComplexMatrix::identity(2)
        };
        out = kron(&out, &factor).unwrap();
    }
    out
}

fn xy_term(coeff: f64, a: usize, b: usize) -> ComplexMatrix {
    (&two_site_string(Pauli::X, a, b) + &two_site_string(Pauli::Y, a, b)).scale_real(coeff)
}

fn assert_partition_invariants(sys: &PartitionedSystem) {
    let n = sys.dim();
    for op in [sys.h_a(), sys.h_b(), sys.v()] {
        assert_eq!(op.dim(), n);
        assert_eq!(op.matrix().hermiticity_defect(), 0.0);
    }
    let comm = sys.h_a().matrix().commutator(sys.h_b().matrix()).unwrap();
    assert!(comm.max_abs() <= 1e-10);
    assert_eq!(sys.h_coupled().matrix().hermiticity_defect(), 0.0);
}

#[test]
fn xy_lattice_matches_kronecker_assembly() {
    let sys = xy_l1();
    assert_eq!(sys.dim(), 16);
    assert_partition_invariants(&sys);
    // Sites: 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1).
    let h_a = xy_term(-0.5, 0, 1);
    let h_b = xy_term(-0.5, 2, 3);
    let v = &xy_term(-0.5 * 0.5, 0, 2) + &xy_term(-0.5 * 0.25, 1, 3);
    assert!(sys.h_a().matrix().max_abs_diff(&h_a) < 1e-15);
    assert!(sys.h_b().matrix().max_abs_diff(&h_b) < 1e-15);
    assert!(sys.v().matrix().max_abs_diff(&v) < 1e-15);
}

#[test]
fn xy_lattice_without_boundary_coupling() {
    let sys = build_xy_lattice(&XYLatticeSpec {
        half_width: 1,
        coupling: 1.0,
        boundary_strength: 0.0,
    })
    .unwrap();
    assert_eq!(sys.v().matrix().max_abs(), 0.0);
    assert!(sys.h_a().matrix().max_abs_diff(&xy_term(-0.5, 0, 1)) < 1e-15);
}

#[test]
fn xy_lattice_boundary_strengths() {
    let sys = build_xy_lattice(&XYLatticeSpec {
        half_width: 1,
        coupling: 0.0,
        boundary_strength: 2.0,
    })
    .unwrap();
    assert_eq!(sys.h_a().matrix().max_abs(), 0.0);
    assert_eq!(sys.h_b().matrix().max_abs(), 0.0);
    let v = &xy_term(-0.5 * 2.0, 0, 2) + &xy_term(-0.5 * 1.0, 1, 3);
    assert!(sys.v().matrix().max_abs_diff(&v) < 1e-15);
}

#[test]
fn xy_coupling_touches_only_boundary_pairs() {
    let spec = XYLatticeSpec {
        half_width: 1,
        coupling: 1.0,
        boundary_strength: 0.5,
    };
    let pairs = spec.boundary_pairs();
    assert_eq!(pairs.len(), 2 * spec.half_width);
    let sys = build_xy_lattice(&spec).unwrap();
    // V flips exactly the two spins of one boundary pair.
    let v = sys.v().matrix();
    for i in 0..16usize {
        for j in 0..16usize {
            if v[(i, j)].norm() > 0.0 {
                let flipped = i ^ j;
                let ok = pairs
                    .iter()
                    .any(|&(a, b, _)| flipped == (1 << (3 - a)) | (1 << (3 - b)));
                assert!(ok, "V couples {i} and {j}");
            }
        }
    }
}

#[test]
fn ladder_operators_anticommute() {
    let n = 6;
    let dim = 1 << n;
    let id = ComplexMatrix::identity(dim);
    let zero = ComplexMatrix::zeros(dim);
    let c: Vec<ComplexMatrix> = (0..n)
        .map(|j| ladder_matrix(Ladder::Annihilate(j), n))
        .collect();
    let cd: Vec<ComplexMatrix> = (0..n)
        .map(|j| ladder_matrix(Ladder::Create(j), n))
        .collect();
    for i in 0..n {
        assert!(cd[i].max_abs_diff(&c[i].adjoint()) < 1e-15);
        for j in 0..n {
            let mixed = &(&c[i] * &cd[j]) + &(&cd[j] * &c[i]);
            let expected = if i == j { &id } else { &zero };
            assert!(mixed.max_abs_diff(expected) < 1e-12, "{{c_{i}, c_{j}†}}");
            let same = &(&c[i] * &c[j]) + &(&c[j] * &c[i]);
            assert!(same.max_abs() < 1e-12, "{{c_{i}, c_{j}}}");
        }
    }
}

#[test]
fn anderson_conserves_particle_number() {
    for include_dot in [true, false] {
        let sys = anderson_l1(include_dot);
        assert_partition_invariants(&sys);
        let n = number_operator(6);
        assert!(n.commutator(sys.h_total().matrix()).unwrap().max_abs() < 1e-10);
        assert!(n.commutator(sys.v().matrix()).unwrap().max_abs() < 1e-10);
    }
}

#[test]
fn decoupled_dot_energies() {
    let mut spec = AndersonSpec::with_nearest_site_coupling(1, 1.0, 0.0, 0.0);
    spec.include_dot_in_measured_energy = true;
    let sys = build_anderson(&spec).unwrap();
    assert_eq!(sys.v().matrix().max_abs(), 0.0);
    // Leads of one site have no hopping, so H_A + H_B is the dot energy
    // tensored with the 16 lead states.
    let eig = eigh(&sys.h_total()).unwrap();
    let mut counts = [0usize; 3];
    for e in eig.eigenvalues {
        let k = e.round();
        assert!((e - k).abs() < 1e-12);
        counts[k as usize] += 1;
    }
    assert_eq!(counts, [16, 32, 16]);
}

/// All `2^m` subset sums of the single-particle energies.
fn fock_energies(single: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = (0..1usize << single.len())
        .map(|mask| {
            single
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, e)| e)
                .sum()
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn quadratic_anderson_matches_free_fermion_spectrum() {
    let mut rng = seeded_rng(21);
    let c = |rng: &mut rand_chacha::ChaCha8Rng| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    };
    let spec = AndersonSpec {
        lead_length: 1,
        dot_energy: 0.3,
        interaction: 0.0,
        left: LeadCoupling {
            up: vec![c(&mut rng)],
            down: vec![c(&mut rng)],
        },
        right: LeadCoupling {
            up: vec![c(&mut rng)],
            down: vec![c(&mut rng)],
        },
        include_dot_in_measured_energy: true,
    };
    let sys = build_anderson(&spec).unwrap();

    // One-body matrix h with H = Σ h_ij c_i† c_j.
    let mut h = ComplexMatrix::zeros(6);
    for s in Spin::BOTH {
        let d = spec.dot_mode(s);
        h[(d, d)] = Complex64::new(spec.dot_energy, 0.0);
        for (lead, x) in [(&spec.left, -1), (&spec.right, 1)] {
            let site = spec.lead_mode(x, s);
            let v = lead.spin(s)[0];
            h[(d, site)] = v.conj();
            h[(site, d)] = v;
        }
    }
    let single = eigh(&HermitianOperator::new(h).unwrap())
        .unwrap()
        .eigenvalues;
    let expected = fock_energies(&single);
    let got = eigh(&sys.h_coupled()).unwrap().eigenvalues;
    for (a, b) in got.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn lead_hopping_single_particle_sector_is_chain_adjacency() {
    let spec = AndersonSpec::with_nearest_site_coupling(2, 0.3, 1.0, 0.5);
    let parts = anderson_parts(&spec, 4096).unwrap();
    let n = spec.n_modes();
    let one_particle = |mode: usize| 1usize << (n - 1 - mode);
    for (h, sites) in [(&parts.h_left, [-2i64, -1]), (&parts.h_right, [1, 2])] {
        for s in Spin::BOTH {
            for &x in &sites {
                for &y in &sites {
                    let (a, b) = (spec.lead_mode(x, s), spec.lead_mode(y, s));
                    let expected = if (x - y).abs() == 1 { 1.0 } else { 0.0 };
                    let got = h[(one_particle(a), one_particle(b))];
                    assert_eq!(got, Complex64::new(expected, 0.0), "sites {x}, {y}");
                }
            }
        }
    }
}

#[test]
fn anderson_rejects_bad_coupling_length() {
    let mut spec = AndersonSpec::with_nearest_site_coupling(1, 0.3, 1.0, 0.5);
    spec.left.up.push(Complex64::new(1.0, 0.0));
    assert!(build_anderson(&spec).is_err());
}

#[test]
fn gibbs_state_at_zero_temperature_is_maximally_mixed() {
    let sys = two_qubit(0.4);
    let rho = gibbs_product_state(&sys, 0.0, 0.0).unwrap();
    assert!(
        rho.matrix()
            .max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25))
            < 1e-15
    );
}

#[test]
fn gibbs_state_concentrates_on_ground_sector() {
    let sys = two_qubit(0.4);
    let h = sys.h_total();
    let norm = fcstat_core::linalg::op_norm(h.matrix()).unwrap();
    let beta = 50.0 / norm;
    let rho = gibbs_product_state(&sys, beta, beta).unwrap();
    // Ground sector of σ³⊗I + I⊗σ³ is |↓↓⟩, basis index 3.
    let eig = eigh(&h).unwrap();
    let ground = eig.eigenvectors.column(0);
    let weight = rho
        .expectation(&ComplexMatrix::from_diagonal(
            &[0.0, 0.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0)),
        ))
        .unwrap();
    assert!(weight.re >= 0.999);
    assert!((ground[3].norm() - 1.0).abs() < 1e-12);
}

#[test]
fn gibbs_states_commute_with_measured_energy() {
    for sys in [
        two_qubit(0.4),
        xy_l1(),
        anderson_l1(true),
        anderson_l1(false),
    ] {
        for (ba, bb) in [(0.2, 1.0), (3.0, -0.5)] {
            let rho = gibbs_product_state(&sys, ba, bb).unwrap();
            let comm = rho.matrix().commutator(sys.h_total().matrix()).unwrap();
            assert!(comm.max_abs() < 1e-10, "{}", sys.label());
        }
    }
}
