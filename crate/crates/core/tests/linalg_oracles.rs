use fcstat_core::linalg::random::{random_ginibre, random_hermitian, seeded_rng};
use fcstat_core::linalg::{eigh, expm_hermitian, kron, op_norm, trace_product};
use fcstat_core::models::pauli::Pauli;
use fcstat_core::{Complex64, ComplexMatrix, HermitianOperator};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Characteristic polynomial coefficients `p(x) = Σ coeffs[k] x^k` by
/// Faddeev–LeVerrier.
fn char_poly(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let shifted = &m + &ComplexMatrix::identity(n).scale_real(coeffs[n - k + 1]);
        m = &a.clone() * &shifted;
        coeffs[n - k] = -m.trace().re / k as f64;
    }
    coeffs
}

fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Real roots of `p` by sign-change scanning on `[−r, r]` and bisection.
fn poly_roots(coeffs: &[f64], r: f64) -> Vec<f64> {
    let steps = 200_000;
    let mut roots = Vec::new();
    let h = 2.0 * r / steps as f64;
    let mut x0 = -r;
    let mut p0 = eval_poly(coeffs, x0);
    for k in 1..=steps {
        let x1 = -r + k as f64 * h;
        let p1 = eval_poly(coeffs, x1);
        if p0 == 0.0 {
            roots.push(x0);
        } else if p0 * p1 < 0.0 {
            let (mut lo, mut hi) = (x0, x1);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if eval_poly(coeffs, lo) * eval_poly(coeffs, mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        p0 = p1;
    }
    roots
}

#[test]
fn eigenvalues_match_characteristic_polynomial_roots() {
    let mut rng = seeded_rng(11);
    for dim in 1..=4 {
        for _ in 0..5 {
            let a = random_hermitian(&mut rng, dim, 2.0);
            let roots = poly_roots(
                &char_poly(a.matrix()),
                2.0 * a.matrix().frobenius_norm() + 1.0,
            );
            let eig = eigh(&a).unwrap();
            assert_eq!(
                roots.len(),
                dim,
                "simple spectrum expected for a random matrix"
            );
            for (r, l) in roots.iter().zip(&eig.eigenvalues) {
                assert!((r - l).abs() < 1e-8, "root {r} vs eigenvalue {l}");
            }
        }
    }
}

/// `e^{cA}` by scaling and squaring of a truncated Taylor series.
fn taylor_expm(a: &ComplexMatrix, coeff: Complex64) -> ComplexMatrix {
    let n = a.dim();
    let scaled = a.scale(coeff);
    let norm = scaled.frobenius_norm();
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let x = scaled.scale_real(0.5f64.powi(squarings as i32));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = (&term * &x).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[test]
fn expm_matches_taylor_scaling_and_squaring() {
    let mut rng = seeded_rng(12);
    for dim in [1, 2, 5, 8] {
        let a = random_hermitian(&mut rng, dim, 3.0);
        for coeff in [c(1.0, 0.0), c(-0.7, 0.0), c(0.0, 2.5), c(0.3, -1.1)] {
            let ours = expm_hermitian(&a, coeff).unwrap();
            let oracle = taylor_expm(a.matrix(), coeff);
            let scale = oracle.max_abs().max(1.0);
            assert!(
                ours.max_abs_diff(&oracle) < 1e-10 * scale,
                "dim {dim}, c {coeff}"
            );
        }
    }
}

/// Largest eigenvalue of `M†M` by power iteration with a Rayleigh quotient.
fn power_iteration_norm(m: &ComplexMatrix) -> f64 {
    let gram = &m.adjoint() * m;
    let n = m.dim();
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| c(1.0 + k as f64 * 0.1, 0.3 - k as f64 * 0.05))
        .collect();
    let mut rayleigh = 0.0;
    for _ in 0..5000 {
        let w = gram.mat_vec(&v);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        rayleigh = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (a.conj() * b).re)
            .sum::<f64>()
            / vv;
        v = w.iter().map(|z| z / norm).collect();
    }
    rayleigh.sqrt()
}

#[test]
fn op_norm_matches_power_iteration() {
    let mut rng = seeded_rng(13);
    for _ in 0..5 {
        let m = random_ginibre(&mut rng, 6);
        let ours = op_norm(&m).unwrap();
        let oracle = power_iteration_norm(&m);
        assert!((ours - oracle).abs() < 1e-8 * oracle, "{ours} vs {oracle}");
    }
}

#[test]
fn op_norm_simple_cases() {
    assert!((op_norm(&ComplexMatrix::identity(5)).unwrap() - 1.0).abs() < 1e-14);
    let d = ComplexMatrix::from_real_diagonal(&[3.0, -5.0]);
    assert!((op_norm(&d).unwrap() - 5.0).abs() < 1e-14);
}

#[test]
fn trace_product_matches_explicit_product() {
    let mut rng = seeded_rng(14);
    let x = random_ginibre(&mut rng, 5);
    let y = random_ginibre(&mut rng, 5);
    let explicit = (&x * &y).trace();
    assert!((trace_product(&x, &y).unwrap() - explicit).norm() < 1e-12);
    let id = ComplexMatrix::identity(5);
    assert!((trace_product(&id, &y).unwrap() - y.trace()).norm() < 1e-14);
    assert!((trace_product(&x, &id).unwrap() - x.trace()).norm() < 1e-14);
    assert!(trace_product(&x, &ComplexMatrix::identity(4)).is_err());
}

#[test]
fn kron_matches_index_formula() {
    let mut rng = seeded_rng(15);
    let a = random_ginibre(&mut rng, 2);
    let b = random_ginibre(&mut rng, 3);
    let k = kron(&a, &b).unwrap();
    assert_eq!(k.dim(), 6);
    for i in 0..2 {
        for j in 0..2 {
            for p in 0..3 {
                for q in 0..3 {
                    assert_eq!(k[(i * 3 + p, j * 3 + q)], a[(i, j)] * b[(p, q)]);
                }
            }
        }
    }
}

#[test]
fn kron_pauli_convention() {
    let i2 = ComplexMatrix::identity(2);
    assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    let z1 = kron(&Pauli::Z.matrix(), &i2).unwrap();
    assert_eq!(
        z1,
        ComplexMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0])
    );
}

#[test]
fn eigh_of_simple_matrices() {
    let d = HermitianOperator::from_real_diagonal(&[3.0, -5.0]);
    let e = eigh(&d).unwrap();
    assert_eq!(e.eigenvalues, vec![-5.0, 3.0]);
    let y = HermitianOperator::new(Pauli::Y.matrix()).unwrap();
    let e = eigh(&y).unwrap();
    assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14 && (e.eigenvalues[1] - 1.0).abs() < 1e-14);
    assert!(e.reconstruct().max_abs_diff(y.matrix()) < 1e-14);
}
