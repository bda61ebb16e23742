use fcstat_core::linalg::random::{random_ginibre, random_hermitian, seeded_rng};
use fcstat_core::linalg::{eigh, expm_hermitian, op_norm, trace_product};
use fcstat_core::{Complex64, ComplexMatrix, HermitianOperator};
use proptest::prelude::*;

fn hermitian(seed: u64, dim: usize, norm: f64) -> HermitianOperator {
    random_hermitian(&mut seeded_rng(seed), dim, norm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reconstruct_then_eigh_is_idempotent(seed in any::<u64>(), dim in 1usize..=12, norm in 0.1f64..10.0) {
        let a = hermitian(seed, dim, norm);
        let once = eigh(&a).unwrap();
        let rebuilt = HermitianOperator::new(once.reconstruct()).unwrap();
        prop_assert!(rebuilt.matrix().max_abs_diff(a.matrix()) <= 1e-9 * norm.max(1.0));
        let twice = eigh(&rebuilt).unwrap();
        for (x, y) in once.eigenvalues.iter().zip(&twice.eigenvalues) {
            prop_assert!((x - y).abs() <= 1e-9 * norm.max(1.0));
        }
    }

    #[test]
    fn op_norm_is_submultiplicative(seed in any::<u64>(), dim in 1usize..=10) {
        let mut rng = seeded_rng(seed);
        let m = random_ginibre(&mut rng, dim);
        let n = random_ginibre(&mut rng, dim);
        let lhs = op_norm(&(&m * &n)).unwrap();
        prop_assert!(lhs <= op_norm(&m).unwrap() * op_norm(&n).unwrap() + 1e-9);
    }

    #[test]
    fn imaginary_exponential_is_unitary(seed in any::<u64>(), dim in 1usize..=12, theta in -50.0f64..50.0) {
        let a = hermitian(seed, dim, 3.0);
        let w = expm_hermitian(&a, Complex64::new(0.0, theta)).unwrap();
        let gram = &w.adjoint() * &w;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(dim)) <= 1e-9);
    }

    #[test]
    fn exponential_is_additive(
        seed in any::<u64>(),
        dim in 1usize..=10,
        a in (-2.0f64..2.0, -5.0f64..5.0),
        b in (-2.0f64..2.0, -5.0f64..5.0),
    ) {
        let h = hermitian(seed, dim, 2.0);
        let (a, b) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        let product = &expm_hermitian(&h, a).unwrap() * &expm_hermitian(&h, b).unwrap();
        let joint = expm_hermitian(&h, a + b).unwrap();
        prop_assert!(product.max_abs_diff(&joint) <= 1e-8 * joint.max_abs().max(1.0));
    }

    #[test]
    fn trace_product_is_cyclic(seed in any::<u64>(), dim in 1usize..=12) {
        let mut rng = seeded_rng(seed);
        let x = random_ginibre(&mut rng, dim);
        let y = random_ginibre(&mut rng, dim);
        let xy = trace_product(&x, &y).unwrap();
        let yx = trace_product(&y, &x).unwrap();
        prop_assert!((xy - yx).norm() <= 1e-12 * xy.norm().max(1.0));
    }
}
