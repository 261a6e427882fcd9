//! Randomized property tests of the structural invariants: nilpotency,
//! adjointness, Leibniz, duality round trips, and index bookkeeping, over
//! generated lattices, grades, and seeds.

use dexcal::chains::{self, ChainField};
use dexcal::forms::FormField;
use dexcal::lattice::Lattice;
use dexcal::metric::MetricField;
use dexcal::multi_index as mi;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_lattice() -> impl Strategy<Value = Lattice> {
    (1usize..=3, 3usize..=4, 0.5f64..1.5).prop_map(|(d, l, eps)| Lattice::cubic(d, l, eps))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exterior_derivative_is_nilpotent(lat in small_lattice(), seed in 0u64..1000, p in 0usize..3) {
        let p = p.min(lat.dim());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FormField::random(&lat, p, &mut rng);
        let dd = a.exterior_derivative().exterior_derivative();
        let scale = a.max_abs() / (lat.spacing() * lat.spacing());
        prop_assert!(dd.max_abs() <= 1e-13 * scale);
    }

    #[test]
    fn codifferential_is_adjoint_to_derivative(
        lat in small_lattice(),
        seed in 0u64..1000,
        p in 0usize..3,
        diagonal in prop::bool::ANY,
    ) {
        let p = p.min(lat.dim().saturating_sub(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = if diagonal {
            MetricField::random_diagonal(&lat, &mut rng)
        } else {
            MetricField::flat(&lat)
        };
        let a = FormField::random(&lat, p, &mut rng);
        let b = FormField::random(&lat, p + 1, &mut rng);
        let lhs = m.inner_product(&a.exterior_derivative(), &b);
        let rhs = m.inner_product(&a, &m.codifferential(&b));
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn hodge_round_trips(lat in small_lattice(), seed in 0u64..1000, p in 0usize..3) {
        let p = p.min(lat.dim());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = MetricField::random_diagonal(&lat, &mut rng);
        let a = FormField::random(&lat, p, &mut rng);
        let back = m.hodge_inverse(&m.hodge(&a));
        prop_assert!(back.sub(&a).max_abs() <= 1e-11 * a.max_abs());
    }

    #[test]
    fn product_satisfies_graded_leibniz(lat in small_lattice(), seed in 0u64..1000, p in 0usize..2, q in 0usize..2) {
        let d = lat.dim();
        if p + q >= d {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FormField::random(&lat, p, &mut rng);
        let b = FormField::random(&lat, q, &mut rng);
        let lhs = a.product(&b).exterior_derivative();
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = a
            .exterior_derivative()
            .product(&b)
            .add(&a.product(&b.exterior_derivative()).scale(Complex64::new(sign, 0.0)));
        let scale = (a.max_abs() * b.max_abs() + 1.0) / lat.spacing();
        prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * scale);
    }

    #[test]
    fn stokes_holds_for_random_pairs(lat in small_lattice(), seed in 0u64..1000, p in 0usize..3) {
        let p = p.min(lat.dim().saturating_sub(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = FormField::random(&lat, p, &mut rng);
        let s = ChainField::random(&lat, p + 1, &mut rng);
        prop_assert!(chains::stokes_residual(&alpha, &s) <= 1e-10);
    }

    #[test]
    fn sharp_and_flat_invert(lat in small_lattice(), seed in 0u64..1000, p in 0usize..3) {
        let p = p.min(lat.dim());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = MetricField::random_diagonal(&lat, &mut rng);
        let a = FormField::random(&lat, p, &mut rng);
        let back = chains::flat(&chains::sharp(&a, &m), &m);
        prop_assert!(back.sub(&a).max_abs() <= 1e-11 * a.max_abs());
    }

    #[test]
    fn translations_compose(lat in small_lattice(), seed in 0u64..1000, steps in prop::collection::vec(-2i64..=2, 1..=3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FormField::random(&lat, 0, &mut rng);
        let mut y = vec![0i64; lat.dim()];
        for (i, &s) in steps.iter().enumerate() {
            y[i % lat.dim()] += s;
        }
        let neg: Vec<i64> = y.iter().map(|v| -v).collect();
        let back = a.translate(&y).translate(&neg);
        prop_assert_eq!(back.comps(), a.comps());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multi_index_rank_is_the_lex_position(dim in 1usize..6, p in 0usize..5) {
        let p = p.min(dim);
        for (i, idx) in mi::multi_indices(dim, p).iter().enumerate() {
            prop_assert_eq!(mi::rank(dim, idx), i);
        }
    }

    #[test]
    fn merge_sign_is_antisymmetric(dim in 2usize..5, a in 0usize..4, b in 0usize..4) {
        let (a, b) = (a % dim, b % dim);
        if a == b {
            return Ok(());
        }
        let (i1, s1) = mi::merge(&[a as u8], &[b as u8]).unwrap();
        let (i2, s2) = mi::merge(&[b as u8], &[a as u8]).unwrap();
        prop_assert_eq!(&i1, &i2);
        prop_assert_eq!(s1, -s2);
    }
}
