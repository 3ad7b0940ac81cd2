mod common;

use proptest::prelude::*;
use schmidt_witness::knorm::{max_expectation, min_knorm, SolverConfig};
use schmidt_witness::linalg::{
    hs_inner, partial_transpose, schmidt_decompose, tau_k, BipartiteDim, HermitianOp, PureVector,
};

fn dims() -> impl Strategy<Value = BipartiteDim> {
    (2usize..=4, 2usize..=4).prop_map(|(m, n)| BipartiteDim::new(m, n).unwrap())
}

fn cfg() -> SolverConfig {
    SolverConfig { restarts: 8, ..SolverConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_is_monotone_and_reaches_one(dim in dims(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let v = PureVector::normalized(dim, common::gaussian(&mut rng, dim.total(), 1).column(0).into_owned()).unwrap();
        let mut prev = 0.0;
        for k in 1..=dim.min_dim() {
            let t = tau_k(dim, v.amplitudes(), k).unwrap();
            prop_assert!(t + 1e-14 >= prev);
            prev = t;
        }
        prop_assert!((prev - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_decomposition_reconstructs(dim in dims(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let v = PureVector::normalized(dim, common::gaussian(&mut rng, dim.total(), 1).column(0).into_owned()).unwrap();
        let data = schmidt_decompose(&v);
        prop_assert!((data.reconstruct() - v.amplitudes()).norm() < 1e-12);
        let total: f64 = data.coefficients.iter().map(|c| c * c).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution_and_an_isometry(dim in dims(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::gaussian(&mut rng, dim.total(), dim.total());
        let h = HermitianOp::new(dim, &g + g.adjoint()).unwrap();
        let pt = partial_transpose(&h);
        prop_assert!(partial_transpose(&pt).max_abs_diff(&h) < 1e-14);
        let a = hs_inner(&h, &h).unwrap();
        let b = hs_inner(&pt, &pt).unwrap();
        prop_assert!((a - b).abs() < 1e-10 * a.max(1.0));
    }

    #[test]
    fn knorms_lie_between_the_extreme_eigenvalues(dim in dims(), seed in any::<u64>(), rank in 1usize..4) {
        let mut rng = common::rng(seed);
        let s = common::random_state(&mut rng, dim, rank);
        let (lo, hi) = (s.min_eigenvalue(), s.max_eigenvalue());
        let mut prev_max = f64::NEG_INFINITY;
        let mut prev_min = f64::INFINITY;
        for k in 1..=dim.min_dim() {
            let up = max_expectation(&s, k, &cfg()).unwrap();
            let down = min_knorm(&s, k, &cfg()).unwrap();
            prop_assert!(up.value <= hi + 1e-12 && up.value >= 1.0 / dim.total() as f64 - 1e-12);
            prop_assert!(down.value >= lo - 1e-12 && down.value <= 1.0 / dim.total() as f64 + 1e-12);
            prop_assert!(up.certificate.schmidt_rank() <= k);
            prop_assert!((s.expectation(up.certificate.amplitudes()) - up.value).abs() < 1e-10);
            prop_assert!(up.value + 1e-13 >= prev_max && down.value <= prev_min + 1e-13);
            prev_max = up.value;
            prev_min = down.value;
        }
    }
}
