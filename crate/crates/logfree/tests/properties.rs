//! Property tests for the structural invariants: symmetry, homogeneity,
//! Cauchy agreement, conductor bounds, partition counts, and sieve weight
//! positivity over generated inputs.

use logfree::analytic::SelbergWeights;
use logfree::coefficients::{rs_coeff_ideal, SatakeData};
use logfree::conductor::{pair_bound, sample_character_pair, tensor_conductor_exact};
use logfree::symmetric::{
    cauchy_pairing, cauchy_product_series_coefficient, count_partitions, enumerate_partitions,
    schur, Partition,
};
use logfree::Complex64;
use num_rational::Ratio;
use proptest::prelude::*;

fn complex_in_disk(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU)
        .prop_map(|(m, t)| Complex64::from_polar(m, t))
}

fn partition_of_bounded_total() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0u32..5, 0..4)
        .prop_map(|mut parts| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(parts).expect("sorted parts")
        })
}

proptest! {
    #[test]
    fn enumeration_count_equals_dp(max_len in 0usize..12, total in -3i64..24) {
        prop_assert_eq!(
            enumerate_partitions(max_len, total).len() as u64,
            count_partitions(max_len, total)
        );
    }

    #[test]
    fn enumeration_is_strictly_descending(max_len in 0usize..8, total in 0i64..16) {
        let parts = enumerate_partitions(max_len, total);
        for w in parts.windows(2) {
            prop_assert!(w[0].parts() > w[1].parts());
        }
        for mu in &parts {
            prop_assert_eq!(mu.total(), total as u64);
            prop_assert!(mu.len() <= max_len);
        }
    }

    #[test]
    fn schur_is_permutation_invariant(
        mu in partition_of_bounded_total(),
        values in proptest::collection::vec(complex_in_disk(2.0), 4),
        swap in (0usize..4, 0usize..4),
    ) {
        let mut permuted = values.clone();
        permuted.swap(swap.0, swap.1);
        let a = schur(&mu, &values).unwrap();
        let b = schur(&mu, &permuted).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn schur_is_homogeneous(
        mu in partition_of_bounded_total(),
        values in proptest::collection::vec(complex_in_disk(1.5), 3),
        scale in complex_in_disk(1.5),
    ) {
        prop_assume!(mu.len() <= 3);
        let scaled: Vec<Complex64> = values.iter().map(|&v| v * scale).collect();
        let lhs = schur(&mu, &scaled).unwrap();
        let mut factor = Complex64::new(1.0, 0.0);
        for _ in 0..mu.total() {
            factor *= scale;
        }
        let rhs = schur(&mu, &values).unwrap() * factor;
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn cauchy_pairing_matches_series(
        a in proptest::collection::vec(complex_in_disk(2.0), 1..5),
        b_seed in proptest::collection::vec(complex_in_disk(2.0), 1..5),
        r in 0usize..9,
    ) {
        let n = a.len().min(b_seed.len());
        let a = &a[..n];
        let b = &b_seed[..n];
        let pairing = cauchy_pairing(a, b, r as i64).unwrap();
        let series = cauchy_product_series_coefficient(a, b, r);
        prop_assert!((pairing - series).norm() <= 1e-9 * (1.0 + series.norm()));
    }

    #[test]
    fn rs_ideal_is_multiplicative_on_coprime_pairs(
        seed in 0u64..500,
        pair in (1u64..40, 1u64..40),
    ) {
        let (m1, m2) = pair;
        prop_assume!(logfree::characters::gcd_u64(m1, m2) == 1);
        let pi = SatakeData::sampled_unitary_with_central(2, 1, seed, seed ^ 0xff);
        let pi0 = SatakeData::sampled_unitary_with_central(2, 1, seed + 1, seed ^ 0xff);
        let whole = rs_coeff_ideal(&pi, &pi0, m1 * m2).unwrap();
        let split = rs_coeff_ideal(&pi, &pi0, m1).unwrap() * rs_coeff_ideal(&pi, &pi0, m2).unwrap();
        prop_assert!((whole - split).norm() <= 1e-9 * (1.0 + split.norm()));
    }

    #[test]
    fn tensor_conductor_never_beats_the_bound(seed in 0u64..5000, flag in any::<bool>()) {
        let (sigma, tau) = sample_character_pair(seed, &[2, 3, 5, 7], 4, 5, flag);
        let exact = tensor_conductor_exact(&sigma, &tau).unwrap();
        let bound = pair_bound(&sigma.as_wd_rep(), &tau.as_wd_rep(), flag);
        prop_assert!(Ratio::new(exact as i64, 1) <= bound);
    }

    #[test]
    fn sieve_weights_are_nonnegative_and_bounded(z in 3u64..40, n in 1u64..5000) {
        let w = SelbergWeights::new(|p| 1.0 / p as f64, z, 1, 1_000_000).unwrap();
        prop_assert!(w.weight(n) >= 0.0);
        prop_assert!(w.rho(1) == 1.0);
        for (_, rho) in w.support() {
            prop_assert!(rho.abs() <= 1.0 + 1e-12);
        }
    }
}
