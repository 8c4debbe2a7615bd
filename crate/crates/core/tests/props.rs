//! Property tests for the arithmetic substrate.

use proptest::prelude::*;

use ramsum_core::arith::{
    eval_multiplicative, gcd, lcm_kary, mobius_star, semi_unitary_gcd, unitary_convolve,
    unitary_gcd_kary, MultiplicativeFnRule,
};
use ramsum_core::factor::{factorize, is_unitary_divisor, omega, unitary_divisors};
use ramsum_core::oracle::brute_unitary_gcd;
use ramsum_core::ramanujan::{c_tilde, c_value, SumFamily};
use ramsum_core::special::{sigma_star, tau_star};

/// Largest divisor of `a` coprime to `b`; turns arbitrary pairs into
/// coprime ones without rejection sampling.
fn strip_common_factors(mut a: u64, b: u64) -> u64 {
    loop {
        let g = gcd(a, b);
        if g == 1 {
            return a;
        }
        a /= g;
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn factorize_round_trips(n in 1u64..=1_000_000_000_000) {
        let f = factorize(n).unwrap();
        let back: u128 = f
            .factors()
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e));
        prop_assert_eq!(back, n as u128);
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(f.factors().iter().all(|&(p, _)| ramsum_core::factor::is_prime(p)));
    }

    #[test]
    fn unitary_divisor_count_and_coprimality(n in 1u64..=2_000_000) {
        let uni = unitary_divisors(n).unwrap();
        prop_assert_eq!(uni.len() as u64, 1u64 << omega(n).unwrap());
        prop_assert_eq!(uni[0], 1);
        prop_assert_eq!(*uni.last().unwrap(), n);
        for &d in &uni {
            prop_assert_eq!(gcd(d, n / d), 1);
        }
    }

    #[test]
    fn unitary_gcd_matches_brute_force(a in 1u64..=200, b in 1u64..=200, c in 1u64..=200) {
        prop_assert_eq!(
            unitary_gcd_kary(&[a, b]).unwrap(),
            brute_unitary_gcd(&[a, b]).unwrap()
        );
        prop_assert_eq!(
            unitary_gcd_kary(&[a, b, c]).unwrap(),
            brute_unitary_gcd(&[a, b, c]).unwrap()
        );
    }

    #[test]
    fn semi_unitary_divides_gcd(k in 1u64..=5_000, n in 1u64..=5_000) {
        let su = semi_unitary_gcd(k, n).unwrap();
        prop_assert_eq!(gcd(k, n) % su, 0);
        prop_assert!(k % su == 0);
        prop_assert!(is_unitary_divisor(su, n));
    }

    #[test]
    fn lcm_times_gcd(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
        let l = lcm_kary(&[a, b]).unwrap();
        prop_assert_eq!(l as u128 * gcd(a, b) as u128, a as u128 * b as u128);
    }

    #[test]
    fn sigma_star_agrees_with_divisor_enumeration(n in 1u64..=500_000) {
        let direct: i128 = unitary_divisors(n).unwrap().iter().map(|&d| d as i128).sum();
        prop_assert_eq!(sigma_star(n).unwrap(), direct);
        prop_assert_eq!(tau_star(n).unwrap(), unitary_divisors(n).unwrap().len() as i128);
    }

    #[test]
    fn builtin_rules_are_multiplicative(a in 1u64..=500, b in 1u64..=500) {
        let a = strip_common_factors(a, b);
        let rules: Vec<MultiplicativeFnRule<i128>> = vec![
            MultiplicativeFnRule::new("sigma*", |p: u64, e| Ok(p.pow(e) as i128 + 1)),
            MultiplicativeFnRule::new("phi*", |p: u64, e| Ok(p.pow(e) as i128 - 1)),
            MultiplicativeFnRule::new("2^omega", |_, _| Ok(2)),
        ];
        for rule in &rules {
            prop_assert_eq!(
                eval_multiplicative(rule, a * b).unwrap(),
                eval_multiplicative(rule, a).unwrap() * eval_multiplicative(rule, b).unwrap()
            );
        }
    }

    #[test]
    fn unitary_mobius_inversion_random(n in 1u64..=2_000) {
        let f = |m: u64| (3 * m + 1) as i128;
        let f_sum = |m: u64| -> i128 {
            unitary_divisors(m).unwrap().iter().map(|&d| f(d)).sum()
        };
        let recovered =
            unitary_convolve(|d| mobius_star(d).unwrap() as i128, f_sum, n).unwrap();
        prop_assert_eq!(recovered, f(n));
    }

    #[test]
    fn families_multiplicative_in_q(q1 in 1u64..=100, q2 in 1u64..=100, n in 1u64..=100) {
        let q1 = strip_common_factors(q1, q2);
        for fam in SumFamily::MULTIPLICATIVE {
            prop_assert_eq!(
                c_value(fam, q1 * q2, n).unwrap(),
                c_value(fam, q1, n).unwrap() * c_value(fam, q2, n).unwrap()
            );
        }
    }

    #[test]
    fn ctilde_bounded_by_sigma_star_of_unitary_gcd(q in 1u64..=2_000, n in 1u64..=2_000) {
        let u = unitary_gcd_kary(&[n, q]).unwrap();
        prop_assert!(c_tilde(q, n).unwrap().abs() <= sigma_star(u).unwrap());
    }
}
