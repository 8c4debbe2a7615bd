//! Real zeta values, coprime-restricted zeta-type sums, truncated Euler
//! products with explicit tail bounds, and the mean-value scan for sigma*.
//!
//! These produce the scalar constants in the expansion coefficient formulas.
//! Every truncated quantity reports its cutoff and a tail bound; nothing is
//! hidden behind an unstated truncation.

use crate::error::{Error, Result};
use crate::factor::{factorize, with_primes, FactorSieve};
use crate::util::Kahan;

/// Direct-summation length for [`zeta_real`].
const ZETA_N: u64 = 10_000;

/// Prime cutoff cap for [`euler_product_shifted`]. With the integer-integral
/// tail majorant, bounds below ~1e-7 are not reachable at s = 2 for any
/// affordable cutoff; the product stops here and reports what it achieved.
const EULER_PRIME_CAP: u64 = 1 << 24;

/// Target tail bound for [`euler_product_shifted`].
const EULER_TARGET: f64 = 1e-10;

/// Largest x accepted by [`mean_value_sigma_star`].
pub const MEAN_VALUE_X_MAX: u64 = 20_000_000;

/// A truncated numerical value carrying its truncation point and a bound on
/// the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBoundedValue {
    pub value: f64,
    pub abs_tail_bound: f64,
    pub truncation_point: u64,
}

/// Riemann zeta on the real axis, s > 1: direct sum over n < N plus
/// Euler-Maclaurin corrections N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12.
/// The next correction term, plus a few ulps for the float sum, is the
/// reported tail bound.
pub fn zeta_real(s: f64) -> Result<TailBoundedValue> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::domain(format!("zeta_real requires s > 1, got {s}")));
    }
    let n = ZETA_N as f64;
    let mut sum = Kahan::new();
    let mut i = ZETA_N - 1;
    while i >= 1 {
        sum.add((i as f64).powf(-s));
        i -= 1;
    }
    let value = sum.value() + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s)
        + s * n.powf(-s - 1.0) / 12.0;
    let next_term = s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    Ok(TailBoundedValue {
        value,
        abs_tail_bound: next_term + 8.0 * f64::EPSILON * value.abs(),
        truncation_point: ZETA_N,
    })
}

/// `sum_{(m, Q) = 1} m^{-s} = zeta(s) prod_{p | Q} (1 - p^{-s})`, s > 1.
pub fn coprime_zeta(s: f64, q: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::domain("coprime_zeta requires Q >= 1"));
    }
    let zeta = zeta_real(s)?.value;
    let fq = factorize(q)?;
    let mut out = zeta;
    for &(p, _) in fq.factors() {
        out *= 1.0 - (p as f64).powf(-s);
    }
    Ok(out)
}

/// Truncated Euler product `prod_p (1 + a p^{-s})` for s > 1 and
/// 1 + a 2^{-s} > 0.
///
/// The prime cutoff P is doubled until the tail bound
/// |a| P^{1-s} / ((s-1)(1 - |a| P^{-s})) (integer-integral majorant of the
/// omitted log factors) pushes the value bound under 1e-10, or P reaches the
/// cap; the achieved bound is reported either way. `a = 0` returns exactly 1.
pub fn euler_product_shifted(s: f64, a: f64) -> Result<TailBoundedValue> {
    euler_domain_check(s, a)?;
    if a == 0.0 {
        return Ok(TailBoundedValue {
            value: 1.0,
            abs_tail_bound: 0.0,
            truncation_point: 0,
        });
    }
    let mut cutoff: u64 = 1 << 14;
    while cutoff < EULER_PRIME_CAP && euler_log_tail(s, a, cutoff as f64) > EULER_TARGET {
        cutoff *= 2;
    }
    euler_product_with_cutoff(s, a, cutoff)
}

fn euler_domain_check(s: f64, a: f64) -> Result<()> {
    let first_factor = 1.0 + a * 2f64.powf(-s);
    if s.is_nan() || s <= 1.0 || first_factor.is_nan() || first_factor <= 0.0 {
        return Err(Error::domain(format!(
            "euler product requires s > 1 and 1 + a/2^s > 0 (s={s}, a={a})"
        )));
    }
    Ok(())
}

fn euler_log_tail(s: f64, a: f64, p: f64) -> f64 {
    let damp = 1.0 - a.abs() * p.powf(-s);
    if damp <= 0.0 {
        return f64::INFINITY;
    }
    a.abs() * p.powf(1.0 - s) / ((s - 1.0) * damp)
}

/// The same product at a caller-chosen prime cutoff; the stability suites
/// compare consecutive doublings against the reported bound.
pub fn euler_product_with_cutoff(s: f64, a: f64, cutoff: u64) -> Result<TailBoundedValue> {
    euler_domain_check(s, a)?;
    let mut log_sum = Kahan::new();
    with_primes(cutoff, |primes| {
        for &p in primes {
            log_sum.add((a * (p as f64).powf(-s)).ln_1p());
        }
    })?;
    let value = log_sum.value().exp();
    let tail = euler_log_tail(s, a, cutoff as f64);
    Ok(TailBoundedValue {
        value,
        abs_tail_bound: value.abs() * tail.exp_m1() + 8.0 * f64::EPSILON * value.abs(),
        truncation_point: cutoff,
    })
}

/// `sum_{(m, Q) = 1} mu*(m) m^{-s}`, s > 1, via the rearrangement
/// `zeta(s) prod_p (1 - 2 p^{-s}) prod_{p | Q} (1 - p^{-s}) / (1 - 2 p^{-s})`.
pub fn coprime_mu_star_sum(s: f64, q: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::domain("coprime_mu_star_sum requires Q >= 1"));
    }
    let zeta = zeta_real(s)?.value;
    let base = euler_product_shifted(s, -2.0)?.value;
    let fq = factorize(q)?;
    let mut out = zeta * base;
    for &(p, _) in fq.factors() {
        let x = (p as f64).powf(-s);
        out *= (1.0 - x) / (1.0 - 2.0 * x);
    }
    Ok(out)
}

/// Result of the sigma* mean-value scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValueReport {
    /// Exact `sum_{n <= x} sigma*(n)`.
    pub partial_sum: i128,
    /// `pi^2 x^2 / (12 zeta(3))`.
    pub main_term: f64,
    pub ratio: f64,
}

/// Exact `sum_{n <= x} sigma*(n)` against its asymptotic main term.
pub fn mean_value_sigma_star(x: u64) -> Result<MeanValueReport> {
    if x < 2 {
        return Err(Error::domain("mean value scan requires x >= 2"));
    }
    if x > MEAN_VALUE_X_MAX {
        return Err(Error::resource(format!(
            "mean value bound is x <= {MEAN_VALUE_X_MAX}"
        )));
    }
    let sieve = FactorSieve::new(x)?;
    let mut total: i128 = 0;
    for n in 1..=x {
        let mut v: i128 = 1;
        sieve.for_each_prime_power(n, |_, _, pe| {
            v *= pe as i128 + 1;
        });
        total += v;
    }
    let zeta3 = zeta_real(3.0)?.value;
    let xf = x as f64;
    let main_term = std::f64::consts::PI.powi(2) * xf * xf / (12.0 * zeta3);
    Ok(MeanValueReport {
        partial_sum: total,
        main_term,
        ratio: total as f64 / main_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, mobius_star};
    use std::f64::consts::PI;

    #[test]
    fn zeta_closed_forms() {
        let z2 = zeta_real(2.0).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() <= 1e-12);
        assert!(z2.abs_tail_bound <= 1e-12);
        assert!((z2.value - PI * PI / 6.0).abs() <= z2.abs_tail_bound);
        let z4 = zeta_real(4.0).unwrap();
        assert!((z4.value - PI.powi(4) / 90.0).abs() <= 1e-12);
        assert!((z4.value - PI.powi(4) / 90.0).abs() <= z4.abs_tail_bound);
        assert!(matches!(zeta_real(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn high_precision_reference_values() {
        // 30-digit references computed independently with mpmath.
        for (s, reference) in [
            (1.5, 2.61237534868548834334856756792),
            (2.5, 1.34148725725091717975676969335),
            (3.0, 1.20205690315959428539973816151),
            (5.0, 1.03692775514336992633136548646),
        ] {
            let z = zeta_real(s).unwrap();
            assert!(
                (z.value - reference).abs() <= z.abs_tail_bound + 1e-13,
                "zeta({s}): {} vs {reference}",
                z.value
            );
        }
        let prod = euler_product_shifted(2.0, -2.0).unwrap();
        let reference = 0.322634098939244670587141646125;
        assert!(
            (prod.value - reference).abs() <= prod.abs_tail_bound,
            "prod (1 - 2/p^2): {} vs {reference}, bound {}",
            prod.value,
            prod.abs_tail_bound
        );
        let musum = coprime_mu_star_sum(2.0, 1).unwrap();
        let reference = 0.530711820472044794985461644359;
        assert!((musum - reference).abs() <= 1e-7, "mu* sum: {musum}");
    }

    #[test]
    fn zeta3_against_independent_summation() {
        // Higher-N direct sum with integral tail as an independent oracle.
        let n_oracle = 2_000_000u64;
        let mut s = Kahan::new();
        let mut i = n_oracle;
        while i >= 1 {
            s.add((i as f64).powi(-3));
            i -= 1;
        }
        let nf = n_oracle as f64;
        // Integral tail; the neglected f(N)/2 term is ~6e-20 here.
        let oracle = s.value() + nf.powf(-2.0) / 2.0;
        assert!((zeta_real(3.0).unwrap().value - oracle).abs() < 1e-10);
    }

    #[test]
    fn coprime_zeta_examples() {
        let z = zeta_real(2.0).unwrap().value;
        assert!((coprime_zeta(2.0, 1).unwrap() - z).abs() < 1e-15);
        assert!((coprime_zeta(2.0, 2).unwrap() - z * 0.75).abs() < 1e-14);
        assert!((coprime_zeta(2.0, 6).unwrap() - z * 0.75 * (8.0 / 9.0)).abs() < 1e-14);
    }

    #[test]
    fn coprime_zeta_against_direct_summation() {
        for (s, q) in [(2.0, 1u64), (2.0, 2), (2.0, 6), (2.0, 30), (3.0, 6), (3.0, 30)] {
            let mut direct = Kahan::new();
            let mut m = 1_000_000u64;
            while m >= 1 {
                if gcd(m, q) == 1 {
                    direct.add((m as f64).powf(-s));
                }
                m -= 1;
            }
            let tail_allowance = if s == 2.0 { 2e-6 } else { 1e-9 };
            assert!(
                (coprime_zeta(s, q).unwrap() - direct.value()).abs() < tail_allowance,
                "s={s} q={q}"
            );
        }
    }

    #[test]
    fn euler_product_examples() {
        let one = euler_product_shifted(2.0, 0.0).unwrap();
        assert_eq!(one.value, 1.0);
        assert_eq!(one.abs_tail_bound, 0.0);
        // prod (1 - p^{-2}) = 1/zeta(2).
        let inv = euler_product_shifted(2.0, -1.0).unwrap();
        let expect = 1.0 / zeta_real(2.0).unwrap().value;
        assert!((inv.value - expect).abs() <= inv.abs_tail_bound.max(1e-9));
        assert!(matches!(
            euler_product_shifted(2.0, -4.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            euler_product_shifted(0.5, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn euler_product_reaches_target_for_larger_s() {
        for (s, a) in [(3.0, -2.0), (4.0, 1.0), (2.5, -2.0)] {
            let v = euler_product_shifted(s, a).unwrap();
            assert!(v.abs_tail_bound <= 1e-10, "s={s} a={a} bound={}", v.abs_tail_bound);
        }
    }

    #[test]
    fn euler_product_stable_under_cutoff_doubling() {
        for (s, a) in [(2.0, -2.0), (2.0, -1.0), (2.0, 1.0), (3.0, -2.0)] {
            for cutoff in [1u64 << 16, 1 << 18, 1 << 20] {
                let v1 = euler_product_with_cutoff(s, a, cutoff).unwrap();
                let v2 = euler_product_with_cutoff(s, a, 2 * cutoff).unwrap();
                assert!(
                    (v1.value - v2.value).abs() <= v1.abs_tail_bound,
                    "s={s} a={a} cutoff={cutoff}: drift {} vs bound {}",
                    (v1.value - v2.value).abs(),
                    v1.abs_tail_bound
                );
            }
        }
    }

    #[test]
    fn coprime_mu_star_sum_examples() {
        // Q=2, s=2 is the Q=1 value times (1 - 1/4)/(1 - 2/4).
        let base = coprime_mu_star_sum(2.0, 1).unwrap();
        let q2 = coprime_mu_star_sum(2.0, 2).unwrap();
        assert!((q2 - base * 0.75 / 0.5).abs() < 1e-12);
        // Direct signed summation oracle at s=3, Q=1.
        let mut direct = Kahan::new();
        let mut m = 1_000_000u64;
        while m >= 1 {
            direct.add(mobius_star(m).unwrap() as f64 * (m as f64).powi(-3));
            m -= 1;
        }
        assert!((coprime_mu_star_sum(3.0, 1).unwrap() - direct.value()).abs() < 1e-5);
    }

    #[test]
    fn coprime_mu_star_sum_direct_s2_q2() {
        let mut direct = Kahan::new();
        let mut m = 2_000_000u64;
        while m >= 1 {
            if m % 2 == 1 {
                direct.add(mobius_star(m).unwrap() as f64 * (m as f64).powi(-2));
            }
            m -= 1;
        }
        assert!((coprime_mu_star_sum(2.0, 2).unwrap() - direct.value()).abs() < 1e-6);
    }

    #[test]
    fn mean_value_examples() {
        let r = mean_value_sigma_star(2).unwrap();
        assert_eq!(r.partial_sum, 4); // sigma*(1) + sigma*(2) = 1 + 3
        let r = mean_value_sigma_star(1000).unwrap();
        assert!(r.ratio > 0.95 && r.ratio < 1.05, "ratio={}", r.ratio);
        assert!(matches!(mean_value_sigma_star(1), Err(Error::Domain(_))));
        assert!(matches!(
            mean_value_sigma_star(MEAN_VALUE_X_MAX + 1),
            Err(Error::Resource(_))
        ));
    }
}
