//! gcd/lcm variants (including the unitary notions), Moebius functions,
//! divisor convolutions and the multiplicative-function evaluation framework.

use crate::error::{Error, Result};
use crate::factor::{self, factorize, Factorization};

/// Largest supported input value (2^63 - 1); exact results beyond 128-bit
/// intermediates are reported as domain errors, never wrapped.
pub const MAX_VALUE: u64 = i64::MAX as u64;

/// gcd of one or more positive integers.
pub fn gcd_kary(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::domain("gcd of an empty tuple"));
    }
    if values.contains(&0) {
        return Err(Error::domain("gcd requires positive integers"));
    }
    Ok(values.iter().copied().fold(0, factor::gcd_u64))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    factor::gcd_u64(a, b)
}

/// lcm of one or more positive integers, overflow-checked against
/// [`MAX_VALUE`].
pub fn lcm_kary(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::domain("lcm of an empty tuple"));
    }
    if values.contains(&0) {
        return Err(Error::domain("lcm requires positive integers"));
    }
    let mut acc: u64 = 1;
    for &v in values {
        let g = factor::gcd_u64(acc, v);
        let wide = (acc / g) as u128 * v as u128;
        if wide > MAX_VALUE as u128 {
            return Err(Error::domain(format!("lcm overflow past {MAX_VALUE}")));
        }
        acc = wide as u64;
    }
    Ok(acc)
}

/// Semi-unitary gcd `(k, n)_*`: the largest d with d | k and d || n.
///
/// Per prime: p^e with e = nu_p(n) is kept exactly when p^e also divides k.
pub fn semi_unitary_gcd(k: u64, n: u64) -> Result<u64> {
    if k == 0 || n == 0 {
        return Err(Error::domain("semi_unitary_gcd requires positive integers"));
    }
    let fn_ = factorize(n)?;
    let mut out: u64 = 1;
    for &(p, e) in fn_.factors() {
        let pe = p.pow(e);
        if k.is_multiple_of(pe) {
            out *= pe;
        }
    }
    Ok(out)
}

/// Greatest common unitary divisor `(n_1, ..., n_k)_{*k}`.
///
/// d || n_i for every i forces, for each prime p, either p absent from d or
/// nu_p(d) = nu_p(n_i) for all i simultaneously; p^e therefore contributes
/// exactly when every argument carries the same positive exponent e at p.
pub fn unitary_gcd_kary(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::domain("unitary gcd of an empty tuple"));
    }
    if values.contains(&0) {
        return Err(Error::domain("unitary gcd requires positive integers"));
    }
    let first = factorize(values[0])?;
    let mut out: u64 = 1;
    'prime: for &(p, e) in first.factors() {
        let pe = p.pow(e);
        for &v in &values[1..] {
            // nu_p(v) == e  <=>  p^e | v and p^{e+1} does not.
            if v % pe != 0 || (v / pe) % p == 0 {
                continue 'prime;
            }
        }
        out *= pe;
    }
    Ok(out)
}

/// Moebius function.
pub fn mobius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if f.factors().iter().any(|&(_, e)| e >= 2) {
        return Ok(0);
    }
    Ok(if f.omega() % 2 == 0 { 1 } else { -1 })
}

/// Unitary Moebius function `mu*(n) = (-1)^omega(n)`, the inverse of the
/// constant 1 under unitary convolution.
pub fn mobius_star(n: u64) -> Result<i64> {
    Ok(if omega_parity_even(&factorize(n)?) { 1 } else { -1 })
}

fn omega_parity_even(f: &Factorization) -> bool {
    f.omega().is_multiple_of(2)
}

/// Dirichlet convolution `(f * g)(n) = sum_{d | n} f(d) g(n/d)`.
pub fn dirichlet_convolve(
    f: impl Fn(u64) -> i128,
    g: impl Fn(u64) -> i128,
    n: u64,
) -> Result<i128> {
    let divs = factor::all_divisors(n)?;
    Ok(divs.iter().map(|&d| f(d) * g(n / d)).sum())
}

/// Unitary convolution `(f x g)(n) = sum_{d || n} f(d) g(n/d)`.
pub fn unitary_convolve(
    f: impl Fn(u64) -> i128,
    g: impl Fn(u64) -> i128,
    n: u64,
) -> Result<i128> {
    let divs = factor::unitary_divisors(n)?;
    Ok(divs.iter().map(|&d| f(d) * g(n / d)).sum())
}

/// Numeric payload of a [`MultiplicativeFnRule`]: exact 128-bit integers or
/// double-precision reals, fixed per instantiation.
pub trait RulePayload: Copy {
    const ONE: Self;
    fn mul_checked(a: Self, b: Self) -> Option<Self>;
}

impl RulePayload for i128 {
    const ONE: i128 = 1;
    fn mul_checked(a: i128, b: i128) -> Option<i128> {
        a.checked_mul(b)
    }
}

impl RulePayload for f64 {
    const ONE: f64 = 1.0;
    fn mul_checked(a: f64, b: f64) -> Option<f64> {
        Some(a * b)
    }
}

/// A multiplicative function defined by its values on prime powers.
///
/// The value at 1 is implicitly 1; evaluation at n multiplies the rule over
/// the prime powers of n.
pub struct MultiplicativeFnRule<T> {
    name: String,
    rule: Box<dyn Fn(u64, u32) -> Result<T> + Send + Sync>,
}

impl<T: RulePayload> MultiplicativeFnRule<T> {
    pub fn new(
        name: impl Into<String>,
        rule: impl Fn(u64, u32) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        MultiplicativeFnRule {
            name: name.into(),
            rule: Box::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn at_prime_power(&self, p: u64, e: u32) -> Result<T> {
        (self.rule)(p, e)
    }
}

/// Evaluate a multiplicative rule at `n`.
pub fn eval_multiplicative<T: RulePayload>(rule: &MultiplicativeFnRule<T>, n: u64) -> Result<T> {
    let f = factorize(n)?;
    let mut acc = T::ONE;
    for &(p, e) in f.factors() {
        let v = rule.at_prime_power(p, e)?;
        acc = T::mul_checked(acc, v).ok_or_else(|| {
            Error::domain(format!("overflow evaluating {} at {}", rule.name, n))
        })?;
    }
    Ok(acc)
}
