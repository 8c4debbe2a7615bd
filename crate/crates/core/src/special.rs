//! The concrete arithmetic functions the expansion families are built on:
//! Jordan totients, their unitary analogues, unitary sigma/tau, and the
//! Piltz-type power of omega.
//!
//! Real-valued variants accept arbitrary real order s (negative included);
//! exact variants require integer order and report overflow as a domain
//! error.

use crate::error::{Error, Result};
use crate::factor::{factorize, Factorization};

fn checked_prod(
    f: &Factorization,
    name: &str,
    term: impl Fn(u64, u32) -> Option<i128>,
) -> Result<i128> {
    let mut acc: i128 = 1;
    for &(p, e) in f.factors() {
        let t = term(p, e).ok_or_else(|| {
            Error::domain(format!("overflow in {name} at {}", f.value()))
        })?;
        acc = acc
            .checked_mul(t)
            .ok_or_else(|| Error::domain(format!("overflow in {name} at {}", f.value())))?;
    }
    Ok(acc)
}

fn checked_pow_i128(base: i128, exp: u32) -> Option<i128> {
    base.checked_pow(exp)
}

/// Jordan totient of real order: `phi_s(n) = n^s prod_{p | n} (1 - p^{-s})`.
pub fn jordan_phi(s: f64, n: u64) -> Result<f64> {
    let f = factorize(n)?;
    Ok(jordan_phi_of(s, &f))
}

pub(crate) fn jordan_phi_of(s: f64, f: &Factorization) -> f64 {
    let mut acc = 1.0;
    for &(p, e) in f.factors() {
        let pf = p as f64;
        acc *= pf.powf(s * e as f64) - pf.powf(s * (e as f64 - 1.0));
    }
    acc
}

/// Exact Jordan totient for integer order `s >= 1`:
/// `prod_p (p^{s e} - p^{s(e-1)})`.
pub fn jordan_phi_exact(s: u32, n: u64) -> Result<i128> {
    if s == 0 {
        return Err(Error::domain("jordan_phi_exact requires s >= 1"));
    }
    let f = factorize(n)?;
    checked_prod(&f, "jordan_phi_exact", |p, e| {
        let hi = checked_pow_i128(p as i128, s * e)?;
        let lo = checked_pow_i128(p as i128, s * (e - 1))?;
        Some(hi - lo)
    })
}

/// Unitary Jordan totient of real order: `phi*_s(n) = prod_{p^e || n} (p^{s e} - 1)`.
pub fn unitary_jordan_phi(s: f64, n: u64) -> Result<f64> {
    let f = factorize(n)?;
    let mut acc = 1.0;
    for &(p, e) in f.factors() {
        acc *= (p as f64).powf(s * e as f64) - 1.0;
    }
    Ok(acc)
}

/// Exact unitary Jordan totient for integer order `s >= 0`.
pub fn unitary_jordan_phi_exact(s: u32, n: u64) -> Result<i128> {
    let f = factorize(n)?;
    checked_prod(&f, "unitary_jordan_phi_exact", |p, e| {
        Some(checked_pow_i128(p as i128, s * e)? - 1)
    })
}

/// Unitary Euler function `phi*(n) = phi*_1(n)`, with `phi*(p^e) = p^e - 1`.
pub fn phi_star(n: u64) -> Result<i128> {
    unitary_jordan_phi_exact(1, n)
}

/// `sigma*_s(n) = sum_{d || n} d^s` of real order, via the prime-power
/// product `prod (1 + p^{s e})`.
pub fn sigma_star_s(s: f64, n: u64) -> Result<f64> {
    let f = factorize(n)?;
    let mut acc = 1.0;
    for &(p, e) in f.factors() {
        acc *= 1.0 + (p as f64).powf(s * e as f64);
    }
    Ok(acc)
}

/// Exact `sigma*_s` for integer order `s >= 0`.
pub fn sigma_star_s_exact(s: u32, n: u64) -> Result<i128> {
    let f = factorize(n)?;
    checked_prod(&f, "sigma_star_s_exact", |p, e| {
        checked_pow_i128(p as i128, s * e)?.checked_add(1)
    })
}

/// Sum of unitary divisors `sigma*(n) = sigma*_1(n)`.
pub fn sigma_star(n: u64) -> Result<i128> {
    sigma_star_s_exact(1, n)
}

/// Number of unitary divisors `tau*(n) = sigma*_0(n) = 2^omega(n)`.
pub fn tau_star(n: u64) -> Result<i128> {
    let f = factorize(n)?;
    Ok(1i128 << f.omega())
}

/// Classical sum of divisors, needed for the baseline expansions.
pub fn sigma_classical(n: u64) -> Result<i128> {
    let f = factorize(n)?;
    checked_prod(&f, "sigma_classical", |p, e| {
        let num = checked_pow_i128(p as i128, e + 1)? - 1;
        Some(num / (p as i128 - 1))
    })
}

/// `m^omega(n)` for integer `m >= 2`, the unitary analogue of the Piltz
/// divisor function; satisfies `m^omega(n) = sum_{d || n} (m-1)^omega(d)`.
pub fn omega_power(m: u64, n: u64) -> Result<i128> {
    if m < 2 {
        return Err(Error::domain("omega_power requires m >= 2"));
    }
    let f = factorize(n)?;
    checked_pow_i128(m as i128, f.omega())
        .ok_or_else(|| Error::domain(format!("overflow in omega_power({m}, {n})")))
}
