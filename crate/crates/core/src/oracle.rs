//! Independent brute-force routes for every definition: exponential sums,
//! divisor-sum and Hoelder closed forms, the recurrence check, and the
//! k-dimensional unitary Moebius transform.
//!
//! These are deliberately naive. They ship in the library (not only in test
//! code) so the CLI `verify` command can replay every identity in the field;
//! the fast paths in the other modules are tested against them.

use crate::arith::{gcd, mobius, mobius_star, semi_unitary_gcd, unitary_gcd_kary};
use crate::error::{Error, Result};
use crate::factor::{all_divisors, unitary_divisors};
use crate::ramanujan::{SumFamily, ROUNDING_TOLERANCE};
use crate::special::phi_star;
use crate::util::Kahan;

/// Largest q accepted by the exponential-sum oracle.
pub const EXP_SUM_Q_MAX: u64 = 100_000;

/// Largest cell count accepted by the k-dimensional transform table.
pub const TRANSFORM_GRID_MAX: u64 = 1_000_000;

/// Direct complex exponential sum defining the family, rounded with a
/// residue check. The modified family has no exponential-sum definition.
pub fn exp_sum(family: SumFamily, q: u64, n: u64) -> Result<i128> {
    let (re, im) = exp_sum_complex(family, q, n)?;
    let rounded = re.round();
    if im.abs() >= ROUNDING_TOLERANCE || (re - rounded).abs() >= ROUNDING_TOLERANCE {
        return Err(Error::precision(format!(
            "exp_sum({}, {q}, {n}) = {re} + {im}i is not a near-integer real",
            family.name()
        )));
    }
    Ok(rounded as i128)
}

/// Raw complex value of the exponential sum, compensated componentwise.
pub fn exp_sum_complex(family: SumFamily, q: u64, n: u64) -> Result<(f64, f64)> {
    if q == 0 || n == 0 {
        return Err(Error::domain("exp_sum requires q, n >= 1"));
    }
    if q > EXP_SUM_Q_MAX {
        return Err(Error::resource(format!(
            "exp_sum bound is q <= {EXP_SUM_Q_MAX}"
        )));
    }
    let keep = |k: u64| -> Result<bool> {
        Ok(match family {
            SumFamily::Classical => gcd(k, q) == 1,
            SumFamily::Unitary => semi_unitary_gcd(k, q)? == 1,
            SumFamily::BiUnitary => unitary_gcd_kary(&[k, q])? == 1,
            SumFamily::ModifiedUnitary => {
                return Err(Error::domain(
                    "the modified family is defined by its divisor-sum recurrence, \
                     not an exponential sum",
                ))
            }
        })
    };
    let mut re = Kahan::new();
    let mut im = Kahan::new();
    for k in 1..=q {
        if !keep(k)? {
            continue;
        }
        let theta =
            std::f64::consts::TAU * ((k as u128 * n as u128) % q as u128) as f64 / q as f64;
        re.add(theta.cos());
        im.add(theta.sin());
    }
    Ok((re.value(), im.value()))
}

/// Divisor-sum closed form (first row of the comparison table):
/// classical sums d mu(q/d) over d | (n,q), unitary over d || (n,q)_*,
/// modified over d || (n,q)_{**}.
///
/// The unitary sum runs over the *unitary* divisors of (n,q)_*: the index
/// set is { d : d | n, d || q }, which equals { d : d || (n,q)_* }. Summing
/// over all divisors of (n,q)_* instead breaks at q = n = 4 (giving 1 where
/// the exponential sum, the prime-power rule and the Hoelder form all give
/// phi*(4) = 3).
pub fn divisor_sum_form(family: SumFamily, q: u64, n: u64) -> Result<i128> {
    if q == 0 || n == 0 {
        return Err(Error::domain("divisor_sum_form requires q, n >= 1"));
    }
    let mut acc: i128 = 0;
    match family {
        SumFamily::Classical => {
            let g = gcd(n, q);
            for d in all_divisors(g)? {
                acc += d as i128 * mobius(q / d)? as i128;
            }
        }
        SumFamily::Unitary => {
            let g = semi_unitary_gcd(n, q)?;
            for d in unitary_divisors(g)? {
                acc += d as i128 * mobius_star(q / d)? as i128;
            }
        }
        SumFamily::ModifiedUnitary => {
            let g = unitary_gcd_kary(&[n, q])?;
            for d in unitary_divisors(g)? {
                acc += d as i128 * mobius_star(q / d)? as i128;
            }
        }
        SumFamily::BiUnitary => {
            return Err(Error::domain("no divisor-sum form for the bi-unitary family"))
        }
    }
    Ok(acc)
}

/// Hoelder-type closed form (second row of the comparison table).
pub fn holder_form(family: SumFamily, q: u64, n: u64) -> Result<i128> {
    if q == 0 || n == 0 {
        return Err(Error::domain("holder_form requires q, n >= 1"));
    }
    let (tot_q, g, tot_is_unitary) = match family {
        SumFamily::Classical => (
            crate::special::jordan_phi_exact(1, q)?,
            gcd(n, q),
            false,
        ),
        SumFamily::Unitary => (phi_star(q)?, semi_unitary_gcd(n, q)?, true),
        SumFamily::ModifiedUnitary => (phi_star(q)?, unitary_gcd_kary(&[n, q])?, true),
        SumFamily::BiUnitary => {
            return Err(Error::domain("no Hoelder form for the bi-unitary family"))
        }
    };
    let m = q / g;
    let (mu_m, tot_m) = if tot_is_unitary {
        (mobius_star(m)?, phi_star(m)?)
    } else {
        (mobius(m)?, crate::special::jordan_phi_exact(1, m)?)
    };
    let num = tot_q * mu_m as i128;
    if num % tot_m != 0 {
        return Err(Error::precision(format!(
            "Hoelder quotient not integral for {} q={q} n={n}",
            family.name()
        )));
    }
    Ok(num / tot_m)
}

/// Exhaustively verify the defining recurrence
/// `sum_{d || q} c~_d(n) = q if q || n else 0` on a rectangle; returns the
/// first counterexample if any.
pub fn ctilde_recurrence_check(q_bound: u64, n_bound: u64) -> Result<Option<(u64, u64)>> {
    for q in 1..=q_bound {
        let uq = unitary_divisors(q)?;
        for n in 1..=n_bound {
            let lhs: i128 = uq
                .iter()
                .map(|&d| crate::ramanujan::c_tilde(d, n))
                .sum::<Result<i128>>()?;
            let rhs = if crate::factor::is_unitary_divisor(q, n) {
                q as i128
            } else {
                0
            };
            if lhs != rhs {
                return Ok(Some((q, n)));
            }
        }
    }
    Ok(None)
}

/// Point value of the k-dimensional unitary Moebius transform
/// `(mu*_k x f)(a_1, ..., a_k)`, by direct enumeration of unitary divisors
/// in every coordinate.
pub fn mu_star_k_transform_at(f: &dyn Fn(&[u64]) -> f64, point: &[u64]) -> Result<f64> {
    if point.is_empty() || point.contains(&0) {
        return Err(Error::domain("transform point must be positive"));
    }
    let divs: Vec<Vec<u64>> = point
        .iter()
        .map(|&a| unitary_divisors(a))
        .collect::<Result<_>>()?;
    let mut idx = vec![0usize; point.len()];
    let mut args = vec![0u64; point.len()];
    let mut acc = Kahan::new();
    loop {
        let mut sign = 1i64;
        for (i, &a) in point.iter().enumerate() {
            let d = divs[i][idx[i]];
            args[i] = d;
            sign *= mobius_star(a / d)?;
        }
        acc.add(sign as f64 * f(&args));
        // Odometer over the divisor lists.
        let mut i = 0;
        loop {
            idx[i] += 1;
            if idx[i] < divs[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
            if i == point.len() {
                return Ok(acc.value());
            }
        }
    }
}

/// Table of `(mu*_k x f)` over the full grid `1..=bounds[i]` per coordinate.
pub fn mu_star_k_transform(
    f: &dyn Fn(&[u64]) -> f64,
    bounds: &[u64],
) -> Result<Vec<(Vec<u64>, f64)>> {
    if bounds.is_empty() || bounds.contains(&0) {
        return Err(Error::domain("transform bounds must be positive"));
    }
    let cells: u128 = bounds.iter().map(|&b| b as u128).product();
    if cells > TRANSFORM_GRID_MAX as u128 {
        return Err(Error::resource(format!(
            "transform grid {cells} cells exceeds {TRANSFORM_GRID_MAX}"
        )));
    }
    let mut point = vec![1u64; bounds.len()];
    let mut out = Vec::with_capacity(cells as usize);
    loop {
        out.push((point.clone(), mu_star_k_transform_at(f, &point)?));
        let mut i = 0;
        loop {
            point[i] += 1;
            if point[i] <= bounds[i] {
                break;
            }
            point[i] = 1;
            i += 1;
            if i == bounds.len() {
                return Ok(out);
            }
        }
    }
}

/// Greatest common unitary divisor by intersecting unitary divisor sets.
pub fn brute_unitary_gcd(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::domain("unitary gcd of an empty tuple"));
    }
    let mut common: Vec<u64> = unitary_divisors(values[0])?;
    for &v in &values[1..] {
        let next = unitary_divisors(v)?;
        common.retain(|d| next.binary_search(d).is_ok());
    }
    Ok(*common.last().expect("1 is always a common unitary divisor"))
}
