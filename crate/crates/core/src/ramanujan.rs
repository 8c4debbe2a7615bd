//! The four Ramanujan-sum families and the absolute-value divisor-sum
//! identities.
//!
//! The three multiplicative families (classical c, unitary c*, modified
//! unitary c-tilde) are evaluated by their prime-power rules, which is
//! O(omega(q)) per value and is the inner loop of the series evaluators.
//! Divisor-sum, Hoelder and exponential-sum routes live in [`crate::oracle`]
//! and are compared against these fast paths by the verification suites.
//! The bi-unitary family has no closed form and is summed directly.

use crate::arith::unitary_gcd_kary;
use crate::error::{Error, Result};
use crate::factor::{factorize, Factorization};
use crate::util::Kahan;

/// Largest q accepted by the direct bi-unitary summation.
pub const BIUNITARY_Q_MAX: u64 = 100_000;

/// Residue tolerance: the exponential sums are exact integers, so anything
/// further than this from an integer (or off the real axis) is an error.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

/// Selector for the divisor system, gcd analogue and Moebius analogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumFamily {
    Classical,
    Unitary,
    ModifiedUnitary,
    BiUnitary,
}

impl SumFamily {
    pub const ALL: [SumFamily; 4] = [
        SumFamily::Classical,
        SumFamily::Unitary,
        SumFamily::ModifiedUnitary,
        SumFamily::BiUnitary,
    ];

    /// The three families that are multiplicative in q.
    pub const MULTIPLICATIVE: [SumFamily; 3] = [
        SumFamily::Classical,
        SumFamily::Unitary,
        SumFamily::ModifiedUnitary,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SumFamily::Classical => "classical",
            SumFamily::Unitary => "unitary",
            SumFamily::ModifiedUnitary => "modified-unitary",
            SumFamily::BiUnitary => "bi-unitary",
        }
    }
}

/// Classical Ramanujan sum c_q(n) (Kluyver's divisor-sum value), computed by
/// the prime-power rule: c_{p^e}(n) = p^e - p^{e-1} if p^e | n,
/// -p^{e-1} if p^{e-1} || n, 0 otherwise.
pub fn c_classical(q: u64, n: u64) -> Result<i128> {
    let fq = factorize(q)?;
    check_n(n)?;
    Ok(c_classical_of(&fq, n))
}

pub(crate) fn c_classical_of(fq: &Factorization, n: u64) -> i128 {
    let mut acc: i128 = 1;
    for &(p, e) in fq.factors() {
        let pe = p.pow(e);
        let pe1 = pe / p;
        if n.is_multiple_of(pe) {
            acc *= (pe - pe1) as i128;
        } else if n.is_multiple_of(pe1) {
            acc *= -(pe1 as i128);
        } else {
            return 0;
        }
    }
    acc
}

/// Unitary Ramanujan sum c*_q(n): c*_{p^e}(n) = p^e - 1 if p^e | n, else -1.
pub fn c_unitary(q: u64, n: u64) -> Result<i128> {
    let fq = factorize(q)?;
    check_n(n)?;
    Ok(c_unitary_of(&fq, n))
}

pub(crate) fn c_unitary_of(fq: &Factorization, n: u64) -> i128 {
    let mut acc: i128 = 1;
    for &(p, e) in fq.factors() {
        let pe = p.pow(e);
        acc *= if n.is_multiple_of(pe) { (pe - 1) as i128 } else { -1 };
    }
    acc
}

/// Modified unitary Ramanujan sum: c~_{p^e}(n) = p^e - 1 if p^e || n, else -1,
/// extended multiplicatively in q.
pub fn c_tilde(q: u64, n: u64) -> Result<i128> {
    let fq = factorize(q)?;
    check_n(n)?;
    Ok(c_tilde_of(&fq, n))
}

pub(crate) fn c_tilde_of(fq: &Factorization, n: u64) -> i128 {
    let mut acc: i128 = 1;
    for &(p, e) in fq.factors() {
        let pe = p.pow(e);
        // p^e || n  <=>  p^e | n and p^{e+1} does not divide n.
        acc *= if n.is_multiple_of(pe) && !(n / pe).is_multiple_of(p) {
            (pe - 1) as i128
        } else {
            -1
        };
    }
    acc
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::domain("Ramanujan sums require n >= 1"))
    } else {
        Ok(())
    }
}

/// Bi-unitary Ramanujan sum c**_q(n), summed directly over
/// k <= q with (k, q)_{**} = 1 and rounded to the nearest integer.
///
/// The value is genuinely complex for some (q, n) (the index set is not
/// symmetric under k -> q - k); a residue off the real axis or away from an
/// integer by more than [`ROUNDING_TOLERANCE`] is reported as a precision
/// error rather than rounded through.
pub fn c_biunitary(q: u64, n: u64) -> Result<i128> {
    let (re, im) = c_biunitary_complex(q, n)?;
    let rounded = re.round();
    if im.abs() >= ROUNDING_TOLERANCE || (re - rounded).abs() >= ROUNDING_TOLERANCE {
        return Err(Error::precision(format!(
            "c**_{q}({n}) = {re} + {im}i is not a near-integer real"
        )));
    }
    Ok(rounded as i128)
}

/// Raw complex value of the bi-unitary exponential sum.
pub fn c_biunitary_complex(q: u64, n: u64) -> Result<(f64, f64)> {
    check_n(n)?;
    if q == 0 {
        return Err(Error::domain("c** requires q >= 1"));
    }
    if q > BIUNITARY_Q_MAX {
        return Err(Error::resource(format!(
            "bi-unitary summation bound is q <= {BIUNITARY_Q_MAX}"
        )));
    }
    let mut re = Kahan::new();
    let mut im = Kahan::new();
    for k in 1..=q {
        if unitary_gcd_kary(&[k, q])? != 1 {
            continue;
        }
        let theta = std::f64::consts::TAU * ((k as u128 * n as u128) % q as u128) as f64
            / q as f64;
        re.add(theta.cos());
        im.add(theta.sin());
    }
    Ok((re.value(), im.value()))
}

/// Bi-unitary Euler function phi**(q) = c**_q(q), counted directly.
pub fn phi_star_star(q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::domain("phi** requires q >= 1"));
    }
    if q > BIUNITARY_Q_MAX {
        return Err(Error::resource(format!(
            "phi** counting bound is q <= {BIUNITARY_Q_MAX}"
        )));
    }
    let mut count = 0u64;
    for k in 1..=q {
        if unitary_gcd_kary(&[k, q])? == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Family-dispatched evaluation; lets verification suites iterate the
/// comparison table uniformly.
pub fn c_value(family: SumFamily, q: u64, n: u64) -> Result<i128> {
    match family {
        SumFamily::Classical => c_classical(q, n),
        SumFamily::Unitary => c_unitary(q, n),
        SumFamily::ModifiedUnitary => c_tilde(q, n),
        SumFamily::BiUnitary => c_biunitary(q, n),
    }
}

/// Closed form of `sum_{d || q} |c~_d(n)| = 2^omega(q/u) * u` with
/// `u = (n, q)_{**}`.
pub fn abs_ctilde_divisor_sum(q: u64, n: u64) -> Result<i128> {
    check_n(n)?;
    let u = unitary_gcd_kary(&[n, q])?;
    let cofactor_omega = factorize(q / u)?.omega();
    (1i128 << cofactor_omega)
        .checked_mul(u as i128)
        .ok_or_else(|| Error::domain("overflow in abs divisor sum"))
}
