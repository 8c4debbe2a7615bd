//! Prime sieve, factorization and divisor enumeration.
//!
//! Everything multiplicative in this crate is evaluated through the canonical
//! prime-power decomposition produced here. A process-wide prime cache is
//! grown lazily to the largest bound requested so far; factorization uses
//! trial division by cached primes, then deterministic Miller-Rabin and
//! Brent's rho for any remaining 64-bit cofactor.

use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

/// Largest bound accepted by [`sieve_primes`]; the bit sieve for this limit
/// costs 125 MB.
pub const MAX_SIEVE_LIMIT: u64 = 1_000_000_000;

/// Largest table size accepted by [`FactorSieve::new`] (4 bytes per entry).
pub const MAX_FACTOR_SIEVE_LIMIT: u64 = 20_000_000;

/// Trial division uses cached primes up to this bound before switching to
/// probabilistic-free 64-bit primality testing and rho splitting.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Canonical prime-power decomposition of a positive integer.
///
/// `factors` lists `(prime, exponent)` pairs with primes strictly ascending;
/// it is empty exactly when `value == 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub(crate) fn from_parts(value: u64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert_eq!(
            factors
                .iter()
                .fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e)),
            value as u128
        );
        Factorization { value, factors }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Exponent of `p` in the factored value (0 when `p` does not divide it).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

struct PrimeCache {
    limit: u64,
    primes: Arc<Vec<u64>>,
}

static PRIME_CACHE: RwLock<Option<PrimeCache>> = RwLock::new(None);

fn sieve_to(limit: u64) -> Vec<u64> {
    // Odd-only bit sieve.
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let half = (n - 1) / 2; // count of odd numbers 3,5,..,<=n
    let mut bits = vec![0u64; half / 64 + 1];
    let idx_of = |v: usize| (v - 3) / 2;
    let mut i: usize = 3;
    while i * i <= n {
        if bits[idx_of(i) / 64] & (1u64 << (idx_of(i) % 64)) == 0 {
            let mut j = i * i;
            while j <= n {
                let k = idx_of(j);
                bits[k / 64] |= 1u64 << (k % 64);
                j += 2 * i;
            }
        }
        i += 2;
    }
    let mut primes = Vec::with_capacity(if n > 16 {
        n / ((n as f64).ln() as usize - 1).max(1)
    } else {
        8
    });
    primes.push(2);
    let mut v = 3usize;
    while v <= n {
        let k = idx_of(v);
        if bits[k / 64] & (1u64 << (k % 64)) == 0 {
            primes.push(v as u64);
        }
        v += 2;
    }
    primes
}

/// Run `f` over the shared ascending prime list, growing the cache so it
/// covers at least `limit`.
pub(crate) fn with_primes<R>(limit: u64, f: impl FnOnce(&[u64]) -> R) -> Result<R> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::resource(format!(
            "sieve limit {limit} exceeds budget {MAX_SIEVE_LIMIT}"
        )));
    }
    {
        let guard = PRIME_CACHE.read().unwrap();
        if let Some(cache) = guard.as_ref() {
            if cache.limit >= limit {
                let primes = Arc::clone(&cache.primes);
                drop(guard);
                let end = primes.partition_point(|&p| p <= limit);
                return Ok(f(&primes[..end]));
            }
        }
    }
    let mut guard = PRIME_CACHE.write().unwrap();
    let need_regrow = guard.as_ref().is_none_or(|c| c.limit < limit);
    if need_regrow {
        // Round the target up so repeated slightly-larger requests do not
        // re-sieve every time.
        let target = limit.max(1 << 16).next_power_of_two().min(MAX_SIEVE_LIMIT);
        *guard = Some(PrimeCache {
            limit: target,
            primes: Arc::new(sieve_to(target)),
        });
    }
    let primes = Arc::clone(&guard.as_ref().unwrap().primes);
    drop(guard);
    let end = primes.partition_point(|&p| p <= limit);
    Ok(f(&primes[..end]))
}

/// All primes `<= limit`, ascending.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    with_primes(limit, |ps| ps.to_vec())
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This witness set decides primality for every n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_split(n: u64) -> u64 {
    // Brent's cycle-finding variant; n must be odd, composite, not a prime
    // power ruled out by callers' trial division up to 10^6.
    debug_assert!(n > 1 && n % 2 == 1 && !is_prime(n));
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn factor_large(n: u64, out: &mut Vec<(u64, u32)>) {
    // n has no prime factor <= TRIAL_LIMIT.
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push((n, 1));
        return;
    }
    let d = rho_split(n);
    let (a, b) = (d, n / d);
    factor_large(a, out);
    factor_large(b, out);
}

/// Canonical factorization of `n >= 1`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize(0) is undefined"));
    }
    if n == 1 {
        return Ok(Factorization::from_parts(1, Vec::new()));
    }
    let trial_to = isqrt(n).min(TRIAL_LIMIT);
    let mut rem = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    with_primes(trial_to.max(2), |primes| {
        for &p in primes {
            if p * p > rem {
                break;
            }
            if rem.is_multiple_of(p) {
                let mut e = 0u32;
                while rem.is_multiple_of(p) {
                    rem /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
        }
    })?;
    if rem > 1 {
        if rem <= TRIAL_LIMIT * TRIAL_LIMIT && isqrt(n) <= TRIAL_LIMIT {
            // Trial division was exhaustive up to sqrt(n), so rem is prime.
            factors.push((rem, 1));
        } else {
            let mut tail: Vec<(u64, u32)> = Vec::new();
            factor_large(rem, &mut tail);
            tail.sort_unstable();
            // Merge equal primes produced by rho splitting.
            for (p, e) in tail {
                if let Some(last) = factors.last_mut() {
                    if last.0 == p {
                        last.1 += e;
                        continue;
                    }
                }
                factors.push((p, e));
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization::from_parts(n, factors))
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).is_none_or(|rr| rr > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|rr| rr <= n) {
        r += 1;
    }
    r
}

/// Number of distinct prime divisors of `n`.
pub fn omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.omega())
}

/// Ascending list of the unitary divisors of `n` (d | n with gcd(d, n/d) = 1).
///
/// There are exactly `2^omega(n)` of them: each prime power of `n` is taken
/// entirely or not at all.
pub fn unitary_divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    Ok(unitary_divisors_of(&f))
}

pub(crate) fn unitary_divisors_of(f: &Factorization) -> Vec<u64> {
    let mut divs: Vec<u64> = vec![1];
    for &(p, e) in f.factors() {
        let pe = pow_u64(p, e);
        let len = divs.len();
        for i in 0..len {
            divs.push(divs[i] * pe);
        }
    }
    divs.sort_unstable();
    divs
}

/// Ascending list of all divisors of `n`.
pub fn all_divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut divs: Vec<u64> = vec![1];
    for &(p, e) in f.factors() {
        let len = divs.len();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            for i in 0..len {
                divs.push(divs[i] * pe);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// `d || n`: d divides n and is coprime to the cofactor.
pub fn is_unitary_divisor(d: u64, n: u64) -> bool {
    d != 0 && n.is_multiple_of(d) && gcd_u64(d, n / d) == 1
}

pub(crate) fn pow_u64(p: u64, e: u32) -> u64 {
    p.pow(e)
}

/// Smallest-prime-factor table for bulk factorization of consecutive
/// integers; used by the series evaluators and the mean-value scan where
/// per-value trial division would dominate the runtime.
pub struct FactorSieve {
    spf: Vec<u32>,
}

impl FactorSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > MAX_FACTOR_SIEVE_LIMIT {
            return Err(Error::resource(format!(
                "factor sieve limit {limit} exceeds budget {MAX_FACTOR_SIEVE_LIMIT}"
            )));
        }
        let n = limit.max(1) as usize;
        let mut spf = vec![0u32; n + 1];
        let mut i = 2usize;
        while i <= n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        Ok(FactorSieve { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Factorization of `n <= limit` by repeated smallest-prime division.
    pub fn factorize(&self, n: u64) -> Factorization {
        assert!(n >= 1 && n <= self.limit(), "FactorSieve range");
        let mut rem = n as usize;
        let mut factors = Vec::new();
        while rem > 1 {
            let p = self.spf[rem] as u64;
            let mut e = 0u32;
            while (rem as u64).is_multiple_of(p) {
                rem /= p as usize;
                e += 1;
            }
            factors.push((p, e));
        }
        Factorization::from_parts(n, factors)
    }

    /// Visit `(prime, exponent, prime^exponent)` for each prime power of `n`.
    pub fn for_each_prime_power(&self, n: u64, mut visit: impl FnMut(u64, u32, u64)) {
        assert!(n >= 1 && n <= self.limit(), "FactorSieve range");
        let mut rem = n as usize;
        while rem > 1 {
            let p = self.spf[rem] as u64;
            let mut e = 0u32;
            let mut pe = 1u64;
            while (rem as u64).is_multiple_of(p) {
                rem /= p as usize;
                e += 1;
                pe *= p;
            }
            visit(p, e, pe);
        }
    }
}
