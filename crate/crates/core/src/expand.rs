//! Expansion coefficients and the truncated multi-dimensional series
//! evaluator with convergence reporting.
//!
//! Series shape: for a k-tuple (q_1, ..., q_k) with Q = lcm, the weight of
//! c_{q_1}(n_1) ... c_{q_k}(n_k) depends only on Q, with one correction to
//! the closed forms: for the unitary-divisor families the weight is zero
//! unless every q_i is a *unitary* divisor of Q. (The condition
//! "q_1 || n, ..., q_k || n" collapses to "Q || n" only for such tuples;
//! for any other tuple no n satisfies it, so the coefficient sum is empty.
//! The tuple (2, 4) is the smallest example: nothing satisfies 2 || n and
//! 4 || n simultaneously.) The truncated sums converge to the exact left
//! sides only with this correction in place; the k-dimensional grid
//! coefficients of [`coeff_generic_grid`] vanish on such tuples
//! automatically, which the test suite checks. Ordinary divisibility is
//! monotone, so the classical family needs no correction.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::analytic::{euler_product_shifted, zeta_real};
use crate::arith::{gcd, gcd_kary, lcm_kary, unitary_gcd_kary};
use crate::error::{Error, Result};
use crate::factor::{factorize, is_unitary_divisor, FactorSieve, Factorization};
use crate::oracle::mu_star_k_transform_at;
use crate::ramanujan::{c_classical_of, c_tilde_of, c_unitary_of, SumFamily};
use crate::special::{
    jordan_phi_of, omega_power, sigma_classical, sigma_star, sigma_star_s, unitary_jordan_phi,
};
use crate::util::Kahan;

/// Default cap on the number of q-tuples a single evaluation may visit.
pub const DEFAULT_TERM_BUDGET: u64 = 10_000_000;

/// The one-variable function g whose value at the family gcd is expanded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GChoice {
    /// g(n) = sigma*_s(n) / n^s; s = 0 is the tau* expansion.
    SigmaStar { s: f64 },
    /// g(n) = phi*_s(n) / n^s.
    PhiStar { s: f64 },
    /// g(n) = m^omega(n), m >= 2 (requires k >= 2).
    OmegaPower { m: u64 },
    /// g(n) = sigma(n) / n, for the classical and unitary baselines.
    SigmaClassical,
}

/// A fully specified truncated expansion evaluation.
#[derive(Debug, Clone)]
pub struct ExpansionSpec {
    pub family: SumFamily,
    pub g: GChoice,
    pub k: usize,
    pub n_tuple: Vec<u64>,
    pub q_max: u64,
    /// Include partial sums at q_max/4 and q_max/2, not only q_max.
    pub with_checkpoints: bool,
    /// Evaluate coordinate rows in parallel. Reassociates the compensated
    /// sums, so results match serial mode only to ~1e-12 relative.
    pub parallel: bool,
    pub term_budget: u64,
}

impl ExpansionSpec {
    pub fn new(family: SumFamily, g: GChoice, n_tuple: Vec<u64>, q_max: u64) -> Self {
        ExpansionSpec {
            family,
            g,
            k: n_tuple.len(),
            n_tuple,
            q_max,
            with_checkpoints: false,
            parallel: false,
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n_tuple.len() != self.k {
            return Err(Error::domain("n_tuple length must equal k >= 1"));
        }
        if self.n_tuple.contains(&0) {
            return Err(Error::domain("n_tuple entries must be positive"));
        }
        if self.q_max == 0 {
            return Err(Error::domain("q_max must be >= 1"));
        }
        let terms = (self.q_max as u128).pow(self.k as u32);
        if terms > self.term_budget as u128 {
            return Err(Error::resource(format!(
                "q_max^k = {terms} tuples exceeds the budget of {}",
                self.term_budget
            )));
        }
        match self.family {
            SumFamily::BiUnitary => {
                return Err(Error::domain(
                    "no expansion theory exists for the bi-unitary family",
                ))
            }
            SumFamily::Classical | SumFamily::Unitary => {
                if self.g != GChoice::SigmaClassical {
                    return Err(Error::domain(
                        "the classical/unitary baselines expand sigma(gcd)/gcd only",
                    ));
                }
            }
            SumFamily::ModifiedUnitary => match self.g {
                GChoice::SigmaClassical => {
                    return Err(Error::domain(
                        "sigma-classical belongs to the classical/unitary baselines",
                    ))
                }
                GChoice::SigmaStar { s } | GChoice::PhiStar { s } => {
                    let t = s + self.k as f64;
                    if t.is_nan() || t <= 1.0 {
                        return Err(Error::domain(format!(
                            "requires s + k > 1 (s={s}, k={})",
                            self.k
                        )));
                    }
                }
                GChoice::OmegaPower { m } => {
                    if m < 2 {
                        return Err(Error::domain("omega-power requires m >= 2"));
                    }
                    if self.k < 2 {
                        return Err(Error::domain("omega-power requires k >= 2"));
                    }
                }
            },
        }
        Ok(())
    }
}

/// One truncation checkpoint: the partial sum over the box  q_i <= q_max
/// and its recomputed distance from the exact left side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub q_max: u64,
    pub partial_sum: f64,
    pub abs_error: f64,
}

/// Outcome of a truncated expansion evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub lhs_exact: f64,
    /// Ordered by increasing q_max; the last entry is the requested box.
    pub checkpoints: Vec<Checkpoint>,
    /// Rigorous bound on the omitted tail, emitted for k = 1 only.
    pub tail_bound_k1: Option<f64>,
    /// |S(q_max) - S(q_max/2)|, an empirical (not rigorous) convergence
    /// estimate, emitted for k >= 2.
    pub doubling_estimate: Option<f64>,
    pub terms_evaluated: u64,
    pub wall_time: Duration,
}

impl ConvergenceReport {
    pub fn final_checkpoint(&self) -> &Checkpoint {
        self.checkpoints.last().expect("at least one checkpoint")
    }
}

/// Exact left side of the expansion: g evaluated at the family's gcd.
pub fn lhs_value(spec: &ExpansionSpec) -> Result<f64> {
    spec.validate()?;
    match spec.family {
        SumFamily::Classical | SumFamily::Unitary => {
            // Both baselines expand sigma of the ordinary gcd.
            let u = gcd_kary(&spec.n_tuple)?;
            Ok(sigma_classical(u)? as f64 / u as f64)
        }
        SumFamily::ModifiedUnitary => {
            let u = unitary_gcd_kary(&spec.n_tuple)?;
            match spec.g {
                GChoice::SigmaStar { s } => Ok(sigma_star_s(s, u)? / (u as f64).powf(s)),
                GChoice::PhiStar { s } => Ok(unitary_jordan_phi(s, u)? / (u as f64).powf(s)),
                GChoice::OmegaPower { m } => Ok(omega_power(m, u)? as f64),
                GChoice::SigmaClassical => unreachable!("rejected by validate"),
            }
        }
        SumFamily::BiUnitary => unreachable!("rejected by validate"),
    }
}

/// Shared per-run constants and the per-Q coefficient computation.
struct CoeffEngine {
    family: SumFamily,
    g: GChoice,
    /// Coefficient decay exponent: s + k for the modified family, k + 1 for
    /// the baselines.
    t: f64,
    zeta: f64,
    /// Euler-product prefactor of the whole series (1 for families without
    /// one).
    global_prod: f64,
    k: usize,
}

impl CoeffEngine {
    fn new(family: SumFamily, g: GChoice, k: usize) -> Result<Self> {
        let t = match (family, g) {
            (SumFamily::Classical | SumFamily::Unitary, _) => (k + 1) as f64,
            (_, GChoice::SigmaStar { s } | GChoice::PhiStar { s }) => s + k as f64,
            (_, GChoice::OmegaPower { .. }) => k as f64,
            (_, GChoice::SigmaClassical) => unreachable!(),
        };
        let zeta = zeta_real(t)?.value;
        let global_prod = match (family, g) {
            (SumFamily::ModifiedUnitary, GChoice::PhiStar { .. }) => {
                euler_product_shifted(t, -2.0)?.value
            }
            (SumFamily::ModifiedUnitary, GChoice::OmegaPower { m }) => {
                euler_product_shifted(t, m as f64 - 2.0)?.value
            }
            _ => 1.0,
        };
        Ok(CoeffEngine {
            family,
            g,
            t,
            zeta,
            global_prod,
            k,
        })
    }

    /// Closed-form coefficient at Q (tuple compatibility is the caller's
    /// concern).
    fn coeff_of(&self, fq: &Factorization) -> f64 {
        let q = fq.value() as f64;
        match (self.family, self.g) {
            (SumFamily::Classical, _) => self.zeta / q.powf(self.t),
            (SumFamily::Unitary, _) => {
                self.zeta * jordan_phi_of(self.t, fq) / q.powf(2.0 * self.t)
            }
            (_, GChoice::SigmaStar { .. }) => {
                self.zeta * jordan_phi_of(self.t, fq) / q.powf(2.0 * self.t)
            }
            (_, GChoice::PhiStar { .. }) => {
                let mut dq = 1.0;
                for &(p, _) in fq.factors() {
                    dq *= 1.0 - 2.0 * (p as f64).powf(-self.t);
                }
                let mu_star = if fq.omega().is_multiple_of(2) { 1.0 } else { -1.0 };
                ((self.zeta * self.global_prod) * mu_star * jordan_phi_of(self.t, fq))
                    / (q.powf(2.0 * self.t) * dq)
            }
            (_, GChoice::OmegaPower { m }) => {
                let a = m as f64 - 2.0;
                let mut dq = 1.0;
                for &(p, _) in fq.factors() {
                    dq *= 1.0 + a * (p as f64).powf(-self.t);
                }
                let mpow = (m as f64 - 1.0).powi(fq.omega() as i32);
                ((self.zeta * self.global_prod) * jordan_phi_of(self.t, fq) * mpow)
                    / (q.powf(2.0 * self.t) * dq)
            }
            (_, GChoice::SigmaClassical) => unreachable!(),
        }
    }

    /// Rigorous k=1 tail bound past `q_max`: the coefficient envelope
    /// zeta(t)/q^t times the family's uniform bound on |c_q(n)|.
    fn tail_bound(&self, q_max: u64, n: u64) -> Result<f64> {
        debug_assert_eq!(self.k, 1);
        let c_bound = match self.family {
            // |c_q(n)| <= sigma((n,q)) <= sigma(n) and likewise for c*.
            SumFamily::Classical | SumFamily::Unitary => sigma_classical(n)? as f64,
            // |c~_q(n)| <= sigma*((n,q)_{**}) <= sigma*(n).
            SumFamily::ModifiedUnitary => sigma_star(n)? as f64,
            SumFamily::BiUnitary => unreachable!(),
        };
        let s = self.t - 1.0;
        Ok(self.zeta * c_bound * (q_max as f64).powf(-s) / s)
    }
}

/// Closed-form per-Q coefficient of the modified-family expansions
/// (series prefactors included).
pub fn coeff_modified(g: GChoice, k: usize, q: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::domain("coefficient requires Q >= 1"));
    }
    let probe = ExpansionSpec::new(SumFamily::ModifiedUnitary, g, vec![1; k.max(1)], 1);
    probe.validate()?;
    let engine = CoeffEngine::new(SumFamily::ModifiedUnitary, g, k)?;
    Ok(engine.coeff_of(&factorize(q)?))
}

/// Closed-form per-Q coefficient of the classical / unitary sigma baselines.
pub fn coeff_baseline(family: SumFamily, k: usize, q: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::domain("coefficient requires Q >= 1"));
    }
    if k == 0 {
        return Err(Error::domain("coefficient requires k >= 1"));
    }
    match family {
        SumFamily::Classical | SumFamily::Unitary => {
            let engine = CoeffEngine::new(family, GChoice::SigmaClassical, k)?;
            Ok(engine.coeff_of(&factorize(q)?))
        }
        _ => Err(Error::domain("baseline coefficients cover c and c* only")),
    }
}

/// Truncated generic coefficient of the one-variable expansion theorem:
/// `(1/Q^k) sum_{m <= M, (m, Q) = 1} mu_g(m Q) / m^k`, where `mu_g` is the
/// unitary Moebius transform of g.
///
/// Truncation error is the caller's concern, and so is convergence: the
/// expansion machinery assumes `sum_n 2^{k omega(n)} |mu_g(n)| / n^k`
/// converges, which is not machine-checkable from a callback. Supply
/// `mu_g` analytically, or point at [`crate::oracle::mu_star_k_transform_at`]
/// to compute it from g by enumeration.
pub fn coeff_generic_one_var(
    mu_g: &(dyn Fn(u64) -> f64 + Sync),
    k: usize,
    q: u64,
    m_trunc: u64,
) -> Result<f64> {
    if q == 0 || k == 0 || m_trunc == 0 {
        return Err(Error::domain("coefficient requires Q, k, M >= 1"));
    }
    let mut acc = Kahan::new();
    for m in 1..=m_trunc {
        if gcd(m, q) != 1 {
            continue;
        }
        acc.add(mu_g(m * q) / (m as f64).powi(k as i32));
    }
    Ok(acc.value() / (q as f64).powi(k as i32))
}

/// Truncated generic coefficient of the k-variable expansion theorem, by
/// direct grid summation of the k-dimensional unitary Moebius transform of
/// f over `m_i <= M`, `(m_i, q_i) = 1`.
pub fn coeff_generic_grid(
    f: &dyn Fn(&[u64]) -> f64,
    qs: &[u64],
    m_trunc: u64,
) -> Result<f64> {
    let k = qs.len();
    if k == 0 || qs.contains(&0) || m_trunc == 0 {
        return Err(Error::domain("coefficient requires positive q_i and M"));
    }
    let cells = (m_trunc as u128).pow(k as u32);
    if cells > crate::oracle::TRANSFORM_GRID_MAX as u128 {
        return Err(Error::resource(format!(
            "grid of {cells} cells exceeds {}",
            crate::oracle::TRANSFORM_GRID_MAX
        )));
    }
    let mut m = vec![1u64; k];
    let mut args = vec![0u64; k];
    let mut acc = Kahan::new();
    'grid: loop {
        let mut ok = true;
        let mut denom = 1.0f64;
        for i in 0..k {
            if gcd(m[i], qs[i]) != 1 {
                ok = false;
                break;
            }
            args[i] = m[i] * qs[i];
            denom *= args[i] as f64;
        }
        if ok {
            acc.add(mu_star_k_transform_at(f, &args)? / denom);
        }
        let mut i = 0;
        loop {
            m[i] += 1;
            if m[i] <= m_trunc {
                break;
            }
            m[i] = 1;
            i += 1;
            if i == k {
                break 'grid;
            }
        }
    }
    Ok(acc.value())
}

/// The coefficient attached to a concrete q-tuple, resolved through a per-Q
/// closed-form cache. Zero for unitary-family tuples that are not
/// coordinatewise unitary divisors of their lcm.
struct TupleCoeffs<'a> {
    engine: &'a CoeffEngine,
    memo: HashMap<u64, f64>,
}

impl<'a> TupleCoeffs<'a> {
    fn new(engine: &'a CoeffEngine) -> Self {
        TupleCoeffs {
            engine,
            memo: HashMap::new(),
        }
    }

    fn at(&mut self, qs: &[u64]) -> Result<f64> {
        let big_q = lcm_kary(qs)?;
        if self.engine.family != SumFamily::Classical
            && !qs.iter().all(|&q| is_unitary_divisor(q, big_q))
        {
            return Ok(0.0);
        }
        if let Some(&c) = self.memo.get(&big_q) {
            return Ok(c);
        }
        let c = self.engine.coeff_of(&factorize(big_q)?);
        self.memo.insert(big_q, c);
        Ok(c)
    }
}

fn c_value_of(family: SumFamily, fq: &Factorization, n: u64) -> f64 {
    match family {
        SumFamily::Classical => c_classical_of(fq, n) as f64,
        SumFamily::Unitary => c_unitary_of(fq, n) as f64,
        SumFamily::ModifiedUnitary => c_tilde_of(fq, n) as f64,
        SumFamily::BiUnitary => unreachable!(),
    }
}

/// Serial k=1 partial sum over q <= bound (lexicographic = ascending order).
fn sum_k1(
    engine: &CoeffEngine,
    sieve: &FactorSieve,
    n: u64,
    bound: u64,
    terms: &mut u64,
) -> f64 {
    let mut acc = Kahan::new();
    for q in 1..=bound {
        let fq = sieve.factorize(q);
        acc.add(engine.coeff_of(&fq) * c_value_of(engine.family, &fq, n));
        *terms += 1;
    }
    acc.value()
}

fn sum_k1_parallel(
    engine: &CoeffEngine,
    sieve: &FactorSieve,
    n: u64,
    bound: u64,
    terms: &mut u64,
) -> f64 {
    const CHUNK: u64 = 1 << 16;
    let chunks: Vec<(u64, u64)> = (0..)
        .map(|i| (i * CHUNK + 1, ((i + 1) * CHUNK).min(bound)))
        .take_while(|&(lo, _)| lo <= bound)
        .collect();
    let partials: Vec<f64> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = Kahan::new();
            for q in lo..=hi {
                let fq = sieve.factorize(q);
                acc.add(engine.coeff_of(&fq) * c_value_of(engine.family, &fq, n));
            }
            acc.value()
        })
        .collect();
    *terms += bound;
    let mut acc = Kahan::new();
    for p in partials {
        acc.add(p);
    }
    acc.value()
}

/// Serial k>=2 partial sum over the box q_i <= bound, tuples in
/// lexicographic order with the last coordinate innermost.
fn sum_box(
    coeffs: &mut TupleCoeffs,
    cvals: &[Vec<f64>],
    bound: u64,
    terms: &mut u64,
) -> Result<f64> {
    let k = cvals.len();
    let mut qs = vec![1u64; k];
    let mut acc = Kahan::new();
    'tuples: loop {
        let coeff = coeffs.at(&qs)?;
        *terms += 1;
        if coeff != 0.0 {
            let mut prod = coeff;
            for i in 0..k {
                prod *= cvals[i][qs[i] as usize];
            }
            acc.add(prod);
        }
        let mut i = k - 1;
        loop {
            qs[i] += 1;
            if qs[i] <= bound {
                break;
            }
            qs[i] = 1;
            if i == 0 {
                break 'tuples;
            }
            i -= 1;
        }
    }
    Ok(acc.value())
}

fn sum_box_parallel(
    engine: &CoeffEngine,
    cvals: &[Vec<f64>],
    bound: u64,
    terms: &mut u64,
) -> Result<f64> {
    let k = cvals.len();
    // Rows over the first coordinate; each row owns its own memo.
    let rows: Result<Vec<f64>> = (1..=bound)
        .into_par_iter()
        .map(|q1| {
            let mut coeffs = TupleCoeffs::new(engine);
            let mut qs = vec![1u64; k];
            qs[0] = q1;
            let mut acc = Kahan::new();
            'tuples: loop {
                let coeff = coeffs.at(&qs)?;
                if coeff != 0.0 {
                    let mut prod = coeff;
                    for i in 0..k {
                        prod *= cvals[i][qs[i] as usize];
                    }
                    acc.add(prod);
                }
                if k == 1 {
                    break;
                }
                let mut i = k - 1;
                loop {
                    qs[i] += 1;
                    if qs[i] <= bound {
                        break;
                    }
                    qs[i] = 1;
                    if i == 1 {
                        break 'tuples;
                    }
                    i -= 1;
                }
            }
            Ok(acc.value())
        })
        .collect();
    let rows = rows?;
    *terms += bound.pow(k as u32);
    let mut acc = Kahan::new();
    for r in rows {
        acc.add(r);
    }
    Ok(acc.value())
}

/// Evaluate a truncated expansion and report its convergence.
pub fn evaluate_expansion(spec: &ExpansionSpec) -> Result<ConvergenceReport> {
    spec.validate()?;
    let start = Instant::now();
    let lhs = lhs_value(spec)?;
    let engine = CoeffEngine::new(spec.family, spec.g, spec.k)?;

    let mut bounds: Vec<u64> = if spec.with_checkpoints {
        vec![spec.q_max / 4, spec.q_max / 2, spec.q_max]
    } else {
        vec![spec.q_max]
    };
    if spec.k >= 2 && spec.q_max >= 2 {
        bounds.push(spec.q_max / 2); // needed for the doubling estimate
    }
    bounds.retain(|&b| b >= 1);
    bounds.sort_unstable();
    bounds.dedup();

    let mut terms = 0u64;
    let mut partials: Vec<(u64, f64)> = Vec::with_capacity(bounds.len());

    if spec.k == 1 {
        let sieve = FactorSieve::new(spec.q_max)?;
        for &b in &bounds {
            let s = if spec.parallel {
                sum_k1_parallel(&engine, &sieve, spec.n_tuple[0], b, &mut terms)
            } else {
                sum_k1(&engine, &sieve, spec.n_tuple[0], b, &mut terms)
            };
            partials.push((b, s));
        }
    } else {
        // Per-coordinate c values for q <= q_max, shared by all boxes.
        let sieve = FactorSieve::new(spec.q_max)?;
        let cvals: Vec<Vec<f64>> = spec
            .n_tuple
            .iter()
            .map(|&n| {
                let mut v = vec![0.0f64; spec.q_max as usize + 1];
                for q in 1..=spec.q_max {
                    v[q as usize] = c_value_of(spec.family, &sieve.factorize(q), n);
                }
                v
            })
            .collect();
        let mut coeffs = TupleCoeffs::new(&engine);
        for &b in &bounds {
            let s = if spec.parallel {
                sum_box_parallel(&engine, &cvals, b, &mut terms)?
            } else {
                sum_box(&mut coeffs, &cvals, b, &mut terms)?
            };
            partials.push((b, s));
        }
    }

    let half_sum = partials
        .iter()
        .find(|&&(b, _)| b == spec.q_max / 2)
        .map(|&(_, s)| s);
    let final_sum = partials.last().expect("nonempty").1;

    let checkpoints: Vec<Checkpoint> = partials
        .iter()
        .filter(|&&(b, _)| spec.with_checkpoints || b == spec.q_max)
        .map(|&(b, s)| Checkpoint {
            q_max: b,
            partial_sum: s,
            abs_error: (s - lhs).abs(),
        })
        .collect();

    Ok(ConvergenceReport {
        lhs_exact: lhs,
        checkpoints,
        tail_bound_k1: if spec.k == 1 {
            Some(engine.tail_bound(spec.q_max, spec.n_tuple[0])?)
        } else {
            None
        },
        doubling_estimate: if spec.k >= 2 {
            half_sum.map(|h| (final_sum - h).abs())
        } else {
            None
        },
        terms_evaluated: terms,
        wall_time: start.elapsed(),
    })
}

/// Evaluate a modified-family expansion for a caller-supplied g, given its
/// unitary Moebius transform `mu_g` and the truncation M for the
/// coefficient sums. The exact left side is also the caller's to supply
/// (it is not computable from `mu_g` alone), as is the summability
/// condition described on [`coeff_generic_one_var`].
pub fn evaluate_expansion_generic(
    n_tuple: &[u64],
    q_max: u64,
    mu_g: &(dyn Fn(u64) -> f64 + Sync),
    m_trunc: u64,
    lhs_exact: f64,
) -> Result<ConvergenceReport> {
    let k = n_tuple.len();
    if k == 0 || n_tuple.contains(&0) || q_max == 0 {
        return Err(Error::domain("generic expansion requires positive k, n_i, q_max"));
    }
    let terms = (q_max as u128).pow(k as u32);
    if terms > DEFAULT_TERM_BUDGET as u128 {
        return Err(Error::resource(format!(
            "q_max^k = {terms} tuples exceeds the budget of {DEFAULT_TERM_BUDGET}"
        )));
    }
    let start = Instant::now();
    let sieve = FactorSieve::new(q_max)?;
    let cvals: Vec<Vec<f64>> = n_tuple
        .iter()
        .map(|&n| {
            let mut v = vec![0.0f64; q_max as usize + 1];
            for q in 1..=q_max {
                v[q as usize] = c_tilde_of(&sieve.factorize(q), n) as f64;
            }
            v
        })
        .collect();
    let mut memo: HashMap<u64, f64> = HashMap::new();
    let mut qs = vec![1u64; k];
    let mut acc = Kahan::new();
    let mut count = 0u64;
    'tuples: loop {
        let big_q = lcm_kary(&qs)?;
        count += 1;
        if qs.iter().all(|&q| is_unitary_divisor(q, big_q)) {
            let coeff = match memo.get(&big_q) {
                Some(&c) => c,
                None => {
                    let c = coeff_generic_one_var(mu_g, k, big_q, m_trunc)?;
                    memo.insert(big_q, c);
                    c
                }
            };
            let mut prod = coeff;
            for i in 0..k {
                prod *= cvals[i][qs[i] as usize];
            }
            acc.add(prod);
        }
        let mut i = k - 1;
        loop {
            qs[i] += 1;
            if qs[i] <= q_max {
                break;
            }
            qs[i] = 1;
            if i == 0 {
                break 'tuples;
            }
            i -= 1;
        }
    }
    let partial = acc.value();
    Ok(ConvergenceReport {
        lhs_exact,
        checkpoints: vec![Checkpoint {
            q_max,
            partial_sum: partial,
            abs_error: (partial - lhs_exact).abs(),
        }],
        tail_bound_k1: None,
        doubling_estimate: None,
        terms_evaluated: count,
        wall_time: start.elapsed(),
    })
}
