//! Ramanujan sums in four flavors (classical, unitary, modified unitary,
//! bi-unitary) with the unitary-divisor arithmetic underneath them, closed-
//! form expansion coefficients for functions of the (unitary) gcd, and a
//! truncated multi-dimensional series evaluator that checks the expansions
//! numerically against exactly computable left sides.
//!
//! Layout:
//! - [`factor`]: sieve, factorization, divisor enumeration
//! - [`arith`]: gcd/lcm variants, Moebius functions, convolutions
//! - [`special`]: Jordan totients, unitary sigma/tau/phi, m^omega
//! - [`ramanujan`]: the four sum families and their identities
//! - [`analytic`]: zeta values, Euler products, the sigma* mean value
//! - [`expand`]: expansion coefficients and the series evaluator
//! - [`oracle`]: brute-force routes used by the verification suites
//! - [`verify`]: the exhaustive identity suites behind `verify`

pub mod analytic;
pub mod arith;
pub mod error;
pub mod expand;
pub mod factor;
pub mod oracle;
pub mod ramanujan;
pub mod special;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use expand::{ConvergenceReport, ExpansionSpec, GChoice};
pub use factor::Factorization;
pub use ramanujan::SumFamily;
