//! Exact scalar, polynomial and rational-function arithmetic over the rationals.
//!
//! Rationals are `num_rational::BigRational`, which already keeps the reduced
//! form with a positive denominator. Polynomials are dense, constant term
//! first, and never carry trailing zeros. Rational functions keep a monic
//! denominator coprime to the numerator, so equality is syntactic.

mod modgcd;
mod poly;
mod ratfunc;
pub mod serial;

pub use poly::{poly_gcd, poly_gcd_prs, squarefree_decompose, Poly, SquarefreeDecomposition};
pub use ratfunc::{ratfunc_reduce, RatFunc};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"` into a reduced rational. Rejects a zero denominator.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(crate::Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

