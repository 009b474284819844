//! Exact rationals.
//!
//! Backed by [`num_rational::BigRational`], which keeps every value reduced
//! with a positive denominator. On the wire a rational is a decimal string
//! `"p/q"`, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"` with optional leading sign. Rejects a zero
/// denominator and any surrounding whitespace.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let well_formed = |t: &str, allow_sign: bool| {
        let digits = if allow_sign {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !well_formed(num, true) || !well_formed(den, false) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Exact `(-1)^k` as a rational.
pub fn sign(parity: u8) -> Rational {
    if parity.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

/// Nearest `f64`, for summaries and numeric comparisons only.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
