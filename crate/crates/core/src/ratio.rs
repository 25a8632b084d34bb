//! Exact rationals and the few integer square-root helpers the region
//! predicates and the padding reduction need.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational used for every bound comparison.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Parses `p/q`, an integer, or a terminating decimal such as `0.125`.
///
/// Decimals are converted digit by digit, so `0.1` is exactly `1/10`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(text.to_string());

    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = parse_signed_int(num.trim()).ok_or_else(invalid)?;
        let den: BigInt = parse_signed_int(den.trim()).ok_or_else(invalid)?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }

    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(invalid());
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(whole) || !all_digits(frac) {
        return Err(invalid());
    }
    let digits = format!("{whole}{frac}");
    let mantissa: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| invalid())?
    };
    let scale = pow10(frac.len() as u32);
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

fn parse_signed_int(text: &str) -> Option<BigInt> {
    let body = text.strip_prefix(['-', '+']).unwrap_or(text);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

pub fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), exp as usize)
}

/// `floor(x)` for a rational.
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// `ceil(x)` for a rational.
pub fn ceil(x: &Rational) -> BigInt {
    -(-x.numer()).div_floor(x.denom())
}

/// Exact `floor(offset + sign * sqrt(radicand))` for rational `offset`
/// and nonnegative rational `radicand`.
pub fn floor_offset_sqrt(offset: &Rational, sign: SqrtSign, radicand: &Rational) -> BigInt {
    assert!(!radicand.is_negative(), "square root of a negative rational");
    let root_floor = floor(radicand).sqrt();
    // Start below the true value and walk up; at most a few steps.
    let mut m = match sign {
        SqrtSign::Plus => floor(offset) + &root_floor - 1,
        SqrtSign::Minus => floor(offset) - &root_floor - 2,
    };
    let le_target = |m: &BigInt| -> bool {
        let gap = int(m.clone()) - offset;
        match sign {
            // m <= offset + sqrt(q)  <=>  m - offset < 0  or  (m - offset)^2 <= q
            SqrtSign::Plus => gap.is_negative() || &gap * &gap <= *radicand,
            // m <= offset - sqrt(q)  <=>  offset - m >= 0  and  q <= (offset - m)^2
            SqrtSign::Minus => !gap.is_positive() && *radicand <= &gap * &gap,
        }
    };
    debug_assert!(le_target(&m));
    while le_target(&(&m + 1)) {
        m += 1;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtSign {
    Plus,
    Minus,
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Displays a rational as `p/q`, or `p` when the denominator is one.
pub struct Display<'a>(pub &'a Rational);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
