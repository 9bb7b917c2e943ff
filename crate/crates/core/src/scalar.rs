//! Exact rational scalars.

use alloc::format;
use alloc::string::String;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// `num / den` as an exact scalar. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or an integer literal. Decimals are rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::ParseScalar(String::from(text));
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(parse_int(s)?)),
    }
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Rational approximation of `sqrt(x)` from below, with absolute error at
/// most `2^-bits / denom(x)`.
///
/// Panics on negative input.
pub fn sqrt_lower(x: &Scalar, bits: u32) -> Scalar {
    assert!(!x.is_negative(), "square root of a negative scalar");
    if x.is_zero() {
        return Scalar::zero();
    }
    // sqrt(p/q) = sqrt(p q) / q
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    let scale = BigUint::one() << (2 * bits as usize);
    let root = (p * q * scale).sqrt();
    let den = q << bits as usize;
    Scalar::new(
        BigInt::from_biguint(Sign::Plus, root),
        BigInt::from_biguint(Sign::Plus, den),
    )
}
