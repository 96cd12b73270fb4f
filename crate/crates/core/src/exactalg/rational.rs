//! Rational scalars and their textual form.
//!
//! Rationals are written `num/den` with an optional sign on the numerator and
//! the denominator omitted when it is one, e.g. `-10/81`, `305856`. This is
//! the encoding used by every file format in the workspace.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// Error produced when a rational token is malformed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational token")]
    Empty,
    #[error("invalid digits in rational token `{0}`")]
    InvalidDigits(String),
    #[error("zero denominator in rational token `{0}`")]
    ZeroDenominator(String),
}

/// Shorthand for the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidDigits(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| ParseRationalError::InvalidDigits(whole.to_string()))
}

/// Parses `[+-]digits[/digits]` into a canonical rational.
pub fn parse_rational(token: &str) -> Result<BigRational, ParseRationalError> {
    let token = token.trim();
    if token.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (negative, body) = match token.as_bytes()[0] {
        b'-' => (true, &token[1..]),
        b'+' => (false, &token[1..]),
        _ => (false, token),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (parse_digits(n, token)?, parse_digits(d, token)?),
        None => (parse_digits(body, token)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(token.to_string()));
    }
    let num = if negative { -num } else { num };
    Ok(BigRational::new(num, den))
}

/// Parses a signed decimal integer with the same digit rules as [`parse_rational`].
pub fn parse_integer(token: &str) -> Result<BigInt, ParseRationalError> {
    let token = token.trim();
    if token.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (negative, body) = match token.as_bytes()[0] {
        b'-' => (true, &token[1..]),
        b'+' => (false, &token[1..]),
        _ => (false, token),
    };
    let n = parse_digits(body, token)?;
    Ok(if negative { -n } else { n })
}

/// Canonical text of a rational: `num/den`, or `num` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    DisplayRational(q).to_string()
}

/// Display adaptor that writes the canonical text without allocating.
pub struct DisplayRational<'a>(pub &'a BigRational);

impl fmt::Display for DisplayRational<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Non-negative gcd of a sequence of integers (0 for an empty or all-zero sequence).
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g.abs()
}

/// Returns `q` as an integer if its denominator is one.
pub fn to_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_canonicalizes() {
        assert_eq!(parse_rational("305856/1").unwrap(), int(305856));
        assert_eq!(format_rational(&parse_rational("305856/1").unwrap()), "305856");
        assert_eq!(parse_rational("-10/81").unwrap(), rat(-10, 81));
        assert_eq!(parse_rational("+6/4").unwrap(), rat(3, 2));
        assert_eq!(format_rational(&rat(-18539, 839808)), "-18539/839808");
    }

    #[test]
    fn rejects_malformed_tokens() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        for bad in ["1/-2", "--1", "1.5", "1/", "/2", "a", "1//2", "-", "+/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn text_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let q = rat(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
