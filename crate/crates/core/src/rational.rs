//! Exact rational scalars.
//!
//! Every coordinate in the crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Nothing is ever
//! rounded, which keeps half-open membership and order tie-breaks decidable.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always reduced.
pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"n"`. Decimal and exponent notation are rejected so that
/// no input is silently rounded.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let float_like = t.contains('.')
        || (t.contains(['e', 'E']) && t.chars().all(|c| c.is_ascii_digit() || "+-eE".contains(c)));
    if float_like {
        return Err(Error::Parse(format!(
            "`{t}` looks like a float; write it as an exact fraction p/q"
        )));
    }
    let value = match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim())
                .map_err(|e| Error::Parse(format!("bad numerator in `{t}`: {e}")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|e| Error::Parse(format!("bad denominator in `{t}`: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{t}`")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            BigInt::from_str(t).map_err(|e| Error::Parse(format!("bad integer `{t}`: {e}")))?,
        ),
    };
    Ok(value)
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion for rendering and progress output only.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Least common multiple of the denominators of `values` (1 for an empty set).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Exact check that `value` is within `[lo, hi)`.
pub fn in_half_open(value: &Rational, lo: &Rational, hi: &Rational) -> bool {
    lo <= value && value < hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_floats_and_zero_denominators() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-8, 4)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn common_denominator_is_lcm() {
        let vals = [rat(1, 4), rat(5, 6), int(3)];
        assert_eq!(common_denominator(vals.iter()), BigInt::from(12));
    }
}
