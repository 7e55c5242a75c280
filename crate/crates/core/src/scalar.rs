//! Scalar conventions shared by every module: arbitrary-precision integers
//! and rationals, factorial/binomial helpers, and the decimal-string
//! encodings used by all JSON artifacts.
//!
//! Integers are encoded as decimal strings (values exceed 64 bits almost
//! everywhere downstream) and rationals as `"numerator/denominator"` with a
//! positive denominator in lowest terms. One uniform encoding serves the
//! whole codebase.

use crate::error::{Error, Result};
use rug::{Integer, Rational};

/// n! as an exact integer.
pub fn factorial(n: usize) -> Integer {
    let mut acc = Integer::from(1);
    for k in 2..=n {
        acc *= k as u64;
    }
    acc
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::ZERO;
    }
    Integer::from(n as u64).binomial(k as u32)
}

/// Encode an integer as a decimal string.
pub fn int_to_string(value: &Integer) -> String {
    value.to_string()
}

/// Decode an integer from a decimal string.
pub fn int_from_string(s: &str) -> Result<Integer> {
    Integer::parse(s)
        .map(Integer::from)
        .map_err(|e| Error::Malformed(format!("integer {s:?}: {e}")))
}

/// Encode a rational as `"num/den"`, denominator always present and positive.
pub fn rat_to_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Decode a rational from `"num/den"` (or a bare integer string).
pub fn rat_from_string(s: &str) -> Result<Rational> {
    let parsed = match s.split_once('/') {
        Some((num, den)) => {
            let num = int_from_string(num.trim())?;
            let den = int_from_string(den.trim())?;
            if den == 0 {
                return Err(Error::Malformed(format!("rational {s:?}: zero denominator")));
            }
            Rational::from((num, den))
        }
        None => Rational::from(int_from_string(s.trim())?),
    };
    Ok(parsed)
}

/// True when the rational is an integer (denominator 1).
pub fn is_integral(value: &Rational) -> bool {
    *value.denom() == 1
}
