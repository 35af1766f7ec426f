//! Numeric flag parsing and the exact/float mode switch.

use std::fmt;
use std::str::FromStr;

use free_meixner::scalar::parse_rational;
use free_meixner::{Rational, Scalar};

/// A number as typed: `p/q` and integers are exact, anything with a decimal
/// point or exponent is a float.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let looks_float = t.contains(['.', 'e', 'E'])
            || t.eq_ignore_ascii_case("inf")
            || t.eq_ignore_ascii_case("nan");
        if !looks_float {
            if let Some(r) = parse_rational(t) {
                return Ok(Number::Exact(r));
            }
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Number::Float(v)),
            _ => Err(format!(
                "{s:?} is not a number (use p/q, an integer or a decimal)"
            )),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) => write!(f, "{r}"),
            Number::Float(v) => write!(f, "{v}"),
        }
    }
}

impl Number {
    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64(),
            Number::Float(v) => *v,
        }
    }
}

/// Scalars a [`Number`] can be read into.
pub trait FromNumber: Scalar {
    fn from_number(n: &Number) -> Self;
}

impl FromNumber for Rational {
    fn from_number(n: &Number) -> Self {
        match n {
            Number::Exact(r) => r.clone(),
            Number::Float(v) => Rational::from_f64(*v),
        }
    }
}

impl FromNumber for f64 {
    fn from_number(n: &Number) -> Self {
        n.to_f64()
    }
}

/// Exact mode iff every supplied number is exact.
pub fn all_exact<'a>(numbers: impl IntoIterator<Item = &'a Number>) -> bool {
    numbers.into_iter().all(Number::is_exact)
}
