//! Scalar policy shared by every sequence computation.
//!
//! Sequences are generic over [`Scalar`]. Two implementations exist:
//! [`Rational`] (arbitrary precision, every identity is checked exactly) and
//! `f64` (used when a parameter is irrational, e.g. after a square root).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Relative tolerance used by float-mode identity checks.
pub const FLOAT_IDENTITY_TOL: f64 = 1e-10;

pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// True for exact arithmetic.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Lossy conversion from `f64`. Exact types take the nearest dyadic rational.
    fn from_f64(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Square root when it is representable in this scalar type.
    fn sqrt_checked(&self) -> Option<Self>;

    /// `self` vanishes relative to `scale`: exact zero in exact mode,
    /// `|self| <= FLOAT_IDENTITY_TOL * max(1, |scale|)` otherwise.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Equality up to relative tolerance `tol`; exact types ignore `tol`.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    fn powi(&self, k: u32) -> Self {
        num_traits::pow(self.clone(), k as usize)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        self.abs() <= FLOAT_IDENTITY_TOL * scale.abs().max(1.0)
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol * self.abs().max(other.abs()).max(1.0)
    }
}

/// Exact rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Parses `"p/q"`, `"p"` or a decimal literal into an exact rational.
/// Decimal literals are read as their exact decimal value (`0.1` is `1/10`).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            s => s.parse().ok()?,
        };
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().ok()?
        };
        let magnitude = Rational::new(int_part * &scale + frac_part, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Binomial coefficient as a scalar.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    bigint_to_scalar(&acc)
}

/// Catalan number `C_k` as a scalar.
pub fn catalan<T: Scalar>(k: usize) -> T {
    let c: BigInt = {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
        }
        acc
    };
    bigint_to_scalar(&c)
}

fn bigint_to_scalar<T: Scalar>(v: &BigInt) -> T {
    match v.to_i64() {
        Some(small) => T::from_i64(small),
        None => {
            // only reachable for very large orders; fold in base 2^32
            let mut acc = T::zero();
            let base = T::from_i64(1 << 32);
            let (sign, digits) = v.to_u32_digits();
            for d in digits.iter().rev() {
                acc = acc * base.clone() + T::from_i64(*d as i64);
            }
            if sign == num_bigint::Sign::Minus {
                -acc
            } else {
                acc
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-1/2"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("2"), Some(ratio(2, 1)));
        assert_eq!(parse_rational("-0.25"), Some(ratio(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn exact_sqrt_only_for_perfect_squares() {
        assert_eq!(ratio(9, 4).sqrt_checked(), Some(ratio(3, 2)));
        assert_eq!(ratio(1, 2).sqrt_checked(), None);
        assert_eq!(ratio(-1, 4).sqrt_checked(), None);
    }

    #[test]
    fn catalan_and_binomial() {
        let cats: Vec<i64> = (0..8).map(|k| catalan::<f64>(k) as i64).collect();
        assert_eq!(cats, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(binomial::<Rational>(10, 3), ratio(120, 1));
        assert_eq!(binomial::<f64>(3, 5), 0.0);
    }

    #[test]
    fn ratio_of_huge_integers_converts_to_float() {
        let num = BigInt::from(10u32).pow(400) * BigInt::from(3);
        let den = BigInt::from(10u32).pow(400) + BigInt::one();
        let q = Scalar::to_f64(&Rational::new(num, den));
        assert!((q - 3.0).abs() < 1e-12);
    }
}
