use std::fmt;

use num_complex::Complex64;

use super::{cumulants, CumulantMethod, LevyParams, MeixnerParams};
use crate::cumulant_calculus::{convolution_power, dilate_by_root, PowerMode};
use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;
use crate::sequence::CumulantSequence;

/// The six types of the free Meixner family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeixnerType {
    Semicircle,
    FreePoisson,
    FreePascal,
    FreeGamma,
    PureFreeMeixner,
    FreeBinomial,
}

impl MeixnerType {
    pub fn name(self) -> &'static str {
        match self {
            Self::Semicircle => "Semicircle",
            Self::FreePoisson => "FreePoisson",
            Self::FreePascal => "FreePascal",
            Self::FreeGamma => "FreeGamma",
            Self::PureFreeMeixner => "PureFreeMeixner",
            Self::FreeBinomial => "FreeBinomial",
        }
    }
}

impl fmt::Display for MeixnerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Float inputs treat `|a^2 - 4b| <= 1e-12` as the free Gamma parabola.
const PARABOLA_TOL: f64 = 1e-12;

pub fn classify<T: Scalar>(p: &MeixnerParams<T>) -> MeixnerType {
    classify_with_reasons(p).0
}

/// The type together with the region predicates that selected it.
pub fn classify_with_reasons<T: Scalar>(p: &MeixnerParams<T>) -> (MeixnerType, Vec<&'static str>) {
    let (a, b) = (p.a(), p.b());
    if b.is_zero() {
        return if a.is_zero() {
            (MeixnerType::Semicircle, vec!["a = 0", "b = 0"])
        } else {
            (MeixnerType::FreePoisson, vec!["b = 0", "a != 0"])
        };
    }
    if b.is_negative() {
        return (MeixnerType::FreeBinomial, vec!["-1 <= b < 0"]);
    }
    let excess = a.clone() * a.clone() - T::from_i64(4) * b.clone();
    let on_parabola = if T::EXACT {
        excess.is_zero()
    } else {
        excess.to_f64().abs() <= PARABOLA_TOL
    };
    if on_parabola {
        (MeixnerType::FreeGamma, vec!["b > 0", "a^2 = 4b"])
    } else if excess.is_positive() {
        (MeixnerType::FreePascal, vec!["b > 0", "a^2 > 4b"])
    } else {
        (MeixnerType::PureFreeMeixner, vec!["b > 0", "a^2 < 4b"])
    }
}

/// `mu_{a,b} = D_{sqrt|b|}(mu_{a/sqrt|b|, -1}^{boxplus t})` with `t = -1/b`, for `-1 <= b < 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialDecomposition<T> {
    /// Two-point law `mu_{a/sqrt|b|, -1}` in floating point.
    pub two_point: MeixnerParams<f64>,
    /// The same law when `a/sqrt|b|` is representable in `T`.
    pub two_point_exact: Option<MeixnerParams<T>>,
    pub t: T,
    pub dilation: f64,
    /// `|b|`, the square of the dilation.
    pub dilation_squared: T,
}

impl<T: Scalar> BinomialDecomposition<T> {
    /// Cumulants of the right-hand side, computed by power then dilation.
    pub fn cumulants(&self, order: usize) -> Result<CumulantSequence<T>> {
        let two_point = self
            .two_point_exact
            .as_ref()
            .ok_or_else(|| Error::Inexact("two-point parameter a/sqrt|b| is irrational".into()))?;
        let base = cumulants(two_point, order, CumulantMethod::FromMoments)?;
        let powered = convolution_power(&base, &self.t, PowerMode::Law)?;
        dilate_by_root(&powered, &self.dilation_squared)
    }
}

pub fn binomial_decomposition<T: Scalar>(p: &MeixnerParams<T>) -> Result<BinomialDecomposition<T>> {
    let b = p.b();
    if !b.is_negative() {
        return Err(domain(format!(
            "binomial decomposition needs -1 <= b < 0 (got b = {b})"
        )));
    }
    let magnitude = -b.clone();
    let t = T::one() / magnitude.clone();
    let a_squared = p.a().clone() * p.a().clone() / magnitude.clone();
    let exact_a = a_squared
        .sqrt_checked()
        .map(|root| if p.a().is_negative() { -root } else { root });
    let dilation = magnitude.to_f64().sqrt();
    Ok(BinomialDecomposition {
        two_point: MeixnerParams::new(p.a().to_f64() / dilation, -1.0)?,
        two_point_exact: exact_a
            .map(|a| MeixnerParams::new(a, -T::one()))
            .transpose()?,
        t,
        dilation,
        dilation_squared: magnitude,
    })
}

/// Law of `X_t` for the free Levy process with parameters `(eta, sigma)`:
/// `D_{sqrt t}(mu_{eta/sqrt t, sigma/t})`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyMarginal<T> {
    levy: LevyParams<T>,
    t: T,
}

impl<T: Scalar> LevyMarginal<T> {
    pub fn time(&self) -> &T {
        &self.t
    }

    /// `b = sigma / t`, exact.
    pub fn b(&self) -> T {
        self.levy.sigma().clone() / self.t.clone()
    }

    /// `a^2 = eta^2 / t`, exact.
    pub fn a_squared(&self) -> T {
        self.levy.eta().clone() * self.levy.eta().clone() / self.t.clone()
    }

    pub fn a(&self) -> f64 {
        self.levy.eta().to_f64() / self.t.to_f64().sqrt()
    }

    pub fn dilation(&self) -> f64 {
        self.t.to_f64().sqrt()
    }

    pub fn params(&self) -> MeixnerParams<f64> {
        MeixnerParams::new(self.a(), self.b().to_f64()).expect("sigma >= 0 keeps b >= 0")
    }

    /// Standardized parameters in `T` when `eta / sqrt(t)` is representable.
    pub fn exact_params(&self) -> Option<MeixnerParams<T>> {
        let root = self.a_squared().sqrt_checked()?;
        let a = if self.levy.eta().is_negative() {
            -root
        } else {
            root
        };
        MeixnerParams::new(a, self.b()).ok()
    }

    /// Free cumulants of `X_t`: `t` times those of `mu_{eta, sigma}`.
    pub fn cumulants(&self, order: usize) -> Result<CumulantSequence<T>> {
        let unit = MeixnerParams::new(self.levy.eta().clone(), self.levy.sigma().clone())?;
        let base = cumulants(&unit, order, CumulantMethod::FromMoments)?;
        convolution_power(&base, &self.t, PowerMode::Formal)
    }

    /// `r_{X_t}(z) = 2 z t / (1 - eta z + sqrt((1 - eta z)^2 - 4 z^2 sigma))`.
    pub fn r_transform(&self, z: Complex64) -> Complex64 {
        let eta = self.levy.eta().to_f64();
        let sigma = self.levy.sigma().to_f64();
        let lin = 1.0 - eta * z;
        2.0 * z * self.t.to_f64() / (lin + (lin * lin - 4.0 * z * z * sigma).sqrt())
    }
}

pub fn levy_marginal<T: Scalar>(l: &LevyParams<T>, t: &T) -> Result<LevyMarginal<T>> {
    if !t.is_positive() {
        return Err(domain(format!("process time t = {t} must be positive")));
    }
    Ok(LevyMarginal {
        levy: l.clone(),
        t: t.clone(),
    })
}
