//! The free Meixner family `mu_{a,b}`, `a` real, `b >= -1`.
//!
//! Every law in the family has mean 0 and variance 1. Parameters are generic
//! over [`Scalar`] so that moments, cumulants and orthogonal polynomials stay
//! exact for rational `(a, b)`; the analytic side (Cauchy transform, density,
//! atoms) always works in `f64`.

mod analytic;
mod family;
mod sequences;

pub use analytic::{
    atoms, cauchy_transform, density, moment_generating, r_transform, series_radius, support, Atom,
    MeixnerLaw,
};
pub use family::{
    binomial_decomposition, classify, classify_with_reasons, levy_marginal, BinomialDecomposition,
    LevyMarginal, MeixnerType,
};
pub use sequences::{
    cumulants, jacobi_coefficients, moments, orthogonal_polynomial, semicircle_moments,
    CumulantMethod,
};

use std::fmt;

use crate::error::{domain, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct MeixnerParams<T> {
    a: T,
    b: T,
}

impl<T: Scalar> MeixnerParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if b < -T::one() {
            return Err(domain(format!("parameter b = {b} must satisfy b >= -1")));
        }
        if !T::EXACT && !(a.to_f64().is_finite() && b.to_f64().is_finite()) {
            return Err(domain("parameters must be finite"));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn to_f64(&self) -> MeixnerParams<f64> {
        MeixnerParams {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for MeixnerParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a = {}, b = {})", self.a, self.b)
    }
}

/// Semicircle law with the given mean and variance (variance 0 is a point mass).
#[derive(Debug, Clone, PartialEq)]
pub struct SemicircleParams<T> {
    mean: T,
    variance: T,
}

impl<T: Scalar> SemicircleParams<T> {
    pub fn new(mean: T, variance: T) -> Result<Self> {
        if variance.is_negative() {
            return Err(domain(format!(
                "semicircle variance {variance} is negative"
            )));
        }
        Ok(Self { mean, variance })
    }

    pub fn mean(&self) -> &T {
        &self.mean
    }

    pub fn variance(&self) -> &T {
        &self.variance
    }
}

/// Drift/shape pair `(eta, sigma)` of a centered free Levy process with
/// `tau(X_t^2) = t` whose marginals are of free Meixner type.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyParams<T> {
    eta: T,
    sigma: T,
}

impl<T: Scalar> LevyParams<T> {
    pub fn new(eta: T, sigma: T) -> Result<Self> {
        if sigma.is_negative() {
            return Err(domain(format!("sigma = {sigma} must be nonnegative")));
        }
        Ok(Self { eta, sigma })
    }

    pub fn eta(&self) -> &T {
        &self.eta
    }

    pub fn sigma(&self) -> &T {
        &self.sigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn parameter_domains() {
        assert!(MeixnerParams::new(ratio(0, 1), ratio(-1, 1)).is_ok());
        assert!(MeixnerParams::new(ratio(0, 1), ratio(-11, 10)).is_err());
        assert!(MeixnerParams::new(f64::NAN, 0.0).is_err());
        assert!(SemicircleParams::new(1.0, -0.5).is_err());
        assert!(SemicircleParams::new(1.0, 0.0).is_ok());
        assert!(LevyParams::new(1.0, -1e-3).is_err());
    }
}
