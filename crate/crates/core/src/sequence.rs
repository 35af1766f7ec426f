use std::fmt;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Truncated moment sequence `m_0, ..., m_N` with `m_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> MomentSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        match values.first() {
            Some(m0) if m0.is_one() => Ok(Self { values }),
            Some(m0) if !T::EXACT && (m0.to_f64() - 1.0).abs() < 1e-12 => Ok(Self { values }),
            Some(m0) => Err(domain(format!(
                "moment sequence must start with m_0 = 1, got {m0}"
            ))),
            None => Err(domain("moment sequence must contain m_0")),
        }
    }

    /// Highest stored order `N`.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// `m_n`.
    pub fn get(&self, n: usize) -> Result<&T> {
        self.values.get(n).ok_or(Error::InsufficientOrder {
            requested: n,
            available: self.order(),
        })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder {
                requested: order,
                available: self.order(),
            });
        }
        Ok(Self {
            values: self.values[..=order].to_vec(),
        })
    }

    pub fn to_f64(&self) -> MomentSequence<f64> {
        MomentSequence {
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for MomentSequence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.values)
    }
}

/// Truncated free cumulant sequence `R_1, ..., R_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantSequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> CumulantSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("cumulant sequence must have order at least 1"));
        }
        if !T::EXACT && values.iter().any(|v| !v.to_f64().is_finite()) {
            return Err(domain("cumulants must be finite"));
        }
        Ok(Self { values })
    }

    /// All-zero sequence: the cumulants of the point mass at zero.
    pub fn zero(order: usize) -> Result<Self> {
        Self::new(vec![T::zero(); order])
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `R_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Result<&T> {
        if n == 0 {
            return Err(domain("free cumulants are indexed from 1"));
        }
        self.values.get(n - 1).ok_or(Error::InsufficientOrder {
            requested: n,
            available: self.order(),
        })
    }

    /// `R_1..R_N` as a slice (index `k` holds `R_{k+1}`).
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder {
                requested: order,
                available: self.order(),
            });
        }
        Self::new(self.values[..order].to_vec())
    }

    pub fn to_f64(&self) -> CumulantSequence<f64> {
        CumulantSequence {
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }

    pub(crate) fn from_values_unchecked(values: Vec<T>) -> Self {
        Self { values }
    }
}

impl<T: fmt::Display> fmt::Display for CumulantSequence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.values)
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, values: &[T]) -> fmt::Result {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}
