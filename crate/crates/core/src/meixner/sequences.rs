use std::str::FromStr;

use super::{MeixnerParams, SemicircleParams};
use crate::cumulant_calculus::{moments_to_cumulants, MAX_ORDER};
use crate::error::{domain, Error, Result};
use crate::ncpart;
use crate::scalar::{binomial, catalan, Scalar};
use crate::sequence::{CumulantSequence, MomentSequence};

/// Moments `m_0..m_N` of `mu_{a,b}`.
///
/// Uses `(1+b) m_{n+2} = sum_{j=0}^{n} m_j (m_{n-j} + a m_{n+1-j} + b m_{n+2-j})`
/// with the `j = 0` contribution `b m_{n+2}` taken to the left, which leaves
/// `m_{n+2}` with coefficient one. At `b = -1` the law is the two-point law on
/// the roots of `x^2 - a x - 1`, so `m_{n+2} = a m_{n+1} + m_n`.
pub fn moments<T: Scalar>(p: &MeixnerParams<T>, order: usize) -> Result<MomentSequence<T>> {
    if order > MAX_ORDER {
        return Err(Error::OrderCap {
            requested: order,
            cap: MAX_ORDER,
        });
    }
    let (a, b) = (p.a().clone(), p.b().clone());
    let mut m = vec![T::one()];
    if order >= 1 {
        m.push(T::zero());
    }
    let two_point = b == -T::one();
    for k in 2..=order {
        let n = k - 2;
        let next = if two_point {
            a.clone() * m[k - 1].clone() + m[k - 2].clone()
        } else {
            let mut acc = T::zero();
            for j in 0..=n {
                acc = acc + m[j].clone() * (m[n - j].clone() + a.clone() * m[n + 1 - j].clone());
                if j >= 1 {
                    acc = acc + b.clone() * m[j].clone() * m[n + 2 - j].clone();
                }
            }
            acc
        };
        m.push(next);
    }
    MomentSequence::new(m)
}

/// Route used to produce the free cumulants of `mu_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulantMethod {
    /// Weighted sum over non-crossing partitions with blocks of size <= 2.
    NcLe2,
    /// Moments of the semicircle with mean `a`, variance `b` (needs `b >= 0`).
    Semicircle,
    /// Invert the moment sequence.
    FromMoments,
}

impl FromStr for CumulantMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nc_le2" | "nc-le2" => Ok(Self::NcLe2),
            "semicircle" => Ok(Self::Semicircle),
            "from_moments" | "from-moments" => Ok(Self::FromMoments),
            other => Err(domain(format!("unknown cumulant method {other:?}"))),
        }
    }
}

/// Free cumulants `R_1..R_N` of `mu_{a,b}`: `R_1 = 0`, `R_2 = 1`,
/// `R_{n+2} = sum_{V in NC<=2(n)} a^{s(V)} b^{|V| - s(V)}`.
pub fn cumulants<T: Scalar>(
    p: &MeixnerParams<T>,
    order: usize,
    method: CumulantMethod,
) -> Result<CumulantSequence<T>> {
    if order < 2 {
        return Err(domain("cumulant order must be at least 2"));
    }
    match method {
        CumulantMethod::NcLe2 => {
            let mut r = vec![T::zero()];
            for n in 0..=order - 2 {
                // group partitions by their number of pair blocks
                let mut by_pairs = vec![0i64; n / 2 + 1];
                for v in ncpart::enumerate_nc_le2(n)? {
                    by_pairs[v.num_blocks() - v.singleton_count()] += 1;
                }
                let sum = by_pairs
                    .iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (pairs, &count)| {
                        acc + T::from_i64(count)
                            * p.a().powi((n - 2 * pairs) as u32)
                            * p.b().powi(pairs as u32)
                    });
                r.push(sum);
            }
            CumulantSequence::new(r)
        }
        CumulantMethod::Semicircle => {
            if p.b().is_negative() {
                return Err(domain(format!(
                    "the semicircle route needs b >= 0 (got b = {})",
                    p.b()
                )));
            }
            let w = SemicircleParams::new(p.a().clone(), p.b().clone())?;
            let sm = semicircle_moments(&w, order - 2)?;
            let mut r = vec![T::zero()];
            r.extend(sm.values().iter().cloned());
            CumulantSequence::new(r)
        }
        CumulantMethod::FromMoments => moments_to_cumulants(&moments(p, order)?),
    }
}

/// Raw moments of the semicircle law: central moments `Catalan(k) var^k` at
/// order `2k`, shifted binomially by the mean.
pub fn semicircle_moments<T: Scalar>(
    w: &SemicircleParams<T>,
    order: usize,
) -> Result<MomentSequence<T>> {
    if order > MAX_ORDER {
        return Err(Error::OrderCap {
            requested: order,
            cap: MAX_ORDER,
        });
    }
    let values = (0..=order)
        .map(|n| {
            (0..=n / 2).fold(T::zero(), |acc, k| {
                acc + binomial::<T>(n, 2 * k)
                    * catalan::<T>(k)
                    * w.variance().powi(k as u32)
                    * w.mean().powi((n - 2 * k) as u32)
            })
        })
        .collect();
    MomentSequence::new(values)
}

/// Monic orthogonal polynomial `p_n(x)`: `p_0 = 1`, `p_1 = x`,
/// `p_2 = x^2 - a x - 1`, `x p_n = p_{n+1} + a p_n + (1+b) p_{n-1}` for `n >= 2`.
pub fn orthogonal_polynomial<T: Scalar>(p: &MeixnerParams<T>, degree: usize, x: &T) -> T {
    let (a, b) = (p.a(), p.b());
    match degree {
        0 => T::one(),
        1 => x.clone(),
        _ => {
            let mut prev = x.clone();
            let mut cur = x.clone() * x.clone() - a.clone() * x.clone() - T::one();
            let shift = T::one() + b.clone();
            for _ in 2..degree {
                let next = (x.clone() - a.clone()) * cur.clone() - shift.clone() * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Diagonal and off-diagonal of the `n x n` Jacobi matrix:
/// diagonal `(0, a, a, ...)`, off-diagonal `(1, sqrt(1+b), sqrt(1+b), ...)`.
pub fn jacobi_coefficients<T: Scalar>(
    p: &MeixnerParams<T>,
    n: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(domain("Jacobi matrix size must be at least 1"));
    }
    let a = p.a().to_f64();
    let off = (1.0 + p.b().to_f64()).max(0.0).sqrt();
    let diagonal = (0..n).map(|k| if k == 0 { 0.0 } else { a }).collect();
    let offdiagonal = (0..n - 1).map(|k| if k == 0 { 1.0 } else { off }).collect();
    Ok((diagonal, offdiagonal))
}
