//! Moment-level checks of the regression identities that characterize the
//! free Meixner family.
//!
//! Conditional expectations never appear as operators. Each identity is
//! checked through its projections `tau(U S^n)`, which determine it.
//! Rational runs must match exactly; float runs use a relative tolerance of
//! [`FLOAT_IDENTITY_TOL`](crate::scalar::FLOAT_IDENTITY_TOL) per order.

use std::fmt;

use crate::cumulant_calculus::{cumulants_to_moments, FreePair, FreePairSpec, Letter};
use crate::error::{domain, Error, Result};
use crate::meixner::{cumulants, CumulantMethod, LevyParams, MeixnerParams};
use crate::ncpart::DEFAULT_ENUMERATION_CAP;
use crate::scalar::Scalar;
use crate::sequence::{CumulantSequence, MomentSequence};

/// Identity names used in reports.
pub mod identity {
    pub const LINEAR_REGRESSION: &str = "linear_regression";
    pub const QUADRATIC_VARIANCE: &str = "quadratic_conditional_variance";
    pub const MIXED_CUMULANT_V: &str = "mixed_cumulant_v";
    pub const MIXED_CUMULANT_VV: &str = "mixed_cumulant_vv";
    pub const MOMENT_RECURSION: &str = "moment_recursion";
    pub const LEVY_MARTINGALE: &str = "levy_martingale";
}

/// One order of one identity.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderCheck<T> {
    pub identity: &'static str,
    pub order: usize,
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionReport<T> {
    pub identity: &'static str,
    pub checks: Vec<OrderCheck<T>>,
    /// `C = alpha beta / (1 + b)` for the conditional variance identity.
    pub normalizing_constant: Option<T>,
}

impl<T: Scalar> RegressionReport<T> {
    fn new(identity: &'static str) -> Self {
        Self {
            identity,
            checks: Vec::new(),
            normalizing_constant: None,
        }
    }

    fn record(&mut self, identity: &'static str, order: usize, lhs: T, rhs: T) {
        let residual = lhs.clone() - rhs.clone();
        let pass = residual.is_negligible(&rhs);
        self.checks.push(OrderCheck {
            identity,
            order,
            lhs,
            rhs,
            residual,
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Lowest failing order, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.order)
            .min()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.residual.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn max_order(&self) -> usize {
        self.checks.iter().map(|c| c.order).max().unwrap_or(0)
    }
}

impl<T: Scalar> fmt::Display for RegressionReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{}: {status} through order {}",
            self.identity,
            self.max_order()
        )?;
        if let Some(order) = self.first_failure() {
            write!(f, " (first failure at n = {order})")?;
        }
        write!(f, ", max residual {:e}", self.max_residual())
    }
}

/// Free pair with `R_n(X) = alpha R_n(S)` and `S ~ mu_{a,b}`, cumulants through `order`.
///
/// `X` and `Y` are laws only when `b >= -min(alpha, 1 - alpha)`; then
/// `X / sqrt(alpha)` has law `mu_{a/sqrt(alpha), b/alpha}`.
pub fn build_free_pair<T: Scalar>(
    alpha: &T,
    p: &MeixnerParams<T>,
    order: usize,
) -> Result<FreePairSpec<T>> {
    if *alpha <= T::zero() || *alpha >= T::one() {
        return Err(domain(format!("split alpha = {alpha} must lie in (0, 1)")));
    }
    let beta = T::one() - alpha.clone();
    let bound = if *alpha < beta { alpha.clone() } else { beta };
    if *p.b() < -bound.clone() {
        return Err(domain(format!(
            "b = {} violates the feasibility bound b >= -min(alpha, 1 - alpha) = {}",
            p.b(),
            -bound
        )));
    }
    FreePairSpec::new(
        cumulants(p, order.max(2), CumulantMethod::FromMoments)?,
        alpha.clone(),
    )
}

fn need_order(available: usize, requested: usize) -> Result<()> {
    if requested > available {
        return Err(Error::InsufficientOrder {
            requested,
            available,
        });
    }
    Ok(())
}

fn word(head: &[Letter], tail: usize) -> Vec<Letter> {
    let mut w = head.to_vec();
    w.extend(std::iter::repeat_n(Letter::S, tail));
    w
}

fn s_moments<T: Scalar>(pair: &FreePair<T>) -> Result<MomentSequence<T>> {
    cumulants_to_moments(&pair.s_cumulants())
}

/// `(a, b)` read off a standardized `S`: `a = R_3`, `b = R_4 - R_3^2`.
fn meixner_params_of<T: Scalar>(s: &CumulantSequence<T>) -> Result<(T, T)> {
    need_order(s.order(), 4)?;
    let r = s.values();
    if !r[0].is_negligible(&T::one()) || !(r[1].clone() - T::one()).is_negligible(&T::one()) {
        return Err(domain("S must be standardized (mean 0, variance 1)"));
    }
    let a = r[2].clone();
    let b = r[3].clone() - a.clone() * a.clone();
    Ok((a, b))
}

/// `tau(X S^n) = alpha m_{n+1}` for `1 <= n <= order`; needs cumulants through `order + 1`.
pub fn verify_linear_regression<T: Scalar>(
    pair: &FreePairSpec<T>,
    order: usize,
) -> Result<RegressionReport<T>> {
    check_linear_regression(&pair.pair(), pair.alpha(), order)
}

/// [`verify_linear_regression`] for an arbitrary free pair and claimed split.
pub fn check_linear_regression<T: Scalar>(
    pair: &FreePair<T>,
    alpha: &T,
    order: usize,
) -> Result<RegressionReport<T>> {
    need_order(pair.order(), order + 1)?;
    let m = s_moments(pair)?;
    let mut report = RegressionReport::new(identity::LINEAR_REGRESSION);
    for n in 1..=order {
        let lhs = pair.joint_moment(&word(&[Letter::X], n))?;
        report.record(
            identity::LINEAR_REGRESSION,
            n,
            lhs,
            alpha.clone() * m.values()[n + 1].clone(),
        );
    }
    Ok(report)
}

/// `tau(V^2 S^n) = C (m_n + a m_{n+1} + b m_{n+2})` with `V = beta X - alpha Y`,
/// `C = alpha beta / (1 + b)`, for `0 <= n <= order`; needs cumulants through `order + 2`.
pub fn verify_quadratic_variance<T: Scalar>(
    pair: &FreePairSpec<T>,
    order: usize,
) -> Result<RegressionReport<T>> {
    check_quadratic_variance(&pair.pair(), pair.alpha(), order)
}

/// `tau(Z_1 Z_2 S^n)` with `Z_1, Z_2 in {V}` expanded by bilinearity.
fn vv_moment<T: Scalar>(pair: &FreePair<T>, alpha: &T, n: usize) -> Result<T> {
    let beta = T::one() - alpha.clone();
    let xx = pair.joint_moment(&word(&[Letter::X, Letter::X], n))?;
    let xy = pair.joint_moment(&word(&[Letter::X, Letter::Y], n))?;
    let yx = pair.joint_moment(&word(&[Letter::Y, Letter::X], n))?;
    let yy = pair.joint_moment(&word(&[Letter::Y, Letter::Y], n))?;
    Ok(
        beta.clone() * beta.clone() * xx - alpha.clone() * beta * (xy + yx)
            + alpha.clone() * alpha.clone() * yy,
    )
}

pub fn check_quadratic_variance<T: Scalar>(
    pair: &FreePair<T>,
    alpha: &T,
    order: usize,
) -> Result<RegressionReport<T>> {
    need_order(pair.order(), (order + 2).max(4))?;
    let (a, b) = meixner_params_of(&pair.s_cumulants())?;
    let shift = T::one() + b.clone();
    if shift.is_zero() {
        return Err(domain(
            "b = -1: the conditional variance constant C is undefined",
        ));
    }
    let beta = T::one() - alpha.clone();
    let c = alpha.clone() * beta / shift;
    let m = s_moments(pair)?;
    let m = m.values();
    let mut report = RegressionReport::new(identity::QUADRATIC_VARIANCE);
    for n in 0..=order {
        let lhs = vv_moment(pair, alpha, n)?;
        let rhs = c.clone()
            * (m[n].clone() + a.clone() * m[n + 1].clone() + b.clone() * m[n + 2].clone());
        report.record(identity::QUADRATIC_VARIANCE, n, lhs, rhs);
    }
    report.normalizing_constant = Some(c);
    Ok(report)
}

/// `R_n(V, S, ..., S) = 0` and `R_n(V, V, S, ..., S) = alpha beta R_n(S)` for
/// `2 <= n <= order`.
///
/// The word cumulants are recovered from joint moments by inversion over
/// non-crossing partitions, so freeness is tested rather than assumed.
pub fn verify_mixed_cumulants<T: Scalar>(
    pair: &FreePairSpec<T>,
    order: usize,
) -> Result<RegressionReport<T>> {
    check_mixed_cumulants(&pair.pair(), pair.alpha(), order)
}

pub fn check_mixed_cumulants<T: Scalar>(
    pair: &FreePair<T>,
    alpha: &T,
    order: usize,
) -> Result<RegressionReport<T>> {
    need_order(pair.order(), order)?;
    if order > DEFAULT_ENUMERATION_CAP {
        return Err(Error::OrderCap {
            requested: order,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let beta = T::one() - alpha.clone();
    let s = pair.s_cumulants();
    let mut report = RegressionReport::new(identity::MIXED_CUMULANT_V);
    let heads: [&[Letter]; 6] = [
        &[Letter::X],
        &[Letter::Y],
        &[Letter::X, Letter::X],
        &[Letter::X, Letter::Y],
        &[Letter::Y, Letter::X],
        &[Letter::Y, Letter::Y],
    ];
    let words: Vec<Vec<Letter>> = (2..=order)
        .flat_map(|n| heads.iter().map(move |h| word(h, n - h.len())))
        .collect();
    let refs: Vec<&[Letter]> = words.iter().map(Vec::as_slice).collect();
    let all = pair.word_cumulants(&refs)?;
    for (n, k) in (2..=order).zip(all.chunks(heads.len())) {
        let v = beta.clone() * k[0].clone() - alpha.clone() * k[1].clone();
        report.record(identity::MIXED_CUMULANT_V, n, v, T::zero());
        let vv = beta.clone() * beta.clone() * k[2].clone()
            - alpha.clone() * beta.clone() * (k[3].clone() + k[4].clone())
            + alpha.clone() * alpha.clone() * k[5].clone();
        let rhs = alpha.clone() * beta.clone() * s.values()[n - 1].clone();
        report.record(identity::MIXED_CUMULANT_VV, n, vv, rhs);
    }
    Ok(report)
}

/// `(1+b) m_{n+2} = sum_{j=0}^{n} m_j (m_{n-j} + a m_{n+1-j} + b m_{n+2-j})`
/// for `m_0..m_order` built from the partition-sum cumulants.
pub fn verify_moment_recursion<T: Scalar>(
    p: &MeixnerParams<T>,
    order: usize,
) -> Result<RegressionReport<T>> {
    let (a, b) = (p.a().clone(), p.b().clone());
    let shift = T::one() + b.clone();
    if shift.is_zero() {
        return Err(domain("b = -1: the recursion divides by 1 + b = 0"));
    }
    // the partition sum is capped; beyond it the semicircle route is equivalent
    let method = if order <= DEFAULT_ENUMERATION_CAP + 2 || b.is_negative() {
        CumulantMethod::NcLe2
    } else {
        CumulantMethod::Semicircle
    };
    let m = cumulants_to_moments(&cumulants(p, order.max(2), method)?)?;
    let m = m.values();
    let mut report = RegressionReport::new(identity::MOMENT_RECURSION);
    for k in 2..=order {
        let n = k - 2;
        let mut rhs = T::zero();
        for j in 0..=n {
            rhs = rhs
                + m[j].clone()
                    * (m[n - j].clone()
                        + a.clone() * m[n + 1 - j].clone()
                        + b.clone() * m[n + 2 - j].clone());
        }
        report.record(
            identity::MOMENT_RECURSION,
            k,
            shift.clone() * m[k].clone(),
            rhs,
        );
    }
    Ok(report)
}

/// `tau(X_s X_u^n) = (s/u) tau(X_u^{n+1})` for `1 <= n <= order`, with
/// `X_u = X_s + (X_u - X_s)` a free sum whose cumulants scale linearly in time.
pub fn verify_levy_martingale<T: Scalar>(
    l: &LevyParams<T>,
    s: &T,
    u: &T,
    order: usize,
) -> Result<RegressionReport<T>> {
    if !s.is_positive() || s >= u {
        return Err(domain(format!(
            "times must satisfy 0 < s < u (got s = {s}, u = {u})"
        )));
    }
    let unit = MeixnerParams::new(l.eta().clone(), l.sigma().clone())?;
    let base = cumulants(&unit, (order + 1).max(2), CumulantMethod::FromMoments)?;
    let scaled = |c: T| {
        CumulantSequence::new(
            base.values()
                .iter()
                .map(|v| v.clone() * c.clone())
                .collect(),
        )
    };
    let pair = FreePair::new(scaled(s.clone())?, scaled(u.clone() - s.clone())?)?;
    let m = s_moments(&pair)?;
    let ratio = s.clone() / u.clone();
    let mut report = RegressionReport::new(identity::LEVY_MARTINGALE);
    for n in 1..=order {
        let lhs = pair.joint_moment(&word(&[Letter::X], n))?;
        report.record(
            identity::LEVY_MARTINGALE,
            n,
            lhs,
            ratio.clone() * m.values()[n + 1].clone(),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn rp(a: (i64, i64), b: (i64, i64)) -> MeixnerParams<Rational> {
        MeixnerParams::new(ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn feasibility_bound() {
        assert!(build_free_pair(&ratio(1, 4), &rp((1, 1), (-1, 5)), 6).is_ok());
        let err = build_free_pair(&ratio(1, 10), &rp((1, 1), (-1, 5)), 6).unwrap_err();
        assert!(err.to_string().contains("min(alpha, 1 - alpha)"));
        assert!(build_free_pair(&ratio(1, 1), &rp((0, 1), (0, 1)), 6).is_err());
        // boundary: b = -alpha is allowed
        assert!(build_free_pair(&ratio(1, 3), &rp((0, 1), (-1, 3)), 6).is_ok());
    }

    #[test]
    fn linear_regression_examples() {
        let pair = build_free_pair(&ratio(1, 2), &rp((0, 1), (0, 1)), 4).unwrap();
        let report = verify_linear_regression(&pair, 2).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks[1].lhs, ratio(0, 1));
        let pair = build_free_pair(&ratio(1, 3), &rp((1, 1), (1, 1)), 9).unwrap();
        let report = verify_linear_regression(&pair, 8).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.max_residual(), 0.0);
        assert!(verify_linear_regression(&pair, 9).is_err());
    }

    #[test]
    fn perturbed_third_cumulant_fails_at_order_two() {
        let spec = build_free_pair(&ratio(1, 3), &rp((1, 1), (1, 1)), 8).unwrap();
        let mut x = spec.x_cumulants().values().to_vec();
        x[2] = x[2].clone() + ratio(1, 7);
        let pair = FreePair::new(CumulantSequence::new(x).unwrap(), spec.y_cumulants()).unwrap();
        let report = check_linear_regression(&pair, spec.alpha(), 6).unwrap();
        assert_eq!(report.first_failure(), Some(2));
    }

    #[test]
    fn quadratic_variance_examples() {
        let pair = build_free_pair(&ratio(1, 2), &rp((1, 1), (1, 1)), 8).unwrap();
        let report = verify_quadratic_variance(&pair, 6).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.normalizing_constant, Some(ratio(1, 8)));
        assert_eq!(report.checks[0].lhs, ratio(1, 4));
        let pair = build_free_pair(&ratio(2, 5), &rp((1, 2), (-1, 10)), 8).unwrap();
        assert!(verify_quadratic_variance(&pair, 6).unwrap().passed());
        let swapped = verify_quadratic_variance(&pair.swapped(), 6).unwrap();
        assert!(swapped.passed());
    }

    #[test]
    fn quadratic_variance_rejects_two_point_s() {
        let pair = FreePairSpec::new(
            cumulants(&rp((0, 1), (-1, 1)), 6, CumulantMethod::FromMoments).unwrap(),
            ratio(1, 2),
        )
        .unwrap();
        assert!(verify_quadratic_variance(&pair, 2).is_err());
    }

    #[test]
    fn mixed_cumulant_examples() {
        let pair = build_free_pair(&ratio(1, 3), &rp((2, 1), (1, 1)), 8).unwrap();
        let report = verify_mixed_cumulants(&pair, 8).unwrap();
        assert!(report.passed(), "{report}");
        let r3 = report
            .checks
            .iter()
            .find(|c| c.identity == identity::MIXED_CUMULANT_VV && c.order == 3);
        assert_eq!(r3.unwrap().lhs, ratio(2, 9) * ratio(2, 1));
    }

    #[test]
    fn moment_recursion_examples() {
        for (a, b) in [((0, 1), (0, 1)), ((1, 1), (1, 1)), ((0, 1), (-1, 2))] {
            let report = verify_moment_recursion(&rp(a, b), 12).unwrap();
            assert!(report.passed(), "{report}");
        }
        assert!(verify_moment_recursion(&rp((0, 1), (-1, 1)), 6).is_err());
    }

    #[test]
    fn levy_martingale_examples() {
        let l = LevyParams::new(ratio(0, 1), ratio(0, 1)).unwrap();
        let report = verify_levy_martingale(&l, &ratio(1, 2), &ratio(2, 1), 6).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks[0].lhs, ratio(1, 2));
        let l = LevyParams::new(ratio(1, 1), ratio(1, 1)).unwrap();
        assert!(verify_levy_martingale(&l, &ratio(1, 1), &ratio(3, 1), 6)
            .unwrap()
            .passed());
        assert!(verify_levy_martingale(&l, &ratio(3, 1), &ratio(3, 1), 6).is_err());
        assert!(verify_levy_martingale(&l, &ratio(0, 1), &ratio(3, 1), 6).is_err());
    }

    #[test]
    fn float_mode_tolerance() {
        let p = MeixnerParams::new(0.3, 0.7).unwrap();
        let pair = build_free_pair(&0.35, &p, 8).unwrap();
        assert!(verify_quadratic_variance(&pair, 6).unwrap().passed());
        assert!(verify_linear_regression(&pair, 6).unwrap().passed());
    }
}
