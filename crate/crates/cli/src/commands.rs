//! One function per subcommand. Each returns the output and whether every
//! check passed; errors are usage or domain problems.

use num_complex::Complex64;
use serde_json::{json, Value};

use free_meixner::cumulant_calculus::{
    convolution_power, cumulants_to_moments, dilate, q_cumulants, PowerMode,
};
use free_meixner::meixner::{
    self, cauchy_transform, classify_with_reasons, levy_marginal, orthogonal_polynomial,
    r_transform, CumulantMethod, LevyParams, MeixnerLaw, MeixnerParams,
};
use free_meixner::ncpart::DEFAULT_ENUMERATION_CAP;
use free_meixner::numerics::{gauss_rule, stieltjes_invert};
use free_meixner::regression_verifier::{
    build_free_pair, verify_levy_martingale, verify_linear_regression, verify_mixed_cumulants,
    verify_moment_recursion, verify_quadratic_variance, RegressionReport,
};
use free_meixner::{Rational, Scalar};

use crate::input::{all_exact, FromNumber, Number};
use crate::output::{float, scalar, Output, Table};
use crate::{Law, Suite};

pub type Outcome = Result<(Output, bool), String>;

/// Largest order accepted by the sequence commands.
const CLI_ORDER_CAP: usize = 24;

const MOMENT_RECURSION: &str = "moment recursion of the free Meixner family";
const MOMENT_CUMULANT: &str = "free moment-cumulant relation";
const PARTITION_SUM: &str =
    "cumulants as sums over non-crossing partitions with blocks of size <= 2";
const SEMICIRCLE_ROUTE: &str =
    "cumulants as moments of the semicircle law with mean a and variance b";
const Q_RECURRENCE: &str = "q-deformed cumulant recurrence";
const DENSITY: &str = "absolutely continuous part of the free Meixner law";
const CAUCHY: &str = "Cauchy-Stieltjes transform and its poles";
const R_TRANSFORM: &str = "R-transform of the free Meixner law";
const TYPES: &str = "six-type classification in the (a, b) half-plane";
const POWER: &str = "free convolution powers scale cumulants";
const LEVY: &str = "free Levy marginals are dilated free Meixner laws";
const ORTHOGONALITY: &str = "orthogonality of the monic three-term recurrence polynomials";

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn params<T: FromNumber>(law: &Law) -> Result<MeixnerParams<T>, String> {
    MeixnerParams::new(T::from_number(&law.a), T::from_number(&law.b))
        .map_err(|e| format!("invalid parameters (a = {}, b = {}): {e}", law.a, law.b))
}

fn law_params(out: &mut Output, law: &Law, exact: bool) {
    out.param("a", law.a.to_string())
        .param("b", law.b.to_string())
        .param("exact", exact);
}

fn check_order(n: usize) -> Result<(), String> {
    if n > CLI_ORDER_CAP {
        return Err(format!(
            "order {n} exceeds the command-line cap {CLI_ORDER_CAP}"
        ));
    }
    Ok(())
}

fn sequence_table<T: Scalar>(name: &'static str, values: &[T], first_index: usize) -> Table {
    let mut t = Table::new(name, &["n", "value"]);
    for (k, v) in values.iter().enumerate() {
        t.push(vec![json!(k + first_index), scalar(v)]);
    }
    t
}

fn atoms_table(atoms: &[meixner::Atom]) -> Table {
    let mut t = Table::new("atoms", &["location", "weight"]);
    for atom in atoms {
        t.push(vec![float(atom.location), float(atom.weight)]);
    }
    t
}

pub fn density(law: &Law, xmin: Option<f64>, xmax: Option<f64>, points: usize) -> Outcome {
    if points < 2 {
        return Err(format!("need at least 2 grid points (got {points})"));
    }
    let p = params::<f64>(law)?;
    let info = MeixnerLaw::new(&p);
    let (lo, hi) = info.support();
    let (xmin, xmax) = (xmin.unwrap_or(lo), xmax.unwrap_or(hi));
    if xmin.is_nan() || xmax.is_nan() || xmin >= xmax {
        return Err(format!(
            "empty grid: xmin = {xmin} must be below xmax = {xmax}"
        ));
    }
    let mut out = Output::new("density");
    law_params(&mut out, law, false);
    out.param("xmin", float(xmin))
        .param("xmax", float(xmax))
        .param("points", points);
    let two_point = *p.b() == -1.0;
    if two_point {
        out.meta("support", Value::Array(vec![]));
    } else {
        out.meta("support", json!([float(lo), float(hi)]));
    }
    out.meta("atom_mass", float(info.atom_mass()));
    let mut rows = Table::new("density", &["x", "density"]);
    if !two_point {
        for k in 0..points {
            let x = xmin + (xmax - xmin) * k as f64 / (points - 1) as f64;
            rows.push(vec![float(x), float(info.density(x).map_err(fail)?)]);
        }
    }
    out.tables.push(rows);
    out.tables.push(atoms_table(info.atoms()));
    out.identities.extend([DENSITY, CAUCHY]);
    Ok((out, true))
}

pub fn moments(law: &Law, n: usize) -> Outcome {
    check_order(n)?;
    let exact = all_exact([&law.a, &law.b]);
    let mut out = Output::new("moments");
    law_params(&mut out, law, exact);
    out.param("n", n);
    let table = if exact {
        moments_table::<Rational>(law, n)?
    } else {
        moments_table::<f64>(law, n)?
    };
    out.tables.push(table);
    out.identities.push(MOMENT_RECURSION);
    Ok((out, true))
}

fn moments_table<T: FromNumber>(law: &Law, n: usize) -> Result<Table, String> {
    let m = meixner::moments(&params::<T>(law)?, n).map_err(fail)?;
    Ok(sequence_table("moments", m.values(), 0))
}

pub fn cumulants(law: &Law, n: usize, method: &str, q: Option<&Number>) -> Outcome {
    check_order(n)?;
    let mut numbers = vec![&law.a, &law.b];
    numbers.extend(q);
    let exact = all_exact(numbers);
    let mut out = Output::new("cumulants");
    law_params(&mut out, law, exact);
    out.param("n", n);
    let table = match q {
        Some(q) => {
            out.param("q", q.to_string())
                .param("method", "q_recurrence");
            out.identities.push(Q_RECURRENCE);
            if exact {
                q_table::<Rational>(law, q, n)?
            } else {
                q_table::<f64>(law, q, n)?
            }
        }
        None => {
            let method: CumulantMethod = method.parse().map_err(fail)?;
            if method == CumulantMethod::NcLe2 && n > DEFAULT_ENUMERATION_CAP + 2 {
                return Err(format!(
                    "method nc_le2 enumerates partitions and is capped at n = {}",
                    DEFAULT_ENUMERATION_CAP + 2
                ));
            }
            out.param("method", format!("{method:?}"));
            out.identities.push(match method {
                CumulantMethod::NcLe2 => PARTITION_SUM,
                CumulantMethod::Semicircle => SEMICIRCLE_ROUTE,
                CumulantMethod::FromMoments => MOMENT_CUMULANT,
            });
            if exact {
                cumulant_table::<Rational>(law, n, method)?
            } else {
                cumulant_table::<f64>(law, n, method)?
            }
        }
    };
    out.tables.push(table);
    Ok((out, true))
}

fn cumulant_table<T: FromNumber>(
    law: &Law,
    n: usize,
    method: CumulantMethod,
) -> Result<Table, String> {
    let r = meixner::cumulants(&params::<T>(law)?, n, method).map_err(fail)?;
    Ok(sequence_table("cumulants", r.values(), 1))
}

fn q_table<T: FromNumber>(law: &Law, q: &Number, n: usize) -> Result<Table, String> {
    let p = params::<T>(law)?;
    let r = q_cumulants(p.a(), p.b(), &T::from_number(q), n).map_err(fail)?;
    Ok(sequence_table("cumulants", r.values(), 1))
}

pub fn classify(law: &Law) -> Outcome {
    let exact = all_exact([&law.a, &law.b]);
    let (label, reasons) = if exact {
        classify_with_reasons(&params::<Rational>(law)?)
    } else {
        classify_with_reasons(&params::<f64>(law)?)
    };
    let mut out = Output::new("classify");
    law_params(&mut out, law, exact);
    out.meta("type", label.name())
        .meta("predicates", json!(reasons));
    out.identities.push(TYPES);
    Ok((out, true))
}

pub fn atoms(law: &Law) -> Outcome {
    let p = params::<f64>(law)?;
    let info = MeixnerLaw::new(&p);
    let mut out = Output::new("atoms");
    law_params(&mut out, law, false);
    out.meta("atom_mass", float(info.atom_mass()));
    out.tables.push(atoms_table(info.atoms()));
    out.identities.push(CAUCHY);
    Ok((out, true))
}

pub fn convolve_power(law: &Law, t: &Number, n: usize, dilation: Option<&Number>) -> Outcome {
    check_order(n)?;
    if n == 0 {
        return Err("order must be at least 1".into());
    }
    let mut numbers = vec![&law.a, &law.b, t];
    numbers.extend(dilation);
    let exact = all_exact(numbers);
    let mut out = Output::new("convolve-power");
    law_params(&mut out, law, exact);
    out.param("t", t.to_string()).param("n", n);
    if let Some(d) = dilation {
        out.param("dilation", d.to_string());
    }
    let table = if exact {
        power_table::<Rational>(law, t, n, dilation)?
    } else {
        power_table::<f64>(law, t, n, dilation)?
    };
    out.tables.push(table);
    out.identities.extend([POWER, MOMENT_CUMULANT]);
    Ok((out, true))
}

fn power_table<T: FromNumber>(
    law: &Law,
    t: &Number,
    n: usize,
    dilation: Option<&Number>,
) -> Result<Table, String> {
    let p = params::<T>(law)?;
    let base = meixner::cumulants(&p, n.max(2), CumulantMethod::FromMoments).map_err(fail)?;
    let mut r = convolution_power(&base, &T::from_number(t), PowerMode::Law).map_err(fail)?;
    if let Some(d) = dilation {
        r = dilate(&r, &T::from_number(d));
    }
    let m = cumulants_to_moments(&r).map_err(fail)?;
    Ok(sequence_table("moments", &m.values()[..=n], 0))
}

pub fn levy(eta: &Number, sigma: &Number, t: &Number, n: usize) -> Outcome {
    check_order(n)?;
    let exact = all_exact([eta, sigma, t]);
    let mut out = Output::new("levy");
    out.param("eta", eta.to_string())
        .param("sigma", sigma.to_string())
        .param("t", t.to_string())
        .param("n", n)
        .param("exact", exact);
    if exact {
        levy_typed::<Rational>(&mut out, eta, sigma, t, n)?;
    } else {
        levy_typed::<f64>(&mut out, eta, sigma, t, n)?;
    }
    out.identities.extend([LEVY, MOMENT_CUMULANT]);
    Ok((out, true))
}

fn levy_typed<T: FromNumber>(
    out: &mut Output,
    eta: &Number,
    sigma: &Number,
    t: &Number,
    n: usize,
) -> Result<(), String> {
    let l = LevyParams::new(T::from_number(eta), T::from_number(sigma)).map_err(fail)?;
    let m = levy_marginal(&l, &T::from_number(t)).map_err(fail)?;
    out.meta("a", float(m.a()))
        .meta("a_squared", scalar(&m.a_squared()))
        .meta("b", scalar(&m.b()))
        .meta("dilation", float(m.dilation()))
        .meta("dilation_squared", scalar(m.time()));
    if let Some(exact) = m.exact_params() {
        out.meta("a_exact", scalar(exact.a()));
    }
    let moments = cumulants_to_moments(&m.cumulants(n.max(2)).map_err(fail)?).map_err(fail)?;
    out.tables
        .push(sequence_table("moments", &moments.values()[..=n], 0));
    Ok(())
}

pub fn transform(law: &Law, z: Complex64, eps: Option<f64>) -> Outcome {
    let p = params::<f64>(law)?;
    let mut out = Output::new("transform");
    law_params(&mut out, law, false);
    out.param("z", json!([float(z.re), float(z.im)]));
    let g = cauchy_transform(&p, z).map_err(fail)?;
    out.meta("cauchy_transform", json!([float(g.re), float(g.im)]));
    match r_transform(&p, z) {
        Ok(r) => out.meta("r_transform", json!([float(r.re), float(r.im)])),
        Err(e) => out
            .meta("r_transform", Value::Null)
            .meta("r_transform_note", e.to_string()),
    };
    if let Some(eps) = eps {
        out.param("eps", float(eps));
        out.meta(
            "stieltjes_inversion",
            float(stieltjes_invert(&p, z.re, eps).map_err(fail)?),
        );
        out.meta("density", float(meixner::density(&p, z.re).map_err(fail)?));
    }
    out.identities.extend([CAUCHY, R_TRANSFORM]);
    Ok((out, true))
}

#[derive(Debug, Clone)]
pub struct VerifyInputs {
    pub a: Option<Number>,
    pub b: Option<Number>,
    pub alpha: Option<Number>,
    pub eta: Option<Number>,
    pub sigma: Option<Number>,
    pub s: Option<Number>,
    pub u: Option<Number>,
    pub n: usize,
}

impl VerifyInputs {
    fn law(&self) -> Option<Law> {
        Some(Law {
            a: self.a.clone()?,
            b: self.b.clone()?,
        })
    }

    fn levy(&self) -> Option<(&Number, &Number, &Number, &Number)> {
        Some((
            self.eta.as_ref()?,
            self.sigma.as_ref()?,
            self.s.as_ref()?,
            self.u.as_ref()?,
        ))
    }

    fn numbers(&self) -> impl Iterator<Item = &Number> {
        [
            &self.a,
            &self.b,
            &self.alpha,
            &self.eta,
            &self.sigma,
            &self.s,
            &self.u,
        ]
        .into_iter()
        .flatten()
    }
}

fn require<T>(value: Option<T>, suite: &str, flags: &str) -> Result<T, String> {
    value.ok_or_else(|| format!("suite {suite} needs {flags}"))
}

pub fn verify(suite: Suite, inputs: &VerifyInputs) -> Outcome {
    check_order(inputs.n)?;
    let exact = all_exact(inputs.numbers());
    let mut out = Output::new("verify");
    out.param("suite", format!("{suite:?}").to_lowercase())
        .param("n", inputs.n)
        .param("exact", exact);
    for (key, v) in [
        ("a", &inputs.a),
        ("b", &inputs.b),
        ("alpha", &inputs.alpha),
        ("eta", &inputs.eta),
    ]
    .into_iter()
    .chain([("sigma", &inputs.sigma), ("s", &inputs.s), ("u", &inputs.u)])
    {
        if let Some(v) = v {
            out.param(key, v.to_string());
        }
    }
    let passed = if exact {
        verify_typed::<Rational>(suite, inputs, &mut out)?
    } else {
        verify_typed::<f64>(suite, inputs, &mut out)?
    };
    Ok((out, passed))
}

fn verify_typed<T: FromNumber>(
    suite: Suite,
    inputs: &VerifyInputs,
    out: &mut Output,
) -> Result<bool, String> {
    let n = inputs.n;
    let mut reports: Vec<RegressionReport<T>> = Vec::new();
    let mut extra_checks: Vec<(&'static str, usize, f64, bool)> = Vec::new();
    let run_all = suite == Suite::All;
    if run_all && inputs.law().is_none() && inputs.levy().is_none() {
        return Err("suite all needs --a and --b, or --eta, --sigma, --s and --u".into());
    }

    if suite == Suite::Regression || (run_all && inputs.alpha.is_some() && inputs.law().is_some()) {
        let law = require(inputs.law(), "regression", "--a and --b")?;
        let alpha = T::from_number(require(inputs.alpha.as_ref(), "regression", "--alpha")?);
        let p = params::<T>(&law)?;
        let pair =
            build_free_pair(&alpha, &p, n + 2).map_err(|e| format!("configuration error: {e}"))?;
        reports.push(verify_linear_regression(&pair, n).map_err(fail)?);
        reports.push(verify_quadratic_variance(&pair, n).map_err(fail)?);
        reports.push(verify_mixed_cumulants(&pair, n.min(DEFAULT_ENUMERATION_CAP)).map_err(fail)?);
        out.identities.extend([
            "linear regression tau(X S^n) = alpha m_{n+1}",
            "quadratic conditional variance tau(V^2 S^n) = C (m_n + a m_{n+1} + b m_{n+2})",
            "mixed cumulants R_n(V, S, ..., S) = 0 and R_n(V, V, S, ..., S) = alpha beta R_n(S)",
        ]);
    }
    if suite == Suite::Recursion || (run_all && inputs.law().is_some()) {
        let law = require(inputs.law(), "recursion", "--a and --b")?;
        let p = params::<T>(&law)?;
        if *p.b() == -T::one() {
            if !run_all {
                return Err("the moment recursion divides by 1 + b and needs b > -1".into());
            }
        } else {
            reports.push(verify_moment_recursion(&p, n).map_err(fail)?);
            out.identities.push(MOMENT_RECURSION);
        }
    }
    if suite == Suite::Orthogonality || (run_all && inputs.law().is_some()) {
        let law = require(inputs.law(), "orthogonality", "--a and --b")?;
        let p = params::<f64>(&law)?;
        extra_checks.extend(orthogonality_checks(&p, n)?);
        out.identities.push(ORTHOGONALITY);
    }
    if suite == Suite::Levy || (run_all && inputs.levy().is_some()) {
        let (eta, sigma, s, u) = require(inputs.levy(), "levy", "--eta, --sigma, --s and --u")?;
        let l = LevyParams::new(T::from_number(eta), T::from_number(sigma)).map_err(fail)?;
        reports.push(
            verify_levy_martingale(&l, &T::from_number(s), &T::from_number(u), n)
                .map_err(|e| format!("configuration error: {e}"))?,
        );
        out.identities
            .push("martingale property tau(X_s X_u^n) = (s/u) tau(X_u^{n+1})");
    }

    let mut summary = Vec::new();
    let mut checks = Table::new(
        "checks",
        &["identity", "order", "lhs", "rhs", "residual", "pass"],
    );
    for r in &reports {
        summary.push(json!({
            "identity": r.identity,
            "passed": r.passed(),
            "max_order": r.max_order(),
            "max_residual": float(r.max_residual()),
            "first_failure": r.first_failure(),
        }));
        if let Some(c) = &r.normalizing_constant {
            out.meta("normalizing_constant", scalar(c));
        }
        for c in &r.checks {
            checks.push(vec![
                json!(c.identity),
                json!(c.order),
                scalar(&c.lhs),
                scalar(&c.rhs),
                scalar(&c.residual),
                json!(c.pass),
            ]);
        }
    }
    if !extra_checks.is_empty() {
        let passed = extra_checks.iter().all(|c| c.3);
        let worst = extra_checks.iter().map(|c| c.2).fold(0.0, f64::max);
        summary.push(json!({
            "identity": "orthogonality",
            "passed": passed,
            "max_order": n,
            "max_residual": float(worst),
            "first_failure": extra_checks.iter().filter(|c| !c.3).map(|c| c.1).min(),
        }));
        for (identity, order, residual, pass) in &extra_checks {
            checks.push(vec![
                json!(identity),
                json!(order),
                Value::Null,
                Value::Null,
                float(*residual),
                json!(pass),
            ]);
        }
    }
    let passed = reports.iter().all(RegressionReport::passed) && extra_checks.iter().all(|c| c.3);
    out.meta("passed", passed)
        .meta("summary", Value::Array(summary));
    out.tables.push(checks);
    Ok(passed)
}

/// `int p_i p_j d mu` for `i < j <= n` should vanish and `int p_i^2 d mu`
/// should equal `(1 + b)^{i - 1}`; evaluated with an `(n + 1)`-node Gauss rule.
fn orthogonality_checks(
    p: &MeixnerParams<f64>,
    n: usize,
) -> Result<Vec<(&'static str, usize, f64, bool)>, String> {
    let rule = gauss_rule(p, n + 1).map_err(fail)?;
    let mut out = Vec::new();
    for j in 1..=n {
        let mut worst = 0f64;
        let mut ok = true;
        for i in 0..=j {
            let prod = |x: f64| orthogonal_polynomial(p, i, &x) * orthogonal_polynomial(p, j, &x);
            let scale = rule.integrate(|x| prod(x).abs()).max(1.0);
            let target = if i == j {
                (1.0 + p.b()).powi(j as i32 - 1)
            } else {
                0.0
            };
            let residual = (rule.integrate(prod) - target).abs();
            ok &= residual <= 1e-9 * scale;
            worst = worst.max(residual);
        }
        out.push(("orthogonality", j, worst, ok));
    }
    Ok(out)
}
