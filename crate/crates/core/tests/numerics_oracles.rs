mod common;

use common::rat;
use free_meixner::meixner::{density, moments, support, MeixnerLaw, MeixnerParams};
use free_meixner::numerics::{
    gauss_rule, integrate_against_law, integrate_fixed_panels, stieltjes_invert, QuadratureRule,
};
use proptest::prelude::*;

fn float_grid() -> Vec<MeixnerParams<f64>> {
    [
        (0.0, 0.0),
        (1.0, 0.0),
        (2.0, 0.0),
        (3.0, 1.0),
        (2.0, 1.0),
        (1.0, 1.0),
        (0.5, -0.3),
        (0.0, -0.5),
        (0.0, -1.0),
    ]
    .into_iter()
    .map(|(a, b)| MeixnerParams::new(a, b).unwrap())
    .collect()
}

#[test]
fn two_point_rule_closed_form() {
    // the 2x2 Jacobi matrix [[0, 1], [1, a]] has eigenvalues (a -+ sqrt(a^2 + 4)) / 2
    // and first-component weights (x - a) / (2x - a)
    for a in [0.0, 0.7, -3.0] {
        let rule = gauss_rule(&MeixnerParams::new(a, -1.0).unwrap(), 2).unwrap();
        let s = (a * a + 4.0f64).sqrt();
        for (k, x) in [(a - s) / 2.0, (a + s) / 2.0].into_iter().enumerate() {
            assert!((rule.nodes()[k] - x).abs() < 1e-12);
            assert!((rule.weights()[k] - (x - a) / (2.0 * x - a)).abs() < 1e-12);
        }
    }
}

#[test]
fn gauss_exactness_with_exact_moments() {
    for (a, b) in [
        ((0, 1), (0, 1)),
        ((2, 1), (0, 1)),
        ((1, 1), (1, 1)),
        ((1, 2), (-3, 10)),
        ((0, 1), (-1, 1)),
    ] {
        let p = MeixnerParams::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap();
        let rule = gauss_rule(&p, 9).unwrap();
        let m = moments(&p, 17).unwrap().to_f64();
        for k in 0..=17u32 {
            let scale = rule.integrate(|x| x.abs().powi(k as i32)).max(1.0);
            assert!(
                (rule.moment(k) - m.values()[k as usize]).abs() <= 1e-10 * scale,
                "{p} m_{k}"
            );
        }
    }
}

#[test]
fn gauss_rule_agrees_with_panel_quadrature() {
    for p in float_grid() {
        let law = MeixnerLaw::new(&p);
        let rule = gauss_rule(&p, 40).unwrap();
        for f in [
            |x: f64| x.powi(5) - 2.0 * x,
            |x: f64| (x * x + 1.0).recip(),
            |x: f64| (0.3 * x).cos(),
        ] {
            let panel = integrate_against_law(&law, f, 8).unwrap().value;
            // not polynomials: 40 nodes agree to well within this bound
            assert!(
                (rule.integrate(f) - panel).abs() < 1e-4,
                "{p}: {} vs {panel}",
                rule.integrate(f)
            );
        }
        let poly = |x: f64| x.powi(5) - 2.0 * x;
        assert!(
            (rule.integrate(poly) - integrate_against_law(&law, poly, 8).unwrap().value).abs()
                < 1e-9
        );
    }
}

#[test]
fn error_estimates_shrink_with_panels() {
    // the effective integrand is f times the density; skip laws whose density
    // denominator nearly vanishes at an endpoint, such as (1/2, -3/10), where
    // the pre-asymptotic estimates oscillate
    let well_separated = |p: &MeixnerParams<f64>| {
        let (lo, hi) = support(p);
        (0..=100)
            .map(|k| lo + (hi - lo) * k as f64 / 100.0)
            .all(|x| p.b() * x * x + p.a() * x + 1.0 > 0.1)
    };
    for p in float_grid()
        .into_iter()
        .filter(|p| *p.b() > -1.0 && well_separated(p))
    {
        let law = MeixnerLaw::new(&p);
        let f = |x: f64| (x.sin() + 1.0) * x * x;
        let errors: Vec<f64> = [1, 2, 4, 8, 16, 32, 64]
            .iter()
            .map(|&n| integrate_fixed_panels(&law, f, n).unwrap().error)
            .collect();
        for w in errors.windows(2) {
            // below 1e-12 the estimate is rounding noise
            assert!(w[1] <= w[0] || w[1] < 1e-12, "{p}: {errors:?}");
        }
    }
}

#[test]
fn near_singular_weight_still_converges() {
    let law = MeixnerLaw::new(&MeixnerParams::new(0.5, -0.3).unwrap());
    let v = integrate_against_law(&law, |x| x * x, 1).unwrap();
    assert!((v.value - 1.0).abs() < 1e-9);
}

#[test]
fn inversion_error_is_linear_in_eps() {
    for p in float_grid().into_iter().filter(|p| *p.b() > -1.0) {
        let (lo, hi) = support(&p);
        let points: Vec<f64> = [0.2, 0.35, 0.5, 0.65, 0.8]
            .iter()
            .map(|f| lo + f * (hi - lo))
            .collect();
        // fit C at eps = 1e-3, then require the bound at smaller eps
        let gap = |x: f64, eps: f64| {
            (stieltjes_invert(&p, x, eps).unwrap() - density(&p, x).unwrap()).abs()
        };
        let c = points
            .iter()
            .map(|&x| gap(x, 1e-3) / 1e-3)
            .fold(0.0, f64::max)
            .max(1e-3);
        for eps in [1e-5, 1e-7] {
            for &x in &points {
                assert!(
                    gap(x, eps) <= 2.0 * c * eps + 1e-12,
                    "{p}, x = {x}, eps = {eps}"
                );
            }
        }
    }
}

#[test]
fn inversion_detects_atoms() {
    let p = MeixnerParams::new(2.0, 0.0).unwrap();
    for eps in [1e-4, 1e-6, 1e-8] {
        let v = stieltjes_invert(&p, -0.5, eps).unwrap();
        assert!(
            (v * std::f64::consts::PI * eps / 0.75 - 1.0).abs() < 1e-2,
            "eps = {eps}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rules_are_probability_laws(a in -3.0f64..3.0, b in -1.0f64..3.0, n in 1usize..14) {
        let rule = gauss_rule(&MeixnerParams::new(a, b).unwrap(), n).unwrap();
        let rebuilt = QuadratureRule::new(rule.nodes().to_vec(), rule.weights().to_vec());
        prop_assert!(rebuilt.is_ok());
        prop_assert!((rule.moment(1)).abs() < 1e-12);
        if n >= 2 {
            prop_assert!((rule.moment(2) - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn continuous_mass_plus_atoms_is_one(a in -3.0f64..3.0, b in -0.95f64..3.0) {
        let law = MeixnerLaw::new(&MeixnerParams::new(a, b).unwrap());
        let total = integrate_against_law(&law, |_| 1.0, 4).unwrap();
        prop_assert!((total.value - 1.0).abs() < 1e-9);
    }
}
