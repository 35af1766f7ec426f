mod common;

use std::f64::consts::PI;

use common::{jacobi_moments, rat};
use free_meixner::cumulant_calculus::cumulants_to_moments;
use free_meixner::meixner::{
    atoms, binomial_decomposition, cauchy_transform, classify, cumulants, density, moments,
    orthogonal_polynomial, semicircle_moments, support, CumulantMethod, MeixnerLaw, MeixnerParams,
    MeixnerType, SemicircleParams,
};
use free_meixner::numerics::{gauss_rule, integrate_against_law};
use free_meixner::scalar::{binomial, catalan};
use free_meixner::{Rational, Scalar};
use num_complex::Complex64;
use num_traits::Signed;
use proptest::prelude::*;

fn rp(a: (i64, i64), b: (i64, i64)) -> MeixnerParams<Rational> {
    MeixnerParams::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
}

/// Two or more points per type, including the two-point boundary.
fn grid() -> Vec<MeixnerParams<Rational>> {
    [
        ((0, 1), (0, 1)),
        ((1, 1), (0, 1)),
        ((2, 1), (0, 1)),
        ((-3, 2), (0, 1)),
        ((3, 1), (1, 1)),
        ((-5, 2), (1, 2)),
        ((2, 1), (1, 1)),
        ((1, 1), (1, 4)),
        ((1, 1), (1, 1)),
        ((0, 1), (1, 2)),
        ((1, 2), (-3, 10)),
        ((0, 1), (-1, 2)),
        ((3, 1), (-1, 2)),
        ((0, 1), (-1, 1)),
        ((1, 1), (-1, 1)),
    ]
    .into_iter()
    .map(|(a, b)| rp(a, b))
    .collect()
}

#[test]
fn moments_count_weighted_motzkin_paths() {
    for p in grid() {
        let ours = moments(&p, 14).unwrap();
        assert_eq!(
            ours.values(),
            jacobi_moments(p.a(), p.b(), 14).as_slice(),
            "{p}"
        );
    }
}

#[test]
fn three_way_cumulant_agreement() {
    for p in grid() {
        let nc = cumulants(&p, 12, CumulantMethod::NcLe2).unwrap();
        assert_eq!(
            nc,
            cumulants(&p, 12, CumulantMethod::FromMoments).unwrap(),
            "{p}"
        );
        if !p.b().is_negative() {
            assert_eq!(
                nc,
                cumulants(&p, 12, CumulantMethod::Semicircle).unwrap(),
                "{p}"
            );
        } else {
            assert!(cumulants(&p, 12, CumulantMethod::Semicircle).is_err());
        }
    }
}

#[test]
fn semicircle_moments_are_shifted_catalan() {
    // mean c, variance v: E(c + sqrt(v) W)^n with W standard semicircle
    let w = SemicircleParams::new(rat(-2, 3), rat(5, 4)).unwrap();
    let ours = semicircle_moments(&w, 10).unwrap();
    for n in 0..=10 {
        let mut expected = Rational::from_i64(0);
        for k in 0..=n / 2 {
            expected += binomial::<Rational>(n, 2 * k)
                * catalan::<Rational>(k)
                * rat(5, 4).powi(k as u32)
                * rat(-2, 3).powi((n - 2 * k) as u32);
        }
        assert_eq!(ours.values()[n], expected);
    }
}

#[test]
fn cauchy_transform_matches_quadrature_plus_atoms() {
    for (a, b) in [
        (1.0, 1.0),
        (2.0, 0.0),
        (0.5, -0.3),
        (3.0, -0.5),
        (0.0, -1.0),
        (3.0, 1.0),
    ] {
        let p = MeixnerParams::new(a, b).unwrap();
        let law = MeixnerLaw::new(&p);
        for z in [
            Complex64::new(3.0, 0.5),
            Complex64::new(-0.3, 1.2),
            Complex64::new(8.0, 0.0),
        ] {
            let re = integrate_against_law(&law, |x| (1.0 / (z - x)).re, 8).unwrap();
            let im = integrate_against_law(&law, |x| (1.0 / (z - x)).im, 8).unwrap();
            let g = cauchy_transform(&p, z).unwrap();
            assert!(
                (g - Complex64::new(re.value, im.value)).norm() < 1e-8,
                "({a}, {b}) at {z}: {g}"
            );
        }
    }
}

#[test]
fn total_mass_is_one() {
    for p in grid() {
        let law = MeixnerLaw::new(&p);
        let mass = integrate_against_law(&law, |_| 1.0, 8).unwrap();
        assert!((mass.value - 1.0).abs() < 1e-9, "{p}: {}", mass.value);
        assert!(mass.value - law.atom_mass() > -1e-12);
    }
}

#[test]
fn quadrature_moments_match_recursion() {
    for p in grid() {
        let law = MeixnerLaw::new(&p);
        let exact = moments(&p, 16).unwrap().to_f64();
        for k in 0..=16 {
            let v = integrate_against_law(&law, |x| x.powi(k), 8).unwrap().value;
            let m = exact.values()[k as usize];
            let scale = integrate_against_law(&law, |x| x.abs().powi(k), 8)
                .unwrap()
                .value
                .max(1.0);
            assert!((v - m).abs() <= 1e-8 * scale, "{p}: m_{k} {v} vs {m}");
        }
    }
}

#[test]
fn orthogonality_and_norms() {
    for p in grid() {
        let rule = gauss_rule(&p, 12).unwrap();
        let pf = p.to_f64();
        let b = pf.b();
        for i in 0..=10 {
            for j in 0..=10 {
                let v = rule.integrate(|x| {
                    orthogonal_polynomial(&pf, i, &x) * orthogonal_polynomial(&pf, j, &x)
                });
                let scale = rule.integrate(|x| {
                    (orthogonal_polynomial(&pf, i, &x) * orthogonal_polynomial(&pf, j, &x)).abs()
                });
                if i != j {
                    assert!(v.abs() < 1e-9 * scale.max(1.0), "{p}: <p_{i}, p_{j}> = {v}");
                } else if i >= 1 {
                    let norm = (1.0 + b).powi(i as i32 - 1);
                    assert!(
                        (v - norm).abs() < 1e-9 * scale.max(1.0),
                        "{p}: |p_{i}|^2 = {v} vs {norm}"
                    );
                }
            }
        }
    }
}

#[test]
fn orthogonal_polynomials_exact_via_moments() {
    // integral p_2 p_3 d mu as a linear functional of exact moments
    let p = rp((1, 2), (-1, 10));
    let m = moments(&p, 5).unwrap();
    let coeffs = |deg: usize| {
        // monomial coefficients from the three-term recurrence
        let mut polys: Vec<Vec<Rational>> = vec![vec![rat(1, 1)], vec![rat(0, 1), rat(1, 1)]];
        for n in 1..deg {
            let (lo, hi) = (&polys[n - 1], &polys[n]);
            let beta = if n == 1 {
                rat(1, 1)
            } else {
                rat(1, 1) + p.b().clone()
            };
            let alpha = p.a().clone();
            let mut next = vec![rat(0, 1); n + 2];
            for (k, c) in hi.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - alpha.clone() * c.clone();
            }
            for (k, c) in lo.iter().enumerate() {
                next[k] = next[k].clone() - beta.clone() * c.clone();
            }
            polys.push(next);
        }
        polys[deg].clone()
    };
    let (p2, p3) = (coeffs(2), coeffs(3));
    let mut inner = rat(0, 1);
    for (i, c) in p2.iter().enumerate() {
        for (j, d) in p3.iter().enumerate() {
            inner += c.clone() * d.clone() * m.values()[i + j].clone();
        }
    }
    assert_eq!(inner, rat(0, 1));
    let x = rat(7, 3);
    let direct: Rational = p3
        .iter()
        .enumerate()
        .map(|(k, c)| c.clone() * x.powi(k as u32))
        .sum();
    assert_eq!(orthogonal_polynomial(&p, 3, &x), direct);
}

#[test]
fn nevanlinna_property() {
    for p in grid() {
        for re in [-6.0, -1.3, 0.0, 0.7, 2.2, 5.0] {
            for im in [1e-4, 0.1, 1.0, 10.0] {
                let g = cauchy_transform(&p, Complex64::new(re, im)).unwrap();
                assert!(g.im <= 0.0, "{p} at {re}+{im}i: {g}");
            }
        }
    }
}

#[test]
fn free_poisson_atom_matches_marchenko_pastur() {
    // a (P - 1/a^2) with P Marchenko-Pastur of rate 1/a^2 < 1: atom at -1/a of mass 1 - 1/a^2
    for a in [1.5f64, 2.0, -3.0, 4.0] {
        let found = atoms(&MeixnerParams::new(a, 0.0).unwrap());
        assert_eq!(found.len(), 1);
        assert!((found[0].location + 1.0 / a).abs() < 1e-12);
        assert!((found[0].weight - (1.0 - 1.0 / (a * a))).abs() < 1e-12);
    }
    assert!(atoms(&MeixnerParams::new(0.5, 0.0).unwrap()).is_empty());
}

#[test]
fn density_closed_forms() {
    // semicircle and arcsine
    let semi = MeixnerParams::new(0.0, 0.0).unwrap();
    let arcsine = MeixnerParams::new(0.0, -0.5).unwrap();
    for x in [-1.9, -0.4, 0.0, 1.1] {
        assert!((density(&semi, x).unwrap() - (4.0 - x * x).sqrt() / (2.0 * PI)).abs() < 1e-14);
    }
    for x in [-1.3, 0.0, 0.9] {
        assert!((density(&arcsine, x).unwrap() - 1.0 / (PI * (2.0 - x * x).sqrt())).abs() < 1e-13);
    }
    assert_eq!(support(&arcsine), (-2f64.sqrt(), 2f64.sqrt()));
}

#[test]
fn binomial_decomposition_at_moment_level() {
    for (a, b) in [
        ((1, 1), (-1, 4)),
        ((0, 1), (-1, 2)),
        ((-3, 1), (-1, 9)),
        ((2, 3), (-4, 9)),
    ] {
        let p = rp(a, b);
        let d = binomial_decomposition(&p).unwrap();
        let rhs = cumulants_to_moments(&d.cumulants(10).unwrap()).unwrap();
        assert_eq!(moments(&p, 10).unwrap(), rhs, "{p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exactly_one_type(a in -8i64..=8, bn in -10i64..=20) {
        let p = rp((a, 2), (bn, 10));
        let label = classify(&p);
        let (a, b) = (p.a().clone(), p.b().clone());
        let excess = a.clone() * a.clone() - rat(4, 1) * b.clone();
        let expected = if b == rat(0, 1) {
            if a == rat(0, 1) { MeixnerType::Semicircle } else { MeixnerType::FreePoisson }
        } else if b < rat(0, 1) {
            MeixnerType::FreeBinomial
        } else if excess == rat(0, 1) {
            MeixnerType::FreeGamma
        } else if excess > rat(0, 1) {
            MeixnerType::FreePascal
        } else {
            MeixnerType::PureFreeMeixner
        };
        prop_assert_eq!(label, expected);
    }

    #[test]
    fn float_moments_track_rational_moments(a in -6i64..=6, bn in -10i64..=20) {
        let p = rp((a, 2), (bn, 10));
        let exact = moments(&p, 12).unwrap().to_f64();
        let float = moments(&p.to_f64(), 12).unwrap();
        for (x, y) in exact.values().iter().zip(float.values()) {
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0));
        }
    }
}
