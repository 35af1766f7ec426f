use std::f64::consts::PI;

use num_complex::Complex64;

use super::{moments, MeixnerParams};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Point mass of a law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// Atoms lighter than this are treated as absent.
const ATOM_WEIGHT_FLOOR: f64 = 1e-12;

/// Closed support `[a - 2 sqrt(1+b), a + 2 sqrt(1+b)]` of the continuous part.
pub fn support<T: Scalar>(p: &MeixnerParams<T>) -> (f64, f64) {
    let (a, half) = centre_and_radius(p);
    (a - half, a + half)
}

fn centre_and_radius<T: Scalar>(p: &MeixnerParams<T>) -> (f64, f64) {
    let a = p.a().to_f64();
    let b = p.b().to_f64();
    (a, 2.0 * (1.0 + b).max(0.0).sqrt())
}

fn is_two_point<T: Scalar>(p: &MeixnerParams<T>) -> bool {
    *p.b() == -T::one()
}

/// `sqrt((z - a)^2 - 4(1 + b))` on the branch asymptotic to `z - a`.
fn outer_root(a: f64, radius: f64, z: Complex64) -> Complex64 {
    let w = z - a;
    (w - radius).sqrt() * (w + radius).sqrt()
}

/// Cauchy-Stieltjes transform `G(z) = integral of mu(dy) / (z - y)`.
///
/// Evaluated as `2(1+b) / ((1+2b) z + a + sqrt((z-a)^2 - 4(1+b)))`, which is
/// the displayed ratio with the removable zeros cancelled; poles of this form
/// are exactly the atoms.
pub fn cauchy_transform<T: Scalar>(p: &MeixnerParams<T>, z: Complex64) -> Result<Complex64> {
    let (a, radius) = centre_and_radius(p);
    let b = p.b().to_f64();
    if is_two_point(p) {
        let den = z * z - a * z - 1.0;
        if den.norm() <= 1e-14 * (1.0 + z.norm_sqr()) {
            return Err(domain(format!("G evaluated at the atom {z}")));
        }
        return Ok((z - a) / den);
    }
    if z.im == 0.0 && (z.re - a).abs() <= radius {
        return Err(domain(format!(
            "G evaluated on the support at x = {}",
            z.re
        )));
    }
    let q = outer_root(a, radius, z);
    let den = (1.0 + 2.0 * b) * z + a + q;
    if den.norm() <= 1e-13 * (1.0 + z.norm()) {
        return Err(domain(format!("G evaluated at the atom {z}")));
    }
    Ok(2.0 * (1.0 + b) / den)
}

/// Density of the absolutely continuous part,
/// `sqrt(4(1+b) - (x-a)^2) / (2 pi (b x^2 + a x + 1))` on the support.
pub fn density<T: Scalar>(p: &MeixnerParams<T>, x: f64) -> Result<f64> {
    if is_two_point(p) {
        return Ok(0.0);
    }
    let (a, radius) = centre_and_radius(p);
    let b = p.b().to_f64();
    let spread = radius * radius - (x - a) * (x - a);
    if spread <= 0.0 {
        return Ok(0.0);
    }
    let den = b * x * x + a * x + 1.0;
    if den <= 0.0 {
        return Err(domain(format!(
            "density denominator vanishes inside the support at x = {x}"
        )));
    }
    Ok(spread.sqrt() / (2.0 * PI * den))
}

/// Atoms of `mu_{a,b}`: real roots of `b x^2 + a x + 1` off the open support
/// at which `G` has a pole, weighted by the residue of `G`.
pub fn atoms<T: Scalar>(p: &MeixnerParams<T>) -> Vec<Atom> {
    let (a, radius) = centre_and_radius(p);
    let b = p.b().to_f64();
    if is_two_point(p) {
        // poles of (z - a) / (z^2 - a z - 1)
        let s = (a * a + 4.0).sqrt();
        return [(a - s) / 2.0, (a + s) / 2.0]
            .into_iter()
            .map(|x| Atom {
                location: x,
                weight: (x - a) / (2.0 * x - a),
            })
            .collect();
    }
    let candidates: Vec<f64> = if b == 0.0 {
        if a == 0.0 {
            Vec::new()
        } else {
            vec![-1.0 / a]
        }
    } else {
        let disc = a * a - 4.0 * b;
        if disc < 0.0 {
            Vec::new()
        } else {
            // numerically stable pair of roots
            let root = disc.sqrt();
            let q = -0.5 * (a + if a < 0.0 { -root } else { root });
            let mut xs = vec![q / b, 1.0 / q];
            xs.sort_by(f64::total_cmp);
            xs.dedup();
            xs
        }
    };
    let mut found = Vec::new();
    for x0 in candidates {
        let w = x0 - a;
        let gap = w * w - radius * radius;
        if gap <= 0.0 {
            continue;
        }
        let q0 = w.signum() * gap.sqrt();
        let den = (1.0 + 2.0 * b) * x0 + a + q0;
        // at a root of b x^2 + a x + 1 either the numerator or the denominator
        // of the displayed G vanishes; the denominator here equals 2 q0 otherwise
        if den.abs() >= q0.abs() {
            continue;
        }
        let slope = (1.0 + 2.0 * b) + w / q0;
        let weight = 2.0 * (1.0 + b) / slope;
        if weight > ATOM_WEIGHT_FLOOR {
            found.push(Atom {
                location: x0,
                weight,
            });
        }
    }
    found
}

/// Guard radius for the power series of `M` and `r` around 0.
pub fn series_radius<T: Scalar>(p: &MeixnerParams<T>) -> f64 {
    let a = p.a().to_f64();
    let b = p.b().to_f64();
    0.2 / (1.0 + a.abs() + (1.0 + b.abs()).sqrt())
}

fn check_series_point<T: Scalar>(p: &MeixnerParams<T>, z: Complex64) -> Result<()> {
    let limit = series_radius(p);
    if z.norm() > limit {
        return Err(domain(format!(
            "|z| = {} exceeds the series radius {limit}",
            z.norm()
        )));
    }
    Ok(())
}

/// R-transform `r(z) = 2z / (1 - a z + sqrt((1 - a z)^2 - 4 z^2 b))`, branch with `r(0) = 0`.
pub fn r_transform<T: Scalar>(p: &MeixnerParams<T>, z: Complex64) -> Result<Complex64> {
    check_series_point(p, z)?;
    let a = p.a().to_f64();
    let b = p.b().to_f64();
    let lin = 1.0 - a * z;
    let root = (lin * lin - 4.0 * b * z * z).sqrt();
    Ok(2.0 * z / (lin + root))
}

/// Truncated moment generating function `sum_{n <= N} m_n z^n`.
pub fn moment_generating<T: Scalar>(
    p: &MeixnerParams<T>,
    z: Complex64,
    order: usize,
) -> Result<Complex64> {
    check_series_point(p, z)?;
    let m = moments(p, order)?.to_f64();
    Ok(m.values()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &mn| acc * z + mn))
}

/// A free Meixner law with its support and atoms resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct MeixnerLaw {
    params: MeixnerParams<f64>,
    support: (f64, f64),
    atoms: Vec<Atom>,
}

impl MeixnerLaw {
    pub fn new<T: Scalar>(params: &MeixnerParams<T>) -> Self {
        let atoms = atoms(params);
        Self {
            support: support(params),
            atoms,
            params: params.to_f64(),
        }
    }

    pub fn params(&self) -> &MeixnerParams<f64> {
        &self.params
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn density(&self, x: f64) -> Result<f64> {
        density(&self.params, x)
    }

    pub fn cauchy_transform(&self, z: Complex64) -> Result<Complex64> {
        cauchy_transform(&self.params, z)
    }
}
