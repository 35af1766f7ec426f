//! Floating-point oracles: Gauss quadrature from the Jacobi matrix, panel
//! integration against a law with atoms, and Stieltjes inversion.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::meixner::{cauchy_transform, jacobi_coefficients, MeixnerLaw, MeixnerParams};
use crate::scalar::Scalar;

/// Nodes with weight below this are artefacts of a decoupled Jacobi matrix.
const NODE_WEIGHT_FLOOR: f64 = 1e-14;

/// Error target of [`integrate_against_law`]: absolute for integrals of
/// size up to one, relative beyond.
pub const INTEGRATION_TOL: f64 = 1e-10;

/// Panel count at which adaptive refinement gives up.
pub const PANEL_CAP: usize = 4096;

/// Discrete probability law used as a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Nodes must be strictly increasing and weights positive with unit sum.
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(domain(
                "a rule needs matching, nonempty node and weight lists",
            ));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain("quadrature nodes must be strictly increasing"));
        }
        if weights.iter().any(|w| w.is_nan() || *w <= 0.0) {
            return Err(domain("quadrature weights must be positive"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(domain(format!("quadrature weights sum to {total}, not 1")));
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn moment(&self, k: u32) -> f64 {
        self.integrate(|x| x.powi(k as i32))
    }
}

/// Golub-Welsch: nodes are the eigenvalues of the `n x n` Jacobi matrix and
/// weights the squared first components of its unit eigenvectors.
///
/// At `b = -1` the matrix decouples after the second row; eigenvectors of
/// the lower block carry no weight and are dropped.
pub fn gauss_rule<T: Scalar>(p: &MeixnerParams<T>, n: usize) -> Result<QuadratureRule> {
    let (diag, off) = jacobi_coefficients(p, n)?;
    let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
    for (k, &e) in off.iter().enumerate() {
        m[(k, k + 1)] = e;
        m[(k + 1, k)] = e;
    }
    let eigen = SymmetricEigen::try_new(m, f64::EPSILON, 10_000).ok_or_else(|| Error::Numeric {
        message: "tridiagonal eigen-solver did not converge".into(),
        estimate: f64::NAN,
    })?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eigen.eigenvalues[k], eigen.eigenvectors[(0, k)].powi(2)))
        .filter(|&(_, w)| w > NODE_WEIGHT_FLOOR)
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let total: f64 = pairs.iter().map(|&(_, w)| w).sum();
    let (nodes, weights) = pairs.into_iter().map(|(x, w)| (x, w / total)).unzip();
    QuadratureRule::new(nodes, weights)
}

/// Value of an integral with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn kronrod(g: &impl Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<Panel> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut k = WGK[7] * g(centre)?;
    let mut gauss = WG[3] * g(centre)?;
    for i in 0..7 {
        let pair = g(centre - half * XGK[i])? + g(centre + half * XGK[i])?;
        k += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok(Panel {
        lo,
        hi,
        value: k * half,
        error: ((k - gauss) * half).abs(),
    })
}

/// Continuous part over `theta in [0, pi]` with `x = a + r cos(theta)`, where
/// the density times `dx` becomes `r^2 sin^2(theta) / (2 pi D(x)) dtheta`.
fn continuous_integrand<'a>(
    law: &'a MeixnerLaw,
    f: &'a impl Fn(f64) -> f64,
) -> Option<impl Fn(f64) -> Result<f64> + 'a> {
    let (lo, hi) = law.support();
    let (a, b) = (law.params().a(), law.params().b());
    let r = 0.5 * (hi - lo);
    if *b == -1.0 || r <= 0.0 {
        return None;
    }
    let (a, b) = (*a, *b);
    Some(move |theta: f64| {
        let x = a + r * theta.cos();
        let den = b * x * x + a * x + 1.0;
        if den <= 0.0 {
            return Err(domain(format!(
                "density denominator vanishes inside the support at x = {x}"
            )));
        }
        let s = r * theta.sin();
        Ok(f(x) * s * s / (2.0 * PI * den))
    })
}

fn atom_part(law: &MeixnerLaw, f: &impl Fn(f64) -> f64) -> f64 {
    law.atoms()
        .iter()
        .map(|atom| atom.weight * f(atom.location))
        .sum()
}

fn initial_panels(g: &impl Fn(f64) -> Result<f64>, panels: usize) -> Result<Vec<Panel>> {
    let width = PI / panels as f64;
    (0..panels)
        .map(|k| {
            kronrod(
                g,
                k as f64 * width,
                if k + 1 == panels {
                    PI
                } else {
                    (k + 1) as f64 * width
                },
            )
        })
        .collect()
}

fn totals(panels: &[Panel]) -> (f64, f64) {
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// `integral of f d(law)`: adaptive Gauss-Kronrod on the continuous part,
/// starting from `panels` equal panels in the cosine variable, plus the atoms.
///
/// Refinement bisects the worst panel until the summed error estimate is
/// below [`INTEGRATION_TOL`], scaled by the value once it exceeds one. Past
/// [`PANEL_CAP`] panels a numeric error carrying the best estimate is returned.
pub fn integrate_against_law(
    law: &MeixnerLaw,
    f: impl Fn(f64) -> f64,
    panels: usize,
) -> Result<Integral> {
    if panels == 0 {
        return Err(domain("panel count must be positive"));
    }
    let atoms = atom_part(law, &f);
    let Some(g) = continuous_integrand(law, &f) else {
        return Ok(Integral {
            value: atoms,
            error: 0.0,
        });
    };
    let mut pieces = initial_panels(&g, panels)?;
    loop {
        let (value, error) = totals(&pieces);
        if error <= INTEGRATION_TOL * (value + atoms).abs().max(1.0) {
            return Ok(Integral {
                value: value + atoms,
                error,
            });
        }
        if pieces.len() >= PANEL_CAP.max(panels) {
            return Err(Error::Numeric {
                message: format!(
                    "no convergence after {} panels (error estimate {error:e})",
                    pieces.len()
                ),
                estimate: value + atoms,
            });
        }
        let worst = (0..pieces.len())
            .max_by(|&i, &j| pieces[i].error.total_cmp(&pieces[j].error))
            .expect("at least one panel");
        let Panel { lo, hi, .. } = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        pieces.push(kronrod(&g, lo, mid)?);
        pieces.push(kronrod(&g, mid, hi)?);
    }
}

/// Same integral on exactly `panels` equal panels, without refinement.
pub fn integrate_fixed_panels(
    law: &MeixnerLaw,
    f: impl Fn(f64) -> f64,
    panels: usize,
) -> Result<Integral> {
    if panels == 0 {
        return Err(domain("panel count must be positive"));
    }
    let atoms = atom_part(law, &f);
    let Some(g) = continuous_integrand(law, &f) else {
        return Ok(Integral {
            value: atoms,
            error: 0.0,
        });
    };
    let (value, error) = totals(&initial_panels(&g, panels)?);
    Ok(Integral {
        value: value + atoms,
        error,
    })
}

/// `-(1/pi) Im G(x + i eps)`, the Poisson-smoothed density at `x`.
pub fn stieltjes_invert<T: Scalar>(p: &MeixnerParams<T>, x: f64, eps: f64) -> Result<f64> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(domain(format!("smoothing eps = {eps} must be positive")));
    }
    Ok(-cauchy_transform(p, Complex64::new(x, eps))?.im / PI)
}
