//! Pointwise geometric checks of `L(f) = H + conj(σG)` on polar grids.
//!
//! With `z = r e^{iθ}` and `S = σG`:
//!
//! ```text
//! f_θ  = i (zH′ - conj(zS′))
//! f_θθ = -(zH′ + z²H″) - conj(zS′ + z²S″)
//! ∂θ arg f   = Re[(zH′ - conj(zS′)) / f]
//! ∂θ arg f_θ = Im[f_θθ / f_θ]
//! ```
//!
//! These are the defining quantities of starlikeness and convexity of order
//! `α`; the oracle only ever confirms or refutes them at sample points, it
//! never certifies necessity of a coefficient condition.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmonic::{EvalPoint, ImageCoefficients, Jet};

/// Below this modulus a denominator is treated as zero.
pub const SINGULAR_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `∂θ arg f(re^{iθ})`, starlikeness.
    DthetaArgF,
    /// `∂θ arg ∂θ f(re^{iθ})`, convexity.
    DthetaArgFtheta,
    /// `|H′| - |(σG)′|`, sense preservation.
    JacobianMargin,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::DthetaArgF => "dtheta_arg_f",
            Quantity::DthetaArgFtheta => "dtheta_arg_ftheta",
            Quantity::JacobianMargin => "jacobian_margin",
        })
    }
}

/// Radii in `(0, 1)` times `theta_count` equally spaced angles.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    radii: Vec<f64>,
    theta_count: usize,
}

impl SampleGrid {
    pub const DEFAULT_RADII: [f64; 3] = [0.5, 0.9, 0.99];
    pub const DEFAULT_THETA_COUNT: usize = 4096;

    /// Radii are sorted; each must lie in `(0, 1)`. At least 8 angles.
    pub fn new(mut radii: Vec<f64>, theta_count: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::domain("sample grid needs at least one radius"));
        }
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::domain(format!("sample radii must lie in (0, 1) (got {r})")));
        }
        if theta_count < 8 {
            return Err(Error::domain(format!("sample grid needs at least 8 angles (got {theta_count})")));
        }
        radii.sort_by(f64::total_cmp);
        Ok(Self { radii, theta_count })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn theta_count(&self) -> usize {
        self.theta_count
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.theta_count as f64
    }

    /// Grid points in radius-major, then angle order.
    pub fn points(&self) -> impl Iterator<Item = EvalPoint> + '_ {
        self.radii.iter().flat_map(move |&r| {
            (0..self.theta_count).map(move |j| EvalPoint::new(r, self.angle(j)).expect("grid radii are validated"))
        })
    }
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self { radii: Self::DEFAULT_RADII.to_vec(), theta_count: Self::DEFAULT_THETA_COUNT }
    }
}

/// One sample at which the quantity fell below the threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub point: EvalPoint,
    /// `-∞` for singular points.
    pub value: f64,
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub quantity: Quantity,
    pub min_value: f64,
    pub argmin: EvalPoint,
    /// In grid order (radius-major, then angle).
    pub violations: Vec<Violation>,
    pub threshold: f64,
}

impl OracleReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn singular(pt: &EvalPoint, modulus: f64) -> Error {
    Error::Singular { r: pt.r(), theta: pt.theta(), modulus }
}

fn dtheta_arg_f_from_jet(j: &Jet, z: Complex64, pt: &EvalPoint) -> Result<f64> {
    let f = j.value();
    if f.norm() < SINGULAR_TOL {
        return Err(singular(pt, f.norm()));
    }
    Ok(((z * j.hp - (z * j.gp).conj()) / f).re)
}

fn dtheta_arg_ftheta_from_jet(j: &Jet, z: Complex64, pt: &EvalPoint) -> Result<f64> {
    let i = Complex64::new(0.0, 1.0);
    let ft = i * (z * j.hp - (z * j.gp).conj());
    if ft.norm() < SINGULAR_TOL {
        return Err(singular(pt, ft.norm()));
    }
    let z2 = z * z;
    let ftt = -(z * j.hp + z2 * j.hpp) - (z * j.gp + z2 * j.gpp).conj();
    Ok((ftt / ft).im)
}

/// `∂θ arg f(re^{iθ})`; errors when `|f| < 1e-13`.
pub fn dtheta_arg_f(img: &ImageCoefficients, pt: &EvalPoint) -> Result<f64> {
    let z = pt.z();
    dtheta_arg_f_from_jet(&img.jet(z), z, pt)
}

/// `∂θ arg ∂θ f(re^{iθ})`; errors when `|f_θ| < 1e-13`.
pub fn dtheta_arg_ftheta(img: &ImageCoefficients, pt: &EvalPoint) -> Result<f64> {
    let z = pt.z();
    dtheta_arg_ftheta_from_jet(&img.jet(z), z, pt)
}

/// `|H′(z)| - |(σG)′(z)|`; positive where `L(f)` preserves sense.
pub fn jacobian_margin(img: &ImageCoefficients, pt: &EvalPoint) -> f64 {
    let j = img.jet(pt.z());
    j.hp.norm() - j.gp.norm()
}

fn evaluate(img: &ImageCoefficients, pt: &EvalPoint, quantity: Quantity) -> Result<f64> {
    match quantity {
        Quantity::DthetaArgF => dtheta_arg_f(img, pt),
        Quantity::DthetaArgFtheta => dtheta_arg_ftheta(img, pt),
        Quantity::JacobianMargin => Ok(jacobian_margin(img, pt)),
    }
}

/// Samples `quantity` over `grid`, recording the minimum and every site
/// below `threshold`. Singular points count as violations with value `-∞`.
///
/// Angles of one radius are evaluated in parallel; results are merged in
/// grid order, so the report is deterministic.
pub fn sweep(img: &ImageCoefficients, grid: &SampleGrid, quantity: Quantity, threshold: f64) -> OracleReport {
    let samples: Vec<(EvalPoint, f64, bool)> = grid
        .radii()
        .iter()
        .flat_map(|&r| {
            (0..grid.theta_count())
                .into_par_iter()
                .map(|j| {
                    let pt = EvalPoint::new(r, grid.angle(j)).expect("grid radii are validated");
                    match evaluate(img, &pt, quantity) {
                        Ok(v) => (pt, v, false),
                        Err(_) => (pt, f64::NEG_INFINITY, true),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut min_value = f64::INFINITY;
    let mut argmin = samples[0].0;
    let mut violations = Vec::new();
    for &(point, value, is_singular) in &samples {
        // NaN never reaches here: denominators are bounded away from zero
        if value < min_value {
            min_value = value;
            argmin = point;
        }
        if is_singular || value < threshold {
            violations.push(Violation { point, value, singular: is_singular });
        }
    }
    OracleReport { quantity, min_value, argmin, violations, threshold }
}
