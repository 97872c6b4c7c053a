//! Boundary curves of `L(f)` on circles `|z| = r`, written as SVG.

use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::{eval_map, EvalPoint, ImageCoefficients};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    radii: Vec<f64>,
    theta_count: usize,
    width: u32,
    height: u32,
}

impl RenderSpec {
    pub const MIN_THETA_COUNT: usize = 64;

    pub fn new(radii: Vec<f64>, theta_count: usize, width: u32, height: u32) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::spec("render needs at least one radius"));
        }
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::spec(format!("render radii must lie in (0, 1) (got {r})")));
        }
        if theta_count < Self::MIN_THETA_COUNT {
            return Err(Error::spec(format!(
                "render needs at least {} angles (got {theta_count})",
                Self::MIN_THETA_COUNT
            )));
        }
        if width == 0 || height == 0 {
            return Err(Error::spec("render width and height must be positive"));
        }
        Ok(Self { radii, theta_count, width, height })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn theta_count(&self) -> usize {
        self.theta_count
    }
}

/// `L(f)(r e^{iθ_j})` for `θ_j = 2πj/n`, `j < n`. The curve closes back on
/// the first vertex.
pub fn boundary_curve(img: &ImageCoefficients, r: f64, n: usize) -> Result<Vec<Complex64>> {
    (0..n)
        .map(|j| {
            let pt = EvalPoint::new(r, std::f64::consts::TAU * j as f64 / n as f64)?;
            Ok(eval_map(img, &pt))
        })
        .collect()
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let u = b - a;
    let v = c - a;
    u.re * v.im - u.im * v.re
}

fn segments_cross(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Brute-force check of a closed polyline: true if two non-adjacent edges
/// properly cross. Quadratic in the vertex count.
pub fn self_intersects(curve: &[Complex64]) -> bool {
    let n = curve.len();
    if n < 4 {
        return false;
    }
    let edge = |i: usize| (curve[i], curve[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = edge(i);
        let (lo, hi) = (a.re.min(b.re), a.re.max(b.re));
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = edge(j);
            if c.re.max(d.re) < lo || c.re.min(d.re) > hi {
                continue;
            }
            if segments_cross(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

/// SVG 1.1 document: one closed polyline per radius plus the coordinate
/// axes, viewBox fitted to the curves with a 5% margin. The image is
/// mirrored in y so that the imaginary axis points up.
pub fn render_svg(img: &ImageCoefficients, spec: &RenderSpec) -> Result<String> {
    let curves = spec
        .radii
        .iter()
        .map(|&r| boundary_curve(img, r, spec.theta_count))
        .collect::<Result<Vec<_>>>()?;

    let (mut xmin, mut xmax, mut ymin, mut ymax) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for w in curves.iter().flatten() {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::domain("boundary curve is not finite"));
        }
        xmin = xmin.min(w.re);
        xmax = xmax.max(w.re);
        ymin = ymin.min(-w.im);
        ymax = ymax.max(-w.im);
    }
    let span = (xmax - xmin).max(ymax - ymin).max(f64::MIN_POSITIVE);
    let pad = 0.05 * span;
    let (vx, vy) = (xmin - pad, ymin - pad);
    let (vw, vh) = (xmax - xmin + 2.0 * pad, ymax - ymin + 2.0 * pad);
    let stroke = span / 500.0;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{vx} {vy} {vw} {vh}">"#,
        spec.width, spec.height
    )
    .unwrap();
    writeln!(
        s,
        r##"  <g stroke="#999999" stroke-width="{stroke}"><line x1="{vx}" y1="0" x2="{}" y2="0"/><line x1="0" y1="{vy}" x2="0" y2="{}"/></g>"##,
        vx + vw,
        vy + vh
    )
    .unwrap();
    for (r, curve) in spec.radii.iter().zip(&curves) {
        write!(s, r##"  <polyline data-r="{r}" fill="none" stroke="#1f4e9c" stroke-width="{stroke}" points=""##).unwrap();
        for w in curve.iter().chain(curve.first()) {
            write!(s, "{},{} ", w.re, -w.im).unwrap();
        }
        s.pop();
        writeln!(s, r#""/>"#).unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

pub fn write_svg<W: Write>(img: &ImageCoefficients, spec: &RenderSpec, mut out: W) -> Result<()> {
    out.write_all(render_svg(img, spec)?.as_bytes())?;
    Ok(())
}
