//! Hypothesis-to-geometry pipeline: build `f`, apply `L`, and compare the
//! coefficient hypothesis with what the geometric oracle observes.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::criteria::{
    class_bound_coeffs, close_to_convex_probe, default_epsilons, ClassBound, HypothesisClass, HypothesisReport,
    OrderParam, Target, TheoremId,
};
use crate::error::{Error, Result};
use crate::harmonic::{convolve, CoefficientSeq, ConvolutionSpec, EvalPoint, ImageCoefficients};
use crate::oracle::{sweep, Quantity, SampleGrid};

/// Numerical slack granted to the oracle below the target threshold.
pub const ORACLE_SLACK: f64 = 1e-9;

/// `n_max` coefficients per part drawn uniformly from the closed unit disk:
/// `A_2..A_{n_max}`, `B_1..B_{n_max}`.
pub fn random_unit_bounded<R: Rng + ?Sized>(rng: &mut R, n_max: usize) -> CoefficientSeq {
    let mut draw = || Complex64::from_polar(rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
    let a: Vec<_> = (2..=n_max).map(|_| draw()).collect();
    let b: Vec<_> = (1..=n_max).map(|_| draw()).collect();
    CoefficientSeq::new(a, b).expect("draws from the open disk satisfy |B_1| < 1 almost surely")
}

/// A representative `f` of the hypothesis class of `id`, as extreme as the
/// class allows: every admissible coefficient at its bound, real and
/// nonnegative (negative for the sign-fixed classes). `b1` is `|B_1|` where
/// the class leaves it free.
pub fn class_representative(id: TheoremId, order: OrderParam, b1: f64, n_max: usize) -> Result<CoefficientSeq> {
    if n_max < 2 {
        return Err(Error::domain(format!("n_max must be at least 2 (got {n_max})")));
    }
    if !(b1.abs() < 1.0) {
        return Err(Error::domain(format!("|B_1| must be below 1 (got {b1})")));
    }
    let b1 = b1.abs();
    let a = order.value();
    match id.hypothesis_class() {
        HypothesisClass::UnitBounded => {
            let mut b = vec![1.0; n_max];
            b[0] = b1;
            CoefficientSeq::from_real(&vec![1.0; n_max - 1], &b)
        }
        HypothesisClass::Srh => CoefficientSeq::from_real(&[-(1.0 - a) / (2.0 - a)], &[]),
        HypothesisClass::Krh => CoefficientSeq::from_real(&[-(1.0 - a) / (2.0 * (2.0 - a))], &[]),
        HypothesisClass::UnitLemma5 => CoefficientSeq::from_real(&[(1.0 - b1) / 2.0], &[b1]),
        HypothesisClass::Bound(class) => {
            let b1 = if class == ClassBound::Ch { b1 } else { 0.0 };
            let m = class_bound_coeffs(class, b1, n_max)?;
            let mut b = m.b;
            b[0] = b1;
            CoefficientSeq::from_real(&m.a, &b)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Hypothesis holds and the oracle is clean.
    Consistent,
    /// Hypothesis fails; nothing is claimed.
    Vacuous,
    /// Hypothesis holds but the oracle found a violation.
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Vacuous => "VACUOUS",
            Verdict::Counterexample => "COUNTEREXAMPLE",
        })
    }
}

/// Where the oracle first failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness {
    Point { quantity: Quantity, point: EvalPoint, value: f64 },
    Epsilon { epsilon: Complex64, lhs: f64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point { quantity, point, value } => {
                write!(f, "{quantity} = {value:e} at r = {}, theta = {}", point.r(), point.theta())
            }
            Witness::Epsilon { epsilon, lhs } => {
                write!(f, "lemma-5 sum {lhs:e} > 1 at epsilon = {},{}", epsilon.re, epsilon.im)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// Runs the oracle appropriate to the target of `id` on `img`.
///
/// Starlike and convex targets sweep `∂θ arg f` or `∂θ arg f_θ` against the
/// order and the Jacobian margin against zero. Close-to-convexity goes
/// through the ε-probe with the default ε set.
pub fn oracle_witness(id: TheoremId, img: &ImageCoefficients, order: OrderParam, grid: &SampleGrid) -> Result<Option<Witness>> {
    let first = |quantity: Quantity, threshold: f64| {
        let rep = sweep(img, grid, quantity, threshold - ORACLE_SLACK);
        rep.violations.first().map(|v| Witness::Point { quantity, point: v.point, value: v.value })
    };
    let geometric = match id.target() {
        Target::Starlike => first(Quantity::DthetaArgF, order.value()),
        Target::Convex => first(Quantity::DthetaArgFtheta, order.value()),
        Target::CloseToConvex => {
            let eps = default_epsilons();
            let reports = close_to_convex_probe(img, img.g(1), &eps)?;
            reports
                .iter()
                .zip(&eps)
                .find(|(r, _)| !r.satisfied)
                .map(|(r, &epsilon)| Witness::Epsilon { epsilon, lhs: r.lhs })
        }
    };
    Ok(geometric.or_else(|| first(Quantity::JacobianMargin, 0.0)))
}

/// Verdict for one `f`, given the hypothesis gate already evaluated.
pub fn verify_one(
    id: TheoremId,
    spec: &ConvolutionSpec,
    order: OrderParam,
    hypothesis_holds: bool,
    f: &CoefficientSeq,
    grid: &SampleGrid,
) -> Result<VerifyOutcome> {
    if !hypothesis_holds {
        return Ok(VerifyOutcome { verdict: Verdict::Vacuous, witness: None });
    }
    let img = convolve(f, spec);
    let witness = oracle_witness(id, &img, order, grid)?;
    let verdict = if witness.is_some() { Verdict::Counterexample } else { Verdict::Consistent };
    Ok(VerifyOutcome { verdict, witness })
}

/// Shorthand for the gate used by `verify`.
pub fn gate_holds(report: &HypothesisReport, form: crate::criteria::Form) -> bool {
    report.gate(form).satisfied
}
