//! Coefficient criteria for starlikeness, convexity and close-to-convexity,
//! and hypothesis checkers for the sufficient conditions on `L(f)`.
//!
//! Every hypothesis checker produces two reports:
//!
//! * `AsStated` transcribes the published inequality term for term, including
//!   its misprints (mixed subscripts, a right-hand side of `α` where `1 - α`
//!   is needed, missing `|σ|` factors).
//! * `AsDerived` evaluates the worst case of the coefficient sum the
//!   argument actually bounds, under the coefficient assumptions of the
//!   hypothesis class, and compares it against the criterion's own limit.
//!   This is the form that implies the exact criterion on `L(f)`.
//!
//! Both are expressed through `W(1)`, `W′(1)`, `W″(1)`, `W‴(1)` of the two
//! kernels. Writing `wₖ` for the `k`th derivative value of the analytic
//! kernel, sums over `n ≥ 2` of `c_n` times a polynomial in `n` reduce via
//! the falling-factorial expansion, e.g.
//! `Σ_{n≥2} (n-α)(n+1) c_n = w₂ + (2-α)(w₁-1) - α(w₀-1)`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::{CoefficientSeq, ConvolutionSpec, ImageCoefficients};
use crate::special_fn::{derivs_at_one, DerivativeValues, SeriesControl};

/// Order `α ∈ [0, 1)` of the starlike/convex classes.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OrderParam(f64);

impl OrderParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::domain(format!("order must lie in [0, 1) (got {alpha})")));
        }
        Ok(Self(alpha))
    }

    pub fn zero() -> Self {
        Self(0.0)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// How a report's inequality was assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    AsStated,
    AsDerived,
    Exact,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::AsStated => "as_stated",
            Form::AsDerived => "as_derived",
            Form::Exact => "exact",
        })
    }
}

/// One checked inequality `lhs ≤ rhs`.
///
/// The comparison is strict on the computed doubles; `margin` is reported so
/// callers can apply their own slack.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub margin: f64,
    pub form: Form,
}

impl CriterionReport {
    pub fn new(id: impl Into<String>, lhs: f64, rhs: f64, form: Form) -> Self {
        Self { id: id.into(), lhs, rhs, satisfied: lhs <= rhs, margin: rhs - lhs, form }
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<10} lhs={:.17e} rhs={:.17e} margin={:.17e} satisfied={}",
            self.id, self.form, self.lhs, self.rhs, self.margin, self.satisfied
        )
    }
}

/// Coefficient magnitudes: `a[0]` is `|A_2|`, `b[0]` is `|B_1|`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Magnitudes {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl Magnitudes {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Self {
        Self { a, b }
    }

    pub fn of_seq(f: &CoefficientSeq) -> Self {
        Self::new(f.a_slice().iter().map(|c| c.norm()).collect(), f.b_slice().iter().map(|c| c.norm()).collect())
    }

    pub fn of_image(img: &ImageCoefficients) -> Self {
        Self::new(img.ha().iter().map(|c| c.norm()).collect(), img.gb().iter().map(|c| c.norm()).collect())
    }

    /// `Σ_{n≥2} wa(n)|A_n| + Σ_{n≥1} wb(n)|B_n|`.
    fn weighted(&self, wa: impl Fn(f64) -> f64, wb: impl Fn(f64) -> f64) -> f64 {
        let sa: f64 = self.a.iter().enumerate().map(|(i, m)| wa((i + 2) as f64) * m).sum();
        let sb: f64 = self.b.iter().enumerate().map(|(i, m)| wb((i + 1) as f64) * m).sum();
        sa + sb
    }
}

/// Starlikeness of order `α`: `Σ(n-α)|A_n| + Σ(n+α)|B_n| ≤ 1-α`.
pub fn lemma1_sum(m: &Magnitudes, order: OrderParam) -> CriterionReport {
    let a = order.value();
    let lhs = m.weighted(|n| n - a, |n| n + a);
    CriterionReport::new("L1", lhs, 1.0 - a, Form::Exact)
}

/// Convexity of order `α`: `Σ n(n-α)|A_n| + Σ n(n+α)|B_n| ≤ 1-α`.
pub fn lemma2_sum(m: &Magnitudes, order: OrderParam) -> CriterionReport {
    let a = order.value();
    let lhs = m.weighted(|n| n * (n - a), |n| n * (n + a));
    CriterionReport::new("L2", lhs, 1.0 - a, Form::Exact)
}

/// Starlikeness of `q(z) = z + Σ t_n zⁿ`: `Σ n|t_n| ≤ 1`. `t[0]` is `t_2`.
pub fn lemma5_sum(t: &[Complex64]) -> CriterionReport {
    let lhs = t.iter().enumerate().map(|(i, c)| (i + 2) as f64 * c.norm()).sum();
    CriterionReport::new("L5", lhs, 1.0, Form::Exact)
}

/// Classes with the fixed sign pattern `h = z - Σ|A_n|zⁿ`, `g = Σ|B_n|zⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealClass {
    Srh,
    Krh,
}

/// Membership test for the sign-fixed classes; here the coefficient
/// inequality is necessary as well as sufficient.
pub fn lemma6_membership(m: &Magnitudes, order: OrderParam, class: RealClass) -> CriterionReport {
    let (mut report, id) = match class {
        RealClass::Srh => (lemma1_sum(m, order), "L6:SRH"),
        RealClass::Krh => (lemma2_sum(m, order), "L6:KRH"),
    };
    report.id = id.to_string();
    report
}

/// Families with known coefficient bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassBound {
    /// Convex harmonic with `B_1 = 0`: `|A_n| ≤ (n+1)/2`, `|B_n| ≤ (n-1)/2`.
    Kh0,
    /// Close-to-convex (or starlike, typically real) with `B_1 = 0`:
    /// `|A_n| ≤ (2n+1)(n+1)/6`, `|B_n| ≤ (2n-1)(n-1)/6`.
    Ch0Family,
    /// Close-to-convex with general `B_1`; the bounds above mixed by `|B_1|`.
    Ch,
}

/// Extremal coefficient magnitudes of a class, `A_2..A_{n_max}` and
/// `B_1..B_{n_max}`.
pub fn class_bound_coeffs(class: ClassBound, b1: f64, n_max: usize) -> Result<Magnitudes> {
    if n_max < 2 {
        return Err(Error::domain(format!("n_max must be at least 2 (got {n_max})")));
    }
    if !(b1.abs() < 1.0) {
        return Err(Error::domain(format!("|B_1| must be below 1 (got {b1})")));
    }
    let b1 = b1.abs();
    let big = |n: f64| (2.0 * n + 1.0) * (n + 1.0) / 6.0;
    let small = |n: f64| (2.0 * n - 1.0) * (n - 1.0) / 6.0;
    let (fa, fb): (Box<dyn Fn(f64) -> f64>, Box<dyn Fn(f64) -> f64>) = match class {
        ClassBound::Kh0 => (Box::new(|n| (n + 1.0) / 2.0), Box::new(|n| (n - 1.0) / 2.0)),
        ClassBound::Ch0Family => (Box::new(big), Box::new(small)),
        ClassBound::Ch => (Box::new(move |n| big(n) + small(n) * b1), Box::new(move |n| small(n) + big(n) * b1)),
    };
    let a = (2..=n_max).map(|n| fa(n as f64)).collect();
    let b = (1..=n_max).map(|n| fb(n as f64)).collect();
    Ok(Magnitudes::new(a, b))
}

/// Which geometric property a hypothesis certifies for `L(f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Starlike,
    Convex,
    CloseToConvex,
}

/// Which coefficient assumption a hypothesis places on `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisClass {
    /// `|A_n| ≤ 1`, `|B_n| ≤ 1`.
    UnitBounded,
    /// `f ∈ SRH(α)`.
    Srh,
    /// `f ∈ KRH(α)`.
    Krh,
    /// `Σ n|A_n| + Σ n|B_n| ≤ 1`.
    UnitLemma5,
    Bound(ClassBound),
}

/// Stable identifiers of the hypothesis checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T3_1,
    T3_2,
    T3_3,
    T4_1,
    T4_2,
    T4_3,
    T5_1,
    T5_2,
    T5_3,
    T5_4,
    /// `T3_1` with `γᵢ = δᵢ = 1`.
    C1,
    /// `T4_1` with `γᵢ = δᵢ = 1`.
    R1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::T3_1,
        TheoremId::T3_2,
        TheoremId::T3_3,
        TheoremId::T4_1,
        TheoremId::T4_2,
        TheoremId::T4_3,
        TheoremId::T5_1,
        TheoremId::T5_2,
        TheoremId::T5_3,
        TheoremId::T5_4,
        TheoremId::C1,
        TheoremId::R1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T3_1 => "T3.1",
            TheoremId::T3_2 => "T3.2",
            TheoremId::T3_3 => "T3.3",
            TheoremId::T4_1 => "T4.1",
            TheoremId::T4_2 => "T4.2",
            TheoremId::T4_3 => "T4.3",
            TheoremId::T5_1 => "T5.1",
            TheoremId::T5_2 => "T5.2",
            TheoremId::T5_3 => "T5.3",
            TheoremId::T5_4 => "T5.4",
            TheoremId::C1 => "C1",
            TheoremId::R1 => "R1",
        }
    }

    pub fn target(&self) -> Target {
        use TheoremId::*;
        match self {
            T3_1 | T3_2 | T3_3 | C1 => Target::Starlike,
            T4_1 | T4_2 | T4_3 | R1 => Target::Convex,
            T5_1 | T5_2 | T5_3 | T5_4 => Target::CloseToConvex,
        }
    }

    pub fn hypothesis_class(&self) -> HypothesisClass {
        use TheoremId::*;
        match self {
            T3_1 | T4_1 | C1 | R1 => HypothesisClass::UnitBounded,
            T3_2 => HypothesisClass::Srh,
            T4_3 => HypothesisClass::Krh,
            T3_3 | T4_2 | T5_2 => HypothesisClass::Bound(ClassBound::Kh0),
            T5_1 => HypothesisClass::UnitLemma5,
            T5_3 => HypothesisClass::Bound(ClassBound::Ch0Family),
            T5_4 => HypothesisClass::Bound(ClassBound::Ch),
        }
    }

    /// Whether the hypothesis reads `|B_1|`.
    pub fn uses_b1(&self) -> bool {
        matches!(self, TheoremId::T5_1 | TheoremId::T5_4)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let known: Vec<_> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
                Error::spec(format!("unknown theorem id {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

/// The printed and the derived form of one hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub stated: CriterionReport,
    pub derived: CriterionReport,
}

impl HypothesisReport {
    pub fn gate(&self, form: Form) -> &CriterionReport {
        match form {
            Form::AsStated => &self.stated,
            _ => &self.derived,
        }
    }
}

/// Checks the hypothesis of `id` for the kernels in `spec`.
///
/// Only `|σ|` enters. `b1` is `|B_1|` of `f` and is read by T5.1 and T5.4
/// only. `C1` and `R1` force `γ = δ = 1` on both kernels.
pub fn stated_hypothesis(
    id: TheoremId,
    spec: &ConvolutionSpec,
    order: OrderParam,
    b1: f64,
    ctrl: &SeriesControl,
) -> Result<HypothesisReport> {
    if id.uses_b1() && !(b1.abs() < 1.0) {
        return Err(Error::domain(format!("|B_1| must be below 1 (got {b1})")));
    }
    let (p1, p2) = match id {
        TheoremId::C1 | TheoremId::R1 => (spec.p1.with_unit_second_pair(), spec.p2.with_unit_second_pair()),
        _ => (spec.p1, spec.p2),
    };
    let w = derivs_at_one(&p1, ctrl)?;
    let v = derivs_at_one(&p2, ctrl)?;
    Ok(hypothesis_from_derivs(id, &w, &v, spec.sigma().norm(), order.value(), b1.abs()))
}

/// [`stated_hypothesis`] on precomputed derivative values (`w` for the
/// analytic kernel, `v` for the co-analytic one).
pub fn hypothesis_from_derivs(
    id: TheoremId,
    w: &DerivativeValues,
    v: &DerivativeValues,
    s: f64,
    a: f64,
    b: f64,
) -> HypothesisReport {
    let (w0, w1, w2, w3) = (w.w1, w.wp1, w.wpp1, w.wppp1);
    let (v0, v1, v2, v3) = (v.w1, v.wp1, v.wpp1, v.wppp1);
    let name = id.as_str();
    let report = |lhs_s: f64, rhs_s: f64, lhs_d: f64, rhs_d: f64| HypothesisReport {
        stated: CriterionReport::new(name, lhs_s, rhs_s, Form::AsStated),
        derived: CriterionReport::new(name, lhs_d, rhs_d, Form::AsDerived),
    };

    match id {
        TheoremId::T3_1 | TheoremId::C1 => {
            let lhs = (w1 - 1.0) - a * (w0 - 1.0) + s * (v1 + a * v0);
            report(lhs, 1.0 - a, lhs, 1.0 - a)
        }
        TheoremId::T3_2 => {
            // Under SRH(α), (n-α)|A_n| ≤ 1-α termwise.
            let derived = (1.0 - a) * ((w0 - 1.0) + s * v0);
            report(w0 + s * v0, 2.0, derived, 1.0 - a)
        }
        TheoremId::T3_3 => {
            let stated = w2 + (2.0 - a) * (w1 - 1.0) - a * (w1 - 1.0) + s * v2 + a * (v1 - v0);
            let derived = 0.5 * (w2 + (2.0 - a) * (w1 - 1.0) - a * (w0 - 1.0) + s * (v2 + a * (v1 - v0)));
            report(stated, 2.0 * (1.0 - a), derived, 1.0 - a)
        }
        TheoremId::T4_1 | TheoremId::R1 => {
            let stated = w2 + (1.0 - a) * w1 + s * (v2 + (1.0 + a) * v1);
            let derived = w2 + (1.0 - a) * (w1 - 1.0) + s * (v2 + (1.0 + a) * v1);
            report(stated, a, derived, 1.0 - a)
        }
        TheoremId::T4_2 => {
            let lhs = w3 + (4.0 - a) * w2 + 2.0 * (1.0 - a) * (w1 - 1.0) + s * (v3 + (2.0 + a) * v2);
            report(lhs, 2.0 * (1.0 - a), 0.5 * lhs, 1.0 - a)
        }
        TheoremId::T4_3 => {
            // Under KRH(α), n(n-α)|A_n| ≤ 1-α termwise.
            let derived = (1.0 - a) * ((w0 - 1.0) + s * v0);
            report(w0 + s * v0, 2.0 - a, derived, 1.0 - a)
        }
        TheoremId::T5_1 => {
            let derived = ((w0 - 1.0) + s * (v0 - 1.0)) / (1.0 - s * b);
            report(w0 + v0 - 2.0, 1.0 - b, derived, 1.0)
        }
        TheoremId::T5_2 => {
            let derived = 0.5 * (w2 + 2.0 * (w1 - 1.0) + s * v2);
            report(w2 + 2.0 * w1 + v2, 4.0, derived, 1.0)
        }
        TheoremId::T5_3 => {
            let stated = 2.0 * w3 + 9.0 * w2 + 6.0 * (v1 - 1.0) + v3 + 3.0 * v2;
            let derived = (2.0 * w3 + 9.0 * w2 + 6.0 * (w1 - 1.0) + s * (2.0 * v3 + 3.0 * v2)) / 6.0;
            report(stated, 6.0, derived, 1.0)
        }
        TheoremId::T5_4 => {
            let stated = 2.0 * w3 + 9.0 * w2 + 6.0 * (v1 - 1.0)
                + b * (2.0 * w3 + 3.0 * w2)
                + 2.0 * v3
                + 3.0 * v2
                + b * (2.0 * v3 + 9.0 * v2 + 6.0 * (v1 - 1.0));
            let analytic = 2.0 * w3 + 9.0 * w2 + 6.0 * (w1 - 1.0) + b * (2.0 * w3 + 3.0 * w2);
            let coanalytic = 2.0 * v3 + 3.0 * v2 + b * (2.0 * v3 + 9.0 * v2 + 6.0 * (v1 - 1.0));
            let derived = (analytic + s * coanalytic) / (6.0 * (1.0 - s * b));
            report(stated, 6.0 * (1.0 - b), derived, 1.0)
        }
    }
}

/// Exact criterion to apply to the image coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageTarget {
    StarlikeL1,
    ConvexL2,
}

/// Ground-truth sufficiency check on the coefficients of `L(f)`.
pub fn exact_image_criterion(img: &ImageCoefficients, order: OrderParam, target: ImageTarget) -> CriterionReport {
    let m = Magnitudes::of_image(img);
    match target {
        ImageTarget::StarlikeL1 => lemma1_sum(&m, order),
        ImageTarget::ConvexL2 => lemma2_sum(&m, order),
    }
}

/// `ε` together with the coefficients `t_n` of `(H + εσG)/(1 + εb₁)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonProbe {
    epsilon: Complex64,
    t: Vec<Complex64>,
}

impl EpsilonProbe {
    /// `t[0]` is `t_2`. Requires `|ε| = 1` to within `1e-12`.
    pub fn new(epsilon: Complex64, t: Vec<Complex64>) -> Result<Self> {
        if (epsilon.norm() - 1.0).abs() >= 1e-12 {
            return Err(Error::domain(format!("epsilon must have unit modulus (got {})", epsilon.norm())));
        }
        Ok(Self { epsilon, t })
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    pub fn t(&self) -> &[Complex64] {
        &self.t
    }
}

/// 64 equally spaced points on the unit circle followed by `1, i, -1, -i`.
pub fn default_epsilons() -> Vec<Complex64> {
    let mut eps: Vec<_> = (0..64).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 64.0)).collect();
    eps.extend([Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]);
    eps
}

/// Lemma-5 test of `(H + εσG)/(1 + εb₁)` for each `ε`; `b1` is normally
/// `gb[1]`. The family is close-to-convex when every probe passes.
pub fn close_to_convex_probe(
    img: &ImageCoefficients,
    b1: Complex64,
    epsilons: &[Complex64],
) -> Result<Vec<CriterionReport>> {
    if !(b1.norm() < 1.0) {
        return Err(Error::domain(format!("|b1| must be below 1 (got {})", b1.norm())));
    }
    let len = img.ha().len().max(img.gb().len().saturating_sub(1));
    epsilons
        .iter()
        .enumerate()
        .map(|(k, &eps)| {
            let denom = 1.0 + eps * b1;
            assert!(denom.norm() >= 1e-12, "|1 + eps b1| vanished with |b1| < 1");
            let t = (2..len + 2).map(|n| (img.h(n) + eps * img.g(n)) / denom).collect();
            let probe = EpsilonProbe::new(eps, t)?;
            let mut report = lemma5_sum(probe.t());
            report.id = format!("L5[eps#{k}]");
            Ok(report)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::convolve;
    use crate::special_fn::WrightParams;

    fn order(a: f64) -> OrderParam {
        OrderParam::new(a).unwrap()
    }

    fn params(a: f64, b: f64, g: f64, d: f64) -> WrightParams {
        WrightParams::new(a, b, g, d).unwrap()
    }

    fn spec(p1: WrightParams, p2: WrightParams, s: f64) -> ConvolutionSpec {
        ConvolutionSpec::new(p1, p2, Complex64::new(s, 0.0)).unwrap()
    }

    #[test]
    fn order_domain() {
        assert!(OrderParam::new(1.0).is_err());
        assert!(OrderParam::new(-0.1).is_err());
        assert!(OrderParam::new(0.0).is_ok());
    }

    #[test]
    fn lemma1_examples() {
        let r = lemma1_sum(&Magnitudes::default(), order(0.3));
        assert_eq!((r.lhs, r.rhs, r.satisfied), (0.0, 0.7, true));

        let r = lemma1_sum(&Magnitudes::new(vec![0.5], vec![]), order(0.0));
        assert_eq!((r.lhs, r.rhs, r.margin, r.satisfied), (1.0, 1.0, 0.0, true));

        let r = lemma1_sum(&Magnitudes::new(vec![], vec![0.5]), order(0.5));
        assert_eq!((r.lhs, r.rhs, r.satisfied), (0.75, 0.5, false));
        assert_eq!(r.form, Form::Exact);
    }

    #[test]
    fn lemma2_examples() {
        assert!(lemma2_sum(&Magnitudes::default(), order(0.0)).satisfied);
        let r = lemma2_sum(&Magnitudes::new(vec![0.25], vec![]), order(0.0));
        assert_eq!((r.lhs, r.margin), (1.0, 0.0));
        let r = lemma2_sum(&Magnitudes::new(vec![], vec![0.6]), order(0.5));
        assert!((r.lhs - 0.9).abs() < 1e-15 && !r.satisfied);
    }

    #[test]
    fn lemma5_examples() {
        assert!(lemma5_sum(&[]).satisfied);
        let r = lemma5_sum(&[Complex64::new(0.5, 0.0)]);
        assert_eq!((r.lhs, r.margin), (1.0, 0.0));
        let r = lemma5_sum(&[Complex64::new(0.4, 0.0), Complex64::new(0.1, 0.0)]);
        assert!((r.lhs - 1.1).abs() < 1e-15 && !r.satisfied);
    }

    #[test]
    fn lemma6_delegates() {
        let m = Magnitudes::new(vec![0.1, 0.05], vec![0.02, 0.01]);
        for a in [0.0, 0.4, 0.9] {
            let srh = lemma6_membership(&m, order(a), RealClass::Srh);
            let l1 = lemma1_sum(&m, order(a));
            assert_eq!((srh.lhs, srh.rhs, srh.satisfied), (l1.lhs, l1.rhs, l1.satisfied));
            let krh = lemma6_membership(&m, order(a), RealClass::Krh);
            let l2 = lemma2_sum(&m, order(a));
            assert_eq!((krh.lhs, krh.rhs, krh.satisfied), (l2.lhs, l2.rhs, l2.satisfied));
        }
    }

    #[test]
    fn class_bounds() {
        let kh = class_bound_coeffs(ClassBound::Kh0, 0.0, 5).unwrap();
        assert_eq!(kh.a[3 - 2], 2.0);
        assert_eq!(kh.b[3 - 1], 1.0);
        assert_eq!(kh.b[0], 0.0);
        assert_eq!((kh.a.len(), kh.b.len()), (4, 5));

        let ch0 = class_bound_coeffs(ClassBound::Ch0Family, 0.0, 5).unwrap();
        assert_eq!((ch0.a[0], ch0.b[1]), (2.5, 0.5));
        assert_eq!(class_bound_coeffs(ClassBound::Ch, 0.0, 5).unwrap(), ch0);

        let ch = class_bound_coeffs(ClassBound::Ch, 0.5, 3).unwrap();
        assert_eq!(ch.b[0], 0.5);
        assert!((ch.a[0] - (2.5 + 0.5 * 0.5)).abs() < 1e-15);

        assert!(class_bound_coeffs(ClassBound::Ch, 1.0, 5).is_err());
        assert!(class_bound_coeffs(ClassBound::Kh0, 0.0, 1).is_err());
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("T9.9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn t31_examples() {
        let ctrl = SeriesControl::default();
        let big = params(1.0, 50.0, 1.0, 1.0);
        let r = stated_hypothesis(TheoremId::T3_1, &spec(big, big, 0.0), order(0.0), 0.0, &ctrl).unwrap();
        assert!(r.stated.lhs.abs() < 1e-12 && r.stated.satisfied && r.derived.satisfied);

        let p = params(2.0, 1.0, 2.0, 1.0);
        let r = stated_hypothesis(TheoremId::T3_1, &spec(p, p, 0.0), order(0.0), 0.0, &ctrl).unwrap();
        assert!((r.derived.lhs - 0.590_636_854_637_329_1).abs() < 1e-12);
        assert!(r.derived.satisfied);
    }

    #[test]
    fn t32_example() {
        let ctrl = SeriesControl::default();
        let p = params(1.0, 1.0, 1.0, 1.0);
        let r = stated_hypothesis(TheoremId::T3_2, &spec(p, p, 0.0), order(0.0), 0.0, &ctrl).unwrap();
        assert!((r.stated.lhs - 2.279_585_302_336_067_3).abs() < 1e-12);
        assert!(!r.stated.satisfied && !r.derived.satisfied);
    }

    #[test]
    fn t41_stated_rhs_is_order() {
        let ctrl = SeriesControl::default();
        let p = params(3.0, 4.0, 3.0, 4.0);
        let r = stated_hypothesis(TheoremId::T4_1, &spec(p, p, 0.0), order(0.0), 0.0, &ctrl).unwrap();
        assert_eq!(r.stated.rhs, 0.0);
        assert!(!r.stated.satisfied);
        assert!(r.derived.satisfied);
    }

    #[test]
    fn specialization_matches_forced_params() {
        let ctrl = SeriesControl::default();
        let p1 = params(1.5, 2.0, 0.7, 3.0);
        let p2 = params(2.5, 1.5, 4.0, 0.5);
        let s = spec(p1, p2, 0.2);
        let forced = spec(p1.with_unit_second_pair(), p2.with_unit_second_pair(), 0.2);
        for (short, full) in [(TheoremId::C1, TheoremId::T3_1), (TheoremId::R1, TheoremId::T4_1)] {
            let a = stated_hypothesis(short, &s, order(0.2), 0.0, &ctrl).unwrap();
            let b = stated_hypothesis(full, &forced, order(0.2), 0.0, &ctrl).unwrap();
            assert_eq!((a.stated.lhs, a.derived.lhs), (b.stated.lhs, b.derived.lhs));
            assert_eq!(a.stated.id, short.as_str());
        }
    }

    #[test]
    fn lhs_nondecreasing_in_sigma() {
        let ctrl = SeriesControl::default();
        let p1 = params(1.2, 1.5, 2.0, 1.0);
        let p2 = params(0.8, 2.0, 1.0, 2.5);
        for id in TheoremId::ALL {
            let mut prev: Option<HypothesisReport> = None;
            for s in [0.0, 0.3, 0.6, 0.9] {
                let r = stated_hypothesis(id, &spec(p1, p2, s), order(0.3), 0.4, &ctrl).unwrap();
                if let Some(p) = &prev {
                    assert!(r.stated.lhs >= p.stated.lhs, "{id} stated");
                    assert!(r.derived.lhs >= p.derived.lhs, "{id} derived");
                }
                prev = Some(r);
            }
        }
    }

    #[test]
    fn b1_is_validated_where_used() {
        let ctrl = SeriesControl::default();
        let p = params(2.0, 2.0, 2.0, 2.0);
        assert!(stated_hypothesis(TheoremId::T5_4, &spec(p, p, 0.1), order(0.0), 1.0, &ctrl).is_err());
        assert!(stated_hypothesis(TheoremId::T3_1, &spec(p, p, 0.1), order(0.0), 1.0, &ctrl).is_ok());
    }

    #[test]
    fn exact_image_examples() {
        let r = exact_image_criterion(&ImageCoefficients::identity(), order(0.4), ImageTarget::StarlikeL1);
        assert!(r.satisfied && (r.margin - 0.6).abs() < 1e-15);

        let p = params(2.0, 1.0, 2.0, 1.0);
        let f = CoefficientSeq::from_real(&vec![1.0; 49], &[]).unwrap();
        let img = convolve(&f, &spec(p, p, 0.0));
        let r = exact_image_criterion(&img, order(0.0), ImageTarget::StarlikeL1);
        assert!(r.satisfied && r.lhs <= 0.590_636_854_637_33 && r.lhs > 0.5906);

        let img = ImageCoefficients::identity().with_g(1, Complex64::new(0.9, 0.0));
        let r = exact_image_criterion(&img, order(0.2), ImageTarget::StarlikeL1);
        assert!((r.lhs - 1.08).abs() < 1e-15 && !r.satisfied);
    }

    #[test]
    fn probe_examples() {
        let eps = default_epsilons();
        assert_eq!(eps.len(), 68);
        let zero = Complex64::new(0.0, 0.0);
        assert!(close_to_convex_probe(&ImageCoefficients::identity(), zero, &eps).unwrap().iter().all(|r| r.satisfied));

        let img = ImageCoefficients::identity().with_h(2, Complex64::new(0.5, 0.0));
        let reports = close_to_convex_probe(&img, zero, &eps).unwrap();
        assert!(reports.iter().all(|r| r.satisfied && r.margin.abs() < 1e-15));

        let img = ImageCoefficients::identity().with_h(2, Complex64::new(0.4, 0.0)).with_g(2, Complex64::new(0.2, 0.0));
        let minus = close_to_convex_probe(&img, zero, &[Complex64::new(-1.0, 0.0)]).unwrap();
        assert!((minus[0].lhs - 0.4).abs() < 1e-15 && minus[0].satisfied);
        let plus = close_to_convex_probe(&img, zero, &[Complex64::new(1.0, 0.0)]).unwrap();
        assert!((plus[0].lhs - 1.2).abs() < 1e-15 && !plus[0].satisfied);
    }

    #[test]
    fn probe_rejects_bad_inputs() {
        let img = ImageCoefficients::identity();
        assert!(close_to_convex_probe(&img, Complex64::new(1.0, 0.0), &default_epsilons()).is_err());
        assert!(close_to_convex_probe(&img, Complex64::new(0.0, 0.0), &[Complex64::new(0.5, 0.0)]).is_err());
    }
}
