//! The four-parameter Wright function
//!
//! ```text
//! 𝒲(z) = Σ_{n≥0} zⁿ / (Γ(α + nβ) Γ(γ + nδ))
//! ```
//!
//! and its normalized form `W(z) = z Γ(α)Γ(γ) 𝒲(z) = Σ_{n≥1} c_n zⁿ` with
//! `c_n = Γ(α)Γ(γ) / (Γ(α + (n-1)β) Γ(γ + (n-1)δ))`.
//!
//! All gamma values are handled as log-gamma differences; the individual
//! gamma factors overflow long before the ratios do.
//!
//! Truncation uses a rigorous geometric tail bound. Because `ln Γ` is convex
//! on the positive axis, the ratio `|t_{n+1} / t_n|` of consecutive term
//! magnitudes is nonincreasing in `n`. Once that ratio `ρ` drops below one,
//! everything after the next term is dominated by a geometric series, so the
//! tail after term `n` is at most `|t_n| ρ / (1 - ρ)`. The derivative sums at
//! `z = 1` use the envelope `n³ c_n`, whose ratio is also nonincreasing.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The four real parameters `(α, β, γ, δ)` of one Wright function.
///
/// Invariants: `α > 0`, `γ > 0`, `β ≥ 0`, `δ ≥ 0` and `β + δ > 0`; the last
/// one is what makes the series entire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
}

impl WrightParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        if ![alpha, beta, gamma, delta].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("Wright parameters must be finite"));
        }
        if alpha <= 0.0 || gamma <= 0.0 {
            return Err(Error::domain(format!(
                "Wright parameters need alpha > 0 and gamma > 0 (got alpha = {alpha}, gamma = {gamma})"
            )));
        }
        if beta < 0.0 || delta < 0.0 {
            return Err(Error::domain(format!(
                "Wright parameters need beta >= 0 and delta >= 0 (got beta = {beta}, delta = {delta})"
            )));
        }
        if beta + delta <= 0.0 {
            return Err(Error::domain(
                "Wright parameters need beta + delta > 0 for the series to converge",
            ));
        }
        Ok(Self { alpha, beta, gamma, delta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// The same parameters with `γ = δ = 1`, i.e. the classical Wright kernel.
    pub fn with_unit_second_pair(&self) -> Self {
        Self { gamma: 1.0, delta: 1.0, ..*self }
    }

    /// `ln Γ(α + kβ) + ln Γ(γ + kδ)`.
    fn log_denominator(&self, k: f64) -> f64 {
        ln_gamma(self.alpha + k * self.beta) + ln_gamma(self.gamma + k * self.delta)
    }

    /// `ln(Γ(α) Γ(γ))`, the log of the normalizing factor.
    fn log_normalizer(&self) -> f64 {
        self.log_denominator(0.0)
    }
}

impl fmt::Display for WrightParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.alpha, self.beta, self.gamma, self.delta)
    }
}

impl FromStr for WrightParams {
    type Err = Error;

    /// Parses `alpha,beta,gamma,delta`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::spec(format!("bad Wright parameters {s:?}: {e}")))?;
        match parts[..] {
            [a, b, g, d] => Self::new(a, b, g, d),
            _ => Err(Error::spec(format!(
                "Wright parameters take four comma-separated values alpha,beta,gamma,delta (got {s:?})"
            ))),
        }
    }
}

/// Truncation control shared by every series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    max_terms: usize,
    tail_tol: f64,
}

impl SeriesControl {
    pub const DEFAULT_MAX_TERMS: usize = 2000;
    pub const DEFAULT_TAIL_TOL: f64 = 1e-14;

    pub fn new(max_terms: usize, tail_tol: f64) -> Result<Self> {
        if max_terms < 2 {
            return Err(Error::domain(format!("max_terms must be at least 2 (got {max_terms})")));
        }
        if !(tail_tol > 0.0 && tail_tol.is_finite()) {
            return Err(Error::domain(format!("tail_tol must be positive (got {tail_tol})")));
        }
        Ok(Self { max_terms, tail_tol })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { max_terms: Self::DEFAULT_MAX_TERMS, tail_tol: Self::DEFAULT_TAIL_TOL }
    }
}

/// `W(1)`, `W′(1)`, `W″(1)` and `W‴(1)` of the normalized function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeValues {
    pub w1: f64,
    pub wp1: f64,
    pub wpp1: f64,
    pub wppp1: f64,
}

pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Normalized coefficient `c_n` for `n ≥ 1`; `c_1 = 1` for every parameter set.
pub fn norm_coeff(p: &WrightParams, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("normalized coefficients are indexed from n = 1"));
    }
    Ok(coeff_value(p, n))
}

// Below this argument Γ is finite in f64 and tgamma is more accurate than
// exp(lgamma), whose absolute error grows with |lnΓ|.
const DIRECT_GAMMA_MAX: f64 = 170.0;

fn direct_gamma(args: [f64; 2]) -> Option<f64> {
    if args.iter().all(|&x| x <= DIRECT_GAMMA_MAX) {
        Some(libm::tgamma(args[0]) * libm::tgamma(args[1]))
    } else {
        None
    }
}

/// `1 / (Γ(α+kβ) Γ(γ+kδ))`.
fn inv_denominator(p: &WrightParams, k: f64) -> f64 {
    match direct_gamma([p.alpha + k * p.beta, p.gamma + k * p.delta]) {
        Some(d) => 1.0 / d,
        None => (-p.log_denominator(k)).exp(),
    }
}

fn coeff_value(p: &WrightParams, n: usize) -> f64 {
    if n == 1 {
        return 1.0;
    }
    match direct_gamma([p.alpha, p.gamma]) {
        Some(num) => num * inv_denominator(p, (n - 1) as f64),
        None => log_norm_coeff(p, n).exp(),
    }
}

fn log_norm_coeff(p: &WrightParams, n: usize) -> f64 {
    if n == 1 {
        return 0.0;
    }
    p.log_normalizer() - p.log_denominator((n - 1) as f64)
}

/// Adds terms `k = 0, 1, …` until the geometric tail bound on the envelope
/// `exp(log_envelope(k))` drops below the tolerance. Summation then goes on
/// while the tail can still move the partial sum, whose magnitude
/// `add_term` returns, by half an ulp; running out of terms in that phase is
/// not an error.
///
/// `log_envelope` must have nonincreasing consecutive differences.
fn sum_until_tail(
    ctrl: &SeriesControl,
    log_envelope: impl Fn(usize) -> f64,
    mut add_term: impl FnMut(usize) -> f64,
) -> Result<()> {
    let mut current = log_envelope(0);
    let mut tail_bound = f64::INFINITY;
    let mut converged = false;
    for k in 0..ctrl.max_terms {
        let scale = add_term(k);
        let next = log_envelope(k + 1);
        if next == f64::NEG_INFINITY {
            return Ok(());
        }
        let ratio = (next - current).exp();
        if ratio < 1.0 {
            tail_bound = next.exp() / (1.0 - ratio);
            converged |= tail_bound <= ctrl.tail_tol;
            if converged && tail_bound <= 0.5 * f64::EPSILON * scale {
                return Ok(());
            }
        }
        current = next;
    }
    if converged {
        return Ok(());
    }
    Err(Error::NonConvergence { terms: ctrl.max_terms, tail_bound })
}

/// Evaluates `𝒲_{(α,β),(γ,δ)}(z)`.
pub fn wright_eval(p: &WrightParams, z: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("z must be finite"));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new((-p.log_normalizer()).exp(), 0.0));
    }
    let ln_abs = z.norm().ln();
    let arg = z.arg();
    let log_mag = |k: usize| k as f64 * ln_abs - p.log_denominator(k as f64);

    let mut sum = Complex64::new(0.0, 0.0);
    sum_until_tail(ctrl, log_mag, |k| {
        let direct = z.norm().powi(k as i32) * inv_denominator(p, k as f64);
        let mag = if direct.is_normal() { direct } else { log_mag(k).exp() };
        sum += Complex64::from_polar(mag, k as f64 * arg);
        sum.norm()
    })?;
    Ok(sum)
}

/// Evaluates the normalized function `W(z) = z Γ(α)Γ(γ) 𝒲(z)`.
pub fn normalized_eval(p: &WrightParams, z: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    let w = wright_eval(p, z, ctrl)?;
    Ok(z * p.log_normalizer().exp() * w)
}

/// Evaluates `W(1)` through `W‴(1)` as positive series.
pub fn derivs_at_one(p: &WrightParams, ctrl: &SeriesControl) -> Result<DerivativeValues> {
    let mut acc = DerivAccumulator::default();
    // k = n - 1, envelope n³ c_n
    let envelope = |k: usize| log_norm_coeff(p, k + 1) + 3.0 * ((k + 1) as f64).ln();
    sum_until_tail(ctrl, envelope, |k| {
        acc.add(k + 1, coeff_value(p, k + 1));
        // every sum should be accurate relative to itself, W‴(1) can be tiny
        acc.sums.iter().copied().fold(f64::INFINITY, f64::min)
    })?;
    Ok(acc.finish())
}

/// The derivative sums truncated after exactly `terms` terms, without any
/// tail check. Useful for studying truncation behaviour.
pub fn partial_derivs(p: &WrightParams, terms: usize) -> DerivativeValues {
    let mut acc = DerivAccumulator::default();
    for n in 1..=terms {
        acc.add(n, coeff_value(p, n));
    }
    acc.finish()
}

#[derive(Default)]
struct DerivAccumulator {
    sums: [f64; 4],
}

impl DerivAccumulator {
    fn add(&mut self, n: usize, c: f64) {
        let n = n as f64;
        self.sums[0] += c;
        self.sums[1] += n * c;
        self.sums[2] += n * (n - 1.0) * c;
        self.sums[3] += n * (n - 1.0) * (n - 2.0) * c;
    }

    fn finish(self) -> DerivativeValues {
        let [w1, wp1, wpp1, wppp1] = self.sums;
        DerivativeValues { w1, wp1, wpp1, wppp1 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use statrs::function::gamma::gamma;

    // I₀(2) and I₁(2), 40-digit series evaluation.
    const I0_2: f64 = 2.279_585_302_336_067_3;
    const I1_2: f64 = 1.590_636_854_637_329_1;

    fn params(a: f64, b: f64, g: f64, d: f64) -> WrightParams {
        WrightParams::new(a, b, g, d).unwrap()
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(WrightParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(WrightParams::new(1.0, 1.0, -1.0, 1.0).is_err());
        assert!(WrightParams::new(1.0, -0.5, 1.0, 1.0).is_err());
        assert!(WrightParams::new(1.0, 0.0, 1.0, 0.0).is_err());
        assert!(WrightParams::new(1.0, f64::NAN, 1.0, 1.0).is_err());
        assert!(WrightParams::new(1.0, 0.0, 1.0, 0.5).is_ok());
    }

    #[test]
    fn parses_comma_list() {
        let p: WrightParams = "2, 1,2,0.5".parse().unwrap();
        assert_eq!(p, params(2.0, 1.0, 2.0, 0.5));
        assert!("1,1,1".parse::<WrightParams>().is_err());
        assert!("1,0,1,0".parse::<WrightParams>().unwrap_err().to_string().contains("beta + delta"));
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(1, 1e-10).is_err());
        assert!(SeriesControl::new(10, 0.0).is_err());
        let d = SeriesControl::default();
        assert_eq!((d.max_terms(), d.tail_tol()), (2000, 1e-14));
    }

    #[test]
    fn norm_coeff_examples() {
        assert_eq!(norm_coeff(&params(1.0, 1.0, 1.0, 1.0), 1).unwrap(), 1.0);
        assert_relative_eq!(norm_coeff(&params(1.0, 1.0, 1.0, 1.0), 3).unwrap(), 0.25, epsilon = 1e-15);
        assert_relative_eq!(norm_coeff(&params(2.0, 1.0, 2.0, 0.0), 2).unwrap(), 0.5, epsilon = 1e-15);
        assert!(norm_coeff(&params(1.0, 1.0, 1.0, 1.0), 0).is_err());
    }

    #[test]
    fn norm_coeff_matches_direct_gamma() {
        let p = params(0.7, 1.3, 2.2, 0.4);
        for n in 1..20 {
            let k = (n - 1) as f64;
            let direct = gamma(0.7) * gamma(2.2) / (gamma(0.7 + k * 1.3) * gamma(2.2 + k * 0.4));
            assert_relative_eq!(norm_coeff(&p, n).unwrap(), direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn norm_coeff_survives_huge_gamma_arguments() {
        // 1/Γ(451)² underflows cleanly instead of producing NaN
        assert_eq!(norm_coeff(&params(1.0, 50.0, 1.0, 50.0), 10).unwrap(), 0.0);
        // Γ(200) overflows f64; c_3 = Γ(200)/Γ(201) · 1/Γ(2) does not
        let c = norm_coeff(&params(200.0, 0.5, 1.0, 0.5), 3).unwrap();
        assert_relative_eq!(c, 1.0 / 200.0, max_relative = 1e-12);
    }

    #[test]
    fn wright_eval_examples() {
        let p = params(1.0, 1.0, 1.0, 1.0);
        let ctrl = SeriesControl::default();
        assert_eq!(wright_eval(&p, Complex64::new(0.0, 0.0), &ctrl).unwrap(), Complex64::new(1.0, 0.0));
        let w = wright_eval(&p, Complex64::new(1.0, 0.0), &ctrl).unwrap();
        assert_relative_eq!(w.re, I0_2, epsilon = 1e-14);
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn wright_eval_complex_points() {
        // 40-digit reference values
        let ctrl = SeriesControl::default();
        let w = wright_eval(&params(1.0, 1.0, 1.0, 1.0), Complex64::new(0.3, -1.2), &ctrl).unwrap();
        assert!((w - Complex64::new(0.929_702_361_321_175_3, -1.337_700_070_638_048_1)).norm() < 1e-13);
        let w = wright_eval(&params(0.5, 1.5, 2.0, 0.25), Complex64::new(1.5, 0.5), &ctrl).unwrap();
        assert!((w - Complex64::new(2.402_096_703_054_336_8, 0.876_258_646_983_483_1)).norm() < 1e-13);
    }

    #[test]
    fn normalized_eval_examples() {
        let ctrl = SeriesControl::default();
        let p = params(3.0, 0.5, 0.5, 2.0);
        assert_eq!(normalized_eval(&p, Complex64::new(0.0, 0.0), &ctrl).unwrap(), Complex64::new(0.0, 0.0));
        let w = normalized_eval(&params(1.0, 1.0, 1.0, 1.0), Complex64::new(1.0, 0.0), &ctrl).unwrap();
        assert_relative_eq!(w.re, I0_2, epsilon = 1e-13);
        // c_n = 1/(n!)², so W(1) = I₀(2) - 1
        let w = normalized_eval(&params(2.0, 1.0, 2.0, 1.0), Complex64::new(1.0, 0.0), &ctrl).unwrap();
        assert_relative_eq!(w.re, I0_2 - 1.0, epsilon = 1e-13);
    }

    #[test]
    fn normalized_derivative_at_origin_is_one() {
        let ctrl = SeriesControl::default();
        let p = params(1.7, 0.6, 0.9, 2.1);
        let h = 1e-7;
        let w = normalized_eval(&p, Complex64::new(h, 0.0), &ctrl).unwrap();
        assert!((w.re / h - 1.0).abs() < 1e-6);
    }

    #[test]
    fn derivs_examples() {
        let ctrl = SeriesControl::default();
        let d = derivs_at_one(&params(1.0, 1.0, 1.0, 1.0), &ctrl).unwrap();
        assert_relative_eq!(d.w1, I0_2, epsilon = 1e-13);
        assert_relative_eq!(d.wp1, I0_2 + I1_2, epsilon = 1e-13);
        // W(z) = Σ zⁿ/((n-1)!)², so W″(1) = W′(1) and W‴(1) = W(1) here.
        assert_relative_eq!(d.wpp1, I0_2 + I1_2, epsilon = 1e-13);
        assert_relative_eq!(d.wppp1, I0_2, epsilon = 1e-13);

        let d = derivs_at_one(&params(1.0, 50.0, 1.0, 50.0), &ctrl).unwrap();
        assert!(d.w1 - 1.0 < 1e-10 && d.w1 >= 1.0);
        assert!(d.wp1 - 1.0 < 1e-10 && d.wp1 >= 1.0);
    }

    #[test]
    fn derivs_of_second_bessel_family() {
        let ctrl = SeriesControl::default();
        let d = derivs_at_one(&params(2.0, 1.0, 2.0, 1.0), &ctrl).unwrap();
        assert_relative_eq!(d.w1, 1.279_585_302_336_067_3, epsilon = 1e-13);
        assert_relative_eq!(d.wp1, I1_2, epsilon = 1e-13);
        assert_relative_eq!(d.wpp1, 0.688_948_447_698_738_2, epsilon = 1e-13);
        assert_relative_eq!(d.wppp1, 0.212_739_959_239_852_66, epsilon = 1e-13);
    }

    #[test]
    fn non_convergence_is_reported() {
        let ctrl = SeriesControl::new(5, 1e-14).unwrap();
        let err = derivs_at_one(&params(1.0, 0.25, 1.0, 0.25), &ctrl).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { terms: 5, .. }));
        assert_eq!(err.exit_code(), 3);
        let err = wright_eval(&params(1.0, 0.0, 1.0, 0.01), Complex64::new(5.0, 0.0), &ctrl).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn partial_sums_are_monotone() {
        let p = params(0.8, 0.5, 1.5, 0.3);
        let mut prev = partial_derivs(&p, 1);
        for terms in 2..60 {
            let d = partial_derivs(&p, terms);
            assert!(d.w1 >= prev.w1 && d.wp1 >= prev.wp1);
            assert!(d.wpp1 >= prev.wpp1 && d.wppp1 >= prev.wppp1);
            prev = d;
        }
        let full = derivs_at_one(&p, &SeriesControl::default()).unwrap();
        assert!(full.wppp1 >= prev.wppp1);
    }

    #[test]
    fn beta_zero_is_allowed() {
        let ctrl = SeriesControl::default();
        let p = params(1.5, 0.0, 1.0, 1.0);
        // c_n = 1/(n-1)!, so W(1) = e
        let d = derivs_at_one(&p, &ctrl).unwrap();
        assert_relative_eq!(d.w1, std::f64::consts::E, epsilon = 1e-13);
    }
}
