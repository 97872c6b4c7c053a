//! Harmonic mappings `f = h + ḡ` stored as truncated coefficient sequences,
//! and the convolution operator
//!
//! ```text
//! L(f) = H + conj(σ G),  H = h ∗ W₁,  G = g ∗ W₂
//! ```
//!
//! where `W₁`, `W₂` are normalized Wright functions. Convolution is the
//! Hadamard (coefficientwise) product, so `H` has coefficients `c_n(p₁) A_n`
//! and `σG` has `σ c_n(p₂) B_n`.
//!
//! Storage is dense from the lowest index: `h` from `n = 2` (the leading `z`
//! is implicit), `g` from `n = 1`. Missing tail coefficients are exactly zero.

use std::f64::consts::TAU;
use std::io::{Read, Write};
use std::ops::Add;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_fn::{norm_coeff, WrightParams};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Coefficients `A_2, …, A_N` and `B_1, …, B_M` of `f = h + ḡ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientSeq {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl CoefficientSeq {
    /// `a[0]` is `A_2`, `b[0]` is `B_1`. Requires `|B_1| < 1`.
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if a.iter().chain(&b).any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::domain("coefficients must be finite"));
        }
        if let Some(b1) = b.first() {
            if b1.norm() >= 1.0 {
                return Err(Error::domain(format!("|B_1| must be below 1 (got {})", b1.norm())));
            }
        }
        Ok(Self { a, b })
    }

    /// Real coefficients, convenient for magnitude-only constructions.
    pub fn from_real(a: &[f64], b: &[f64]) -> Result<Self> {
        let lift = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(lift(a), lift(b))
    }

    /// The identity mapping `f(z) = z`.
    pub fn identity() -> Self {
        Self::default()
    }

    /// `A_n` for `n ≥ 2`; zero beyond the stored range.
    pub fn a(&self, n: usize) -> Complex64 {
        n.checked_sub(2).and_then(|i| self.a.get(i)).copied().unwrap_or(ZERO)
    }

    /// `B_n` for `n ≥ 1`; zero beyond the stored range.
    pub fn b(&self, n: usize) -> Complex64 {
        n.checked_sub(1).and_then(|i| self.b.get(i)).copied().unwrap_or(ZERO)
    }

    pub fn a_slice(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b_slice(&self) -> &[Complex64] {
        &self.b
    }

    /// Reads the `kind,n,re,im` CSV format written by [`CoefficientSeq::write_csv`].
    ///
    /// `kind` is `A` (analytic, `n ≥ 2`) or `B` (co-analytic, `n ≥ 1`).
    /// Indices may appear in any order; gaps are zero.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["kind", "n", "re", "im"] {
            return Err(Error::spec(format!("coefficient file header must be kind,n,re,im (got {:?})", headers)));
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            let field = |i: usize| record.get(i).unwrap_or("");
            let bad = |what: &str| Error::spec(format!("coefficient row {}: bad {what}", line + 2));
            let n: usize = field(1).parse().map_err(|_| bad("index"))?;
            let re: f64 = field(2).parse().map_err(|_| bad("real part"))?;
            let im: f64 = field(3).parse().map_err(|_| bad("imaginary part"))?;
            let (seq, offset) = match field(0) {
                "A" | "a" if n >= 2 => (&mut a, 2),
                "B" | "b" if n >= 1 => (&mut b, 1),
                _ => return Err(bad("kind/index (A needs n >= 2, B needs n >= 1)")),
            };
            let i = n - offset;
            if seq.len() <= i {
                seq.resize(i + 1, ZERO);
            }
            seq[i] = Complex64::new(re, im);
        }
        Self::new(a, b)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
        wtr.write_record(["kind", "n", "re", "im"])?;
        let rows = self.a.iter().enumerate().map(|(i, c)| ("A", i + 2, c));
        let rows = rows.chain(self.b.iter().enumerate().map(|(i, c)| ("B", i + 1, c)));
        for (kind, n, c) in rows {
            wtr.write_record([kind.to_string(), n.to_string(), format!("{:e}", c.re), format!("{:e}", c.im)])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

impl Add for &CoefficientSeq {
    type Output = CoefficientSeq;

    /// Coefficientwise sum. The `|B_1| < 1` invariant is not rechecked.
    fn add(self, rhs: Self) -> CoefficientSeq {
        fn zip_add(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
            (0..x.len().max(y.len()))
                .map(|i| x.get(i).copied().unwrap_or(ZERO) + y.get(i).copied().unwrap_or(ZERO))
                .collect()
        }
        CoefficientSeq { a: zip_add(&self.a, &rhs.a), b: zip_add(&self.b, &rhs.b) }
    }
}

/// Kernel parameters and the co-analytic weight `σ` of the operator `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolutionSpec {
    pub p1: WrightParams,
    pub p2: WrightParams,
    sigma: Complex64,
}

impl ConvolutionSpec {
    pub fn new(p1: WrightParams, p2: WrightParams, sigma: Complex64) -> Result<Self> {
        if !(sigma.norm() < 1.0) {
            return Err(Error::domain(format!("|sigma| must be below 1 (got {})", sigma.norm())));
        }
        Ok(Self { p1, p2, sigma })
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }
}

/// Coefficients of `L(f) = H + conj(σG)`: `ha` holds `H`'s coefficients from
/// `n = 2`, `gb` holds `σG`'s coefficients from `n = 1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ImageCoefficients {
    ha: Vec<Complex64>,
    gb: Vec<Complex64>,
}

impl ImageCoefficients {
    /// `ha[0]` is the coefficient of `z²` in `H`, `gb[0]` that of `z` in `σG`.
    pub fn new(ha: Vec<Complex64>, gb: Vec<Complex64>) -> Self {
        Self { ha, gb }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// Sets the coefficient of `zⁿ` in `H` (`n ≥ 2`), growing storage as needed.
    pub fn with_h(mut self, n: usize, value: Complex64) -> Self {
        assert!(n >= 2, "H coefficients start at n = 2");
        set_dense(&mut self.ha, n - 2, value);
        self
    }

    /// Sets the coefficient of `zⁿ` in `σG` (`n ≥ 1`).
    pub fn with_g(mut self, n: usize, value: Complex64) -> Self {
        assert!(n >= 1, "G coefficients start at n = 1");
        set_dense(&mut self.gb, n - 1, value);
        self
    }

    pub fn h(&self, n: usize) -> Complex64 {
        n.checked_sub(2).and_then(|i| self.ha.get(i)).copied().unwrap_or(ZERO)
    }

    pub fn g(&self, n: usize) -> Complex64 {
        n.checked_sub(1).and_then(|i| self.gb.get(i)).copied().unwrap_or(ZERO)
    }

    pub fn ha(&self) -> &[Complex64] {
        &self.ha
    }

    pub fn gb(&self) -> &[Complex64] {
        &self.gb
    }

    /// Rotation of the disk by `φ`: the image of `e^{-iφ} f(e^{iφ} z)`.
    ///
    /// Analytic coefficients pick up `e^{i(n-1)φ}`, co-analytic ones
    /// `e^{i(n+1)φ}` because of the conjugation.
    pub fn rotated(&self, phi: f64) -> Self {
        let ha = self.ha.iter().enumerate().map(|(i, c)| c * Complex64::from_polar(1.0, (i + 1) as f64 * phi));
        let gb = self.gb.iter().enumerate().map(|(i, c)| c * Complex64::from_polar(1.0, (i + 2) as f64 * phi));
        Self { ha: ha.collect(), gb: gb.collect() }
    }

    /// Values and first two derivatives of `H` and `σG` at `z`.
    pub fn jet(&self, z: Complex64) -> Jet {
        // H(z) = z + z² P(z) with P = Σ ha[i] z^i, evaluated by Horner with derivatives.
        let (p, dp, ddp) = horner2(&self.ha, z);
        let z2 = z * z;
        let h = z + z2 * p;
        let hp = 1.0 + 2.0 * z * p + z2 * dp;
        let hpp = 2.0 * p + 4.0 * z * dp + z2 * ddp;
        // σG(z) = z Q(z)
        let (q, dq, ddq) = horner2(&self.gb, z);
        let g = z * q;
        let gp = q + z * dq;
        let gpp = 2.0 * dq + z * ddq;
        Jet { h, hp, hpp, g, gp, gpp }
    }
}

fn set_dense(v: &mut Vec<Complex64>, i: usize, value: Complex64) {
    if v.len() <= i {
        v.resize(i + 1, ZERO);
    }
    v[i] = value;
}

/// `P(z), P′(z), P″(z)` for `P = Σ c[i] zⁱ`.
fn horner2(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, Complex64) {
    let (mut p, mut dp, mut ddp) = (ZERO, ZERO, ZERO);
    for &ci in c.iter().rev() {
        ddp = ddp * z + 2.0 * dp;
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp, ddp)
}

/// `H, H′, H″` and `σG, (σG)′, (σG)″` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub h: Complex64,
    pub hp: Complex64,
    pub hpp: Complex64,
    pub g: Complex64,
    pub gp: Complex64,
    pub gpp: Complex64,
}

impl Jet {
    /// `f(z) = H(z) + conj(σG(z))`.
    pub fn value(&self) -> Complex64 {
        self.h + self.g.conj()
    }
}

/// A point `z = r e^{iθ}` of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    r: f64,
    theta: f64,
}

impl EvalPoint {
    /// `theta` is reduced into `[0, 2π)`.
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::domain(format!("radius must lie in [0, 1) (got {r})")));
        }
        if !theta.is_finite() {
            return Err(Error::domain("angle must be finite"));
        }
        let theta = theta.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        let theta = if theta >= TAU { 0.0 } else { theta };
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

/// `H′`, `H″`, `(σG)′`, `(σG)″` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapDerivatives {
    pub hp: Complex64,
    pub hpp: Complex64,
    pub gp: Complex64,
    pub gpp: Complex64,
}

/// Applies `L` to `f`. Output lengths equal input lengths.
pub fn convolve(f: &CoefficientSeq, spec: &ConvolutionSpec) -> ImageCoefficients {
    let coeff = |p: &WrightParams, n: usize| norm_coeff(p, n).expect("n >= 1 by construction");
    let ha = f.a.iter().enumerate().map(|(i, a)| a * coeff(&spec.p1, i + 2)).collect();
    let gb = f.b.iter().enumerate().map(|(i, b)| spec.sigma * coeff(&spec.p2, i + 1) * b).collect();
    ImageCoefficients { ha, gb }
}

/// `L(f)(z) = H(z) + conj(σG(z))` at `z = r e^{iθ}`.
pub fn eval_map(img: &ImageCoefficients, pt: &EvalPoint) -> Complex64 {
    img.jet(pt.z()).value()
}

pub fn eval_derivs(img: &ImageCoefficients, pt: &EvalPoint) -> MapDerivatives {
    let j = img.jet(pt.z());
    MapDerivatives { hp: j.hp, hpp: j.hpp, gp: j.gp, gpp: j.gpp }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit() -> WrightParams {
        WrightParams::new(1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn b1_must_be_inside_disk() {
        assert!(CoefficientSeq::new(vec![], vec![c(0.6, 0.8)]).is_err());
        assert!(CoefficientSeq::new(vec![], vec![c(0.6, 0.7)]).is_ok());
        assert!(ConvolutionSpec::new(unit(), unit(), c(0.0, 1.0)).is_err());
    }

    #[test]
    fn convolve_examples() {
        let spec = ConvolutionSpec::new(unit(), unit(), c(0.5, 0.0)).unwrap();
        let img = convolve(&CoefficientSeq::identity(), &spec);
        assert!(img.ha().is_empty() && img.gb().is_empty());

        let f = CoefficientSeq::from_real(&[1.0], &[]).unwrap();
        assert_eq!(convolve(&f, &spec).h(2), c(1.0, 0.0));

        let f = CoefficientSeq::from_real(&[], &[0.5]).unwrap();
        assert_eq!(convolve(&f, &spec).g(1), c(0.25, 0.0));
    }

    #[test]
    fn convolve_uses_norm_coeff() {
        let p1 = WrightParams::new(2.0, 0.5, 1.5, 1.0).unwrap();
        let p2 = WrightParams::new(0.7, 1.2, 3.0, 0.0).unwrap();
        let sigma = c(0.1, -0.4);
        let spec = ConvolutionSpec::new(p1, p2, sigma).unwrap();
        let f = CoefficientSeq::new(vec![c(1.0, 2.0), c(-0.5, 0.1)], vec![c(0.3, 0.3), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let img = convolve(&f, &spec);
        assert_eq!(img.ha().len(), 2);
        assert_eq!(img.gb().len(), 3);
        for n in 2..=3 {
            assert!((img.h(n) - f.a(n) * norm_coeff(&p1, n).unwrap()).norm() < 1e-15);
        }
        for n in 1..=3 {
            assert!((img.g(n) - sigma * norm_coeff(&p2, n).unwrap() * f.b(n)).norm() < 1e-15);
        }
        assert_eq!(img.g(1), sigma * f.b(1));
    }

    #[test]
    fn eval_map_examples() {
        let pt = EvalPoint::new(0.5, 0.0).unwrap();
        assert_eq!(eval_map(&ImageCoefficients::identity(), &pt), c(0.5, 0.0));
        let img = ImageCoefficients::identity().with_h(2, c(1.0, 0.0));
        assert!((eval_map(&img, &pt) - c(0.75, 0.0)).norm() < 1e-15);
        let img = ImageCoefficients::identity().with_g(1, c(0.25, 0.0));
        let v = eval_map(&img, &EvalPoint::new(0.4, FRAC_PI_2).unwrap());
        assert!((v - c(0.0, 0.3)).norm() < 1e-15);
    }

    #[test]
    fn eval_derivs_examples() {
        let id = eval_derivs(&ImageCoefficients::identity(), &EvalPoint::new(0.7, 2.0).unwrap());
        assert_eq!((id.hp, id.hpp, id.gp, id.gpp), (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));

        let img = ImageCoefficients::identity().with_h(2, c(1.0, 0.0));
        let d = eval_derivs(&img, &EvalPoint::new(0.5, 0.0).unwrap());
        assert!((d.hp - c(2.0, 0.0)).norm() < 1e-15 && (d.hpp - c(2.0, 0.0)).norm() < 1e-15);

        let img = ImageCoefficients::identity().with_g(2, c(0.5, 0.0));
        let d = eval_derivs(&img, &EvalPoint::new(0.2, 0.0).unwrap());
        assert!((d.gp - c(0.2, 0.0)).norm() < 1e-15 && (d.gpp - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn origin_maps_to_origin() {
        let img = ImageCoefficients::new(vec![c(0.3, 0.1); 5], vec![c(-0.2, 0.4); 5]);
        assert_eq!(eval_map(&img, &EvalPoint::new(0.0, 1.0).unwrap()), c(0.0, 0.0));
    }

    #[test]
    fn jet_matches_naive_powers() {
        let img = ImageCoefficients::new(vec![c(0.3, 0.1), c(-0.2, 0.05), c(0.1, 0.1)], vec![c(0.1, 0.0), c(0.0, 0.2)]);
        let z = c(0.3, -0.6);
        let j = img.jet(z);
        let mut h = z;
        let mut hp = c(1.0, 0.0);
        let mut hpp = c(0.0, 0.0);
        for (i, a) in img.ha().iter().enumerate() {
            let n = (i + 2) as i32;
            h += a * z.powi(n);
            hp += a * n as f64 * z.powi(n - 1);
            hpp += a * (n * (n - 1)) as f64 * z.powi(n - 2);
        }
        assert!((j.h - h).norm() < 1e-15 && (j.hp - hp).norm() < 1e-15 && (j.hpp - hpp).norm() < 1e-14);
        let g = c(0.1, 0.0) * z + c(0.0, 0.2) * z * z;
        assert!((j.g - g).norm() < 1e-15);
        assert!((j.gp - (c(0.1, 0.0) + c(0.0, 0.4) * z)).norm() < 1e-15);
        assert!((j.gpp - c(0.0, 0.4)).norm() < 1e-15);
    }

    #[test]
    fn eval_point_reduces_angle() {
        let p = EvalPoint::new(0.3, -0.5).unwrap();
        assert!((p.theta() - (TAU - 0.5)).abs() < 1e-15);
        assert!(EvalPoint::new(1.0, 0.0).is_err());
        assert!(EvalPoint::new(-0.1, 0.0).is_err());
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let f = CoefficientSeq::new(vec![c(0.25, -0.5), c(0.0, 0.0), c(1e-3, 2.0)], vec![c(0.5, 0.0)]).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        assert_eq!(CoefficientSeq::read_csv(&buf[..]).unwrap(), f);

        let sparse = "kind,n,re,im\n# comment\nA,4,1,0\nB,2,0,0.5\n";
        let g = CoefficientSeq::read_csv(sparse.as_bytes()).unwrap();
        assert_eq!(g.a(2), c(0.0, 0.0));
        assert_eq!(g.a(4), c(1.0, 0.0));
        assert_eq!(g.b(1), c(0.0, 0.0));
        assert_eq!(g.b(2), c(0.0, 0.5));

        assert!(CoefficientSeq::read_csv("kind,n,re,im\nA,1,1,0\n".as_bytes()).is_err());
        assert!(CoefficientSeq::read_csv("k,n,re,im\n".as_bytes()).is_err());
        assert!(CoefficientSeq::read_csv("kind,n,re,im\nB,1,1,0\n".as_bytes()).is_err());
    }
}
