//! C ABI over `hwright`.
//!
//! Conventions: every fallible function returns [`HwcStatus`] and writes
//! results through out-pointers, which are left untouched on failure. A
//! null [`HwcControl`] pointer selects the default series control. Images are
//! opaque handles created by `hwc_image_*` constructors and released with
//! [`hwc_image_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hwright::criteria::{exact_image_criterion, stated_hypothesis, CriterionReport, ImageTarget, OrderParam, TheoremId};
use hwright::harmonic::{convolve, eval_map, CoefficientSeq, ConvolutionSpec, EvalPoint, ImageCoefficients};
use hwright::oracle::{sweep, Quantity, SampleGrid};
use hwright::special_fn::{derivs_at_one, normalized_eval, wright_eval, SeriesControl, WrightParams};
use hwright::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwcStatus {
    Ok = 0,
    Domain = 2,
    NonConvergence = 3,
    Io = 4,
    Singular = 5,
    Spec = 6,
    NullPointer = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwcComplex {
    pub re: f64,
    pub im: f64,
}

impl From<HwcComplex> for Complex64 {
    fn from(z: HwcComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for HwcComplex {
    fn from(z: Complex64) -> Self {
        HwcComplex { re: z.re, im: z.im }
    }
}

/// `alpha, beta, gamma, delta` of a Wright kernel.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwcParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwcControl {
    pub max_terms: usize,
    pub tail_tol: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HwcDerivs {
    pub w1: f64,
    pub wp1: f64,
    pub wpp1: f64,
    pub wppp1: f64,
}

/// One inequality `lhs <= rhs`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HwcReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
}

impl From<&CriterionReport> for HwcReport {
    fn from(r: &CriterionReport) -> Self {
        HwcReport { lhs: r.lhs, rhs: r.rhs, margin: r.margin, satisfied: r.satisfied }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwcImageTarget {
    StarlikeL1 = 0,
    ConvexL2 = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwcQuantity {
    DthetaArgF = 0,
    DthetaArgFtheta = 1,
    JacobianMargin = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HwcSweepSummary {
    pub min_value: f64,
    pub argmin_r: f64,
    pub argmin_theta: f64,
    /// Sites below the threshold, singular ones included.
    pub violations: usize,
    pub singular: usize,
}

/// Opaque image coefficients `L(f)`.
pub struct HwcImage {
    inner: ImageCoefficients,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HwcStatus {
    match e {
        Error::Domain(_) => HwcStatus::Domain,
        Error::NonConvergence { .. } => HwcStatus::NonConvergence,
        Error::Singular { .. } => HwcStatus::Singular,
        Error::Spec(_) => HwcStatus::Spec,
        Error::Io(_) | Error::Csv(_) => HwcStatus::Io,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HwcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HwcStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            HwcStatus::NullPointer
        }
        Err(_) => {
            set_last_error("internal panic".into());
            HwcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn slice<'a, T>(p: *const T, n: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn params(p: *const HwcParams, what: &'static str) -> Result<WrightParams, Fail> {
    let p = deref(p, what)?;
    Ok(WrightParams::new(p.alpha, p.beta, p.gamma, p.delta)?)
}

unsafe fn control(c: *const HwcControl) -> Result<SeriesControl, Fail> {
    match c.as_ref() {
        None => Ok(SeriesControl::default()),
        Some(c) => Ok(SeriesControl::new(c.max_terms, c.tail_tol)?),
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hwc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn hwc_status_message(status: HwcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HwcStatus::Ok => c"ok",
        HwcStatus::Domain => c"argument outside the domain",
        HwcStatus::NonConvergence => c"series did not converge",
        HwcStatus::Io => c"i/o error",
        HwcStatus::Singular => c"singular point",
        HwcStatus::Spec => c"invalid specification",
        HwcStatus::NullPointer => c"null pointer argument",
        HwcStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// Four-parameter Wright function at `z`.
///
/// # Safety
/// `p` and `out` must be valid; `ctrl` may be null.
#[no_mangle]
pub unsafe extern "C" fn hwc_wright_eval(
    p: *const HwcParams,
    z: HwcComplex,
    ctrl: *const HwcControl,
    out_value: *mut HwcComplex,
) -> HwcStatus {
    guard(|| {
        let v = wright_eval(&params(p, "p")?, z.into(), &control(ctrl)?)?;
        *out(out_value, "out_value")? = v.into();
        Ok(())
    })
}

/// Normalized function `z Γ(α)Γ(γ) 𝒲(z)` at `z`.
///
/// # Safety
/// As [`hwc_wright_eval`].
#[no_mangle]
pub unsafe extern "C" fn hwc_normalized_eval(
    p: *const HwcParams,
    z: HwcComplex,
    ctrl: *const HwcControl,
    out_value: *mut HwcComplex,
) -> HwcStatus {
    guard(|| {
        let v = normalized_eval(&params(p, "p")?, z.into(), &control(ctrl)?)?;
        *out(out_value, "out_value")? = v.into();
        Ok(())
    })
}

/// `W(1)` through `W'''(1)` of the normalized function.
///
/// # Safety
/// `p` and `out_derivs` must be valid; `ctrl` may be null.
#[no_mangle]
pub unsafe extern "C" fn hwc_derivs_at_one(
    p: *const HwcParams,
    ctrl: *const HwcControl,
    out_derivs: *mut HwcDerivs,
) -> HwcStatus {
    guard(|| {
        let d = derivs_at_one(&params(p, "p")?, &control(ctrl)?)?;
        *out(out_derivs, "out_derivs")? = HwcDerivs { w1: d.w1, wp1: d.wp1, wpp1: d.wpp1, wppp1: d.wppp1 };
        Ok(())
    })
}

/// Printed and derived forms of a theorem hypothesis. `theorem` is a
/// NUL-terminated id such as `"T3.1"`; `p2` may be null to reuse `p1`.
///
/// # Safety
/// `theorem`, `p1`, `out_stated` and `out_derived` must be valid; `p2` and
/// `ctrl` may be null.
#[no_mangle]
pub unsafe extern "C" fn hwc_stated_hypothesis(
    theorem: *const c_char,
    p1: *const HwcParams,
    p2: *const HwcParams,
    sigma: HwcComplex,
    order: f64,
    b1: f64,
    ctrl: *const HwcControl,
    out_stated: *mut HwcReport,
    out_derived: *mut HwcReport,
) -> HwcStatus {
    guard(|| {
        if theorem.is_null() {
            return Err(Fail::Null("theorem"));
        }
        let id: TheoremId = CStr::from_ptr(theorem)
            .to_str()
            .map_err(|_| Error::Spec("theorem id is not UTF-8".into()))?
            .parse()?;
        let p1 = params(p1, "p1")?;
        let p2 = if p2.is_null() { p1 } else { params(p2, "p2")? };
        let spec = ConvolutionSpec::new(p1, p2, sigma.into())?;
        let rep = stated_hypothesis(id, &spec, OrderParam::new(order)?, b1, &control(ctrl)?)?;
        let (s, d) = (out(out_stated, "out_stated")?, out(out_derived, "out_derived")?);
        *s = (&rep.stated).into();
        *d = (&rep.derived).into();
        Ok(())
    })
}

/// Image of `f = h + conj(g)` under the operator: `a` holds `A_2..`, `b`
/// holds `B_1..` (with `|B_1| < 1`). `p2` may be null to reuse `p1`.
///
/// # Safety
/// `a`/`b` must point to `na`/`nb` elements (may be null when the count is
/// zero); `p1` and `out_image` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hwc_image_convolve(
    a: *const HwcComplex,
    na: usize,
    b: *const HwcComplex,
    nb: usize,
    p1: *const HwcParams,
    p2: *const HwcParams,
    sigma: HwcComplex,
    out_image: *mut *mut HwcImage,
) -> HwcStatus {
    guard(|| {
        let a = slice(a, na, "a")?.iter().map(|&c| c.into()).collect();
        let b = slice(b, nb, "b")?.iter().map(|&c| c.into()).collect();
        let f = CoefficientSeq::new(a, b)?;
        let p1 = params(p1, "p1")?;
        let p2 = if p2.is_null() { p1 } else { params(p2, "p2")? };
        let img = convolve(&f, &ConvolutionSpec::new(p1, p2, sigma.into())?);
        *out(out_image, "out_image")? = Box::into_raw(Box::new(HwcImage { inner: img }));
        Ok(())
    })
}

/// Image given directly by its coefficients: `ha` from `z^2` in `H`, `gb`
/// from `z` in `sigma G`.
///
/// # Safety
/// As [`hwc_image_convolve`] for the arrays; `out_image` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hwc_image_from_coefficients(
    ha: *const HwcComplex,
    nha: usize,
    gb: *const HwcComplex,
    ngb: usize,
    out_image: *mut *mut HwcImage,
) -> HwcStatus {
    guard(|| {
        let ha: Vec<Complex64> = slice(ha, nha, "ha")?.iter().map(|&c| c.into()).collect();
        let gb: Vec<Complex64> = slice(gb, ngb, "gb")?.iter().map(|&c| c.into()).collect();
        if ha.iter().chain(&gb).any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Domain("coefficients must be finite".into()).into());
        }
        *out(out_image, "out_image")? = Box::into_raw(Box::new(HwcImage { inner: ImageCoefficients::new(ha, gb) }));
        Ok(())
    })
}

/// Releases an image. Null is ignored.
///
/// # Safety
/// `image` must come from an `hwc_image_*` constructor and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hwc_image_free(image: *mut HwcImage) {
    if !image.is_null() {
        drop(Box::from_raw(image));
    }
}

/// `L(f)(r e^{i theta})`.
///
/// # Safety
/// `image` and `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hwc_image_eval(
    image: *const HwcImage,
    r: f64,
    theta: f64,
    out_value: *mut HwcComplex,
) -> HwcStatus {
    guard(|| {
        let img = deref(image, "image")?;
        let pt = EvalPoint::new(r, theta)?;
        *out(out_value, "out_value")? = eval_map(&img.inner, &pt).into();
        Ok(())
    })
}

/// Coefficient criterion for starlikeness or convexity of order `order`.
///
/// # Safety
/// `image` and `out_report` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hwc_image_criterion(
    image: *const HwcImage,
    target: HwcImageTarget,
    order: f64,
    out_report: *mut HwcReport,
) -> HwcStatus {
    guard(|| {
        let img = deref(image, "image")?;
        let target = match target {
            HwcImageTarget::StarlikeL1 => ImageTarget::StarlikeL1,
            HwcImageTarget::ConvexL2 => ImageTarget::ConvexL2,
        };
        let rep = exact_image_criterion(&img.inner, OrderParam::new(order)?, target);
        *out(out_report, "out_report")? = (&rep).into();
        Ok(())
    })
}

/// Samples a geometric quantity over `radii` x `theta_count` angles.
///
/// # Safety
/// `image` and `out_summary` must be valid; `radii` must point to
/// `n_radii` values.
#[no_mangle]
pub unsafe extern "C" fn hwc_image_sweep(
    image: *const HwcImage,
    quantity: HwcQuantity,
    radii: *const f64,
    n_radii: usize,
    theta_count: usize,
    threshold: f64,
    out_summary: *mut HwcSweepSummary,
) -> HwcStatus {
    guard(|| {
        let img = deref(image, "image")?;
        let grid = SampleGrid::new(slice(radii, n_radii, "radii")?.to_vec(), theta_count)?;
        let q = match quantity {
            HwcQuantity::DthetaArgF => Quantity::DthetaArgF,
            HwcQuantity::DthetaArgFtheta => Quantity::DthetaArgFtheta,
            HwcQuantity::JacobianMargin => Quantity::JacobianMargin,
        };
        let rep = sweep(&img.inner, &grid, q, threshold);
        *out(out_summary, "out_summary")? = HwcSweepSummary {
            min_value: rep.min_value,
            argmin_r: rep.argmin.r(),
            argmin_theta: rep.argmin.theta(),
            violations: rep.violations.len(),
            singular: rep.violations.iter().filter(|v| v.singular).count(),
        };
        Ok(())
    })
}
