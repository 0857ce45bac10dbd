//! C ABI over the quotk engine.
//!
//! Results live behind opaque handles that the caller releases with the matching
//! `*_free` function. Every entry point returns a [`QuotkStatus`]; output pointers are
//! written only on `QUOTK_STATUS_OK`. Rational coefficients are read back as `int64_t`
//! numerator/denominator pairs and report `QUOTK_STATUS_OUT_OF_RANGE` when they do not fit.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use quotk::algebra::{Rat, Series};
use quotk::error::Error;
use quotk::geometry::rank1::rank1_series;
use quotk::geometry::sv::{segre_series, verlinde_series};
use quotk::geometry::{ktheory_series, Decomposition, SurfaceNumbers};
use quotk::rationality::{fit_rational, FitOutcome, FitRequest, RationalFn};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotkStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed arguments, unsupported genus or pattern, or a too small jet cap.
    InvalidInput = 2,
    /// The numerical data violates a hypothesis of the formula being evaluated.
    Hypothesis = 3,
    /// The engine failed while computing (non-invertible series, resultant, ...).
    Computation = 4,
    /// No rational function within the requested degree bounds fits the series.
    NoFit = 5,
    /// An index outside the exact window, or a coefficient that overflows `int64_t`.
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotkFamily {
    KTheory = 0,
    Verlinde = 1,
    Segre = 2,
}

/// How `beta` splits into `N` parts.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotkShape {
    Zero = 0,
    /// One part carries `beta`.
    Single = 1,
    /// `N` equal parts with pairwise product `beta_pair`.
    Uniform = 2,
}

/// One class `alpha` of rank `rank`; `k` is the exterior power for the K-theoretic family.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct QuotkInput {
    pub family: QuotkFamily,
    pub n: usize,
    pub rank: i64,
    pub k: u32,
    pub k2: i64,
    pub chi: i64,
    pub c1k: i64,
    pub shape: QuotkShape,
    pub sw: i64,
    pub beta_k: i64,
    pub beta_c1: i64,
    pub beta_pair: i64,
    pub trunc: i64,
}

/// A truncated Laurent series with rational coefficients.
pub struct QuotkSeries(Series<Rat>);

/// `q^shift num(q) / den(q)` with `den(0) = 1`.
pub struct QuotkRational(RationalFn);

fn status_of(e: &Error) -> QuotkStatus {
    match e {
        Error::HypothesisViolation(_) => QuotkStatus::Hypothesis,
        Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::UnsupportedGenus(_)
        | Error::UnsupportedPattern(_)
        | Error::InsufficientJetCap { .. }
        | Error::InsufficientData { .. } => QuotkStatus::InvalidInput,
        _ => QuotkStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> QuotkStatus) -> QuotkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QuotkStatus::Panic)
}

fn write_rat(r: &Rat, num: *mut i64, den: *mut i64) -> QuotkStatus {
    if num.is_null() || den.is_null() {
        return QuotkStatus::NullPointer;
    }
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(a), Some(b)) => {
            unsafe {
                *num = a;
                *den = b;
            }
            QuotkStatus::Ok
        }
        _ => QuotkStatus::OutOfRange,
    }
}

fn compute(inp: &QuotkInput) -> quotk::error::Result<Series<Rat>> {
    if inp.n == 0 || inp.trunc < 1 {
        return Err(Error::InvalidInput("n and trunc must be positive".into()));
    }
    let surface = SurfaceNumbers { k2: inp.k2, chi_o: inp.chi };
    let dec = match inp.shape {
        QuotkShape::Zero => Decomposition::zero(inp.n, 1),
        QuotkShape::Single => Decomposition::single(inp.n, inp.sw, inp.beta_k, vec![inp.beta_c1]),
        QuotkShape::Uniform => Decomposition::uniform(inp.n, inp.sw, inp.beta_k, vec![inp.beta_c1], inp.beta_pair),
    };
    match inp.family {
        QuotkFamily::KTheory => ktheory_series(&[inp.rank], &[inp.k], inp.n, &surface, &[inp.c1k], &[dec], inp.trunc),
        QuotkFamily::Verlinde => verlinde_series(inp.n, inp.rank, &surface, inp.c1k, &[dec], inp.trunc),
        QuotkFamily::Segre => segre_series(inp.n, inp.rank, &surface, inp.c1k, &[dec], inp.trunc),
    }
}

fn emit<T>(res: quotk::error::Result<T>, out: *mut *mut T) -> QuotkStatus {
    match res {
        Ok(v) => {
            unsafe { *out = Box::into_raw(Box::new(v)) };
            QuotkStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Generating series of the invariant described by `input` up to `O(q^trunc)`.
///
/// # Safety
/// `input` must point to a valid `QuotkInput` and `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn quotk_compute(input: *const QuotkInput, out: *mut *mut QuotkSeries) -> QuotkStatus {
    if input.is_null() || out.is_null() {
        return QuotkStatus::NullPointer;
    }
    let inp = *input;
    guard(|| emit(compute(&inp).map(QuotkSeries), out))
}

/// True when the run tests an instance of a statement that is not proven in general.
///
/// # Safety
/// `input` must be null or point to a valid `QuotkInput`.
#[no_mangle]
pub unsafe extern "C" fn quotk_input_is_conjectural(input: *const QuotkInput) -> bool {
    match input.as_ref() {
        Some(i) => i.n > 1 && i.shape != QuotkShape::Zero,
        None => false,
    }
}

/// Rank-one generating series for `chi(O_S)` in `{0, 1}`.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn quotk_rank1(chi: i64, k2: i64, trunc: i64, out: *mut *mut QuotkSeries) -> QuotkStatus {
    if out.is_null() {
        return QuotkStatus::NullPointer;
    }
    guard(|| emit(rank1_series(chi, k2, trunc).map(QuotkSeries), out))
}

/// Builds a series `sum_i (num[i]/den[i]) q^(valuation + i) + O(q^(valuation + len))`.
/// `den` may be null for integer coefficients.
///
/// # Safety
/// `num` (and `den` when not null) must point to `len` readable values.
#[no_mangle]
pub unsafe extern "C" fn quotk_series_new(
    num: *const i64,
    den: *const i64,
    len: usize,
    valuation: i64,
    out: *mut *mut QuotkSeries,
) -> QuotkStatus {
    if num.is_null() || out.is_null() {
        return QuotkStatus::NullPointer;
    }
    let nums = std::slice::from_raw_parts(num, len);
    let dens = if den.is_null() { None } else { Some(std::slice::from_raw_parts(den, len)) };
    guard(|| {
        let mut coeffs = Vec::with_capacity(len);
        for (i, &a) in nums.iter().enumerate() {
            let b = dens.map_or(1, |d| d[i]);
            if b == 0 {
                return QuotkStatus::InvalidInput;
            }
            coeffs.push(Rat::new(BigInt::from(a), BigInt::from(b)));
        }
        let s = Series::new(&(), valuation, valuation + len as i64, coeffs);
        unsafe { *out = Box::into_raw(Box::new(QuotkSeries(s))) };
        QuotkStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn quotk_series_free(s: *mut QuotkSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// First exponent of the stored window and the exclusive precision bound `T` of `O(q^T)`.
///
/// # Safety
/// `s` must be a live handle; `valuation` and `trunc` must be writable.
#[no_mangle]
pub unsafe extern "C" fn quotk_series_window(s: *const QuotkSeries, valuation: *mut i64, trunc: *mut i64) -> QuotkStatus {
    let Some(s) = s.as_ref() else { return QuotkStatus::NullPointer };
    if valuation.is_null() || trunc.is_null() {
        return QuotkStatus::NullPointer;
    }
    *valuation = s.0.valuation();
    *trunc = s.0.trunc();
    QuotkStatus::Ok
}

/// Coefficient of `q^power`; zero below the valuation, out of range at or past `trunc`.
///
/// # Safety
/// `s` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn quotk_series_coeff(
    s: *const QuotkSeries,
    power: i64,
    num: *mut i64,
    den: *mut i64,
) -> QuotkStatus {
    let Some(s) = s.as_ref() else { return QuotkStatus::NullPointer };
    if power >= s.0.trunc() {
        return QuotkStatus::OutOfRange;
    }
    write_rat(&s.0.coeff(power), num, den)
}

/// Smallest rational function with `deg num <= deg_num`, `deg den <= deg_den` that
/// reproduces every coefficient, with five surplus coefficients as a check.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quotk_fit(
    s: *const QuotkSeries,
    deg_num: usize,
    deg_den: usize,
    out: *mut *mut QuotkRational,
) -> QuotkStatus {
    let Some(s) = s.as_ref() else { return QuotkStatus::NullPointer };
    if out.is_null() {
        return QuotkStatus::NullPointer;
    }
    guard(|| match fit_rational(&FitRequest::new(&s.0, deg_num, deg_den)) {
        Ok(FitOutcome::Fit(f)) => {
            unsafe { *out = Box::into_raw(Box::new(QuotkRational(f))) };
            QuotkStatus::Ok
        }
        Ok(FitOutcome::NoFit { .. }) => QuotkStatus::NoFit,
        Err(e) => status_of(&e),
    })
}

/// # Safety
/// `r` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn quotk_rational_free(r: *mut QuotkRational) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Shift and degrees of numerator and denominator; the zero numerator has degree 0.
///
/// # Safety
/// `r` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn quotk_rational_shape(
    r: *const QuotkRational,
    shift: *mut i64,
    deg_num: *mut usize,
    deg_den: *mut usize,
) -> QuotkStatus {
    let Some(r) = r.as_ref() else { return QuotkStatus::NullPointer };
    if shift.is_null() || deg_num.is_null() || deg_den.is_null() {
        return QuotkStatus::NullPointer;
    }
    *shift = r.0.shift;
    *deg_num = r.0.num.degree().unwrap_or(0);
    *deg_den = r.0.den.degree().unwrap_or(0);
    QuotkStatus::Ok
}

/// Coefficient of `q^i` in the numerator (`which_den = false`) or denominator.
///
/// # Safety
/// `r` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn quotk_rational_coeff(
    r: *const QuotkRational,
    which_den: bool,
    i: usize,
    num: *mut i64,
    den: *mut i64,
) -> QuotkStatus {
    let Some(r) = r.as_ref() else { return QuotkStatus::NullPointer };
    let p = if which_den { &r.0.den } else { &r.0.num };
    if i > p.degree().unwrap_or(0) {
        return QuotkStatus::OutOfRange;
    }
    write_rat(&p.coeff(i), num, den)
}

/// Order of the pole at `q = 1`, and whether it is the only pole.
///
/// # Safety
/// `r` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn quotk_rational_pole_at_one(
    r: *const QuotkRational,
    order: *mut usize,
    only_pole: *mut bool,
) -> QuotkStatus {
    let Some(r) = r.as_ref() else { return QuotkStatus::NullPointer };
    if order.is_null() || only_pole.is_null() {
        return QuotkStatus::NullPointer;
    }
    let (k, all) = r.0.pole_order_at_one();
    *order = k;
    *only_pole = all;
    QuotkStatus::Ok
}
