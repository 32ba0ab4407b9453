//! C ABI over `schwarzfn`.
//!
//! Objects are opaque heap handles created by `*_parse` functions and
//! released with the matching `*_free`. Every fallible call returns an
//! [`SfStatus`]; on failure a message is available from
//! [`sf_last_error`] on the same thread until the next failing call.
//! Strings handed out by the library must be released with
//! [`sf_string_free`].

#![allow(non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schwarzfn::algebra::BigComplex;
use schwarzfn::blaschke::{factor_unimodular, is_circle_preserving};
use schwarzfn::curve::{complexify, RealCurve};
use schwarzfn::puiseux::{condition_a_holds, Limit};
use schwarzfn::ratmap::{eval_map, image_curve, maps_into, MapValue, RationalMap};
use schwarzfn::verify::{verify_involution, VerifyConfig};
use schwarzfn::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfStatus {
    SF_OK = 0,
    /// A required pointer argument was null.
    SF_NULL_POINTER = 1,
    /// Input text was not valid UTF-8.
    SF_INVALID_UTF8 = 2,
    /// Input text did not parse.
    SF_PARSE_ERROR = 3,
    /// An argument was outside its domain.
    SF_INVALID_ARGUMENT = 4,
    /// A numeric procedure failed; a higher precision may help.
    SF_NUMERIC_FAILURE = 5,
    /// The mathematical precondition of the operation does not hold.
    SF_DOMAIN_ERROR = 6,
    /// Unexpected internal failure.
    SF_INTERNAL = 7,
}

/// A real algebraic curve `P(x, y) = 0`.
pub struct SfCurve(RealCurve);

/// A rational map `num(z)/den(z)`.
pub struct SfMap(RationalMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SfStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::BadExponent { .. } | Error::NotRational => {
            SfStatus::SF_PARSE_ERROR
        }
        Error::InvalidParameter(_) | Error::VarPairMismatch(..) | Error::ZeroDenominator => SfStatus::SF_INVALID_ARGUMENT,
        Error::NoConvergence { .. }
        | Error::PrecisionExhausted { .. }
        | Error::Indeterminate
        | Error::PairingFailure(_)
        | Error::Divergence
        | Error::NearZeroDivision
        | Error::Overflow => SfStatus::SF_NUMERIC_FAILURE,
        _ => SfStatus::SF_DOMAIN_ERROR,
    }
}

fn fail(e: Error) -> SfStatus {
    set_error(format!("{} ({})", e, e.code()));
    status_of(&e)
}

/// Runs `f`, turning panics into `SF_INTERNAL`.
fn guard(f: impl FnOnce() -> SfStatus) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            SfStatus::SF_INTERNAL
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return SfStatus::SF_NULL_POINTER;
        })+
    };
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SfStatus> {
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        SfStatus::SF_INVALID_UTF8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) {
    *out = CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut());
}

fn precision_ok(prec: usize) -> Result<(), SfStatus> {
    if prec < 64 {
        set_error("precision must be at least 64 bits");
        Err(SfStatus::SF_INVALID_ARGUMENT)
    } else {
        Ok(())
    }
}

/// Message describing the most recent failure on this thread, or null.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a real curve such as `"x^2+y^2-1"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_curve_parse(text: *const c_char, out: *mut *mut SfCurve) -> SfStatus {
    non_null!(text, out);
    guard(|| {
        let t = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match RealCurve::parse(t) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(SfCurve(c)));
                SfStatus::SF_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a curve. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sf_curve_free(c: *mut SfCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Canonical text of the curve polynomial.
///
/// # Safety
/// `c` must be a live curve handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_curve_to_string(c: *const SfCurve, out: *mut *mut c_char) -> SfStatus {
    non_null!(c, out);
    guard(|| {
        write_string(out, (*c).0.to_string());
        SfStatus::SF_OK
    })
}

/// The Schwarz defining form `Q(z, w)` of the curve as text.
///
/// # Safety
/// `c` must be a live curve handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_curve_complexify(c: *const SfCurve, out: *mut *mut c_char) -> SfStatus {
    non_null!(c, out);
    guard(|| match complexify(&(*c).0) {
        Ok(q) => {
            write_string(out, q.to_string());
            SfStatus::SF_OK
        }
        Err(e) => fail(e),
    })
}

/// Whether some Schwarz branch has a finite limit at infinity. When it
/// does, the limit is written to `limit_re`/`limit_im`, which may be null.
///
/// # Safety
/// `c` must be a live curve handle; `holds` must be writable; the limit
/// pointers must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn sf_condition_a(
    c: *const SfCurve,
    order: usize,
    prec: usize,
    holds: *mut bool,
    limit_re: *mut f64,
    limit_im: *mut f64,
) -> SfStatus {
    non_null!(c, holds);
    if let Err(s) = precision_ok(prec) {
        return s;
    }
    guard(|| {
        let s = match complexify(&(*c).0) {
            Ok(s) => s,
            Err(e) => return fail(e),
        };
        match condition_a_holds(&s, order, prec) {
            Ok((h, witness)) => {
                *holds = h;
                if let Some(b) = witness {
                    if let Limit::Finite(v) = schwarzfn::puiseux::classify(&b).limit {
                        if !limit_re.is_null() {
                            *limit_re = v.re_f64();
                        }
                        if !limit_im.is_null() {
                            *limit_im = v.im_f64();
                        }
                    }
                }
                SfStatus::SF_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses a rational map in `z` such as `"(z-1/2)/(1-z/2)"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_map_parse(text: *const c_char, out: *mut *mut SfMap) -> SfStatus {
    non_null!(text, out);
    guard(|| {
        let t = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match RationalMap::parse(t) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(SfMap(m)));
                SfStatus::SF_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a map. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sf_map_free(m: *mut SfMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Canonical text of the normalized map.
///
/// # Safety
/// `m` must be a live map handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_map_to_string(m: *const SfMap, out: *mut *mut c_char) -> SfStatus {
    non_null!(m, out);
    guard(|| {
        write_string(out, (*m).0.to_string());
        SfStatus::SF_OK
    })
}

/// Evaluates the map at `re + i·im`. At a pole `is_infinite` is set and the
/// outputs are left untouched.
///
/// # Safety
/// `m` must be a live map handle and every output pointer writable.
#[no_mangle]
pub unsafe extern "C" fn sf_map_eval(
    m: *const SfMap,
    re: f64,
    im: f64,
    prec: usize,
    out_re: *mut f64,
    out_im: *mut f64,
    is_infinite: *mut bool,
) -> SfStatus {
    non_null!(m, out_re, out_im, is_infinite);
    if let Err(s) = precision_ok(prec) {
        return s;
    }
    guard(|| match eval_map(&(*m).0, &BigComplex::from_f64(re, im, prec)) {
        Ok(MapValue::Finite(v)) => {
            *out_re = v.re_f64();
            *out_im = v.im_f64();
            *is_infinite = false;
            SfStatus::SF_OK
        }
        Ok(MapValue::Infinity) => {
            *is_infinite = true;
            SfStatus::SF_OK
        }
        Err(e) => fail(e),
    })
}

/// The real curve containing the image of `c` under `m`.
///
/// # Safety
/// `m` and `c` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_image_curve(m: *const SfMap, c: *const SfCurve, out: *mut *mut SfCurve) -> SfStatus {
    non_null!(m, c, out);
    guard(|| match image_curve(&(*m).0, &(*c).0) {
        Ok(img) => {
            *out = Box::into_raw(Box::new(SfCurve(img)));
            SfStatus::SF_OK
        }
        Err(e) => fail(e),
    })
}

/// Whether `m` maps curve `a` into curve `b`.
///
/// # Safety
/// `m`, `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_maps_into(
    m: *const SfMap,
    a: *const SfCurve,
    b: *const SfCurve,
    out: *mut bool,
) -> SfStatus {
    non_null!(m, a, b, out);
    guard(|| match maps_into(&(*m).0, &(*a).0, &(*b).0) {
        Ok(v) => {
            *out = v;
            SfStatus::SF_OK
        }
        Err(e) => fail(e),
    })
}

/// Exact test of `|m| = 1` on the unit circle.
///
/// # Safety
/// `m` must be a live map handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_is_circle_preserving(m: *const SfMap, out: *mut bool) -> SfStatus {
    non_null!(m, out);
    guard(|| {
        *out = is_circle_preserving(&(*m).0);
        SfStatus::SF_OK
    })
}

/// Blaschke factorization of a circle-preserving map as a JSON document
/// `{"lambda", "zeros", "inverse_factors", "residual"}`.
///
/// # Safety
/// `m` must be a live map handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_blaschke_factor_json(m: *const SfMap, prec: usize, out: *mut *mut c_char) -> SfStatus {
    non_null!(m, out);
    if let Err(s) = precision_ok(prec) {
        return s;
    }
    guard(|| match factor_unimodular(&(*m).0, prec) {
        Ok(f) => {
            write_string(out, f.to_json().to_string());
            SfStatus::SF_OK
        }
        Err(e) => fail(e),
    })
}

/// Sampled check of the Schwarz involution near an on-curve base point.
///
/// # Safety
/// `c` must be a live curve handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn sf_verify_involution(
    c: *const SfCurve,
    base_re: f64,
    base_im: f64,
    samples: usize,
    tol: f64,
    passed: *mut bool,
    max_residual: *mut f64,
) -> SfStatus {
    non_null!(c, passed, max_residual);
    guard(|| {
        let cfg = VerifyConfig::default();
        let run = complexify(&(*c).0).and_then(|s| {
            verify_involution(&s, &BigComplex::from_f64(base_re, base_im, cfg.precision), samples, tol, &cfg)
        });
        match run {
            Ok(r) => {
                *passed = r.passed;
                *max_residual = r.max_residual;
                SfStatus::SF_OK
            }
            Err(e) => fail(e),
        }
    })
}
