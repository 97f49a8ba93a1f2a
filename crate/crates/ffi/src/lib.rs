//! C ABI for ctlucas.
//!
//! Polynomials and schemes cross the boundary as opaque handles. Every
//! fallible call returns a [`CtlStatus`]; on failure a message is kept per
//! thread and can be read with [`ctl_last_error_message`]. Strings returned
//! by the library must be released with [`ctl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ctlucas::congruence::{glc_verify, lucas_verify, Source};
use ctlucas::polytope::origin_only_interior;
use ctlucas::pscheme::{self, LinearPScheme};
use ctlucas::sequences::{ct_residues, CtSpec, Method};
use ctlucas::{parse_str, CongruenceReport, Error, LaurentPoly, Prime};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtlStatus {
    Ok = 0,
    /// The check ran and found a counterexample; the report is still returned.
    Counterexample = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    InvalidArgument = 5,
    Hypothesis = 6,
    LimitExceeded = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

/// A Laurent polynomial with integer coefficients.
pub struct CtlPoly(LaurentPoly);

/// A linear p-scheme.
pub struct CtlScheme(LinearPScheme);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(CtlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => CtlStatus::Parse,
            Error::HypothesisViolation(_) | Error::SupportViolation(_) => CtlStatus::Hypothesis,
            Error::StateExplosion { .. } | Error::SupportCapExceeded { .. } | Error::TermCap { .. } => {
                CtlStatus::LimitExceeded
            }
            Error::DimensionMismatch { .. }
            | Error::UnsupportedDimension(_)
            | Error::InvalidModulus(_)
            | Error::NotPrime(_)
            | Error::ZeroPolynomial
            | Error::InvalidScheme(_)
            | Error::InvalidInput(_) => CtlStatus::InvalidArgument,
            Error::Oracle(_) => CtlStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CtlStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<CtlStatus, Failure>) -> CtlStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CtlStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CtlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn poly_ref<'a>(p: *const CtlPoly, what: &str) -> Result<&'a LaurentPoly, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

unsafe fn spec_of(p: *const CtlPoly, q: *const CtlPoly) -> Result<CtSpec, Failure> {
    let pp = poly_ref(p, "P")?.clone();
    let spec = if q.is_null() {
        CtSpec::unit(pp)?
    } else {
        CtSpec::new(pp, poly_ref(q, "Q")?.clone())?
    };
    Ok(spec)
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(CtlStatus::Internal, "string contains NUL".into()))
}

fn emit_report(report: CongruenceReport, out_json: *mut *mut c_char) -> Result<CtlStatus, Failure> {
    let status = if report.passed() {
        CtlStatus::Ok
    } else {
        CtlStatus::Counterexample
    };
    let text = report.to_json().trim_end().to_string();
    // SAFETY: checked non-null by the caller of this helper.
    unsafe { *out_json = into_c_string(text)? };
    Ok(status)
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ctl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `text` over the comma-separated variable list `vars`.
///
/// # Safety
/// `text` and `vars` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctl_poly_parse(
    text: *const c_char,
    vars: *const c_char,
    out: *mut *mut CtlPoly,
) -> CtlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = parse_str(read_str(text, "text")?, read_str(vars, "vars")?)?;
        *out = Box::into_raw(Box::new(CtlPoly(f)));
        Ok(CtlStatus::Ok)
    })
}

/// # Safety
/// `poly` must come from [`ctl_poly_parse`] and not be freed twice. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn ctl_poly_free(poly: *mut CtlPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text form (standard variable names), or NULL on failure.
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ctl_poly_to_string(poly: *const CtlPoly) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        out = into_c_string(poly_ref(poly, "poly")?.to_string())?;
        Ok(CtlStatus::Ok)
    });
    out
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn ctl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Whether the origin is the only lattice point in the interior of the
/// Newton polytope of `poly`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctl_poly_origin_only_interior(poly: *const CtlPoly, out: *mut bool) -> CtlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = origin_only_interior(poly_ref(poly, "poly")?)?;
        Ok(CtlStatus::Ok)
    })
}

/// Writes `ct[P^n Q] mod prime^r` for `n = 0..len` into `out`. `q` may be
/// NULL for `Q = 1`.
///
/// # Safety
/// `p` (and `q` if non-NULL) must be live handles; `out` must hold `len`
/// values.
#[no_mangle]
pub unsafe extern "C" fn ctl_ct_sequence_mod(
    p: *const CtlPoly,
    q: *const CtlPoly,
    prime: u64,
    r: u32,
    out: *mut u64,
    len: usize,
) -> CtlStatus {
    guard(|| {
        if len == 0 {
            return Ok(CtlStatus::Ok);
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = spec_of(p, q)?;
        let values = ct_residues(&spec, len as u64 - 1, Prime::new(prime)?, r, Method::Auto)?;
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&values);
        Ok(CtlStatus::Ok)
    })
}

/// Lucas check for `ct[P^n Q]` up to `n_max`. On `Ok` or `Counterexample`
/// the JSON report is stored in `out_json`.
///
/// # Safety
/// Handles must be live (`q` may be NULL); `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctl_lucas_verify(
    p: *const CtlPoly,
    q: *const CtlPoly,
    prime: u64,
    n_max: u64,
    out_json: *mut *mut c_char,
) -> CtlStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let spec = spec_of(p, q)?;
        emit_report(lucas_verify(Source::Spec(&spec), Prime::new(prime)?, n_max)?, out_json)
    })
}

/// Generalized Lucas check; same conventions as [`ctl_lucas_verify`].
///
/// # Safety
/// Handles must be live (`q` may be NULL); `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctl_glc_verify(
    p: *const CtlPoly,
    q: *const CtlPoly,
    prime: u64,
    n_max: u64,
    out_json: *mut *mut c_char,
) -> CtlStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let spec = spec_of(p, q)?;
        emit_report(glc_verify(spec.p(), spec.q(), Prime::new(prime)?, n_max)?, out_json)
    })
}

/// Builds a scheme for `ct[P^n Q] mod prime^r`. `max_states = 0` selects the
/// default bound.
///
/// # Safety
/// Handles must be live (`q` may be NULL); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctl_scheme_synthesize(
    p: *const CtlPoly,
    q: *const CtlPoly,
    prime: u64,
    r: u32,
    max_states: usize,
    out: *mut *mut CtlScheme,
) -> CtlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = spec_of(p, q)?;
        let cap = if max_states == 0 {
            pscheme::DEFAULT_MAX_STATES
        } else {
            max_states
        };
        let sch = pscheme::synthesize(&spec, Prime::new(prime)?, r, cap)?;
        *out = Box::into_raw(Box::new(CtlScheme(sch)));
        Ok(CtlStatus::Ok)
    })
}

/// Loads a scheme from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctl_scheme_from_json(json: *const c_char, out: *mut *mut CtlScheme) -> CtlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let sch = LinearPScheme::from_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(CtlScheme(sch)));
        Ok(CtlStatus::Ok)
    })
}

/// # Safety
/// `scheme` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctl_scheme_evaluate(scheme: *const CtlScheme, n: u64, out: *mut u64) -> CtlStatus {
    guard(|| {
        let sch = scheme.as_ref().ok_or_else(|| null("scheme"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = sch.0.evaluate(n);
        Ok(CtlStatus::Ok)
    })
}

/// Number of states, or 0 for NULL.
///
/// # Safety
/// `scheme` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ctl_scheme_states(scheme: *const CtlScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.0.states())
}

/// JSON form of the scheme, or NULL on failure.
///
/// # Safety
/// `scheme` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ctl_scheme_to_json(scheme: *const CtlScheme) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let sch = scheme.as_ref().ok_or_else(|| null("scheme"))?;
        out = into_c_string(sch.0.to_json().trim_end().to_string())?;
        Ok(CtlStatus::Ok)
    });
    out
}

/// # Safety
/// `scheme` must come from this library and not be freed twice. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn ctl_scheme_free(scheme: *mut CtlScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}
