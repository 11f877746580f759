//! C ABI over `dioph-core`.
//!
//! Objects cross the boundary as opaque handles released with their `_free`
//! function. Strings returned through `char **` belong to the caller and
//! must be released with [`dioph_string_free`]. Every call returns a
//! [`DiophStatus`]; on failure [`dioph_last_error_message`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dioph_core::approx::{brute_force_minima, summarize, to_csv, ExponentTrace, Which};
use dioph_core::cli::{CliError, Exit};
use dioph_core::construction::file::{run_from_json, run_to_json};
use dioph_core::construction::{run_construction_with, ConstructionParams, ConstructionRun, RunOptions};
use dioph_core::error::{ConstructionError, Error, ParseError, SearchError, TargetError};
use dioph_core::target::{parse_target, TargetPoint};
use dioph_core::verify::{
    certify_run, predict_quadruple, to_json, verify_quadruple, ExponentQuadruple, RunCheckOptions,
};

/// Status codes; the first four match the command-line exit codes.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiophStatus {
    Ok = 0,
    CheckFailed = 1,
    BadInput = 2,
    ResourceGuard = 3,
    NullPointer = 4,
    Internal = 5,
}

#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiophWhich {
    /// The linear form `|x·α + y·β + z|`.
    L = 0,
    /// Simultaneous approximation `max(|zα − x|, |zβ − y|)`.
    M = 1,
}

/// A certified construction run.
pub struct DiophRun(ConstructionRun);

/// A target point with its certified radius.
pub struct DiophTarget(TargetPoint);

/// Best approximations of a target with their exponents.
pub struct DiophTrace(ExponentTrace);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(DiophStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e.exit {
            Exit::Ok => DiophStatus::Ok,
            Exit::CheckFailed => DiophStatus::CheckFailed,
            Exit::BadInput => DiophStatus::BadInput,
            Exit::ResourceGuard => DiophStatus::ResourceGuard,
        };
        Failure(status, e.message)
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                CliError::from(dioph_core::Error::from(e)).into()
            }
        }
    )*};
}

failure_from!(Error, ConstructionError, ParseError, SearchError, TargetError);

fn bad(msg: impl Into<String>) -> Failure {
    Failure(DiophStatus::BadInput, msg.into())
}

fn guard(f: impl FnOnce() -> Result<DiophStatus, Failure>) -> DiophStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            if status == DiophStatus::Ok {
                set_error("");
            }
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DiophStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(DiophStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| bad(format!("{name} is not valid UTF-8")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(DiophStatus::Internal, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn null(name: &str) -> Failure {
    Failure(DiophStatus::NullPointer, format!("{name} is null"))
}

fn parse_params(json: &str) -> Result<ConstructionParams, Failure> {
    serde_json::from_str(json).map_err(|e| bad(format!("parameters: {e}")))
}

/// Builds a run. `params_json` is the `params` object of a run file, e.g.
/// `{"mode":"finite","w":"3","tau0":"1/2","tau1":"1","sigma":"3/2"}`;
/// `h1` is a decimal integer. `digit_limit` caps the decimal digits of any
/// coordinate; 0 keeps the default.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_construct(
    params_json: *const c_char,
    h1: *const c_char,
    depth: u32,
    digit_limit: u64,
    out: *mut *mut DiophRun,
) -> DiophStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let params = parse_params(text(params_json, "params_json")?)?;
        let h1 = text(h1, "h1")?;
        let h1 = h1.trim().parse().map_err(|_| bad(format!("h1: not an integer: {h1:?}")))?;
        let mut opts = RunOptions::default();
        if digit_limit > 0 {
            opts.digit_limit = digit_limit;
        }
        let run = run_construction_with(&params, &h1, depth as usize, &opts)?;
        *out = Box::into_raw(Box::new(DiophRun(run)));
        Ok(DiophStatus::Ok)
    })
}

/// Parses a run file's contents.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_run_from_json(json: *const c_char, out: *mut *mut DiophRun) -> DiophStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let run = run_from_json(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(DiophRun(run)));
        Ok(DiophStatus::Ok)
    })
}

/// Serializes a run exactly as the command line writes it.
///
/// # Safety
/// `run` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_run_to_json(run: *const DiophRun, out: *mut *mut c_char) -> DiophStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, run_to_json(&run.0)?)?;
        Ok(DiophStatus::Ok)
    })
}

/// Re-derives all certificates and writes the report JSON. Returns
/// `CheckFailed` when any certificate fails.
///
/// # Safety
/// `run` must come from this library; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_run_verify(
    run: *const DiophRun,
    scan_hmax: u64,
    report_json: *mut *mut c_char,
) -> DiophStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        let report = certify_run(&run.0, &RunCheckOptions { scan_hmax });
        put_string(report_json, to_json(&report)?)?;
        Ok(if report.pass { DiophStatus::Ok } else { DiophStatus::CheckFailed })
    })
}

/// # Safety
/// `run` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dioph_run_free(run: *mut DiophRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Predicted `(v, v', w, w')` for a parameter object, as `"(6, 4/3, 3, 2/3)"`.
///
/// # Safety
/// `params_json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_predict_quadruple(params_json: *const c_char, out: *mut *mut c_char) -> DiophStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = parse_params(text(params_json, "params_json")?)?;
        put_string(out, predict_quadruple(&params)?.to_string())?;
        Ok(DiophStatus::Ok)
    })
}

/// Checks `"v,v',w,w'"` against the transference inequalities and writes
/// the report JSON. Returns `CheckFailed` if any inequality fails.
///
/// # Safety
/// `quad` must be NUL-terminated; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_verify_quadruple(quad: *const c_char, report_json: *mut *mut c_char) -> DiophStatus {
    guard(|| {
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        let q: ExponentQuadruple = text(quad, "quad")?.parse()?;
        let report = verify_quadruple(&q);
        put_string(report_json, to_json(&report)?)?;
        Ok(if report.pass { DiophStatus::Ok } else { DiophStatus::CheckFailed })
    })
}

/// Parses `sqrt:p,q`, `fib:depth`, `run:<file>#n,k` or `lit:a,b,radius`.
///
/// # Safety
/// `spec` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_target_parse(
    spec: *const c_char,
    digits: u32,
    out: *mut *mut DiophTarget,
) -> DiophStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if digits == 0 {
            return Err(bad("digits must be positive"));
        }
        let t = parse_target(text(spec, "spec")?, digits)?;
        *out = Box::into_raw(Box::new(DiophTarget(t)));
        Ok(DiophStatus::Ok)
    })
}

/// # Safety
/// `target` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dioph_target_free(target: *mut DiophTarget) {
    if !target.is_null() {
        drop(Box::from_raw(target));
    }
}

/// Best approximations of `target` with norm at most `hmax`; `which` is a
/// [`DiophWhich`] value.
///
/// # Safety
/// `target` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_analyze(
    target: *const DiophTarget,
    hmax: u64,
    which: i32,
    out: *mut *mut DiophTrace,
) -> DiophStatus {
    guard(|| {
        let target = target.as_ref().ok_or_else(|| null("target"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let which = match which {
            w if w == DiophWhich::L as i32 => Which::L,
            w if w == DiophWhich::M as i32 => Which::M,
            w => return Err(bad(format!("which must be DIOPH_WHICH_L or DIOPH_WHICH_M, got {w}"))),
        };
        let trace = brute_force_minima(&target.0, hmax, which)?;
        *out = Box::into_raw(Box::new(DiophTrace(trace)));
        Ok(DiophStatus::Ok)
    })
}

/// Number of records, or 0 for a null handle.
///
/// # Safety
/// `trace` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn dioph_trace_len(trace: *const DiophTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.0.records.len())
}

/// # Safety
/// `trace` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_trace_to_csv(trace: *const DiophTrace, out: *mut *mut c_char) -> DiophStatus {
    guard(|| {
        let trace = trace.as_ref().ok_or_else(|| null("trace"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, to_csv(&trace.0))?;
        Ok(DiophStatus::Ok)
    })
}

/// `(ω, ω̂)` estimates over the last `window` certified records, as JSON.
///
/// # Safety
/// `trace` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_trace_summary(
    trace: *const DiophTrace,
    window: usize,
    out: *mut *mut c_char,
) -> DiophStatus {
    guard(|| {
        let trace = trace.as_ref().ok_or_else(|| null("trace"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if window == 0 {
            return Err(bad("window must be positive"));
        }
        put_string(out, to_json(&summarize(&trace.0, window))?)?;
        Ok(DiophStatus::Ok)
    })
}

/// # Safety
/// `trace` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dioph_trace_free(trace: *mut DiophTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dioph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn dioph_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
