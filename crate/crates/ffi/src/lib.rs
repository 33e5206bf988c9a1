//! C interface to the spatialpw solvers.
//!
//! Instances are parsed from the text document format into an opaque
//! [`SpwInstance`] handle. Every fallible call returns an [`SpwStatus`]; on
//! failure [`spw_last_error`] describes the problem for the calling thread.
//! Strings handed out by the library must be released with [`spw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spatialpw::io::{parse_document, serialize_document};
use spatialpw::model::SpatialInstance;
use spatialpw::solve::{solve_necessary, solve_pw, Strategy};
use spatialpw::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Unsupported = 5,
    TooLarge = 6,
    Internal = 7,
}

/// Solver selection, mirroring the command line's `--algorithm`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpwAlgorithm {
    Auto = 0,
    Pw1 = 1,
    Fpt = 2,
    Weighted = 3,
    Oracle = 4,
}

impl From<SpwAlgorithm> for Strategy {
    fn from(a: SpwAlgorithm) -> Self {
        match a {
            SpwAlgorithm::Auto => Strategy::Auto,
            SpwAlgorithm::Pw1 => Strategy::Pw1,
            SpwAlgorithm::Fpt => Strategy::Fpt,
            SpwAlgorithm::Weighted => Strategy::Weighted,
            SpwAlgorithm::Oracle => Strategy::Oracle,
        }
    }
}

/// Opaque parsed instance.
pub struct SpwInstance {
    inner: SpatialInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SpwStatus {
    match e {
        Error::Parse { .. } => SpwStatus::Parse,
        Error::InvalidRule(_)
        | Error::InvalidInput(_)
        | Error::InvalidCompletion(_)
        | Error::InvalidSchedule(_)
        | Error::InvalidBudget { .. }
        | Error::InvalidVector(_) => SpwStatus::InvalidInput,
        Error::UnsupportedRule(_) | Error::Unsupported(_) => SpwStatus::Unsupported,
        Error::TooLarge { .. } => SpwStatus::TooLarge,
        Error::Internal(_) => SpwStatus::Internal,
    }
}

/// Runs `f`, turning errors and panics into a status plus a thread-local message.
fn guard(f: impl FnOnce() -> Result<(), (SpwStatus, String)>) -> SpwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpwStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SpwStatus::Internal
        }
    }
}

fn lib(e: Error) -> (SpwStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SpwStatus, String) {
    (SpwStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(ptr: *const SpwInstance) -> Result<&'a SpwInstance, (SpwStatus, String)> {
    ptr.as_ref().ok_or_else(|| null("instance"))
}

fn into_c_string(s: String) -> Result<*mut c_char, (SpwStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|_| (SpwStatus::Internal, "output contains a NUL byte".into()))
}

/// Parses a document into a new instance stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spw_instance_parse(text: *const c_char, out: *mut *mut SpwInstance) -> SpwStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| (SpwStatus::InvalidUtf8, e.to_string()))?;
        let inner = parse_document(text).map_err(lib)?;
        *out = Box::into_raw(Box::new(SpwInstance { inner }));
        Ok(())
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `instance` must come from [`spw_instance_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spw_instance_free(instance: *mut SpwInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of candidates, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spw_instance_candidates(instance: *const SpwInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.m())
}

/// Number of voters, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spw_instance_voters(instance: *const SpwInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.n())
}

/// Changes the query candidate (1-based).
///
/// # Safety
/// `instance` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn spw_instance_set_query(instance: *mut SpwInstance, query: usize) -> SpwStatus {
    guard(|| {
        let inst = instance.as_mut().ok_or_else(|| null("instance"))?;
        if query == 0 {
            return Err((SpwStatus::InvalidInput, "query is 1-based".into()));
        }
        inst.inner = inst.inner.with_query(query - 1).map_err(lib)?;
        Ok(())
    })
}

/// Canonical document text for the instance, stored in `*out`.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spw_instance_serialize(instance: *const SpwInstance, out: *mut *mut c_char) -> SpwStatus {
    guard(|| {
        let inst = handle(instance)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(serialize_document(&inst.inner))?;
        Ok(())
    })
}

/// Possible-winner decision; the answer is stored in `*answer`.
///
/// # Safety
/// `instance` must be a live handle and `answer` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spw_solve_pw(
    instance: *const SpwInstance,
    algorithm: SpwAlgorithm,
    cap: u64,
    answer: *mut bool,
) -> SpwStatus {
    guard(|| {
        let inst = handle(instance)?;
        if answer.is_null() {
            return Err(null("answer"));
        }
        *answer = solve_pw(&inst.inner, algorithm.into(), cap.into()).map_err(lib)?.answer;
        Ok(())
    })
}

/// Necessary-winner decision; the answer is stored in `*answer`.
///
/// # Safety
/// `instance` must be a live handle and `answer` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spw_solve_nw(
    instance: *const SpwInstance,
    algorithm: SpwAlgorithm,
    cap: u64,
    answer: *mut bool,
) -> SpwStatus {
    guard(|| {
        let inst = handle(instance)?;
        if answer.is_null() {
            return Err(null("answer"));
        }
        *answer = solve_necessary(&inst.inner, algorithm.into(), cap.into()).map_err(lib)?.answer;
        Ok(())
    })
}

/// Full verdict as JSON (`answer`, `algorithm`, `exact`, optional `witness`) stored in `*out`.
/// A witness is re-verified before it is returned.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spw_solve_json(
    instance: *const SpwInstance,
    necessary: bool,
    algorithm: SpwAlgorithm,
    cap: u64,
    witness: bool,
    out: *mut *mut c_char,
) -> SpwStatus {
    guard(|| {
        let inst = handle(instance)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = if necessary {
            solve_necessary(&inst.inner, algorithm.into(), cap.into())
        } else {
            solve_pw(&inst.inner, algorithm.into(), cap.into())
        }
        .map_err(lib)?;
        let witness = witness && !necessary;
        if witness {
            v.check_witness(&inst.inner).map_err(lib)?;
        }
        *out = into_c_string(v.to_json(None, witness).to_string())?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn spw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn spw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
