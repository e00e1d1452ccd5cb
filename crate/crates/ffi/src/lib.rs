//! C ABI over `skcl-core`.
//!
//! Handles are opaque and owned by the caller until passed to the matching
//! `*_free`. Strings returned through `out` parameters are NUL-terminated
//! UTF-8 and must be released with [`skcl_string_free`]. On any status other
//! than `SKCL_STATUS_OK`, [`skcl_last_error_message`] describes the failure
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skcl_core::cli::{self, Command, PresentationFile};
use skcl_core::{Element, Error, Presentation, SkewClifford};

/// Result of every fallible call. Values 2 to 4 match the `skcl` exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkclStatus {
    Ok = 0,
    NullPointer = 1,
    Validation = 2,
    Precondition = 3,
    Internal = 4,
    InvalidInput = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// A validated presentation `(μ, B)`.
pub struct SkclPresentation(Presentation);

/// A completed algebra with its normal-word basis.
pub struct SkclAlgebra(SkewClifford);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', "\\0")).expect("NUL bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> SkclStatus {
    match e {
        Error::Validation(_) => SkclStatus::Validation,
        Error::Input(_) => SkclStatus::InvalidInput,
        Error::Precondition(_) => SkclStatus::Precondition,
        Error::Internal(_) => SkclStatus::Internal,
    }
}

struct Fail(SkclStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SkclStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SkclStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside skcl".into());
            SkclStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SkclStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(SkclStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|e| Fail(SkclStatus::Internal, e.to_string()))
}

fn parse_element(s: &str, what: &str) -> Result<Element, Fail> {
    serde_json::from_str(s).map_err(|e| Fail(SkclStatus::InvalidInput, format!("{what}: {e}")))
}

/// Parses a presentation JSON object `{"n", "mu", "b"}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skcl_presentation_from_json(json: *const c_char, out: *mut *mut SkclPresentation) -> SkclStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let p = PresentationFile::parse(text)?.to_presentation()?;
        write_out(out, Box::into_raw(Box::new(SkclPresentation(p))))
    })
}

/// # Safety
/// `p` must come from [`skcl_presentation_from_json`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn skcl_presentation_free(p: *mut SkclPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of generators, or 0 for NULL.
///
/// # Safety
/// `p` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn skcl_presentation_n(p: *const SkclPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.n())
}

/// Completes the rewriting system of `p`. The handle does not borrow `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skcl_algebra_new(p: *const SkclPresentation, out: *mut *mut SkclAlgebra) -> SkclStatus {
    guard(|| {
        let p = deref(p, "presentation")?;
        let alg = SkewClifford::new(&p.0)?;
        write_out(out, Box::into_raw(Box::new(SkclAlgebra(alg))))
    })
}

/// # Safety
/// `a` must come from [`skcl_algebra_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn skcl_algebra_free(a: *mut SkclAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skcl_algebra_dimension(a: *const SkclAlgebra, out: *mut usize) -> SkclStatus {
    guard(|| {
        let a = deref(a, "algebra")?;
        write_out(out, a.0.dimension())
    })
}

/// Normal form of an element given as JSON `[{"word": [1, 2], "coeff": "3/2"}, ...]`.
///
/// # Safety
/// `a` must be a live handle, `element` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skcl_algebra_normal_form(
    a: *const SkclAlgebra,
    element: *const c_char,
    out: *mut *mut c_char,
) -> SkclStatus {
    guard(|| {
        let a = deref(a, "algebra")?;
        let e = parse_element(read_str(element, "element")?, "element")?;
        let nf = a.0.normal_form(&e)?;
        write_out(out, to_c_string(serde_json::to_string(&nf).expect("serializable"))?)
    })
}

/// Product `x·y` in normal form, same JSON encoding as the inputs.
///
/// # Safety
/// `a` must be a live handle, `x` and `y` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skcl_algebra_multiply(
    a: *const SkclAlgebra,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> SkclStatus {
    guard(|| {
        let a = deref(a, "algebra")?;
        let x = parse_element(read_str(x, "x")?, "x")?;
        let y = parse_element(read_str(y, "y")?, "y")?;
        let prod = a.0.multiply(&x, &y)?;
        write_out(out, to_c_string(serde_json::to_string(&prod).expect("serializable"))?)
    })
}

/// Runs a CLI command, e.g. `{"command": "hilbert", "target": "lambda", "degree": 3}`,
/// on a presentation and writes the report JSON to `out`.
///
/// # Safety
/// Both strings NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skcl_run_command(
    command: *const c_char,
    presentation: *const c_char,
    out: *mut *mut c_char,
) -> SkclStatus {
    guard(|| {
        let cmd: Command = serde_json::from_str(read_str(command, "command")?)
            .map_err(|e| Fail(SkclStatus::InvalidInput, format!("command: {e}")))?;
        let report = cli::execute(&cmd, read_str(presentation, "presentation")?)?;
        write_out(out, to_c_string(report.to_json())?)
    })
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn skcl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn skcl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_codes_match_exit_codes() {
        for e in [
            Error::Precondition("x".into()),
            Error::Internal("x".into()),
        ] {
            assert_eq!(status_of(&e) as i32, e.exit_code());
        }
    }

    #[test]
    fn error_message_cleared_on_success() {
        let json = CString::new(r#"{"n":1,"mu":[["1"]],"b":[["1"]]}"#).unwrap();
        let bad = CString::new("nope").unwrap();
        let mut p = ptr::null_mut();
        unsafe {
            assert_eq!(skcl_presentation_from_json(bad.as_ptr(), &mut p), SkclStatus::InvalidInput);
            assert!(!skcl_last_error_message().is_null());
            assert_eq!(skcl_presentation_from_json(json.as_ptr(), &mut p), SkclStatus::Ok);
            assert!(skcl_last_error_message().is_null());
            skcl_presentation_free(p);
        }
    }
}
