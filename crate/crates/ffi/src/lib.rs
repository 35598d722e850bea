//! C interface to lieverify.
//!
//! Root data are passed around as opaque `LvDatum` handles. Every call that
//! can fail returns an `LvStatus`; the message for the most recent failure on
//! the calling thread is available from `lv_last_error`. Strings handed out by
//! the library must be released with `lv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;
use std::sync::Arc;

use lieverify::models::builtin_models;
use lieverify::repchar::{dim_weyl, fs_indicator};
use lieverify::{build_datum, Error, RootDatum};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Unsupported = 4,
    InvalidInput = 5,
    Overflow = 6,
    VerificationFailed = 7,
    Internal = 8,
}

/// Opaque root datum handle.
pub struct LvDatum {
    inner: Arc<RootDatum>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(err: &Error) -> LvStatus {
    set_error(err.to_string());
    match err {
        Error::Parse(_) => LvStatus::Parse,
        Error::Unsupported(_) => LvStatus::Unsupported,
        Error::Overflow => LvStatus::Overflow,
        _ => LvStatus::InvalidInput,
    }
}

fn guarded(f: impl FnOnce() -> LvStatus) -> LvStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            LvStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LvStatus> {
    if s.is_null() {
        set_error("null string");
        return Err(LvStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        LvStatus::Utf8
    })
}

fn hand_out(s: String, out: *mut *mut c_char) -> LvStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            LvStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            LvStatus::Internal
        }
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a root datum from a descriptor such as `"E7:sc"` or `"GL4xGL2"`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lv_datum_new(descriptor: *const c_char, out: *mut *mut LvDatum) -> LvStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LvStatus::NullPointer;
        }
        let desc = match read_str(descriptor) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match build_datum(desc) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(LvDatum { inner: Arc::new(d) }));
                LvStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `datum` must come from `lv_datum_new` and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn lv_datum_free(datum: *mut LvDatum) {
    if !datum.is_null() {
        drop(Box::from_raw(datum));
    }
}

/// Rank of the ambient lattice, or 0 for NULL.
///
/// # Safety
/// `datum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lv_datum_rank(datum: *const LvDatum) -> usize {
    datum.as_ref().map_or(0, |d| d.inner.rank())
}

/// Number of roots, or 0 for NULL.
///
/// # Safety
/// `datum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lv_datum_num_roots(datum: *const LvDatum) -> usize {
    datum.as_ref().map_or(0, |d| d.inner.num_roots())
}

unsafe fn weight<'a>(datum: *const LvDatum, w: *const i64, len: usize) -> Result<(&'a LvDatum, Vec<i64>), LvStatus> {
    let Some(d) = datum.as_ref() else {
        set_error("null datum");
        return Err(LvStatus::NullPointer);
    };
    if w.is_null() && len > 0 {
        set_error("null weight");
        return Err(LvStatus::NullPointer);
    }
    let v = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(w, len).to_vec() };
    Ok((d, v))
}

/// Dimension of the irreducible representation with highest weight `w`, in
/// ambient coordinates, written as a decimal string to `out`.
///
/// # Safety
/// `w` must point to `len` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_dim(datum: *const LvDatum, w: *const i64, len: usize, out: *mut *mut c_char) -> LvStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LvStatus::NullPointer;
        }
        let (d, v) = match weight(datum, w, len) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match dim_weyl(&d.inner, &v) {
            Ok(n) => hand_out(n.to_string(), out),
            Err(e) => fail(&e),
        }
    })
}

/// Frobenius-Schur indicator (1, -1 or 0) of the irreducible representation
/// with highest weight `w`.
///
/// # Safety
/// `w` must point to `len` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_indicator(datum: *const LvDatum, w: *const i64, len: usize, out: *mut i32) -> LvStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LvStatus::NullPointer;
        }
        let (d, v) = match weight(datum, w, len) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match fs_indicator(&d.inner, &v) {
            Ok(i) => {
                *out = i32::from(i);
                LvStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Runs the full built-in verification and writes the JSON report to `out`.
/// Returns `VerificationFailed` (with the report still written) if any check fails.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lv_verify_all(out: *mut *mut c_char) -> LvStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LvStatus::NullPointer;
        }
        let report = lieverify::cli::run_suite(&builtin_models(), &[]);
        let status = hand_out(report.to_json(), out);
        if status == LvStatus::Ok && !report.passed() {
            set_error(format!("{} checks failed", report.summary.fail));
            return LvStatus::VerificationFailed;
        }
        status
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
