//! C ABI over the qgeo engine.
//!
//! Every fallible call returns a [`QgeoStatus`]; on failure the message is
//! available from [`qgeo_last_error_message`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and must be released
//! with [`qgeo_string_free`]. Handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qgeo::dsl::{parse_document, parse_element};
use qgeo::models::{lookup, models_from_document, Model};
use qgeo::report::{export_report, CheckReport, Format};
use qgeo::suite::run_suite;
use qgeo::Error;

/// Result codes. `QGEO_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgeoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownModel = 4,
    UnknownCheck = 5,
    Usage = 6,
    Algebra = 7,
    Panic = 8,
}

/// Report output format for [`qgeo_reports_export`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgeoFormat {
    Json = 0,
    Text = 1,
}

/// Opaque model handle.
pub struct QgeoModel(Model);

/// Opaque list of check reports.
pub struct QgeoReports(Vec<CheckReport>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QgeoStatus {
    match e {
        Error::Parse { .. } => QgeoStatus::Parse,
        Error::UnknownModel(_) => QgeoStatus::UnknownModel,
        Error::UnknownCheck(_) => QgeoStatus::UnknownCheck,
        Error::Usage(_) | Error::UnknownGenerator(_) => QgeoStatus::Usage,
        _ => QgeoStatus::Algebra,
    }
}

struct Fail(QgeoStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Run `f`, converting errors and panics into a status plus the thread-local message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QgeoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QgeoStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            QgeoStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for the call.
unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(QgeoStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QgeoStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_ptr<T>(out: *mut T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(QgeoStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn qgeo_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn qgeo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qgeo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Built-in model by registry name.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qgeo_model_lookup(name: *const c_char, out: *mut *mut QgeoModel) -> QgeoStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = lookup(str_arg(name, "name")?)?;
        *out = Box::into_raw(Box::new(QgeoModel(m)));
        Ok(())
    })
}

/// First model declared in DSL source text.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qgeo_model_from_dsl(src: *const c_char, out: *mut *mut QgeoModel) -> QgeoStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let doc = parse_document(str_arg(src, "src")?)?;
        let m = models_from_document(&doc)?
            .into_iter()
            .next()
            .ok_or_else(|| Fail(QgeoStatus::Usage, "document declares no model".into()))?;
        *out = Box::into_raw(Box::new(QgeoModel(m)));
        Ok(())
    })
}

/// # Safety
/// `m` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qgeo_model_free(m: *mut QgeoModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qgeo_model_name(m: *const QgeoModel, out: *mut *mut c_char) -> QgeoStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = m.as_ref().ok_or(Fail(QgeoStatus::NullPointer, "model is null".into()))?;
        *out = to_c(m.0.name().to_owned());
        Ok(())
    })
}

fn presentation(m: &QgeoModel) -> Result<&qgeo::freealg::Presentation, Fail> {
    m.0.presentation()
        .ok_or_else(|| Fail(QgeoStatus::Usage, format!("{} has no symbolic presentation", m.0.name())))
}

/// Normal form of `expr`, written in DSL syntax.
///
/// # Safety
/// `m` is a live handle; `expr` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qgeo_normal_form(
    m: *const QgeoModel,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> QgeoStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = m.as_ref().ok_or(Fail(QgeoStatus::NullPointer, "model is null".into()))?;
        let alg = presentation(m)?;
        let e = alg.normal_form(&parse_element(alg, str_arg(expr, "expr")?)?)?;
        *out = to_c(alg.show(&e));
        Ok(())
    })
}

/// `ab - ba` in normal form, written in DSL syntax.
///
/// # Safety
/// `m` is a live handle; `a`, `b` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qgeo_commutator(
    m: *const QgeoModel,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> QgeoStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = m.as_ref().ok_or(Fail(QgeoStatus::NullPointer, "model is null".into()))?;
        let alg = presentation(m)?;
        let a = parse_element(alg, str_arg(a, "a")?)?;
        let b = parse_element(alg, str_arg(b, "b")?)?;
        *out = to_c(alg.show(&alg.commutator(&a, &b)?));
        Ok(())
    })
}

/// Run comma-separated checks (or `all`). `degree == 0` selects the model default.
///
/// # Safety
/// `m` is a live handle; `checks` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qgeo_run_suite(
    m: *const QgeoModel,
    checks: *const c_char,
    degree: u32,
    out: *mut *mut QgeoReports,
) -> QgeoStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = m.as_ref().ok_or(Fail(QgeoStatus::NullPointer, "model is null".into()))?;
        let names: Vec<&str> = str_arg(checks, "checks")?.split(',').map(str::trim).collect();
        let reports = run_suite(&m.0, &names, (degree > 0).then_some(degree))?;
        *out = Box::into_raw(Box::new(QgeoReports(reports)));
        Ok(())
    })
}

/// Number of reports, 0 for null.
///
/// # Safety
/// `r` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qgeo_reports_len(r: *const QgeoReports) -> usize {
    r.as_ref().map_or(0, |r| r.0.len())
}

/// 1 if no report failed, 0 otherwise (including null).
///
/// # Safety
/// `r` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qgeo_reports_all_passed(r: *const QgeoReports) -> i32 {
    r.as_ref().map_or(0, |r| i32::from(!r.0.iter().any(CheckReport::failed)))
}

/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qgeo_reports_export(
    r: *const QgeoReports,
    format: QgeoFormat,
    out: *mut *mut c_char,
) -> QgeoStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let r = r.as_ref().ok_or(Fail(QgeoStatus::NullPointer, "reports is null".into()))?;
        let f = match format {
            QgeoFormat::Json => Format::Json,
            QgeoFormat::Text => Format::Text,
        };
        *out = to_c(export_report(&r.0, f));
        Ok(())
    })
}

/// # Safety
/// `r` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qgeo_reports_free(r: *mut QgeoReports) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
