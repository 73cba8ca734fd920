//! C ABI over `floer_core`.
//!
//! Every function returns a [`FloerStatus`]; on failure the message is kept
//! per thread and read with [`floer_last_error_message`]. Objects cross the
//! boundary as opaque handles owned by the caller and released with the
//! matching `_free` function. Strings returned through `out` parameters are
//! released with [`floer_string_free`]. Panics never unwind into C: they are
//! reported as [`FloerStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use floer_core::arnold::{arnold_bound, ArnoldInput};
use floer_core::fixtures;
use floer_core::flowcat::{build_complex, FlowCategoryData};
use floer_core::novikov::{ideal_generator, NovikovSeries, Valuation};

#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloerStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed text or JSON, or an unknown fixture name.
    ParseError = 3,
    /// The operation is undefined for these arguments, e.g. an inexact
    /// division or a regrading that does not divide the grading.
    MathError = 4,
    /// A validation ran and found violations; the message lists them.
    CheckFailed = 5,
    Panic = 6,
}

/// A Novikov series.
pub struct FloerSeries(NovikovSeries);

/// Validated flow-category data.
pub struct FloerFlowCategory(FlowCategoryData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(FloerStatus, String);

type Res<T> = Result<T, Fail>;

fn fail<T>(status: FloerStatus, msg: impl Into<String>) -> Res<T> {
    Err(Fail(status, msg.into()))
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Res<()>) -> FloerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            FloerStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(Some(format!("internal panic: {msg}")));
            FloerStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return fail(FloerStatus::NullArgument, format!("{what} is null"));
    }
    CStr::from_ptr(p).to_str().or_else(|_| fail(FloerStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().map_or_else(|| fail(FloerStatus::NullArgument, format!("{what} is null")), Ok)
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Res<()> {
    if out.is_null() {
        return fail(FloerStatus::NullArgument, format!("{what} is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let c = CString::new(s).or_else(|_| fail(FloerStatus::MathError, "string contains a nul byte"))?;
    put(out, c.into_raw(), "out")
}

unsafe fn put_series(out: *mut *mut FloerSeries, s: NovikovSeries) -> Res<()> {
    put(out, Box::into_raw(Box::new(FloerSeries(s))), "out")
}

/// Message of the last failed call on this thread, or null after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn floer_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn floer_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text form, e.g. `"2 + T - 3*T^-1"` or `"1 + T @ 8"`.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_parse(text_ptr: *const c_char, out: *mut *mut FloerSeries) -> FloerStatus {
    guard(|| {
        let s: NovikovSeries = text(text_ptr, "text")?
            .parse()
            .map_err(|e: floer_core::novikov::NovikovError| Fail(FloerStatus::ParseError, e.to_string()))?;
        put_series(out, s)
    })
}

/// The constant series `c`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_from_int(c: i64, out: *mut *mut FloerSeries) -> FloerStatus {
    guard(|| put_series(out, NovikovSeries::from_int(c)))
}

/// # Safety
/// `s` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn floer_series_free(s: *mut FloerSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_to_string(s: *const FloerSeries, out: *mut *mut c_char) -> FloerStatus {
    guard(|| put_string(out, borrow(s, "series")?.0.to_string()))
}

/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_add(
    a: *const FloerSeries,
    b: *const FloerSeries,
    out: *mut *mut FloerSeries,
) -> FloerStatus {
    guard(|| put_series(out, borrow(a, "a")?.0.add(&borrow(b, "b")?.0)))
}

/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_mul(
    a: *const FloerSeries,
    b: *const FloerSeries,
    out: *mut *mut FloerSeries,
) -> FloerStatus {
    guard(|| put_series(out, borrow(a, "a")?.0.mul(&borrow(b, "b")?.0)))
}

/// `a / b` to `precision` orders past the quotient's leading term;
/// `MathError` when `b` does not divide `a`.
///
/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_divide(
    a: *const FloerSeries,
    b: *const FloerSeries,
    precision: i64,
    out: *mut *mut FloerSeries,
) -> FloerStatus {
    guard(|| {
        let q = borrow(a, "a")?
            .0
            .divide(&borrow(b, "b")?.0, precision)
            .map_err(|e| Fail(FloerStatus::MathError, e.to_string()))?;
        put_series(out, q)
    })
}

/// Writes the valuation and `true`, or `false` when no nonzero coefficient
/// is known (the valuation is then left untouched).
///
/// # Safety
/// `s` is a live handle; `valuation` and `is_finite` are writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_valuation(
    s: *const FloerSeries,
    valuation: *mut i64,
    is_finite: *mut bool,
) -> FloerStatus {
    guard(|| match borrow(s, "series")?.0.valuation() {
        Valuation::Finite(v) => {
            put(valuation, v, "valuation")?;
            put(is_finite, true, "is_finite")
        }
        Valuation::Infinite { .. } => put(is_finite, false, "is_finite"),
    })
}

/// Whether the two series agree on every exponent below `k`.
///
/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_series_agrees_below(
    a: *const FloerSeries,
    b: *const FloerSeries,
    k: i64,
    out: *mut bool,
) -> FloerStatus {
    guard(|| put(out, borrow(a, "a")?.0.agrees_below(&borrow(b, "b")?.0, k), "out"))
}

/// Canonical generator of the ideal spanned by `gens[0..count]`.
///
/// # Safety
/// `gens` points to `count` live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_ideal_generator(
    gens: *const *const FloerSeries,
    count: usize,
    precision: i64,
    out: *mut *mut FloerSeries,
) -> FloerStatus {
    guard(|| {
        if gens.is_null() && count > 0 {
            return fail(FloerStatus::NullArgument, "gens is null");
        }
        let mut list = Vec::with_capacity(count);
        for k in 0..count {
            list.push(borrow(*gens.add(k), "generator")?.0.clone());
        }
        let r = ideal_generator(&list, precision).map_err(|e| Fail(FloerStatus::MathError, e.to_string()))?;
        put_series(out, r.generator)
    })
}

fn category_from(text: &str) -> Res<FloerFlowCategory> {
    let fc = FlowCategoryData::from_json(text).map_err(|e| Fail(FloerStatus::ParseError, e.to_string()))?;
    let violations = fc.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return fail(FloerStatus::CheckFailed, lines.join("\n"));
    }
    Ok(FloerFlowCategory(fc))
}

unsafe fn put_category(out: *mut *mut FloerFlowCategory, fc: FloerFlowCategory) -> Res<()> {
    put(out, Box::into_raw(Box::new(fc)), "out")
}

/// Parses and validates a flow-category document. Validation failures
/// return `CheckFailed` with one violation per line.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_flow_category_from_json(
    json: *const c_char,
    out: *mut *mut FloerFlowCategory,
) -> FloerStatus {
    guard(|| put_category(out, category_from(text(json, "json")?)?))
}

/// Loads a bundled fixture such as `"rp2"`.
///
/// # Safety
/// `name` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_flow_category_from_fixture(
    name: *const c_char,
    out: *mut *mut FloerFlowCategory,
) -> FloerStatus {
    guard(|| {
        let name = text(name, "name")?;
        let body = fixtures::fixture(name)
            .ok_or_else(|| Fail(FloerStatus::ParseError, format!("no bundled fixture {name:?}")))?;
        put_category(out, category_from(body)?)
    })
}

/// # Safety
/// `fc` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn floer_flow_category_free(fc: *mut FloerFlowCategory) {
    if !fc.is_null() {
        drop(Box::from_raw(fc));
    }
}

/// # Safety
/// `fc` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_flow_category_generator_count(
    fc: *const FloerFlowCategory,
    out: *mut usize,
) -> FloerStatus {
    guard(|| put(out, borrow(fc, "category")?.0.generators.len(), "out"))
}

/// A copy graded mod `two_n`. `two_n` must be even and divide the current
/// period; any even `two_n` works for `Z`-graded data.
///
/// # Safety
/// `fc` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_flow_category_regrade(
    fc: *const FloerFlowCategory,
    two_n: i64,
    out: *mut *mut FloerFlowCategory,
) -> FloerStatus {
    guard(|| {
        let fc = &borrow(fc, "category")?.0;
        let g = fc
            .regraded(two_n)
            .ok_or_else(|| Fail(FloerStatus::MathError, format!("cannot regrade mod {} to mod {two_n}", fc.two_n)))?;
        put_category(out, FloerFlowCategory(g))
    })
}

/// Homology over Λ as a JSON object keyed by grading class. `CheckFailed`
/// when d² ≠ 0.
///
/// # Safety
/// `fc` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_flow_category_homology_json(
    fc: *const FloerFlowCategory,
    precision: i64,
    out: *mut *mut c_char,
) -> FloerStatus {
    guard(|| {
        if precision < 1 {
            return fail(FloerStatus::MathError, "precision must be positive");
        }
        let c = build_complex(&borrow(fc, "category")?.0).map_err(|e| Fail(FloerStatus::MathError, e.to_string()))?;
        let broken = c.check_d_squared();
        if !broken.is_empty() {
            let lines: Vec<String> = broken.iter().map(|e| format!("{e:?}")).collect();
            return fail(FloerStatus::CheckFailed, lines.join("\n"));
        }
        let h = c.homology(precision).map_err(|e| Fail(FloerStatus::MathError, e.to_string()))?;
        let doc: serde_json::Map<String, serde_json::Value> =
            h.iter().map(|(i, m)| (i.to_string(), m.to_json())).collect();
        put_string(out, serde_json::Value::Object(doc).to_string())
    })
}

/// Arnold bound of an integral homology document with its minimal Chern
/// number.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn floer_arnold_bound(json: *const c_char, out: *mut u64) -> FloerStatus {
    guard(|| {
        let doc =
            ArnoldInput::from_json(text(json, "json")?).map_err(|e| Fail(FloerStatus::ParseError, e.to_string()))?;
        let groups = doc.groups().map_err(|e| Fail(FloerStatus::ParseError, e.to_string()))?;
        put(out, arnold_bound(&groups, doc.minimal_chern), "out")
    })
}

/// Runs the `floer` command line with `argv[0..argc]` (the program name
/// first). Writes the report and the process exit code (0, 1 or 2); the
/// status is `Ok` whenever the command ran, whatever its exit code.
///
/// # Safety
/// `argv` points to `argc` nul-terminated strings; `output` and
/// `exit_code` are writable.
#[no_mangle]
pub unsafe extern "C" fn floer_cli_run(
    argc: usize,
    argv: *const *const c_char,
    output: *mut *mut c_char,
    exit_code: *mut i32,
) -> FloerStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return fail(FloerStatus::NullArgument, "argv is null");
        }
        let mut args = Vec::with_capacity(argc);
        for k in 0..argc {
            args.push(text(*argv.add(k), "argument")?.to_string());
        }
        let (code, report) = floer_core::cli::run(args);
        put(exit_code, code, "exit_code")?;
        put_string(output, report)
    })
}
