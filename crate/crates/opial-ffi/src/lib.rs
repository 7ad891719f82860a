//! C ABI surface. Handles are opaque pointers; all fallible calls return an
//! `opial_status` code and stash a message retrievable with
//! `opial_last_error_message`.

// identifiers follow C naming so the generated header reads naturally
#![allow(non_camel_case_types)]
#![allow(clippy::upper_case_acronyms)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::slice;

use opial::generators::{make_example, ExampleName};
use opial::hilbert::distance_trace;
use opial::monotonicity::classify;
use opial::verify::run_suite;
use opial::{ConvexSet, SequencePrefix, Tolerance, Vector};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum opial_status {
    OPIAL_OK = 0,
    OPIAL_ERR_INVALID_ARGUMENT = 1,
    OPIAL_ERR_DIMENSION_MISMATCH = 2,
    OPIAL_ERR_NON_FINITE = 3,
    OPIAL_ERR_INFEASIBLE = 4,
    OPIAL_ERR_UNSUPPORTED = 5,
    OPIAL_ERR_IO = 6,
    OPIAL_ERR_PARSE = 7,
    OPIAL_ERR_NULL_POINTER = 8,
    OPIAL_ERR_CHECK_FAILED = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &opial::Error) -> opial_status {
    use opial::Error::*;
    match err {
        DimensionMismatch { .. } => opial_status::OPIAL_ERR_DIMENSION_MISMATCH,
        NonFinite { .. } => opial_status::OPIAL_ERR_NON_FINITE,
        InvalidArgument(_) => opial_status::OPIAL_ERR_INVALID_ARGUMENT,
        InfeasibleIntersection(_) => opial_status::OPIAL_ERR_INFEASIBLE,
        UnsupportedVariant(_) => opial_status::OPIAL_ERR_UNSUPPORTED,
        SampleOutsideSet { .. } => opial_status::OPIAL_ERR_INVALID_ARGUMENT,
        Io(_) => opial_status::OPIAL_ERR_IO,
        Parse(_) => opial_status::OPIAL_ERR_PARSE,
    }
}

fn fail(err: opial::Error) -> opial_status {
    let code = status_of(&err);
    set_error(&err.to_string());
    code
}

/// Opaque handle to a sequence prefix.
pub struct opial_sequence {
    inner: SequencePrefix,
}

/// Opaque handle to a convex set descriptor.
pub struct opial_set {
    inner: ConvexSet,
}

/// Message for the most recent error on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn opial_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a sequence from a row-major buffer of `len` points of dimension
/// `dim`. `tail_start` marks where tail-based estimates begin.
///
/// # Safety
/// `data` must point to `len * dim` readable doubles; `out` must be a valid
/// destination pointer.
#[no_mangle]
pub unsafe extern "C" fn opial_sequence_create(
    data: *const f64,
    len: usize,
    dim: usize,
    tail_start: usize,
    out: *mut *mut opial_sequence,
) -> opial_status {
    if data.is_null() || out.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    let flat = slice::from_raw_parts(data, len * dim);
    let points: Vec<Vector> = match flat
        .chunks_exact(dim)
        .map(|c| Vector::new(c.to_vec()))
        .collect()
    {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    match SequencePrefix::new(points, tail_start) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(opial_sequence { inner }));
            opial_status::OPIAL_OK
        }
        Err(e) => fail(e),
    }
}

/// Parse a sequence from its JSONL representation.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn opial_sequence_from_jsonl(
    text: *const c_char,
    out: *mut *mut opial_sequence,
) -> opial_status {
    if text.is_null() || out.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("sequence text is not valid UTF-8");
            return opial_status::OPIAL_ERR_PARSE;
        }
    };
    match opial::io::sequence_from_jsonl_str(s) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(opial_sequence { inner }));
            opial_status::OPIAL_OK
        }
        Err(e) => fail(e),
    }
}

/// Build one of the reference examples by name (e.g. "two_bump_drift").
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn opial_sequence_example(
    name: *const c_char,
    horizon: usize,
    out: *mut *mut opial_sequence,
) -> opial_status {
    if name.is_null() || out.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    let s = match CStr::from_ptr(name).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("example name is not valid UTF-8");
            return opial_status::OPIAL_ERR_PARSE;
        }
    };
    let Some(ex) = ExampleName::parse(s) else {
        set_error("unknown example name");
        return opial_status::OPIAL_ERR_INVALID_ARGUMENT;
    };
    match make_example(ex, horizon, None) {
        Ok(case) => {
            *out = Box::into_raw(Box::new(opial_sequence { inner: case.seq }));
            opial_status::OPIAL_OK
        }
        Err(e) => fail(e),
    }
}

#[no_mangle]
pub extern "C" fn opial_sequence_len(seq: *const opial_sequence) -> usize {
    if seq.is_null() {
        return 0;
    }
    unsafe { (*seq).inner.len() }
}

#[no_mangle]
pub extern "C" fn opial_sequence_dim(seq: *const opial_sequence) -> usize {
    if seq.is_null() {
        return 0;
    }
    unsafe { (*seq).inner.dim() }
}

/// # Safety
/// `seq` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn opial_sequence_free(seq: *mut opial_sequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Parse a convex set from its JSON descriptor.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn opial_set_from_json(
    text: *const c_char,
    out: *mut *mut opial_set,
) -> opial_status {
    if text.is_null() || out.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("set descriptor is not valid UTF-8");
            return opial_status::OPIAL_ERR_PARSE;
        }
    };
    match opial::io::set_from_json_str(s) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(opial_set { inner }));
            opial_status::OPIAL_OK
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `set` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn opial_set_free(set: *mut opial_set) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Project `point` (length `dim`) onto the set, writing the result into
/// `out_point` (length `dim`) and the distance into `out_distance`.
///
/// # Safety
/// Buffers must be readable/writable with length `dim`.
#[no_mangle]
pub unsafe extern "C" fn opial_set_project(
    set: *const opial_set,
    point: *const f64,
    dim: usize,
    out_point: *mut f64,
    out_distance: *mut f64,
) -> opial_status {
    if set.is_null() || point.is_null() || out_point.is_null() || out_distance.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    let x = Vector(slice::from_raw_parts(point, dim).to_vec());
    match (*set).inner.project(&x) {
        Ok(res) => {
            let dst = slice::from_raw_parts_mut(out_point, dim);
            dst.copy_from_slice(&res.point.0);
            *out_distance = res.distance;
            opial_status::OPIAL_OK
        }
        Err(e) => fail(e),
    }
}

/// Distance trace from the sequence to `point`, written into `out`
/// (length `opial_sequence_len`).
///
/// # Safety
/// Buffers must match the advertised lengths.
#[no_mangle]
pub unsafe extern "C" fn opial_distance_trace(
    seq: *const opial_sequence,
    point: *const f64,
    dim: usize,
    out: *mut f64,
) -> opial_status {
    if seq.is_null() || point.is_null() || out.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    let c = Vector(slice::from_raw_parts(point, dim).to_vec());
    match distance_trace(&(*seq).inner, &c) {
        Ok(trace) => {
            let dst = slice::from_raw_parts_mut(out, trace.len());
            dst.copy_from_slice(&trace);
            opial_status::OPIAL_OK
        }
        Err(e) => fail(e),
    }
}

fn json_out(value: &impl serde::Serialize, out: *mut *mut c_char) -> opial_status {
    let text = match serde_json::to_string_pretty(value) {
        Ok(t) => t,
        Err(e) => {
            set_error(&e.to_string());
            return opial_status::OPIAL_ERR_PARSE;
        }
    };
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            opial_status::OPIAL_OK
        }
        Err(_) => {
            set_error("report contains interior NUL");
            return opial_status::OPIAL_ERR_PARSE;
        }
    }
}

/// Classify the sequence against test points sampled from the set.
/// On success `*out_json` holds a report; free it with `opial_string_free`.
///
/// # Safety
/// `seq` and `set` must be live handles; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn opial_classify_json(
    seq: *const opial_sequence,
    set: *const opial_set,
    out_json: *mut *mut c_char,
) -> opial_status {
    if seq.is_null() || set.is_null() || out_json.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    let points = match opial::generators::case_test_points(&(*set).inner) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    match classify(&(*seq).inner, &points, Tolerance::default()) {
        Ok(report) => json_out(&report, out_json),
        Err(e) => fail(e),
    }
}

/// Asymptotic center of the sequence tail within the set, as JSON.
///
/// # Safety
/// `seq` and `set` must be live handles; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn opial_asymptotic_center_json(
    seq: *const opial_sequence,
    set: *const opial_set,
    solver_tol: f64,
    out_json: *mut *mut c_char,
) -> opial_status {
    if seq.is_null() || set.is_null() || out_json.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    match opial::accenter::asymptotic_center(&(*seq).inner, &(*set).inner, solver_tol) {
        Ok(result) => json_out(&result, out_json),
        Err(e) => fail(e),
    }
}

/// Run the verification suite (all scenarios). The JSON report lands in
/// `*out_json`; the return value is OPIAL_ERR_CHECK_FAILED when any
/// scenario fails, OPIAL_OK otherwise.
///
/// # Safety
/// `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn opial_verify_json(out_json: *mut *mut c_char) -> opial_status {
    if out_json.is_null() {
        set_error("null pointer argument");
        return opial_status::OPIAL_ERR_NULL_POINTER;
    }
    match run_suite(None) {
        Ok(report) => {
            let all_pass = report.all_passed();
            let code = json_out(&report, out_json);
            if code != opial_status::OPIAL_OK {
                return code;
            }
            if all_pass {
                opial_status::OPIAL_OK
            } else {
                set_error("one or more verification scenarios failed");
                opial_status::OPIAL_ERR_CHECK_FAILED
            }
        }
        Err(e) => fail(e),
    }
}

/// Free a string returned by this library.
///
/// # Safety
/// `s` must originate from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn opial_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn opial_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}
