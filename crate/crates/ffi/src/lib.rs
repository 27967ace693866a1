//! C ABI over `circflow`.
//!
//! Graphs and certificates are opaque handles freed by their `_free`
//! function. Every call returns a [`CfStatus`]; on failure the message is
//! available from [`cf_last_error`] until the next call on the same thread.
//! Strings returned by the library are freed with [`cf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circflow::certificates::{reverify, Certificate, Verdict};
use circflow::colorings::{chromatic_index, Budget};
use circflow::families::{
    blanusa_chain, complete_bipartite, complete_graph, flower_snark, mp_graph, petersen, prism, MpStage,
};
use circflow::flows::{check_flow, circular_flow_number, parse_flow, FlowError, PhiOptions};
use circflow::graph::{parse_graph, write_graph, Multigraph};

/// Result of every call. The first three mirror certificate verdicts.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfStatus {
    Verified = 0,
    Refuted = 1,
    Inconclusive = 2,
    InvalidArgument = 3,
    NullPointer = 4,
    ParseError = 5,
    ComputeError = 6,
    Panic = 7,
}

/// Opaque multigraph.
pub struct CfGraph(Multigraph);

/// Opaque certificate.
pub struct CfCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(v: Verdict) -> CfStatus {
    match v {
        Verdict::Verified => CfStatus::Verified,
        Verdict::Refuted => CfStatus::Refuted,
        Verdict::Inconclusive => CfStatus::Inconclusive,
    }
}

type Failure = (CfStatus, String);

/// Runs `f` with panics and errors mapped onto statuses.
fn guard(f: impl FnOnce() -> Result<CfStatus, Failure>) -> CfStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, message))) => {
            set_error(message);
            s
        }
        Err(_) => {
            set_error("internal panic");
            CfStatus::Panic
        }
    }
}

fn compute(e: impl std::fmt::Display) -> Failure {
    (CfStatus::ComputeError, e.to_string())
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err((CfStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (CfStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn graph<'a>(g: *const CfGraph) -> Result<&'a Multigraph, Failure> {
    g.as_ref()
        .map(|g| &g.0)
        .ok_or_else(|| (CfStatus::NullPointer, "null graph".into()))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((CfStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_cert(out: *mut *mut CfCertificate, cert: Certificate) {
    if !out.is_null() {
        *out = Box::into_raw(Box::new(CfCertificate(cert)));
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn cf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn cf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the `circflow-graph v1` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_parse(text: *const c_char, out: *mut *mut CfGraph) -> CfStatus {
    guard(|| {
        let g = parse_graph(utf8(text)?).map_err(|e| (CfStatus::ParseError, e.to_string()))?;
        store(out, CfGraph(g))?;
        Ok(CfStatus::Verified)
    })
}

/// Builds a family member: `petersen`, `complete` (m), `complete-bipartite`
/// (m), `prism` (m), `flower` (n), `blanusa-chain` (n) or `mp` (p).
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_family(family: *const c_char, param: usize, out: *mut *mut CfGraph) -> CfStatus {
    guard(|| {
        let bad = |e: &dyn std::fmt::Display| (CfStatus::InvalidArgument, e.to_string());
        let g = match utf8(family)? {
            "petersen" => petersen(),
            "complete" => complete_graph(param).map_err(|e| bad(&e))?,
            "complete-bipartite" => complete_bipartite(param).map_err(|e| bad(&e))?,
            "prism" => prism(param).map_err(|e| bad(&e))?,
            "flower" => flower_snark(param).map_err(|e| bad(&e))?.graph,
            "blanusa-chain" => blanusa_chain(param).map_err(|e| bad(&e))?.graph,
            "mp" => mp_graph(param, MpStage::Base).map_err(|e| bad(&e))?.graph,
            other => return Err((CfStatus::InvalidArgument, format!("unknown family `{other}`"))),
        };
        store(out, CfGraph(g))?;
        Ok(CfStatus::Verified)
    })
}

/// # Safety
/// `g` must come from this library and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_free(g: *mut CfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn cf_graph_vertex_count(g: *const CfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn cf_graph_edge_count(g: *const CfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// The graph in text format, or null for a null handle.
///
/// # Safety
/// `g` must be a live graph handle or null.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_to_text(g: *const CfGraph) -> *mut c_char {
    g.as_ref().map_or(ptr::null_mut(), |g| owned_string(write_graph(&g.0)))
}

/// Exact circular flow number as `num/den`. Graphs above `edge_cap` edges
/// give `Inconclusive`. `cert` may be null.
///
/// # Safety
/// `g` must be a live graph handle; `num`, `den` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_circular_flow_number(
    g: *const CfGraph,
    edge_cap: usize,
    num: *mut i64,
    den: *mut i64,
    cert: *mut *mut CfCertificate,
) -> CfStatus {
    guard(|| {
        let g = graph(g)?;
        if num.is_null() || den.is_null() {
            return Err((CfStatus::NullPointer, "null output pointer".into()));
        }
        match circular_flow_number(g, PhiOptions { edge_cap }) {
            Ok(fnum) => {
                *num = *fnum.value.numer();
                *den = *fnum.value.denom();
                store_cert(cert, Certificate::phi_c_value(g, &fnum));
                Ok(CfStatus::Verified)
            }
            Err(e @ (FlowError::CapExceeded { .. } | FlowError::TooManyVertices(_))) => {
                set_error(e.to_string());
                Ok(CfStatus::Inconclusive)
            }
            Err(e) => Err(compute(e)),
        }
    })
}

/// Checks a `circflow-flow v1` text against `g`: `Verified` or `Refuted`.
///
/// # Safety
/// `g` must be a live graph handle; `flow` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cf_verify_flow(
    g: *const CfGraph,
    flow: *const c_char,
    cert: *mut *mut CfCertificate,
) -> CfStatus {
    guard(|| {
        let g = graph(g)?;
        let f = parse_flow(g, utf8(flow)?).map_err(|e| (CfStatus::ParseError, e.to_string()))?;
        let violation = check_flow(g, &f).map_err(compute)?;
        if let Some(v) = &violation {
            set_error(v.to_string());
        }
        let c = Certificate::flow_valid(g, &f, violation.as_ref());
        let s = status_of(c.verdict);
        store_cert(cert, c);
        Ok(s)
    })
}

/// Chromatic index; `budget_seconds <= 0` searches without limit.
/// `Inconclusive` leaves the bounds in `lower` and `upper`.
///
/// # Safety
/// `g` must be a live graph handle; `lower`, `upper` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_chromatic_index(
    g: *const CfGraph,
    budget_seconds: f64,
    lower: *mut usize,
    upper: *mut usize,
    cert: *mut *mut CfCertificate,
) -> CfStatus {
    guard(|| {
        let g = graph(g)?;
        if lower.is_null() || upper.is_null() {
            return Err((CfStatus::NullPointer, "null output pointer".into()));
        }
        let budget = if budget_seconds > 0.0 {
            Budget::seconds(budget_seconds)
        } else {
            Budget::unlimited()
        };
        let ci = chromatic_index(g, &budget).map_err(compute)?;
        *lower = ci.lower;
        *upper = ci.upper;
        let c = Certificate::chromatic_index(g, &ci);
        let s = status_of(c.verdict);
        store_cert(cert, c);
        Ok(s)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cf_certificate_parse(json: *const c_char, out: *mut *mut CfCertificate) -> CfStatus {
    guard(|| {
        let c = Certificate::from_json(utf8(json)?).map_err(|e| (CfStatus::ParseError, e.to_string()))?;
        store(out, CfCertificate(c))?;
        Ok(CfStatus::Verified)
    })
}

/// Canonical JSON, or null for a null handle.
///
/// # Safety
/// `c` must be a live certificate handle or null.
#[no_mangle]
pub unsafe extern "C" fn cf_certificate_to_json(c: *const CfCertificate) -> *mut c_char {
    c.as_ref().map_or(ptr::null_mut(), |c| owned_string(c.0.to_json()))
}

/// Recorded verdict as a status; `NullPointer` for a null handle.
///
/// # Safety
/// `c` must be a live certificate handle or null.
#[no_mangle]
pub unsafe extern "C" fn cf_certificate_verdict(c: *const CfCertificate) -> CfStatus {
    c.as_ref().map_or(CfStatus::NullPointer, |c| status_of(c.0.verdict))
}

/// Re-checks `c` against `g`: the recorded verdict when the witness holds,
/// `Refuted` when it does not.
///
/// # Safety
/// `c` and `g` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn cf_certificate_reverify(c: *const CfCertificate, g: *const CfGraph) -> CfStatus {
    guard(|| {
        let cert = &c
            .as_ref()
            .ok_or_else(|| (CfStatus::NullPointer, "null certificate".to_string()))?
            .0;
        let rv = reverify(cert, graph(g)?).map_err(|e| (CfStatus::InvalidArgument, e.to_string()))?;
        if rv.ok {
            Ok(status_of(cert.verdict))
        } else {
            set_error(rv.detail);
            Ok(CfStatus::Refuted)
        }
    })
}

/// # Safety
/// `c` must come from this library and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn cf_certificate_free(c: *mut CfCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
