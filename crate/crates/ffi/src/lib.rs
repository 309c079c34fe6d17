//! C interface to `distinguish`.
//!
//! Graphs and colourings are opaque handles created by the `*_from_*`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`DgStatus`]; on failure [`dg_last_error`] describes what went
//! wrong on the calling thread. Strings returned through out-parameters are
//! owned by the caller and released with [`dg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use distinguish::automorphisms::{self, BoundaryMode};
use distinguish::constructions::{self, Algorithm};
use distinguish::families::{FamilySpec, Instance};
use distinguish::invariants::{self, Limits};
use distinguish::{source, Colouring, Error};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = -1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = -2,
    /// Malformed input: unparsable JSON or family string, or a colouring
    /// that does not fit its graph.
    InvalidInput = -3,
    /// The input is well formed but outside what the operation accepts.
    Precondition = -4,
    /// A construction produced output that failed its own check.
    Certification = -5,
    /// A size bound or time budget was exceeded.
    Limit = -6,
    /// An internal panic was caught at the boundary.
    Panic = -7,
}

/// Distinguishing checks on a truncation consider only automorphisms that
/// fix the boundary sphere vertex by vertex.
pub const DG_MODE_POINTWISE: i32 = 0;
/// Distinguishing checks on a truncation consider all automorphisms that map
/// the boundary sphere onto itself.
pub const DG_MODE_SETWISE: i32 = 1;

/// A finite graph or a truncation.
pub struct DgGraph {
    instance: Instance,
}

/// A vertex, edge or total colouring.
pub struct DgColouring {
    colouring: Colouring,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(DgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            _ if e.is_input_error() => DgStatus::InvalidInput,
            Error::Certification(_) => DgStatus::Certification,
            Error::SizeBound(_) | Error::BudgetExhausted => DgStatus::Limit,
            _ => DgStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', "")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            DgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            DgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(DgStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(DgStatus::InvalidUtf8, format!("{what}: {e}")))
}

/// # Safety
/// `p` must be null or point to a live value of type `T`.
unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Checked before allocating anything that would be written to `out`.
fn require_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    Ok(())
}

/// # Safety
/// `out` must be null or valid for a write.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "")).unwrap_or_default().into_raw()
}

fn json_failure(e: serde_json::Error) -> Failure {
    Failure::from(Error::from(e))
}

fn limits(budget_ms: u64) -> Limits {
    Limits {
        deadline: (budget_ms > 0).then(|| Instant::now() + Duration::from_millis(budget_ms)),
        ..Limits::default()
    }
}

/// Parses graph JSON (`{"n": .., "edges": [[u, v], ..]}`), or truncation JSON
/// when `root` and `radius` are present.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_from_json(json: *const c_char, out: *mut *mut DgGraph) -> DgStatus {
    guard(|| {
        require_out(out)?;
        let text = read_str(json, "json")?;
        let instance = source::parse_graph_json(text)?;
        write_out(out, Box::into_raw(Box::new(DgGraph { instance })), "out")
    })
}

/// Builds a named family member such as `cycle(6)` or
/// `family:regular_tree(3,20)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_from_family(spec: *const c_char, out: *mut *mut DgGraph) -> DgStatus {
    guard(|| {
        require_out(out)?;
        let text = read_str(spec, "spec")?.trim();
        let full = if text.starts_with("family:") {
            text.to_string()
        } else {
            format!("family:{text}")
        };
        let instance = FamilySpec::parse(&full, None, None)?.instantiate()?;
        write_out(out, Box::into_raw(Box::new(DgGraph { instance })), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_free(g: *mut DgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_vertex_count(g: *const DgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.instance.graph().n())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_edge_count(g: *const DgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.instance.graph().m())
}

/// Whether the graph is a truncation (a ball with a root and a radius).
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_is_truncation(g: *const DgGraph) -> bool {
    g.as_ref().is_some_and(|g| g.instance.truncation().is_some())
}

/// Parses colouring JSON such as `{"kind": "vertex", "vertex_colours": [1, 2]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_colouring_from_json(json: *const c_char, out: *mut *mut DgColouring) -> DgStatus {
    guard(|| {
        require_out(out)?;
        let colouring = source::parse_colouring_json(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(DgColouring { colouring })), "out")
    })
}

/// Serialises a colouring to JSON.
///
/// # Safety
/// `c` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_colouring_to_json(c: *const DgColouring, out: *mut *mut c_char) -> DgStatus {
    guard(|| {
        let c = read_ref(c, "colouring")?;
        let text = serde_json::to_string(&c.colouring).map_err(json_failure)?;
        write_out(out, into_c_string(text), "out")
    })
}

/// Number of distinct colours used, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dg_colouring_num_colours(c: *const DgColouring) -> usize {
    c.as_ref().map_or(0, |c| c.colouring.num_colours())
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dg_colouring_free(c: *mut DgColouring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Exact invariants of the graph as a JSON report. `budget_ms` bounds each
/// computation; 0 means no budget. Entries that run out of budget are
/// reported as missing rather than failing the call.
///
/// # Safety
/// `g` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_invariants_json(g: *const DgGraph, budget_ms: u64, out: *mut *mut c_char) -> DgStatus {
    guard(|| {
        let g = read_ref(g, "graph")?;
        let report = invariants::full_report(g.instance.graph(), "graph", &limits(budget_ms))?;
        let text = serde_json::to_string(&report).map_err(json_failure)?;
        write_out(out, into_c_string(text), "out")
    })
}

/// Runs a construction by name (`2d1`, `tree3`, `subcubic4`, ...) and
/// returns its certified colouring. `input` may be null; constructions that
/// transform a colouring then build their own starting point. When `audit`
/// is non-null it receives the construction's audit record as JSON.
///
/// # Safety
/// `g` must be a live handle, `algorithm` a NUL-terminated string, `input`
/// null or a live handle, `out` valid for a write and `audit` null or valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_construct(
    g: *const DgGraph,
    algorithm: *const c_char,
    input: *const DgColouring,
    out: *mut *mut DgColouring,
    audit: *mut *mut c_char,
) -> DgStatus {
    guard(|| {
        let g = read_ref(g, "graph")?;
        let alg: Algorithm = read_str(algorithm, "algorithm")?.parse()?;
        let input = input.as_ref().map(|c| c.colouring.clone());
        require_out(out)?;
        let (colouring, record) = constructions::run(alg, &g.instance, input, &Limits::default())?;
        if !audit.is_null() {
            audit.write(into_c_string(record.to_string()));
        }
        write_out(out, Box::into_raw(Box::new(DgColouring { colouring })), "out")
    })
}

/// Whether no non-identity automorphism preserves the colouring. On a
/// truncation, `mode` selects [`DG_MODE_POINTWISE`] or [`DG_MODE_SETWISE`];
/// it is ignored for finite graphs.
///
/// # Safety
/// `g` and `c` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_is_distinguishing(
    g: *const DgGraph,
    c: *const DgColouring,
    mode: i32,
    out: *mut bool,
) -> DgStatus {
    guard(|| {
        let g = read_ref(g, "graph")?;
        let c = read_ref(c, "colouring")?;
        let mode = match mode {
            DG_MODE_POINTWISE => BoundaryMode::Pointwise,
            DG_MODE_SETWISE => BoundaryMode::Setwise,
            other => return Err(Failure(DgStatus::InvalidInput, format!("unknown mode {other}"))),
        };
        let verdict = match &g.instance {
            Instance::Finite(graph) => automorphisms::is_distinguishing(graph, &c.colouring)?,
            Instance::Truncated(t) => automorphisms::truncation_distinguishing(t, &c.colouring, mode)?,
        };
        write_out(out, verdict.is_distinguishing(), "out")
    })
}

/// Whether adjacent or incident elements always get different colours.
///
/// # Safety
/// `g` and `c` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dg_is_proper(g: *const DgGraph, c: *const DgColouring, out: *mut bool) -> DgStatus {
    guard(|| {
        let graph = read_ref(g, "graph")?.instance.graph();
        let c = read_ref(c, "colouring")?;
        c.colouring.check_domain(graph)?;
        write_out(out, c.colouring.is_proper(graph), "out")
    })
}

/// Message for the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn dg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn dg_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains a NUL"),
    };
    VERSION.as_ptr()
}
