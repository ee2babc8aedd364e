//! C interface to `annotmc`.
//!
//! Graphs and formulas are opaque handles created by `*_parse` or
//! `*_generate` functions and released with the matching `*_free`. Every
//! fallible call returns an [`AnnotmcStatus`]; the message of the last failure
//! on the calling thread is available from [`annotmc_last_error`].

use annotmc::eval::{evaluate, Environment};
use annotmc::graph::{generate, parse_graph, print_graph, BoundariedGraph, Family};
use annotmc::logic::{parse_formula_with_free, Formula};
use annotmc::params::{self, ParamKind};
use annotmc::{Error, VertexSet};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnotmcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Syntax = 4,
    Scope = 5,
    Semantic = 6,
    Envelope = 7,
    Precondition = 8,
    Contract = 9,
    Panic = 10,
}

/// Opaque graph handle.
pub struct AnnotmcGraph {
    inner: BoundariedGraph,
}

/// Opaque formula handle.
pub struct AnnotmcFormula {
    inner: Formula,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AnnotmcStatus {
    match e {
        Error::Parse { .. } => AnnotmcStatus::Parse,
        Error::Syntax { .. } => AnnotmcStatus::Syntax,
        Error::Scope(_) => AnnotmcStatus::Scope,
        Error::Semantic(_) => AnnotmcStatus::Semantic,
        Error::Envelope(_) => AnnotmcStatus::Envelope,
        Error::Precondition(_) => AnnotmcStatus::Precondition,
        Error::Contract(_) => AnnotmcStatus::Contract,
    }
}

fn fail(status: AnnotmcStatus, msg: &str) -> AnnotmcStatus {
    set_error(msg);
    status
}

/// Runs `body`, turning library errors and panics into status codes.
fn guarded(body: impl FnOnce() -> Result<(), AnnotmcStatus>) -> AnnotmcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => AnnotmcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(AnnotmcStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: annotmc::Result<T>) -> Result<T, AnnotmcStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, AnnotmcStatus> {
    if p.is_null() {
        return Err(fail(AnnotmcStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(AnnotmcStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, AnnotmcStatus> {
    p.as_mut()
        .ok_or_else(|| fail(AnnotmcStatus::NullPointer, "null output pointer"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, AnnotmcStatus> {
    p.as_ref()
        .ok_or_else(|| fail(AnnotmcStatus::NullPointer, "null handle"))
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn annotmc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn annotmc_status_name(status: AnnotmcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AnnotmcStatus::Ok => c"ok",
        AnnotmcStatus::NullPointer => c"null pointer",
        AnnotmcStatus::InvalidUtf8 => c"invalid utf-8",
        AnnotmcStatus::Parse => c"parse error",
        AnnotmcStatus::Syntax => c"syntax error",
        AnnotmcStatus::Scope => c"scope error",
        AnnotmcStatus::Semantic => c"semantic error",
        AnnotmcStatus::Envelope => c"envelope exceeded",
        AnnotmcStatus::Precondition => c"precondition failed",
        AnnotmcStatus::Contract => c"contract violated",
        AnnotmcStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Parses a graph file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn annotmc_graph_parse(
    text_ptr: *const c_char,
    out: *mut *mut AnnotmcGraph,
) -> AnnotmcStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        let g = lib(parse_graph(text(text_ptr)?))?;
        *out = Box::into_raw(Box::new(AnnotmcGraph { inner: g }));
        Ok(())
    })
}

/// Generates a graph family member, e.g. `"outer_grid"` with `k = 3`.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn annotmc_graph_generate(
    family: *const c_char,
    k: usize,
    out: *mut *mut AnnotmcGraph,
) -> AnnotmcStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        let ag = lib(generate(lib(Family::parse(text(family)?, k))?))?;
        let g = lib(BoundariedGraph::new(ag.graph, ag.annot, Vec::new()))?;
        *out = Box::into_raw(Box::new(AnnotmcGraph { inner: g }));
        Ok(())
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn annotmc_graph_free(g: *mut AnnotmcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn annotmc_graph_vertex_count(g: *const AnnotmcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.graph.n())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn annotmc_graph_edge_count(g: *const AnnotmcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.graph.edge_count())
}

/// Replaces the annotation by the vertices with the given ids.
///
/// # Safety
/// `g` must be a live graph handle and `ids` must point to `len` values
/// (it may be NULL when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn annotmc_graph_set_annotation(
    g: *mut AnnotmcGraph,
    ids: *const u32,
    len: usize,
) -> AnnotmcStatus {
    guarded(|| {
        let g = out_ptr(g)?;
        let ids: &[u32] = if len == 0 {
            &[]
        } else if ids.is_null() {
            return Err(fail(AnnotmcStatus::NullPointer, "null id array"));
        } else {
            std::slice::from_raw_parts(ids, len)
        };
        let mut annot = VertexSet::EMPTY;
        for &id in ids {
            match g.inner.graph.index_of(id) {
                Some(v) => annot.insert(v),
                None => return Err(fail(AnnotmcStatus::Semantic, &format!("unknown vertex {id}"))),
            }
        }
        g.inner.annot = annot;
        Ok(())
    })
}

/// The graph in file form; release with [`annotmc_string_free`]. NULL on failure.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn annotmc_graph_print(g: *const AnnotmcGraph) -> *mut c_char {
    match g.as_ref() {
        Some(g) => CString::new(print_graph(&g.inner)).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error("null handle");
            ptr::null_mut()
        }
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn annotmc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a formula. Free variables must be listed in `free`, a
/// space-separated list of names that may be NULL for closed formulas.
///
/// # Safety
/// `text` must be a NUL-terminated string, `free` NULL or a NUL-terminated
/// string, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn annotmc_formula_parse(
    text_ptr: *const c_char,
    free: *const c_char,
    out: *mut *mut AnnotmcFormula,
) -> AnnotmcStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        let free: Vec<&str> = if free.is_null() {
            Vec::new()
        } else {
            text(free)?.split_whitespace().collect()
        };
        let f = lib(parse_formula_with_free(text(text_ptr)?.trim(), &free))?;
        *out = Box::into_raw(Box::new(AnnotmcFormula { inner: f }));
        Ok(())
    })
}

/// Releases a formula. NULL is ignored.
///
/// # Safety
/// `f` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn annotmc_formula_free(f: *mut AnnotmcFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Evaluates `f` on `g`. The annotation is visible as the color `annot`;
/// `env` holds bindings such as `"x=3 X=1,2"` and may be NULL.
///
/// # Safety
/// `g` and `f` must be live handles, `env` NULL or a NUL-terminated string,
/// and `verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn annotmc_evaluate(
    g: *const AnnotmcGraph,
    f: *const AnnotmcFormula,
    env: *const c_char,
    verdict: *mut bool,
) -> AnnotmcStatus {
    guarded(|| {
        let (g, f, verdict) = (handle(g)?, handle(f)?, out_ptr(verdict)?);
        let colored = g.inner.colored_graph();
        let env = if env.is_null() {
            Environment::new()
        } else {
            lib(Environment::parse(text(env)?, &colored))?
        };
        *verdict = lib(evaluate(&colored, &f.inner, &env))?;
        Ok(())
    })
}

/// Computes a parameter (`"ttw"`, `"bog"`, ...) of the annotated graph.
///
/// # Safety
/// `g` must be a live handle, `kind` a NUL-terminated string and `value` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn annotmc_param(
    g: *const AnnotmcGraph,
    kind: *const c_char,
    value: *mut usize,
) -> AnnotmcStatus {
    guarded(|| {
        let (g, value) = (handle(g)?, out_ptr(value)?);
        let kind = lib(ParamKind::parse(text(kind)?))?;
        *value = lib(params::value(kind, &g.inner.graph, g.inner.annot))?;
        Ok(())
    })
}
