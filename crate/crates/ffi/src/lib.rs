//! C ABI for `meshtree`.
//!
//! Graphs and complexes cross the boundary as opaque handles. Every fallible
//! call returns an [`MtStatus`]; on failure, [`mt_last_error_message`] holds
//! a description for the calling thread. Strings returned through `out`
//! parameters are owned by the caller and released with [`mt_string_free`].
//! Integers that may exceed 64 bits are returned as decimal strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use meshtree::cli::{self, CwCheck, Outcome};
use meshtree::cw::{CwComplex, ForestCw};
use meshtree::mesh::mesh_matrix;
use meshtree::torsion::lattice_index;
use meshtree::{EdgeSubset, Error, MeshContext, Multigraph};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    NotConnected = 5,
    InvalidTree = 6,
    /// The report was produced but an identity it checks failed.
    VerificationFailed = 7,
    TooLarge = 8,
    Internal = 9,
}

/// Reports available through [`mt_graph_report_json`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtReport {
    Mesh = 0,
    Charpoly = 1,
    Verify = 2,
    Kirchhoff = 3,
    Allminors = 4,
    Torsion = 5,
    Flux = 6,
    CountTrees = 7,
}

/// Identities available through [`mt_complex_check_json`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtCwCheck {
    Star = 0,
    Higher = 1,
    Integral = 2,
}

/// Opaque multigraph handle.
pub struct MtGraph(Multigraph);

/// Opaque CW complex handle.
pub struct MtComplex(CwComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn status_of(e: &Error) -> MtStatus {
    match e {
        Error::Parse { .. } => MtStatus::Parse,
        Error::NotConnected => MtStatus::NotConnected,
        Error::InvalidTree(_) => MtStatus::InvalidTree,
        Error::TooManyCells { .. } => MtStatus::TooLarge,
        Error::Inconsistent(_) => MtStatus::VerificationFailed,
        _ => MtStatus::InvalidInput,
    }
}

fn fail(status: MtStatus, message: &str) -> MtStatus {
    set_error(message);
    status
}

/// Runs `body`, mapping library errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<MtStatus, (MtStatus, String)>) -> MtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => fail(status, &message),
        Err(_) => fail(MtStatus::Internal, "panic inside meshtree"),
    }
}

fn lib_err(e: Error) -> (MtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (MtStatus, String) {
    (MtStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, (MtStatus, String)> {
    if text.is_null() {
        return Err(null());
    }
    // SAFETY: the caller passes a nul-terminated string.
    unsafe { CStr::from_ptr(text) }.to_str().map_err(|_| (MtStatus::InvalidUtf8, "input is not UTF-8".into()))
}

unsafe fn read_ids(ids: *const usize, len: usize) -> Result<Option<Vec<usize>>, (MtStatus, String)> {
    if ids.is_null() {
        return if len == 0 { Ok(None) } else { Err(null()) };
    }
    // SAFETY: the caller passes `len` readable elements.
    Ok(Some(unsafe { std::slice::from_raw_parts(ids, len) }.to_vec()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (MtStatus, String)> {
    let c = CString::new(s).map_err(|_| (MtStatus::Internal, "string contains nul".into()))?;
    // SAFETY: `out` was checked non-null by the caller.
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn graph_ref<'a>(g: *const MtGraph) -> Result<&'a Multigraph, (MtStatus, String)> {
    // SAFETY: non-null handles come from `mt_graph_*` constructors.
    unsafe { g.as_ref() }.map(|h| &h.0).ok_or_else(null)
}

unsafe fn complex_ref<'a>(x: *const MtComplex) -> Result<&'a CwComplex, (MtStatus, String)> {
    // SAFETY: non-null handles come from `mt_complex_parse`.
    unsafe { x.as_ref() }.map(|h| &h.0).ok_or_else(null)
}

fn context(g: &Multigraph, tree: Option<Vec<usize>>) -> Result<MeshContext, (MtStatus, String)> {
    match tree {
        Some(ids) => {
            let tree: EdgeSubset = ids.into_iter().collect();
            g.check_subset(&tree).map_err(lib_err)?;
            MeshContext::new(g.clone(), tree)
        }
        None => MeshContext::with_default_tree(g.clone()),
    }
    .map_err(lib_err)
}

unsafe fn emit(outcome: Outcome, out: *mut *mut c_char) -> Result<MtStatus, (MtStatus, String)> {
    // SAFETY: forwarded from the caller.
    unsafe { write_string(out, outcome.report.to_string()) }?;
    if outcome.holds {
        Ok(MtStatus::Ok)
    } else {
        set_error("a checked identity does not hold");
        Ok(MtStatus::VerificationFailed)
    }
}

/// Parses a graph in the `v n` / `e tail head` text format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_parse(text: *const c_char, out: *mut *mut MtGraph) -> MtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let g: Multigraph = unsafe { read_str(text) }?.parse().map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(MtGraph(g))) };
        Ok(MtStatus::Ok)
    })
}

/// Builds a graph from parallel arrays of tails and heads; edge `i` gets id `i`.
///
/// # Safety
/// `tails` and `heads` must hold `edge_count` elements; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_new(
    vertex_count: usize,
    tails: *const usize,
    heads: *const usize,
    edge_count: usize,
    out: *mut *mut MtGraph,
) -> MtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let tails = unsafe { read_ids(tails, edge_count) }?.unwrap_or_default();
        // SAFETY: forwarded from the caller.
        let heads = unsafe { read_ids(heads, edge_count) }?.unwrap_or_default();
        let g = Multigraph::new(vertex_count, tails.into_iter().zip(heads)).map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(MtGraph(g))) };
        Ok(MtStatus::Ok)
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_free(g: *mut MtGraph) {
    if !g.is_null() {
        // SAFETY: the handle was created by `Box::into_raw`.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_vertex_count(g: *const MtGraph) -> usize {
    // SAFETY: forwarded from the caller.
    unsafe { g.as_ref() }.map_or(0, |h| h.0.vertex_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mt_graph_edge_count(g: *const MtGraph) -> usize {
    // SAFETY: forwarded from the caller.
    unsafe { g.as_ref() }.map_or(0, |h| h.0.edge_count())
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mt_count_spanning_trees(g: *const MtGraph, out: *mut u64) -> MtStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null());
        }
        let count = u64::try_from(g.count_spanning_trees()).map_err(|_| (MtStatus::TooLarge, "count overflows".into()))?;
        // SAFETY: checked non-null above.
        unsafe { *out = count };
        Ok(MtStatus::Ok)
    })
}

/// `det Mesh(G, T₀)` as a decimal string. A null `tree` selects the
/// canonical spanning tree.
///
/// # Safety
/// `g` must be live, `tree` null or `tree_len` readable ids, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mt_mesh_determinant(
    g: *const MtGraph,
    tree: *const usize,
    tree_len: usize,
    out: *mut *mut c_char,
) -> MtStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let ctx = context(g, unsafe { read_ids(tree, tree_len) }?)?;
        let det = mesh_matrix(&ctx).det_bareiss().map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { write_string(out, det.to_string()) }?;
        Ok(MtStatus::Ok)
    })
}

/// Order of the lattice quotient as a decimal string.
///
/// # Safety
/// As for [`mt_mesh_determinant`].
#[no_mangle]
pub unsafe extern "C" fn mt_lattice_index(
    g: *const MtGraph,
    tree: *const usize,
    tree_len: usize,
    out: *mut *mut c_char,
) -> MtStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let ctx = context(g, unsafe { read_ids(tree, tree_len) }?)?;
        let index = lattice_index(&ctx).map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { write_string(out, index.to_string()) }?;
        Ok(MtStatus::Ok)
    })
}

/// The same JSON report the command line prints, without the `command` and
/// `input` keys. Returns `VerificationFailed` (with `out` set) when a checked
/// identity fails.
///
/// # Safety
/// As for [`mt_mesh_determinant`].
#[no_mangle]
pub unsafe extern "C" fn mt_graph_report_json(
    g: *const MtGraph,
    report: MtReport,
    tree: *const usize,
    tree_len: usize,
    out: *mut *mut c_char,
) -> MtStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let tree = unsafe { read_ids(tree, tree_len) }?;
        let outcome = match report {
            MtReport::Kirchhoff => cli::kirchhoff_json(g),
            MtReport::Allminors => cli::allminors_json(g),
            MtReport::CountTrees => Ok(cli::count_trees_json(g)),
            other => {
                let ctx = context(g, tree)?;
                match other {
                    MtReport::Mesh => cli::mesh_json(&ctx),
                    MtReport::Charpoly => cli::charpoly_json(&ctx),
                    MtReport::Verify => cli::verify_json(&ctx, false),
                    MtReport::Torsion => cli::torsion_json(&ctx),
                    _ => cli::flux_json(&ctx, None),
                }
            }
        }
        .map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { emit(outcome, out) }
    })
}

/// `ST(G, H)` report for the subgraph with the given edge ids.
///
/// # Safety
/// `g` must be live, `subgraph` null or `len` readable ids, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mt_stpoly_json(
    g: *const MtGraph,
    subgraph: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> MtStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let h: EdgeSubset = unsafe { read_ids(subgraph, len) }?.unwrap_or_default().into_iter().collect();
        let outcome = cli::stpoly_json(g, &h).map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { emit(outcome, out) }
    })
}

/// Parses a complex in the `dim d` / `boundary k rows cols` text format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mt_complex_parse(text: *const c_char, out: *mut *mut MtComplex) -> MtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let x: CwComplex = unsafe { read_str(text) }?.parse().map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(MtComplex(x))) };
        Ok(MtStatus::Ok)
    })
}

/// # Safety
/// `x` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mt_complex_free(x: *mut MtComplex) {
    if !x.is_null() {
        // SAFETY: the handle was created by `Box::into_raw`.
        drop(unsafe { Box::from_raw(x) });
    }
}

/// Torsion order of `H_{d−1}` of the subcomplex keeping the listed top
/// cells, as a decimal string. A null `cells` keeps every top cell.
///
/// # Safety
/// `x` must be live, `cells` null or `len` readable indices, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mt_complex_torsion(
    x: *const MtComplex,
    cells: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> MtStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let x = unsafe { complex_ref(x) }?;
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let cells = unsafe { read_ids(cells, len) }?;
        let t = x.torsion_order(cells.as_deref()).map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { write_string(out, t.to_string()) }?;
        Ok(MtStatus::Ok)
    })
}

/// JSON report of a forest identity relative to the spanning forest `forest`.
///
/// # Safety
/// `x` must be live, `forest` null or `len` readable indices, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mt_complex_check_json(
    x: *const MtComplex,
    forest: *const usize,
    len: usize,
    check: MtCwCheck,
    out: *mut *mut c_char,
) -> MtStatus {
    guard(|| {
        // SAFETY: forwarded from the caller.
        let x = unsafe { complex_ref(x) }?;
        if out.is_null() {
            return Err(null());
        }
        // SAFETY: forwarded from the caller.
        let forest: ForestCw = unsafe { read_ids(forest, len) }?.unwrap_or_default().into_iter().collect();
        let check = match check {
            MtCwCheck::Star => CwCheck::Star,
            MtCwCheck::Higher => CwCheck::Higher,
            MtCwCheck::Integral => CwCheck::Integral,
        };
        let outcome = cli::cw_json(x, &forest, check).map_err(lib_err)?;
        // SAFETY: checked non-null above.
        unsafe { emit(outcome, out) }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mt_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string was created by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the last failure on this thread; empty if none. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn mt_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Clears the last error message.
#[no_mangle]
pub extern "C" fn mt_clear_error() {
    set_error("");
}
