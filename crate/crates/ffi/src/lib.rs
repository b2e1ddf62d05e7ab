//! C interface to `lastree`.
//!
//! Graphs and trees are opaque handles owned by the caller and released with
//! the matching `_free` function. Every fallible call returns a
//! [`LastreeStatus`]; on failure [`lastree_last_error_message`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lastree::graph::{parse_graph, Graph, GraphFile};
use lastree::last::find_last;
use lastree::min_spt::min_weight_spt;
use lastree::output::tree_to_json;
use lastree::parallel::parallel_last;
use lastree::trees::{minimum_spanning_tree, shortest_path_tree, RootedTree};
use lastree::weight::{Scalar, Weight};
use lastree::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastreeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotConnected = 4,
    InexactWeights = 5,
    TooLarge = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// A parsed graph.
pub struct LastreeGraph {
    inner: GraphFile,
}

enum TreeKind {
    Exact(RootedTree<u64>),
    Float(RootedTree<f64>),
}

/// A rooted spanning tree.
pub struct LastreeTree {
    inner: TreeKind,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LastreeStatus {
    match e {
        Error::Parse { .. } => LastreeStatus::Parse,
        Error::NotConnected { .. } => LastreeStatus::NotConnected,
        Error::InexactWeights => LastreeStatus::InexactWeights,
        Error::TooLarge(_) => LastreeStatus::TooLarge,
        Error::Invariant(_) => LastreeStatus::Internal,
        _ => LastreeStatus::InvalidArgument,
    }
}

fn fail(status: LastreeStatus, message: impl Into<String>) -> LastreeStatus {
    set_error(message.into());
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guarded(f: impl FnOnce() -> Result<(), LastreeStatus>) -> LastreeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LastreeStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(LastreeStatus::Internal, "panic inside lastree"),
    }
}

fn lib_err(e: Error) -> LastreeStatus {
    fail(status_of(&e), e.to_string())
}

fn root_of<W: Weight>(g: &Graph<W>, root: i64) -> Result<usize, LastreeStatus> {
    let requested = if root < 0 {
        g.root().or(Some(0))
    } else {
        Some(root as usize)
    };
    g.resolve_root(requested).map_err(lib_err)
}

fn alpha_of(num: i64, den: i64) -> Result<Scalar, LastreeStatus> {
    if den <= 0 {
        return Err(fail(
            LastreeStatus::InvalidArgument,
            "alpha denominator must be positive",
        ));
    }
    Ok(Scalar::ratio(num as i128, den as i128))
}

/// # Safety
/// `g` must be null or a handle from [`lastree_graph_parse`].
unsafe fn graph_ref<'a>(g: *const LastreeGraph) -> Result<&'a LastreeGraph, LastreeStatus> {
    g.as_ref()
        .ok_or_else(|| fail(LastreeStatus::NullPointer, "graph handle is null"))
}

/// # Safety
/// `t` must be null or a live tree handle.
unsafe fn tree_ref<'a>(t: *const LastreeTree) -> Result<&'a LastreeTree, LastreeStatus> {
    t.as_ref()
        .ok_or_else(|| fail(LastreeStatus::NullPointer, "tree handle is null"))
}

fn store<T>(out: *mut *mut T, value: T) -> Result<(), LastreeStatus> {
    if out.is_null() {
        return Err(fail(LastreeStatus::NullPointer, "output pointer is null"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lastree_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a graph in the text format of the `lastree` CLI.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_graph_parse(text: *const c_char, out: *mut *mut LastreeGraph) -> LastreeStatus {
    guarded(|| {
        if text.is_null() {
            return Err(fail(LastreeStatus::NullPointer, "text is null"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(LastreeStatus::Parse, "graph text is not UTF-8"))?;
        let inner = parse_graph(text).map_err(lib_err)?;
        store(out, LastreeGraph { inner })
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lastree_graph_free(g: *mut LastreeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn lastree_graph_vertex_count(g: *const LastreeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

fn build_tree(
    g: *const LastreeGraph,
    out: *mut *mut LastreeTree,
    root: i64,
    exact: impl FnOnce(&Graph<u64>, usize) -> lastree::Result<RootedTree<u64>>,
    float: impl FnOnce(&Graph<f64>, usize) -> lastree::Result<RootedTree<f64>>,
) -> LastreeStatus {
    guarded(|| {
        let g = unsafe { graph_ref(g)? };
        let inner = match &g.inner {
            GraphFile::Exact(g) => TreeKind::Exact(exact(g, root_of(g, root)?).map_err(lib_err)?),
            GraphFile::Float(g) => TreeKind::Float(float(g, root_of(g, root)?).map_err(lib_err)?),
        };
        store(out, LastreeTree { inner })
    })
}

fn last_tree<W: Weight>(g: &Graph<W>, root: usize, alpha: &Scalar, parallel: bool) -> lastree::Result<RootedTree<W>> {
    let t_m = minimum_spanning_tree(g, root)?;
    let t_s = shortest_path_tree(g, root)?;
    if parallel {
        Ok(parallel_last(&t_m, &t_s, root, alpha, false)?.tree)
    } else {
        find_last(&t_m, &t_s, root, alpha)
    }
}

fn last_common(
    g: *const LastreeGraph,
    root: i64,
    alpha_num: i64,
    alpha_den: i64,
    parallel: bool,
    out: *mut *mut LastreeTree,
) -> LastreeStatus {
    let alpha = match alpha_of(alpha_num, alpha_den) {
        Ok(a) => a,
        Err(s) => return s,
    };
    build_tree(
        g,
        out,
        root,
        |g, r| last_tree(g, r, &alpha, parallel),
        |g, r| last_tree(g, r, &alpha, parallel),
    )
}

/// Builds an (α, 1 + 2/(α-1))-LAST with `α = alpha_num / alpha_den > 1`.
/// A negative `root` selects the graph's recorded root (or 0).
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_find_last(
    g: *const LastreeGraph,
    root: i64,
    alpha_num: i64,
    alpha_den: i64,
    out: *mut *mut LastreeTree,
) -> LastreeStatus {
    last_common(g, root, alpha_num, alpha_den, false, out)
}

/// Same contract as [`lastree_find_last`], using the emulation of the
/// parallel construction.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_parallel_last(
    g: *const LastreeGraph,
    root: i64,
    alpha_num: i64,
    alpha_den: i64,
    out: *mut *mut LastreeTree,
) -> LastreeStatus {
    last_common(g, root, alpha_num, alpha_den, true, out)
}

/// Minimum-weight shortest-path tree; exact-weight graphs only.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_min_spt(
    g: *const LastreeGraph,
    root: i64,
    out: *mut *mut LastreeTree,
) -> LastreeStatus {
    build_tree(
        g,
        out,
        root,
        |g, r| min_weight_spt(g, r)?.to_tree(),
        |_, _| Err(Error::InexactWeights),
    )
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_mst(g: *const LastreeGraph, root: i64, out: *mut *mut LastreeTree) -> LastreeStatus {
    build_tree(
        g,
        out,
        root,
        minimum_spanning_tree,
        minimum_spanning_tree,
    )
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_spt(g: *const LastreeGraph, root: i64, out: *mut *mut LastreeTree) -> LastreeStatus {
    build_tree(
        g,
        out,
        root,
        shortest_path_tree,
        shortest_path_tree,
    )
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lastree_tree_free(t: *mut LastreeTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn lastree_tree_vertex_count(t: *const LastreeTree) -> usize {
    match t.as_ref().map(|t| &t.inner) {
        Some(TreeKind::Exact(t)) => t.n(),
        Some(TreeKind::Float(t)) => t.n(),
        None => 0,
    }
}

/// Copies parent ids into `buf` (`-1` at the root). `len` must be at least
/// the vertex count.
///
/// # Safety
/// `buf` must point to `len` writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn lastree_tree_parents(t: *const LastreeTree, buf: *mut i64, len: usize) -> LastreeStatus {
    guarded(|| {
        let t = tree_ref(t)?;
        let parents = match &t.inner {
            TreeKind::Exact(t) => t.parents().to_vec(),
            TreeKind::Float(t) => t.parents().to_vec(),
        };
        if buf.is_null() {
            return Err(fail(LastreeStatus::NullPointer, "buffer is null"));
        }
        if len < parents.len() {
            return Err(fail(
                LastreeStatus::BufferTooSmall,
                format!("buffer holds {len} entries, tree has {}", parents.len()),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(buf, len);
        for (slot, p) in dst.iter_mut().zip(parents) {
            *slot = p.map_or(-1, |p| p as i64);
        }
        Ok(())
    })
}

/// Total tree weight as a double (exact weights are converted).
///
/// # Safety
/// `t` must be a live tree handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_tree_weight(t: *const LastreeTree, out: *mut f64) -> LastreeStatus {
    guarded(|| {
        let t = tree_ref(t)?;
        if out.is_null() {
            return Err(fail(LastreeStatus::NullPointer, "output pointer is null"));
        }
        *out = match &t.inner {
            TreeKind::Exact(t) => t.weight() as f64,
            TreeKind::Float(t) => t.weight(),
        };
        Ok(())
    })
}

/// Total tree weight of an exact-weight tree.
///
/// # Safety
/// `t` must be a live tree handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_tree_weight_exact(t: *const LastreeTree, out: *mut u64) -> LastreeStatus {
    guarded(|| {
        let t = tree_ref(t)?;
        if out.is_null() {
            return Err(fail(LastreeStatus::NullPointer, "output pointer is null"));
        }
        match &t.inner {
            TreeKind::Exact(t) => {
                *out = t.weight();
                Ok(())
            }
            TreeKind::Float(_) => Err(fail(LastreeStatus::InexactWeights, "tree has float weights")),
        }
    })
}

/// Tree as JSON (`root`, `parent`, `dist`, `weight`). Release the string with
/// [`lastree_string_free`].
///
/// # Safety
/// `t` must be a live tree handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lastree_tree_to_json(t: *const LastreeTree, out: *mut *mut c_char) -> LastreeStatus {
    guarded(|| {
        let t = tree_ref(t)?;
        if out.is_null() {
            return Err(fail(LastreeStatus::NullPointer, "output pointer is null"));
        }
        let json = match &t.inner {
            TreeKind::Exact(t) => tree_to_json(t),
            TreeKind::Float(t) => tree_to_json(t),
        };
        *out = CString::new(json).expect("JSON has no nul bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lastree_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
