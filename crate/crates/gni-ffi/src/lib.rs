//! C ABI for the GNI model selection toolkit.
//!
//! All objects are opaque handles created and freed by this library; every
//! fallible call returns a [`GniStatus`] and leaves a human-readable
//! message retrievable with [`gni_last_error_message`] on failure. Matrices
//! cross the boundary as row-major buffers.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gni_core::baselines::{select_ebic, select_ric, select_stars, RicParams, StarsParams};
use gni_core::dataset::{sample_covariance, standardize, Dataset};
use gni_core::error::Error;
use gni_core::glasso::{glasso_path, lambda_grid, CandidatePath, GlassoSettings, LambdaGrid};
use gni_core::gni::{build_diff_matrix, default_m, gni_score, select_gni};
use gni_core::graph::AdjacencyGraph;
use gni_core::metrics::{edge_confusion, metrics};
use gni_core::synth::{
    covariance_from_precision, precision_from_graph, sample_gaussian, GraphKind, GraphSpec,
    PrecisionParams,
};
use nalgebra::DMatrix;

/// Result of every fallible call in this API.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GniStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NumericFailure = 3,
    Panic = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(error: &Error) -> GniStatus {
    match error {
        Error::InvalidArgument(_)
        | Error::Config(_)
        | Error::DimensionMismatch(_)
        | Error::IndexOutOfRange { .. }
        | Error::NotStandardized
        | Error::Parse { .. } => GniStatus::InvalidArgument,
        _ => GniStatus::NumericFailure,
    }
}

fn run_ffi<F: FnOnce() -> Result<GniStatus, Error>>(body: F) -> GniStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(error)) => {
            set_error(&error.to_string());
            status_of(&error)
        }
        Err(_) => {
            set_error("internal panic");
            GniStatus::Panic
        }
    }
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gni_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// An observation matrix (rows are observations, columns are variables).
pub struct GniDataset {
    data: Dataset,
}

/// A symmetric binary adjacency matrix with zero diagonal.
pub struct GniGraph {
    graph: AdjacencyGraph,
}

/// A glasso candidate path plus the grid and sample size that produced it.
pub struct GniPath {
    path: CandidatePath,
    grid: LambdaGrid,
    n: usize,
}

/// Wraps a row-major n x p buffer of finite values into a dataset handle.
///
/// # Safety
/// `values` must point to `n * p` readable doubles and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn gni_dataset_create(
    values: *const f64,
    n: usize,
    p: usize,
    out: *mut *mut GniDataset,
) -> GniStatus {
    if values.is_null() || out.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let slice = std::slice::from_raw_parts(values, n.saturating_mul(p));
        let matrix = DMatrix::from_row_slice(n, p, slice);
        let data = Dataset::new(matrix)?;
        ptr::write(out, Box::into_raw(Box::new(GniDataset { data })));
        Ok(GniStatus::Ok)
    })
}

/// Generates a synthetic dataset and its ground-truth graph, mirroring the
/// CLI `generate` command. `edge_prob <= 0` and `hub_count == 0` select the
/// defaults (3/p and ceil(p/20)).
///
/// # Safety
/// `out_data` and `out_truth` must be writable pointer slots.
#[no_mangle]
pub unsafe extern "C" fn gni_dataset_generate(
    hub: bool,
    p: usize,
    n: usize,
    seed: u64,
    edge_prob: f64,
    hub_count: usize,
    out_data: *mut *mut GniDataset,
    out_truth: *mut *mut GniGraph,
) -> GniStatus {
    if out_data.is_null() || out_truth.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let spec = GraphSpec {
            kind: if hub { GraphKind::Hub } else { GraphKind::Random },
            p,
            edge_prob: (edge_prob > 0.0).then_some(edge_prob),
            hub_count: (hub_count > 0).then_some(hub_count),
            seed,
        };
        let truth = spec.generate()?;
        let theta = precision_from_graph(&truth, &PrecisionParams::default())?;
        let sigma = covariance_from_precision(&theta)?;
        let data = sample_gaussian(&sigma, n, seed)?;
        ptr::write(out_data, Box::into_raw(Box::new(GniDataset { data })));
        ptr::write(out_truth, Box::into_raw(Box::new(GniGraph { graph: truth })));
        Ok(GniStatus::Ok)
    })
}

/// # Safety
/// `dataset` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn gni_dataset_free(dataset: *mut GniDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

#[no_mangle]
pub extern "C" fn gni_dataset_rows(dataset: *const GniDataset) -> usize {
    unsafe { dataset.as_ref() }.map_or(0, |d| d.data.n())
}

#[no_mangle]
pub extern "C" fn gni_dataset_cols(dataset: *const GniDataset) -> usize {
    unsafe { dataset.as_ref() }.map_or(0, |d| d.data.p())
}

/// Wraps a row-major p x p 0/1 buffer into a graph handle, validating
/// symmetry and the zero diagonal.
///
/// # Safety
/// `entries` must point to `p * p` readable bytes and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn gni_graph_create(
    entries: *const u8,
    p: usize,
    out: *mut *mut GniGraph,
) -> GniStatus {
    if entries.is_null() || out.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let slice = std::slice::from_raw_parts(entries, p.saturating_mul(p));
        let graph = AdjacencyGraph::from_entries(p, slice)?;
        ptr::write(out, Box::into_raw(Box::new(GniGraph { graph })));
        Ok(GniStatus::Ok)
    })
}

/// # Safety
/// `graph` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn gni_graph_free(graph: *mut GniGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

#[no_mangle]
pub extern "C" fn gni_graph_vertex_count(graph: *const GniGraph) -> usize {
    unsafe { graph.as_ref() }.map_or(0, |g| g.graph.p())
}

#[no_mangle]
pub extern "C" fn gni_graph_edge_count(graph: *const GniGraph) -> usize {
    unsafe { graph.as_ref() }.map_or(0, |g| g.graph.edge_count())
}

/// Copies the adjacency matrix into a caller-provided row-major p x p
/// buffer of 0/1 bytes.
///
/// # Safety
/// `out` must point to `p * p` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn gni_graph_entries(graph: *const GniGraph, out: *mut u8) -> GniStatus {
    let Some(g) = (unsafe { graph.as_ref() }) else {
        set_error("null graph handle");
        return GniStatus::NullPointer;
    };
    if out.is_null() {
        set_error("null output buffer");
        return GniStatus::NullPointer;
    }
    let entries = g.graph.to_entries();
    unsafe { ptr::copy_nonoverlapping(entries.as_ptr(), out, entries.len()) };
    GniStatus::Ok
}

/// GNI of one graph on one dataset: builds the bootstrap difference matrix
/// (`m == 0` selects the default min(n^2, 10000)) and scores the graph.
///
/// # Safety
/// All handles must be live; `out_score` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gni_score_graph(
    dataset: *const GniDataset,
    graph: *const GniGraph,
    m: usize,
    seed: u64,
    out_score: *mut f64,
) -> GniStatus {
    if dataset.is_null() || graph.is_null() || out_score.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let d = &(*dataset).data;
        let g = &(*graph).graph;
        let std = standardize(d)?;
        let m = if m == 0 { default_m(std.n()) } else { m };
        let xb = build_diff_matrix(&std, m, seed)?;
        let score = gni_score(&xb, g, "ffi")?;
        ptr::write(out_score, score.total);
        Ok(GniStatus::Ok)
    })
}

/// Fits a glasso candidate path over a log-spaced lambda grid.
///
/// # Safety
/// `dataset` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gni_path_fit(
    dataset: *const GniDataset,
    nlambda: usize,
    lambda_ratio: f64,
    out: *mut *mut GniPath,
) -> GniStatus {
    if dataset.is_null() || out.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let d = &(*dataset).data;
        let std = standardize(d)?;
        let s = sample_covariance(&std)?;
        let grid = lambda_grid(&s, nlambda, lambda_ratio)?;
        let path = glasso_path(&s, std.n(), &grid, &GlassoSettings::default(), "ffi")?;
        ptr::write(
            out,
            Box::into_raw(Box::new(GniPath {
                path,
                grid,
                n: std.n(),
            })),
        );
        Ok(GniStatus::Ok)
    })
}

/// # Safety
/// `path` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn gni_path_free(path: *mut GniPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

#[no_mangle]
pub extern "C" fn gni_path_len(path: *const GniPath) -> usize {
    unsafe { path.as_ref() }.map_or(0, |p| p.path.len())
}

/// Lambda of one candidate; NaN for an out-of-range index.
#[no_mangle]
pub extern "C" fn gni_path_lambda(path: *const GniPath, index: usize) -> f64 {
    unsafe { path.as_ref() }
        .and_then(|p| p.path.fits.get(index))
        .map_or(f64::NAN, |f| f.lambda)
}

/// Clones one candidate adjacency out of the path.
///
/// # Safety
/// `path` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gni_path_adjacency(
    path: *const GniPath,
    index: usize,
    out: *mut *mut GniGraph,
) -> GniStatus {
    if path.is_null() || out.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let p = &*path;
        let graph = p
            .path
            .adjacencies
            .get(index)
            .ok_or_else(|| Error::IndexOutOfRange {
                index,
                len: p.path.len(),
            })?
            .clone();
        ptr::write(out, Box::into_raw(Box::new(GniGraph { graph })));
        Ok(GniStatus::Ok)
    })
}

/// GNI selection over the path (`m == 0` selects the default).
///
/// # Safety
/// Handles must be live; `out_index` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gni_select_gni(
    dataset: *const GniDataset,
    path: *const GniPath,
    m: usize,
    seed: u64,
    out_index: *mut usize,
) -> GniStatus {
    if dataset.is_null() || path.is_null() || out_index.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let std = standardize(&(*dataset).data)?;
        let m = if m == 0 { default_m(std.n()) } else { m };
        let selection = select_gni(&std, &(*path).path, m, seed)?;
        ptr::write(out_index, selection.selected);
        Ok(GniStatus::Ok)
    })
}

/// EBIC selection over the path.
///
/// # Safety
/// `path` must be live; `out_index` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gni_select_ebic(
    path: *const GniPath,
    gamma: f64,
    out_index: *mut usize,
) -> GniStatus {
    if path.is_null() || out_index.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let p = &*path;
        let index = select_ebic(&p.path, p.n, gamma)?;
        ptr::write(out_index, index);
        Ok(GniStatus::Ok)
    })
}

/// StARS selection over the grid the path was fitted on. `subsample_size ==
/// 0` selects the default rule.
///
/// # Safety
/// Handles must be live; `out_index` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gni_select_stars(
    dataset: *const GniDataset,
    path: *const GniPath,
    beta: f64,
    num_subsamples: usize,
    subsample_size: usize,
    seed: u64,
    out_index: *mut usize,
) -> GniStatus {
    if dataset.is_null() || path.is_null() || out_index.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let std = standardize(&(*dataset).data)?;
        let params = StarsParams {
            beta,
            num_subsamples,
            subsample_size: (subsample_size > 0).then_some(subsample_size),
            seed,
        };
        let result = select_stars(&std, &(*path).grid, &params, &GlassoSettings::default())?;
        ptr::write(out_index, result.selected);
        Ok(GniStatus::Ok)
    })
}

/// RIC selection: a single fit at the permutation-calibrated lambda, which
/// bypasses the candidate path.
///
/// # Safety
/// `dataset` must be live; `out_graph` and `out_lambda` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gni_select_ric(
    dataset: *const GniDataset,
    num_permutations: usize,
    seed: u64,
    out_graph: *mut *mut GniGraph,
    out_lambda: *mut f64,
) -> GniStatus {
    if dataset.is_null() || out_graph.is_null() || out_lambda.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let params = RicParams {
            num_permutations,
            seed,
        };
        let selection = select_ric(&(*dataset).data, &params, &GlassoSettings::default())?;
        ptr::write(out_lambda, selection.fit.lambda);
        ptr::write(
            out_graph,
            Box::into_raw(Box::new(GniGraph {
                graph: selection.adjacency,
            })),
        );
        Ok(GniStatus::Ok)
    })
}

/// Edge-recovery metrics of an estimated graph against a reference graph.
///
/// # Safety
/// Handles must be live; out pointers may be null to skip a field.
#[no_mangle]
pub unsafe extern "C" fn gni_graph_compare(
    estimated: *const GniGraph,
    truth: *const GniGraph,
    out_precision: *mut f64,
    out_recall: *mut f64,
    out_f1: *mut f64,
    out_shd: *mut usize,
) -> GniStatus {
    if estimated.is_null() || truth.is_null() {
        set_error("null pointer argument");
        return GniStatus::NullPointer;
    }
    run_ffi(|| {
        let m = metrics(&edge_confusion(&(*estimated).graph, &(*truth).graph)?);
        if !out_precision.is_null() {
            ptr::write(out_precision, m.precision);
        }
        if !out_recall.is_null() {
            ptr::write(out_recall, m.recall);
        }
        if !out_f1.is_null() {
            ptr::write(out_f1, m.f1);
        }
        if !out_shd.is_null() {
            ptr::write(out_shd, m.shd);
        }
        Ok(GniStatus::Ok)
    })
}
