//! Gaussian graphical model selection toolkit.
//!
//! The centerpiece is the Graphical Neighbour Information (GNI) criterion:
//! a candidate adjacency matrix is scored by how much a neighbor-mean
//! predictor beats the expected performance of a randomly permuted predictor
//! of the same complexity, evaluated on a standardized bootstrap matrix of
//! absolute observation differences. The expectation over permutations has
//! a closed form, so scoring a whole glasso path costs two elementwise
//! passes per candidate.
//!
//! The crate also ships the pieces needed to benchmark the criterion:
//! a graphical lasso path solver, the EBIC / StARS / RIC baseline selectors,
//! synthetic graph and Gaussian data generators, recovery metrics and a
//! deterministic benchmark harness. The `gni` binary exposes all of it on
//! the command line.

pub mod baselines;
pub mod bench;
pub mod config;
pub mod dataset;
pub mod error;
pub mod glasso;
pub mod gni;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod seed;
pub mod synth;

pub use dataset::{sample_covariance, standardize, Dataset};
pub use error::{Error, Result};
pub use glasso::{
    adjacency_from_precision, gaussian_loglik, glasso_fit, glasso_path, lambda_grid,
    CandidatePath, GlassoFit, GlassoSettings, LambdaGrid,
};
pub use gni::{
    build_diff_matrix, default_m, expected_mse_random, gni_score, mse_model, neighbor_predict,
    select_gni, DiffMatrix, GniScore, GniSelection,
};
pub use graph::{neighbor_weights, AdjacencyGraph, NeighborWeights};
pub use matrix::{MatrixRole, SymMatrix};
pub use metrics::{edge_confusion, metrics, oracle_select, pearson_correlation, ConfusionCounts};
pub use synth::{
    covariance_from_precision, gen_hub_graph, gen_random_graph, precision_from_graph,
    sample_gaussian, GraphKind, GraphSpec, PrecisionParams,
};
