//! Graphical Neighbour Information: scoring a candidate adjacency matrix by
//! how much better the neighbor-mean predictor does on the standardized
//! bootstrap difference matrix than the expected randomly column-permuted
//! predictor of the same complexity.
//!
//! The expectation over permutations has a closed form (per row it only
//! involves means of entries, squared entries and products), so scoring a
//! graph is two elementwise passes; no permuted models are ever built.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use crate::dataset::{standardize_columns, Dataset};
use crate::error::{Error, Result};
use crate::glasso::CandidatePath;
use crate::graph::AdjacencyGraph;
use crate::seed::rng_from_seed;

/// Default bootstrap sample count: n^2 capped at 10000 to bound memory.
pub fn default_m(n: usize) -> usize {
    (n * n).min(10_000)
}

/// Column-standardized absolute differences between two bootstrap draws of
/// the observations.
#[derive(Debug, Clone)]
pub struct DiffMatrix {
    values: DMatrix<f64>,
    source_n: usize,
    seed: u64,
    degenerate: BTreeSet<usize>,
}

impl DiffMatrix {
    pub fn m(&self) -> usize {
        self.values.nrows()
    }

    pub fn p(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn degenerate_columns(&self) -> &BTreeSet<usize> {
        &self.degenerate
    }
}

/// Draws two index vectors of length m with replacement, takes entrywise
/// absolute differences of the corresponding observation rows and
/// standardizes each column. Rows drawn with identical indices are kept;
/// they contribute zero raw rows.
pub fn build_diff_matrix(data: &Dataset, m: usize, seed: u64) -> Result<DiffMatrix> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "diff matrix needs m >= 2, got {m}"
        )));
    }
    let n = data.n();
    let p = data.p();
    let x = data.values();
    let mut rng = rng_from_seed(seed);
    let first: Vec<usize> = (0..m).map(|_| rng.random_range(0..n)).collect();
    let second: Vec<usize> = (0..m).map(|_| rng.random_range(0..n)).collect();

    let mut values = DMatrix::<f64>::zeros(m, p);
    for r in 0..m {
        let (i1, i2) = (first[r], second[r]);
        for j in 0..p {
            values[(r, j)] = (x[(i1, j)] - x[(i2, j)]).abs();
        }
    }
    let degenerate = standardize_columns(&mut values);
    Ok(DiffMatrix {
        values,
        source_n: n,
        seed,
        degenerate,
    })
}

/// Predicts every column as the mean of its neighbor columns; isolated
/// vertices predict zero (the column mean after standardization).
pub fn neighbor_predict(xb: &DiffMatrix, graph: &AdjacencyGraph) -> Result<DMatrix<f64>> {
    if graph.p() != xb.p() {
        return Err(Error::DimensionMismatch(format!(
            "graph has p={} but diff matrix has p={}",
            graph.p(),
            xb.p()
        )));
    }
    let m = xb.m();
    let p = xb.p();
    let src = xb.values.as_slice();
    let mut out = vec![0.0f64; m * p];
    for w in 0..p {
        let neighbors = graph.neighbors(w)?;
        if neighbors.is_empty() {
            continue;
        }
        let dst = &mut out[w * m..(w + 1) * m];
        for k in neighbors.iter() {
            let col = &src[k * m..(k + 1) * m];
            for (d, s) in dst.iter_mut().zip(col.iter()) {
                *d += *s;
            }
        }
        let scale = 1.0 / neighbors.len() as f64;
        for d in dst.iter_mut() {
            *d *= scale;
        }
    }
    Ok(DMatrix::from_vec(m, p, out))
}

/// Mean squared prediction error over all entries.
pub fn mse_model(predictions: &DMatrix<f64>, xb: &DiffMatrix) -> f64 {
    assert_eq!(
        predictions.shape(),
        xb.values.shape(),
        "prediction and diff matrix shapes must match"
    );
    let total: f64 = predictions
        .iter()
        .zip(xb.values.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    total / (xb.m() * xb.p()) as f64
}

/// Exact expectation of the MSE when the prediction entries of each row are
/// permuted uniformly at random: per row, mean of squared predictions plus
/// mean of squared targets minus twice the product of the two row means.
pub fn expected_mse_random(predictions: &DMatrix<f64>, xb: &DiffMatrix) -> f64 {
    assert_eq!(
        predictions.shape(),
        xb.values.shape(),
        "prediction and diff matrix shapes must match"
    );
    let m = xb.m();
    let p = xb.p();
    let (pred_sq, target_sq, pred_mean, target_mean) = row_moments(predictions, &xb.values);
    let mut total = 0.0;
    for i in 0..m {
        let row = pred_sq[i] / p as f64 + target_sq[i] / p as f64
            - 2.0 * (pred_mean[i] / p as f64) * (target_mean[i] / p as f64);
        total += row;
    }
    total / m as f64
}

fn row_moments(a: &DMatrix<f64>, b: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
    let m = a.nrows();
    let mut a_sq = vec![0.0f64; m];
    let mut b_sq = vec![0.0f64; m];
    let mut a_sum = vec![0.0f64; m];
    let mut b_sum = vec![0.0f64; m];
    for j in 0..a.ncols() {
        let ca = a.column(j);
        let cb = b.column(j);
        for i in 0..m {
            let x = ca[i];
            let y = cb[i];
            a_sq[i] += x * x;
            b_sq[i] += y * y;
            a_sum[i] += x;
            b_sum[i] += y;
        }
    }
    (a_sq, b_sq, a_sum, b_sum)
}

/// GNI of one graph on one diff matrix.
#[derive(Debug, Clone)]
pub struct GniScore {
    /// The criterion value, computed in closed form.
    pub total: f64,
    pub mse_model: f64,
    pub expected_mse_random: f64,
    pub graph_id: String,
}

/// Scores a graph: expected permuted-model MSE minus model MSE, evaluated
/// through the closed form
/// `(2/m) * sum_i [ mean_j(pred*target) - mean_j(pred)*mean_j(target) ]`.
/// The explicit difference is computed alongside for the result fields.
pub fn gni_score(
    xb: &DiffMatrix,
    graph: &AdjacencyGraph,
    graph_id: impl Into<String>,
) -> Result<GniScore> {
    let predictions = neighbor_predict(xb, graph)?;
    let m = xb.m();
    let p = xb.p();

    let mut cross = vec![0.0f64; m];
    let mut pred_sum = vec![0.0f64; m];
    let mut target_sum = vec![0.0f64; m];
    for j in 0..p {
        let cp = predictions.column(j);
        let ct = xb.values.column(j);
        for i in 0..m {
            cross[i] += cp[i] * ct[i];
            pred_sum[i] += cp[i];
            target_sum[i] += ct[i];
        }
    }
    let mut total = 0.0;
    let pf = p as f64;
    for i in 0..m {
        total += cross[i] / pf - (pred_sum[i] / pf) * (target_sum[i] / pf);
    }
    total *= 2.0 / m as f64;

    Ok(GniScore {
        total,
        mse_model: mse_model(&predictions, xb),
        expected_mse_random: expected_mse_random(&predictions, xb),
        graph_id: graph_id.into(),
    })
}

/// Diagnostic decomposition of the GNI into per-vertex contributions; the
/// entries sum to the total score.
pub fn gni_per_node(xb: &DiffMatrix, graph: &AdjacencyGraph) -> Result<Vec<f64>> {
    let predictions = neighbor_predict(xb, graph)?;
    let m = xb.m();
    let p = xb.p();
    let pf = p as f64;
    let mut target_mean = vec![0.0f64; m];
    for j in 0..p {
        let ct = xb.values.column(j);
        for i in 0..m {
            target_mean[i] += ct[i];
        }
    }
    for v in target_mean.iter_mut() {
        *v /= pf;
    }
    let mut out = vec![0.0f64; p];
    for w in 0..p {
        let cp = predictions.column(w);
        let ct = xb.values.column(w);
        let mut acc = 0.0;
        for i in 0..m {
            acc += cp[i] * ct[i] / pf - cp[i] * target_mean[i] / pf;
        }
        out[w] = 2.0 * acc / m as f64;
    }
    Ok(out)
}

/// Result of scoring a whole candidate path with one shared diff matrix.
#[derive(Debug, Clone)]
pub struct GniSelection {
    pub selected: usize,
    pub scores: Vec<GniScore>,
}

/// Builds one diff matrix (a single draw shared by all candidates so their
/// scores are comparable), scores every adjacency and returns the argmax.
/// Ties break toward the sparser candidate, i.e. the earlier index on the
/// decreasing-lambda path.
pub fn select_gni(
    data: &Dataset,
    path: &CandidatePath,
    m: usize,
    seed: u64,
) -> Result<GniSelection> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    let xb = build_diff_matrix(data, m, seed)?;
    let scores: Vec<GniScore> = path
        .adjacencies
        .par_iter()
        .enumerate()
        .map(|(i, adjacency)| gni_score(&xb, adjacency, format!("candidate-{i}")))
        .collect::<Result<_>>()?;
    let mut selected = 0;
    for (i, score) in scores.iter().enumerate() {
        if score.total > scores[selected].total {
            selected = i;
        }
    }
    Ok(GniSelection { selected, scores })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::standardize;
    use crate::synth::{
        covariance_from_precision, gen_random_graph, precision_from_graph, sample_gaussian,
        PrecisionParams,
    };
    use approx::assert_abs_diff_eq;
    use itertools::Itertools;

    fn test_dataset(n: usize, p: usize, seed: u64) -> Dataset {
        let mut rng = rng_from_seed(seed);
        Dataset::new(DMatrix::from_fn(n, p, |_, _| rng.random_range(-3.0..3.0))).unwrap()
    }

    fn random_diff_matrix(m: usize, p: usize, seed: u64) -> DiffMatrix {
        // arbitrary standardized matrix wearing the DiffMatrix type; fine for
        // identities that hold for any standardized input
        let mut rng = rng_from_seed(seed);
        let mut values = DMatrix::from_fn(m, p, |_, _| rng.random_range(0.0..2.0));
        let degenerate = standardize_columns(&mut values);
        DiffMatrix {
            values,
            source_n: m,
            seed,
            degenerate,
        }
    }

    fn random_graph(p: usize, prob: f64, seed: u64) -> AdjacencyGraph {
        gen_random_graph(p, prob, seed).unwrap()
    }

    /// Brute-force oracle: per row, average the MSE over every permutation
    /// of the prediction entries.
    fn permutation_oracle(predictions: &DMatrix<f64>, xb: &DiffMatrix) -> f64 {
        let m = predictions.nrows();
        let p = predictions.ncols();
        let mut total = 0.0;
        for i in 0..m {
            let pred: Vec<f64> = (0..p).map(|j| predictions[(i, j)]).collect();
            let target: Vec<f64> = (0..p).map(|j| xb.values()[(i, j)]).collect();
            let mut row_sum = 0.0;
            let mut count = 0usize;
            for perm in (0..p).permutations(p) {
                let mse: f64 = perm
                    .iter()
                    .enumerate()
                    .map(|(j, &q)| (pred[q] - target[j]) * (pred[q] - target[j]))
                    .sum::<f64>()
                    / p as f64;
                row_sum += mse;
                count += 1;
            }
            total += row_sum / count as f64;
        }
        total / m as f64
    }

    #[test]
    fn diff_matrix_flags_constant_column() {
        let mut values = DMatrix::from_fn(10, 3, |i, j| (i * 3 + j) as f64);
        for i in 0..10 {
            values[(i, 1)] = 4.0;
        }
        let data = Dataset::new(values).unwrap();
        let xb = build_diff_matrix(&data, 20, 5).unwrap();
        assert!(xb.degenerate_columns().contains(&1));
        for i in 0..20 {
            assert_eq!(xb.values()[(i, 1)], 0.0);
        }
    }

    #[test]
    fn diff_matrix_with_two_rows_has_two_levels() {
        // with n=2 the raw differences are either 0 or |x1-x2|, so each
        // standardized column carries at most two distinct values
        let data = Dataset::new(DMatrix::from_row_slice(2, 2, &[1.0, 5.0, 3.0, -1.0])).unwrap();
        let xb = build_diff_matrix(&data, 16, 9).unwrap();
        for j in 0..2 {
            let mut distinct: Vec<f64> = (0..16).map(|i| xb.values()[(i, j)]).collect();
            distinct.sort_by(f64::total_cmp);
            distinct.dedup();
            assert!(distinct.len() <= 2, "column {j} has {} levels", distinct.len());
        }
    }

    #[test]
    fn diff_matrix_rejects_small_m() {
        let data = test_dataset(5, 3, 1);
        assert!(build_diff_matrix(&data, 1, 0).is_err());
    }

    #[test]
    fn diff_matrix_is_deterministic() {
        let data = test_dataset(8, 4, 2);
        let a = build_diff_matrix(&data, 30, 77).unwrap();
        let b = build_diff_matrix(&data, 30, 77).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn default_m_is_n_squared_capped() {
        assert_eq!(default_m(50), 2500);
        assert_eq!(default_m(7), 49);
        assert_eq!(default_m(200), 10_000);
    }

    #[test]
    fn predict_empty_graph_is_zero() {
        let xb = random_diff_matrix(6, 4, 3);
        let g = AdjacencyGraph::empty(4).unwrap();
        let pred = neighbor_predict(&xb, &g).unwrap();
        assert!(pred.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn predict_averages_neighbor_columns() {
        // vertex 0 adjacent to 1 and 2: prediction is the mean of those columns
        let mut g = AdjacencyGraph::empty(3).unwrap();
        g.set_edge(0, 1, true).unwrap();
        g.set_edge(0, 2, true).unwrap();
        let mut values = DMatrix::zeros(2, 3);
        values[(0, 1)] = 1.0;
        values[(0, 2)] = 2.0;
        let xb = DiffMatrix {
            values,
            source_n: 2,
            seed: 0,
            degenerate: BTreeSet::new(),
        };
        let pred = neighbor_predict(&xb, &g).unwrap();
        assert_abs_diff_eq!(pred[(0, 0)], 1.5, epsilon = 1e-15);
        // vertex 1 is adjacent only to 0, whose column is zero
        assert_abs_diff_eq!(pred[(0, 1)], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn predict_complete_graph_matches_direct_loop() {
        let xb = random_diff_matrix(7, 5, 11);
        let g = AdjacencyGraph::complete(5).unwrap();
        let pred = neighbor_predict(&xb, &g).unwrap();
        for w in 0..5 {
            for i in 0..7 {
                let direct: f64 = (0..5)
                    .filter(|&k| k != w)
                    .map(|k| xb.values()[(i, k)])
                    .sum::<f64>()
                    / 4.0;
                assert_abs_diff_eq!(pred[(i, w)], direct, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn predict_rejects_dimension_mismatch() {
        let xb = random_diff_matrix(5, 4, 0);
        let g = AdjacencyGraph::empty(3).unwrap();
        assert!(neighbor_predict(&xb, &g).is_err());
    }

    #[test]
    fn mse_examples() {
        let xb = random_diff_matrix(4, 3, 21);
        let perfect = xb.values().clone();
        assert_eq!(mse_model(&perfect, &xb), 0.0);

        let zeros = DMatrix::zeros(4, 3);
        let mean_sq = xb.values().iter().map(|v| v * v).sum::<f64>() / 12.0;
        assert_abs_diff_eq!(mse_model(&zeros, &xb), mean_sq, epsilon = 1e-14);

        let xb2 = DiffMatrix {
            values: DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]),
            source_n: 2,
            seed: 0,
            degenerate: BTreeSet::new(),
        };
        assert_abs_diff_eq!(mse_model(&DMatrix::zeros(2, 2), &xb2), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn expected_mse_zero_predictor_equals_mean_square() {
        let xb = random_diff_matrix(5, 4, 8);
        let zeros = DMatrix::zeros(5, 4);
        let mean_sq = xb.values().iter().map(|v| v * v).sum::<f64>() / 20.0;
        assert_abs_diff_eq!(expected_mse_random(&zeros, &xb), mean_sq, epsilon = 1e-13);
    }

    #[test]
    fn expected_mse_two_permutations_by_hand() {
        // row pred=[1,2], target=[3,4]: permutations give 4 and 5, mean 4.5
        let xb = DiffMatrix {
            values: DMatrix::from_row_slice(1, 2, &[3.0, 4.0]),
            source_n: 2,
            seed: 0,
            degenerate: BTreeSet::new(),
        };
        let pred = DMatrix::from_row_slice(1, 2, &[1.0, 2.0]);
        assert_abs_diff_eq!(expected_mse_random(&pred, &xb), 4.5, epsilon = 1e-14);
        assert_abs_diff_eq!(permutation_oracle(&pred, &xb), 4.5, epsilon = 1e-14);
    }

    #[test]
    fn expected_mse_matches_exhaustive_oracle() {
        for seed in 0..10 {
            let xb = random_diff_matrix(3, 4, 100 + seed);
            let pred = neighbor_predict(&xb, &random_graph(4, 0.5, seed)).unwrap();
            let closed = expected_mse_random(&pred, &xb);
            let oracle = permutation_oracle(&pred, &xb);
            assert_abs_diff_eq!(closed, oracle, epsilon = 1e-12);
        }
    }

    #[test]
    fn gni_of_empty_graph_is_exactly_zero() {
        for seed in 0..20 {
            let xb = random_diff_matrix(6, 5, seed);
            let g = AdjacencyGraph::empty(5).unwrap();
            let score = gni_score(&xb, &g, "empty").unwrap();
            assert_eq!(score.total, 0.0);
        }
    }

    #[test]
    fn gni_closed_form_matches_difference() {
        for seed in 0..50 {
            let xb = random_diff_matrix(8, 6, 500 + seed);
            let g = random_graph(6, 0.4, seed);
            let score = gni_score(&xb, &g, "g").unwrap();
            assert_abs_diff_eq!(
                score.total,
                score.expected_mse_random - score.mse_model,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn gni_per_node_sums_to_total() {
        let xb = random_diff_matrix(9, 7, 42);
        let g = random_graph(7, 0.4, 4);
        let score = gni_score(&xb, &g, "g").unwrap();
        let parts = gni_per_node(&xb, &g).unwrap();
        assert_abs_diff_eq!(parts.iter().sum::<f64>(), score.total, epsilon = 1e-12);
    }

    #[test]
    fn gni_invariant_under_relabeling() {
        use rand::seq::SliceRandom;
        let mut rng = rng_from_seed(77);
        for seed in 0..10 {
            let xb = random_diff_matrix(10, 6, 900 + seed);
            let g = random_graph(6, 0.5, seed);
            let mut perm: Vec<usize> = (0..6).collect();
            perm.shuffle(&mut rng);

            let relabeled_graph = g.relabel(&perm).unwrap();
            let mut permuted = DMatrix::zeros(10, 6);
            for k in 0..6 {
                permuted.set_column(k, &xb.values().column(perm[k]));
            }
            let relabeled_xb = DiffMatrix {
                values: permuted,
                source_n: xb.source_n,
                seed: xb.seed,
                degenerate: BTreeSet::new(),
            };
            let a = gni_score(&xb, &g, "a").unwrap();
            let b = gni_score(&relabeled_xb, &relabeled_graph, "b").unwrap();
            assert_abs_diff_eq!(a.total, b.total, epsilon = 1e-12);
        }
    }

    /// Degree-preserving rewiring by repeated double-edge swaps.
    fn rewire(graph: &AdjacencyGraph, seed: u64) -> AdjacencyGraph {
        let mut rng = rng_from_seed(seed);
        let mut g = graph.clone();
        let p = g.p();
        let mut edges: Vec<(usize, usize)> = (0..p)
            .flat_map(|k| ((k + 1)..p).map(move |l| (k, l)))
            .filter(|&(k, l)| g.has_edge(k, l))
            .collect();
        let target_swaps = edges.len() * 4;
        let mut done = 0;
        let mut attempts = 0;
        while done < target_swaps && attempts < target_swaps * 50 {
            attempts += 1;
            if edges.len() < 2 {
                break;
            }
            let a = rng.random_range(0..edges.len());
            let b = rng.random_range(0..edges.len());
            if a == b {
                continue;
            }
            let (u, v) = edges[a];
            let (x, y) = edges[b];
            if u == x || u == y || v == x || v == y {
                continue;
            }
            if g.has_edge(u, y) || g.has_edge(x, v) {
                continue;
            }
            g.set_edge(u, v, false).unwrap();
            g.set_edge(x, y, false).unwrap();
            g.set_edge(u, y, true).unwrap();
            g.set_edge(x, v, true).unwrap();
            edges[a] = (u.min(y), u.max(y));
            edges[b] = (x.min(v), x.max(v));
            done += 1;
        }
        g
    }

    #[test]
    fn true_graph_outscores_degree_matched_rewiring() {
        // Monte-Carlo comparison on strongly dependent synthetic data.
        let p = 20;
        let n = 200;
        let mut diffs = Vec::new();
        for seed in 0..50u64 {
            let truth = random_graph(p, 3.0 / p as f64, seed);
            if truth.edge_count() < 4 {
                continue;
            }
            let theta = precision_from_graph(&truth, &PrecisionParams::default()).unwrap();
            let sigma = covariance_from_precision(&theta).unwrap();
            let data = sample_gaussian(&sigma, n, 10_000 + seed).unwrap();
            let std = standardize(&data).unwrap();
            let xb = build_diff_matrix(&std, default_m(n), 20_000 + seed).unwrap();

            let rewired = rewire(&truth, 30_000 + seed);
            assert_ne!(truth, rewired);
            for w in 0..p {
                assert_eq!(truth.degree(w), rewired.degree(w));
            }
            let true_score = gni_score(&xb, &truth, "true").unwrap().total;
            let rewired_score = gni_score(&xb, &rewired, "rewired").unwrap().total;
            diffs.push(true_score - rewired_score);
        }
        let k = diffs.len() as f64;
        let mean = diffs.iter().sum::<f64>() / k;
        let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (k - 1.0);
        let se = (var / k).sqrt();
        assert!(
            mean > 3.0 * se,
            "true graph should outscore rewirings: mean diff {mean}, se {se}"
        );
        assert!(mean > 0.0);
    }

    #[test]
    fn select_gni_prefers_true_graph_over_empty() {
        let p = 12;
        let truth = random_graph(p, 0.25, 6);
        let theta = precision_from_graph(&truth, &PrecisionParams::default()).unwrap();
        let sigma = covariance_from_precision(&theta).unwrap();
        let data = sample_gaussian(&sigma, 300, 1234).unwrap();
        let std = standardize(&data).unwrap();
        let xb = build_diff_matrix(&std, default_m(300), 99).unwrap();
        let empty_score = gni_score(&xb, &AdjacencyGraph::empty(p).unwrap(), "empty").unwrap();
        let true_score = gni_score(&xb, &truth, "truth").unwrap();
        assert_eq!(empty_score.total, 0.0);
        assert!(true_score.total > empty_score.total);
    }

    #[test]
    fn select_gni_tie_breaks_to_first() {
        // a path of identical candidates ties; the sparser (first) index wins
        let data = test_dataset(20, 5, 3);
        let std = standardize(&data).unwrap();
        let s = crate::dataset::sample_covariance(&std).unwrap();
        let grid = crate::glasso::lambda_grid(&s, 1, 0.5).unwrap();
        let mut path =
            crate::glasso::glasso_path(&s, 20, &grid, &crate::glasso::GlassoSettings::default(), "t")
                .unwrap();
        let fit = path.fits[0].clone();
        let adj = path.adjacencies[0].clone();
        for _ in 0..3 {
            path.fits.push(fit.clone());
            path.adjacencies.push(adj.clone());
        }
        let selection = select_gni(&std, &path, 50, 8).unwrap();
        assert_eq!(selection.selected, 0);
        assert_eq!(selection.scores.len(), 4);
    }

    #[test]
    fn select_gni_rejects_empty_path() {
        let data = test_dataset(10, 4, 5);
        let path = CandidatePath {
            fits: vec![],
            adjacencies: vec![],
            source_data_id: "none".into(),
        };
        assert!(matches!(
            select_gni(&standardize(&data).unwrap(), &path, 10, 0),
            Err(Error::EmptyPath)
        ));
    }
}
