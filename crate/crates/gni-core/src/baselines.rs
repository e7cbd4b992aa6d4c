//! The three comparison selectors: EBIC, StARS and RIC.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::dataset::{sample_covariance, standardize, Dataset};
use crate::error::{Error, Result};
use crate::glasso::{
    adjacency_from_precision, glasso_fit, glasso_path, CandidatePath, GlassoFit, GlassoSettings,
    LambdaGrid,
};
use crate::graph::AdjacencyGraph;
use crate::seed::{child_seed, rng_from_seed};

// ---------------------------------------------------------------------------
// EBIC

/// Extended BIC: -2*loglik + |E|*log(n) + 4*|E|*gamma*log(p), with |E| the
/// edge count of the fit's adjacency at the default threshold.
pub fn ebic(fit: &GlassoFit, n: usize, p: usize, gamma: f64) -> f64 {
    let edges =
        adjacency_from_precision(&fit.theta, crate::glasso::DEFAULT_EDGE_THRESHOLD).edge_count();
    ebic_from_parts(fit.loglik, edges, n, p, gamma)
}

pub(crate) fn ebic_from_parts(loglik: f64, edges: usize, n: usize, p: usize, gamma: f64) -> f64 {
    let e = edges as f64;
    -2.0 * loglik + e * (n as f64).ln() + 4.0 * e * gamma * (p as f64).ln()
}

/// Argmin of EBIC over the path, ties broken toward the sparser candidate.
pub fn select_ebic(path: &CandidatePath, n: usize, gamma: f64) -> Result<usize> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "gamma must be non-negative, got {gamma}"
        )));
    }
    let p = path.p();
    let mut best = 0;
    let mut best_score = f64::INFINITY;
    for (i, fit) in path.fits.iter().enumerate() {
        let score = ebic_from_parts(fit.loglik, path.adjacencies[i].edge_count(), n, p, gamma);
        if score < best_score {
            best_score = score;
            best = i;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// StARS

#[derive(Debug, Clone)]
pub struct StarsParams {
    /// Instability threshold.
    pub beta: f64,
    pub num_subsamples: usize,
    /// Rows per subsample; `None` applies [`default_subsample_size`].
    pub subsample_size: Option<usize>,
    pub seed: u64,
}

impl Default for StarsParams {
    fn default() -> Self {
        Self {
            beta: 0.1,
            num_subsamples: 25,
            subsample_size: None,
            seed: 0,
        }
    }
}

/// floor(0.8*n) for small n, floor(10*sqrt(n)) beyond n = 144 where that
/// rule stays below n.
pub fn default_subsample_size(n: usize) -> usize {
    if n <= 144 {
        (0.8 * n as f64).floor() as usize
    } else {
        (10.0 * (n as f64).sqrt()).floor() as usize
    }
}

/// `size` distinct row indices drawn uniformly without replacement, in draw
/// order. Deterministic per seed.
pub fn subsample_indices(n: usize, size: usize, seed: u64) -> Result<Vec<usize>> {
    if size < 2 || size > n {
        return Err(Error::InvalidArgument(format!(
            "subsample size must be in 2..=n, got {size} for n={n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(size);
    Ok(pool)
}

/// Mean over unordered pairs of 2*theta*(1-theta), the per-edge subsample
/// disagreement.
pub fn stars_instability(edge_freqs: &DMatrix<f64>) -> f64 {
    let p = edge_freqs.nrows();
    debug_assert_eq!(p, edge_freqs.ncols());
    let mut total = 0.0;
    for k in 0..p {
        debug_assert_eq!(edge_freqs[(k, k)], 0.0);
        for l in (k + 1)..p {
            let t = edge_freqs[(k, l)];
            debug_assert!((0.0..=1.0).contains(&t));
            total += 2.0 * t * (1.0 - t);
        }
    }
    total / (p * (p - 1) / 2) as f64
}

/// Outcome of a StARS run over a lambda grid.
#[derive(Debug, Clone)]
pub struct StarsResult {
    /// Index into the grid (and into any path fitted on the same grid).
    pub selected: usize,
    /// Raw instability per lambda.
    pub instability: Vec<f64>,
    /// Running supremum of the instability toward smaller lambda.
    pub monotone_instability: Vec<f64>,
}

/// Least-regularized grid index whose monotonized instability stays within
/// `beta`; lambda_max when none qualifies.
pub(crate) fn pick_stars_index(monotone: &[f64], beta: f64) -> usize {
    for k in (0..monotone.len()).rev() {
        if monotone[k] <= beta {
            return k;
        }
    }
    0
}

/// Fits a glasso path over the given grid on each of `num_subsamples` row
/// subsamples, accumulates per-lambda edge frequencies, monotonizes the
/// instability and selects the smallest lambda below the threshold.
pub fn select_stars(
    data: &Dataset,
    grid: &LambdaGrid,
    params: &StarsParams,
    settings: &GlassoSettings,
) -> Result<StarsResult> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty lambda grid".into()));
    }
    if !(params.beta > 0.0 && params.beta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "beta must be in (0,1), got {}",
            params.beta
        )));
    }
    if params.num_subsamples == 0 {
        return Err(Error::InvalidArgument("need at least one subsample".into()));
    }
    let n = data.n();
    let p = data.p();
    let size = params
        .subsample_size
        .unwrap_or_else(|| default_subsample_size(n));
    if size < 2 || size >= n {
        return Err(Error::InvalidArgument(format!(
            "subsample size must be in 2..n, got {size} for n={n}"
        )));
    }

    let n_lambdas = grid.len();
    let n_pairs = p * (p - 1) / 2;
    let counts: Vec<Vec<u32>> = (0..params.num_subsamples)
        .into_par_iter()
        .map(|b| -> Result<Vec<Vec<u32>>> {
            let seed = child_seed(params.seed, &format!("stars-subsample-{b}"));
            let rows = subsample_indices(n, size, seed)?;
            let sub = standardize(&data.select_rows(&rows)?)?;
            let s = sample_covariance(&sub)?;
            let path = glasso_path(&s, size, grid, settings, format!("stars-subsample-{b}"))?;
            let mut local = vec![vec![0u32; n_pairs]; n_lambdas];
            for (li, adjacency) in path.adjacencies.iter().enumerate() {
                let mut pair = 0;
                for k in 0..p {
                    for l in (k + 1)..p {
                        if adjacency.has_edge(k, l) {
                            local[li][pair] = 1;
                        }
                        pair += 1;
                    }
                }
            }
            Ok(local)
        })
        .try_reduce(
            || vec![vec![0u32; n_pairs]; n_lambdas],
            |mut acc, local| {
                for (a, l) in acc.iter_mut().zip(local.iter()) {
                    for (x, y) in a.iter_mut().zip(l.iter()) {
                        *x += *y;
                    }
                }
                Ok(acc)
            },
        )?;

    let total = params.num_subsamples as f64;
    let mut instability = Vec::with_capacity(n_lambdas);
    for lambda_counts in &counts {
        let mut freqs = DMatrix::<f64>::zeros(p, p);
        let mut pair = 0;
        for k in 0..p {
            for l in (k + 1)..p {
                let f = lambda_counts[pair] as f64 / total;
                freqs[(k, l)] = f;
                freqs[(l, k)] = f;
                pair += 1;
            }
        }
        instability.push(stars_instability(&freqs));
    }
    let mut monotone = instability.clone();
    for k in 1..monotone.len() {
        monotone[k] = monotone[k].max(monotone[k - 1]);
    }
    let selected = pick_stars_index(&monotone, params.beta);
    Ok(StarsResult {
        selected,
        instability,
        monotone_instability: monotone,
    })
}

// ---------------------------------------------------------------------------
// RIC

#[derive(Debug, Clone)]
pub struct RicParams {
    pub num_permutations: usize,
    pub seed: u64,
}

impl Default for RicParams {
    fn default() -> Self {
        Self {
            num_permutations: 20,
            seed: 0,
        }
    }
}

/// Mean over permutations of the largest absolute off-diagonal sample
/// covariance after independently permuting the rows within every column,
/// which destroys all cross-column dependence. This is the least
/// regularization at which the permuted (independent) data yields an empty
/// graph.
pub fn ric_lambda(data: &Dataset, params: &RicParams) -> Result<f64> {
    if params.num_permutations < 1 {
        return Err(Error::InvalidArgument(
            "need at least one permutation".into(),
        ));
    }
    let std = if data.is_standardized() {
        data.clone()
    } else {
        standardize(data)?
    };
    let n = std.n();
    let p = std.p();
    let mut sum = 0.0;
    for r in 0..params.num_permutations {
        let mut rng = rng_from_seed(child_seed(params.seed, &format!("ric-permutation-{r}")));
        let mut permuted = std.values().clone();
        let mut buffer = vec![0.0f64; n];
        for j in 0..p {
            for i in 0..n {
                buffer[i] = permuted[(i, j)];
            }
            buffer.shuffle(&mut rng);
            for i in 0..n {
                permuted[(i, j)] = buffer[i];
            }
        }
        let s = permuted.transpose() * &permuted / (n - 1) as f64;
        let mut lambda_r = 0.0f64;
        for k in 0..p {
            for l in (k + 1)..p {
                lambda_r = lambda_r.max(s[(k, l)].abs());
            }
        }
        sum += lambda_r;
    }
    Ok(sum / params.num_permutations as f64)
}

/// A RIC selection: one glasso fit at the permutation-calibrated lambda.
#[derive(Debug, Clone)]
pub struct RicSelection {
    pub fit: GlassoFit,
    pub adjacency: AdjacencyGraph,
}

pub fn select_ric(
    data: &Dataset,
    params: &RicParams,
    settings: &GlassoSettings,
) -> Result<RicSelection> {
    let std = if data.is_standardized() {
        data.clone()
    } else {
        standardize(data)?
    };
    let lambda = ric_lambda(&std, params)?;
    if lambda <= 0.0 {
        return Err(Error::Solver {
            lambda,
            message: "permuted data produced a non-positive regularization".into(),
        });
    }
    let s = sample_covariance(&std)?;
    let fit = glasso_fit(&s, lambda, std.n(), settings, None)?;
    let adjacency = adjacency_from_precision(&fit.theta, settings.edge_threshold);
    Ok(RicSelection { fit, adjacency })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glasso::lambda_grid;
    use crate::matrix::{MatrixRole, SymMatrix};
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;
    use rand::Rng;

    fn fit_with(loglik: f64, theta: DMatrix<f64>) -> GlassoFit {
        let w = theta.clone().try_inverse().unwrap();
        GlassoFit {
            lambda: 0.1,
            theta: SymMatrix::new(theta, MatrixRole::Precision).unwrap(),
            w: SymMatrix::new(w, MatrixRole::Covariance).unwrap(),
            iterations: 1,
            converged: true,
            loglik,
        }
    }

    #[test]
    fn ebic_gamma_zero_is_bic() {
        let mut theta = DMatrix::identity(3, 3);
        theta[(0, 1)] = 0.2;
        theta[(1, 0)] = 0.2;
        let fit = fit_with(-12.5, theta);
        let n = 40;
        let bic = -2.0 * fit.loglik + 1.0 * (n as f64).ln();
        assert_abs_diff_eq!(ebic(&fit, n, 3, 0.0), bic, epsilon = 1e-12);
    }

    #[test]
    fn ebic_of_empty_graph_identity_precision() {
        // loglik = -n*p/2 when Theta = I and tr(S) = p, so EBIC = n*p
        let n = 50;
        let p = 4;
        let fit = fit_with(-(n as f64) * p as f64 / 2.0, DMatrix::identity(p, p));
        assert_abs_diff_eq!(ebic(&fit, n, p, 0.5), (n * p) as f64, epsilon = 1e-12);
    }

    #[test]
    fn ebic_gamma_adds_dimension_penalty() {
        let mut theta = DMatrix::identity(2, 2);
        theta[(0, 1)] = 0.3;
        theta[(1, 0)] = 0.3;
        let fit = fit_with(-20.0, theta);
        let base = ebic(&fit, 50, 2, 0.0);
        let with_gamma = ebic(&fit, 50, 2, 0.5);
        // one edge: 4 * 1 * 0.5 * log 2 = 2 log 2 on top of the BIC value
        assert_abs_diff_eq!(with_gamma - base, 2.0 * 2f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(base, 40.0 + 50f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn ebic_increases_with_edges_at_fixed_loglik() {
        for gamma in [0.25, 0.5, 1.0] {
            let mut prev = f64::NEG_INFINITY;
            for edges in 0..5 {
                let value = ebic_from_parts(-30.0, edges, 50, 6, gamma);
                assert!(value > prev);
                prev = value;
            }
        }
    }

    #[test]
    fn select_ebic_single_and_ties() {
        let make_path = |logliks: Vec<f64>, edge_counts: Vec<usize>| {
            let fits: Vec<GlassoFit> = logliks
                .iter()
                .map(|&l| fit_with(l, DMatrix::identity(4, 4)))
                .collect();
            let adjacencies = edge_counts
                .iter()
                .map(|&e| {
                    let mut g = AdjacencyGraph::empty(4).unwrap();
                    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
                    for &(k, l) in pairs.iter().take(e) {
                        g.set_edge(k, l, true).unwrap();
                    }
                    g
                })
                .collect();
            CandidatePath {
                fits,
                adjacencies,
                source_data_id: "synthetic".into(),
            }
        };

        let single = make_path(vec![-5.0], vec![0]);
        assert_eq!(select_ebic(&single, 50, 0.5).unwrap(), 0);

        // equal EBIC scores: the sparser (earlier) candidate wins
        let tied = make_path(vec![-5.0, -5.0], vec![1, 1]);
        assert_eq!(select_ebic(&tied, 50, 0.5).unwrap(), 0);

        let empty = CandidatePath {
            fits: vec![],
            adjacencies: vec![],
            source_data_id: "empty".into(),
        };
        assert!(matches!(select_ebic(&empty, 50, 0.5), Err(Error::EmptyPath)));
    }

    #[test]
    fn subsample_full_size_is_permutation() {
        let mut idx = subsample_indices(10, 10, 3).unwrap();
        idx.sort_unstable();
        assert_eq!(idx, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn subsample_draws_distinct_indices() {
        let idx = subsample_indices(50, 40, 17).unwrap();
        assert_eq!(idx.len(), 40);
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 40);
        assert!(sorted.iter().all(|&i| i < 50));
    }

    #[test]
    fn subsample_differs_across_seeds() {
        let a = subsample_indices(50, 25, 1).unwrap();
        let b = subsample_indices(50, 25, 2).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, subsample_indices(50, 25, 1).unwrap());
    }

    #[test]
    fn subsample_rejects_oversize() {
        assert!(subsample_indices(10, 11, 0).is_err());
        assert!(subsample_indices(10, 1, 0).is_err());
    }

    #[test]
    fn default_subsample_size_rule() {
        assert_eq!(default_subsample_size(50), 40);
        assert_eq!(default_subsample_size(144), 115);
        assert_eq!(default_subsample_size(400), 200);
    }

    #[test]
    fn instability_examples() {
        // identical subsample graphs: frequencies all 0 or 1
        let mut freqs = DMatrix::zeros(3, 3);
        freqs[(0, 1)] = 1.0;
        freqs[(1, 0)] = 1.0;
        assert_eq!(stars_instability(&freqs), 0.0);

        // single pair at 0.5 contributes 2*0.25 = 0.5
        let mut freqs = DMatrix::zeros(3, 3);
        freqs[(0, 1)] = 0.5;
        freqs[(1, 0)] = 0.5;
        assert_abs_diff_eq!(stars_instability(&freqs), 0.5 / 3.0, epsilon = 1e-15);

        // off-diagonals {0.2, 0.8, 1.0}
        let mut freqs = DMatrix::zeros(3, 3);
        for (k, l, v) in [(0, 1, 0.2), (0, 2, 0.8), (1, 2, 1.0)] {
            freqs[(k, l)] = v;
            freqs[(l, k)] = v;
        }
        assert_abs_diff_eq!(
            stars_instability(&freqs),
            (0.32 + 0.32 + 0.0) / 3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn instability_peaks_at_half() {
        let mut rng = rng_from_seed(5);
        let p = 4;
        let mut at_half = DMatrix::zeros(p, p);
        let mut random = DMatrix::zeros(p, p);
        for k in 0..p {
            for l in (k + 1)..p {
                at_half[(k, l)] = 0.5;
                at_half[(l, k)] = 0.5;
                let v: f64 = rng.random();
                random[(k, l)] = v;
                random[(l, k)] = v;
            }
        }
        assert!(stars_instability(&at_half) >= stars_instability(&random));
        assert_abs_diff_eq!(stars_instability(&at_half), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn stars_index_rule() {
        // instability zero everywhere: densest candidate (last index)
        assert_eq!(pick_stars_index(&[0.0, 0.0, 0.0], 0.1), 2);
        // nothing qualifies below beta except nothing -> lambda_max fallback
        assert_eq!(pick_stars_index(&[0.2, 0.3, 0.9], 0.1), 0);
        // interior selection: last index within the threshold
        assert_eq!(pick_stars_index(&[0.0, 0.05, 0.2, 0.4], 0.1), 1);
        // beta = 0 with zero at the start only
        assert_eq!(pick_stars_index(&[0.0, 0.01, 0.02], 0.0), 0);
    }

    #[test]
    fn stars_runs_and_monotonizes() {
        let g = crate::synth::gen_hub_graph(12, 2, 0).unwrap();
        let theta =
            crate::synth::precision_from_graph(&g, &crate::synth::PrecisionParams::default())
                .unwrap();
        let sigma = crate::synth::covariance_from_precision(&theta).unwrap();
        let data = crate::synth::sample_gaussian(&sigma, 60, 42).unwrap();
        let std = standardize(&data).unwrap();
        let s = sample_covariance(&std).unwrap();
        let grid = lambda_grid(&s, 8, 0.1).unwrap();
        let params = StarsParams {
            num_subsamples: 10,
            ..StarsParams::default()
        };
        let result = select_stars(&std, &grid, &params, &GlassoSettings::default()).unwrap();
        assert!(result.selected < grid.len());
        for k in 1..result.monotone_instability.len() {
            assert!(result.monotone_instability[k] >= result.monotone_instability[k - 1]);
        }
        // determinism: same params, same outcome
        let again = select_stars(&std, &grid, &params, &GlassoSettings::default()).unwrap();
        assert_eq!(result.selected, again.selected);
        assert_eq!(result.instability, again.instability);
    }

    #[test]
    fn ric_lambda_small_for_dependent_columns() {
        // two perfectly correlated columns: permutation destroys the
        // dependence, so the calibrated lambda sits at null-correlation scale
        let mut rng = rng_from_seed(9);
        let col: Vec<f64> = (0..50).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut values = DMatrix::zeros(50, 2);
        for i in 0..50 {
            values[(i, 0)] = col[i];
            values[(i, 1)] = col[i];
        }
        let data = Dataset::new(values).unwrap();
        let lambda = ric_lambda(&data, &RicParams::default()).unwrap();
        assert!(lambda < 0.4, "expected null-scale lambda, got {lambda}");
        assert!(lambda > 0.0);
    }

    #[test]
    fn ric_lambda_matches_null_maximum_distribution() {
        // independent data: lambda_ric should look like the expected maximum
        // of null correlations, simulated here as the oracle
        let n = 50;
        let p = 40;
        let mut rng = rng_from_seed(30);
        let data = Dataset::new(DMatrix::from_fn(n, p, |_, _| {
            rng.sample::<f64, _>(rand_distr::StandardNormal)
        }))
        .unwrap();
        let lambda = ric_lambda(&data, &RicParams::default()).unwrap();

        let mut null_maxima = Vec::new();
        for seed in 0..40 {
            let mut r = rng_from_seed(1000 + seed);
            let m = DMatrix::from_fn(n, p, |_, _| r.sample::<f64, _>(rand_distr::StandardNormal));
            let s = sample_covariance(&standardize(&Dataset::new(m).unwrap()).unwrap()).unwrap();
            null_maxima.push(s.max_abs_offdiag());
        }
        let lo = null_maxima.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = null_maxima.iter().cloned().fold(0.0f64, f64::max);
        assert!(
            lambda > lo * 0.8 && lambda < hi * 1.2,
            "lambda {lambda} outside simulated null range [{lo}, {hi}]"
        );
    }

    #[test]
    fn ric_at_or_above_lambda_max_gives_empty_graph() {
        // n=2 standardized columns are always +-sqrt(1/2) patterns, so every
        // permutation has |correlation| 1 and lambda_ric = lambda_max = 1
        let data = Dataset::new(DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 2.0])).unwrap();
        let selection =
            select_ric(&data, &RicParams::default(), &GlassoSettings::default()).unwrap();
        assert_abs_diff_eq!(selection.fit.lambda, 1.0, epsilon = 1e-12);
        assert_eq!(selection.adjacency.edge_count(), 0);
    }

    #[test]
    fn ric_is_deterministic() {
        let mut rng = rng_from_seed(3);
        let data = Dataset::new(DMatrix::from_fn(30, 5, |_, _| rng.random_range(-1.0..1.0)))
            .unwrap();
        let params = RicParams {
            num_permutations: 5,
            seed: 11,
        };
        let a = ric_lambda(&data, &params).unwrap();
        let b = ric_lambda(&data, &params).unwrap();
        assert_eq!(a, b);
        let sel1 = select_ric(&data, &params, &GlassoSettings::default()).unwrap();
        let sel2 = select_ric(&data, &params, &GlassoSettings::default()).unwrap();
        assert_eq!(sel1.adjacency, sel2.adjacency);
        assert_eq!(sel1.fit.lambda, sel2.fit.lambda);
    }
}
