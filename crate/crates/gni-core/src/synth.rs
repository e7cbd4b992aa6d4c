//! Synthetic ground truth: random and hub graphs, sparse precision matrices
//! built on their edge pattern, and multivariate Gaussian sampling.
//!
//! Standard normal draws use `rand_distr::StandardNormal` (ziggurat) driven
//! by a ChaCha8 stream; see [`crate::seed`]. Results are reproducible across
//! runs of one build.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::graph::AdjacencyGraph;
use crate::matrix::{mirror_upper, MatrixRole, SymMatrix};
use crate::seed::rng_from_seed;

/// Which topology to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Random,
    Hub,
}

impl GraphKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphKind::Random => "random",
            GraphKind::Hub => "hub",
        }
    }
}

impl std::str::FromStr for GraphKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(GraphKind::Random),
            "hub" => Ok(GraphKind::Hub),
            other => Err(Error::InvalidArgument(format!(
                "unknown graph kind '{other}' (expected 'random' or 'hub')"
            ))),
        }
    }
}

/// Full description of a graph to generate.
#[derive(Debug, Clone)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub p: usize,
    /// Edge probability for the random kind; `None` means the default 3/p.
    pub edge_prob: Option<f64>,
    /// Group count for the hub kind; `None` means the default ceil(p/20).
    pub hub_count: Option<usize>,
    pub seed: u64,
}

pub fn default_edge_prob(p: usize) -> f64 {
    3.0 / p as f64
}

pub fn default_hub_count(p: usize) -> usize {
    p.div_ceil(20)
}

impl GraphSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::InvalidArgument("graph spec needs p >= 2".into()));
        }
        match self.kind {
            GraphKind::Random => {
                let prob = self.edge_prob.unwrap_or_else(|| default_edge_prob(self.p));
                if !(prob > 0.0 && prob <= 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "edge probability must be in (0,1], got {prob}"
                    )));
                }
            }
            GraphKind::Hub => {
                let hubs = self.hub_count.unwrap_or_else(|| default_hub_count(self.p));
                if hubs < 1 || hubs > self.p {
                    return Err(Error::InvalidArgument(format!(
                        "hub count must be in 1..=p, got {hubs} for p={}",
                        self.p
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<AdjacencyGraph> {
        self.validate()?;
        match self.kind {
            GraphKind::Random => gen_random_graph(
                self.p,
                self.edge_prob.unwrap_or_else(|| default_edge_prob(self.p)),
                self.seed,
            ),
            GraphKind::Hub => gen_hub_graph(
                self.p,
                self.hub_count.unwrap_or_else(|| default_hub_count(self.p)),
                self.seed,
            ),
        }
    }
}

/// Parameters of the precision matrix built on a graph: `v` is the
/// off-diagonal magnitude placed on edges and `u` augments the diagonal.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionParams {
    pub v: f64,
    pub u: f64,
}

impl Default for PrecisionParams {
    fn default() -> Self {
        Self { v: 0.3, u: 0.1 }
    }
}

impl PrecisionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.v > 0.0 && self.v.is_finite()) {
            return Err(Error::InvalidArgument(format!("v must be > 0, got {}", self.v)));
        }
        if !(self.u >= 0.0 && self.u.is_finite()) {
            return Err(Error::InvalidArgument(format!("u must be >= 0, got {}", self.u)));
        }
        Ok(())
    }
}

/// Erdos-Renyi graph: every unordered pair is an edge independently with
/// probability `edge_prob`. Deterministic for a fixed seed.
pub fn gen_random_graph(p: usize, edge_prob: f64, seed: u64) -> Result<AdjacencyGraph> {
    if p < 2 {
        return Err(Error::InvalidArgument("random graph needs p >= 2".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) || !edge_prob.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "edge probability must be in [0,1], got {edge_prob}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = AdjacencyGraph::empty(p)?;
    for k in 0..p {
        for l in (k + 1)..p {
            if rng.random::<f64>() < edge_prob {
                g.set_edge(k, l, true)?;
            }
        }
    }
    Ok(g)
}

/// Hub graph: vertices are split into `hub_count` contiguous groups as
/// evenly as possible; the first vertex of each group connects to every
/// other member of its group. The construction is deterministic; the seed
/// parameter is kept for interface uniformity with the other generators.
pub fn gen_hub_graph(p: usize, hub_count: usize, _seed: u64) -> Result<AdjacencyGraph> {
    if p < 2 {
        return Err(Error::InvalidArgument("hub graph needs p >= 2".into()));
    }
    if hub_count < 1 || hub_count > p {
        return Err(Error::InvalidArgument(format!(
            "hub count must be in 1..=p, got {hub_count} for p={p}"
        )));
    }
    let mut g = AdjacencyGraph::empty(p)?;
    let base = p / hub_count;
    let rem = p % hub_count;
    let mut start = 0;
    for group in 0..hub_count {
        let size = base + usize::from(group < rem);
        for member in (start + 1)..(start + size) {
            g.set_edge(start, member, true)?;
        }
        start += size;
    }
    Ok(g)
}

/// Theta = v*A + (|lambda_min(v*A)| + 0.1 + u) * I. Positive definite by
/// construction, with off-diagonal zero pattern exactly equal to A.
pub fn precision_from_graph(graph: &AdjacencyGraph, params: &PrecisionParams) -> Result<SymMatrix> {
    params.validate()?;
    let p = graph.p();
    let mut theta = DMatrix::<f64>::zeros(p, p);
    for k in 0..p {
        for l in (k + 1)..p {
            if graph.has_edge(k, l) {
                theta[(k, l)] = params.v;
                theta[(l, k)] = params.v;
            }
        }
    }
    let eig = SymmetricEigen::new(theta.clone());
    let lambda_min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let shift = lambda_min.abs() + 0.1 + params.u;
    for k in 0..p {
        theta[(k, k)] = shift;
    }
    SymMatrix::new(theta, MatrixRole::Precision)
}

/// Inverts the precision matrix and rescales the inverse to unit diagonal,
/// giving the correlation-scale covariance used for sampling.
pub fn covariance_from_precision(theta: &SymMatrix) -> Result<SymMatrix> {
    let chol = theta.cholesky()?;
    let mut sigma = chol.inverse();
    let scales: Vec<f64> = (0..sigma.nrows()).map(|i| sigma[(i, i)].sqrt()).collect();
    for k in 0..sigma.nrows() {
        for l in 0..sigma.ncols() {
            sigma[(k, l)] /= scales[k] * scales[l];
        }
    }
    mirror_upper(&mut sigma);
    SymMatrix::new(sigma, MatrixRole::Covariance)
}

/// Draws n observations from N(0, sigma) as Z * L' with L the lower
/// Cholesky factor. Deterministic for a fixed seed; returned unstandardized.
pub fn sample_gaussian(sigma: &SymMatrix, n: usize, seed: u64) -> Result<Dataset> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2 observations".into()));
    }
    let chol = sigma.cholesky()?;
    let l = chol.l();
    let p = sigma.p();
    let mut z = DMatrix::<f64>::zeros(n, p);
    let mut rng = rng_from_seed(seed);
    for i in 0..n {
        for j in 0..p {
            z[(i, j)] = rng.sample(StandardNormal);
        }
    }
    Dataset::new(z * l.transpose())
}
