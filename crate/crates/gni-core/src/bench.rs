//! End-to-end benchmark harness: generate truth, sample data, fit a
//! candidate path, run every selector plus the oracle, and aggregate
//! recovery metrics per cell of the (kind, p, replicate) grid.
//!
//! Cells run in parallel; every stage draws from a child seed derived from
//! the master seed and the cell labels, so the emitted records are identical
//! at any parallelism level.

use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{select_ebic, select_ric, select_stars, RicParams, StarsParams};
use crate::dataset::{sample_covariance, standardize, Dataset};
use crate::error::{Error, Result};
use crate::glasso::{glasso_path, lambda_grid, CandidatePath, GlassoSettings};
use crate::gni::{build_diff_matrix, default_m, gni_score, select_gni};
use crate::graph::AdjacencyGraph;
use crate::metrics::{edge_confusion, metrics, oracle_select, pearson_correlation};
use crate::seed::child_seed;
use crate::synth::{
    covariance_from_precision, precision_from_graph, sample_gaussian, GraphKind, GraphSpec,
    PrecisionParams,
};

/// Model selection criteria the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Gni,
    Ebic,
    Stars,
    Ric,
}

impl Criterion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Criterion::Gni => "gni",
            Criterion::Ebic => "ebic",
            Criterion::Stars => "stars",
            Criterion::Ric => "ric",
        }
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gni" => Ok(Criterion::Gni),
            "ebic" => Ok(Criterion::Ebic),
            "stars" => Ok(Criterion::Stars),
            "ric" => Ok(Criterion::Ric),
            other => Err(Error::InvalidArgument(format!(
                "unknown criterion '{other}' (expected gni, ebic, stars or ric)"
            ))),
        }
    }
}

/// Full configuration of one benchmark run. Defaults reproduce the
/// reference comparison at n=50 over p in {50, 200, 400}.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n: usize,
    pub p_list: Vec<usize>,
    pub kinds: Vec<GraphKind>,
    pub replicates: usize,
    pub lambda_count: usize,
    pub lambda_ratio: f64,
    pub criteria: Vec<Criterion>,
    pub master_seed: u64,
    pub edge_prob: Option<f64>,
    pub hub_count: Option<usize>,
    pub precision: PrecisionParams,
    pub gni_m: Option<usize>,
    pub ebic_gammas: Vec<f64>,
    pub stars_beta: f64,
    pub stars_subsamples: usize,
    pub stars_subsample_size: Option<usize>,
    pub ric_permutations: usize,
    pub glasso: GlassoSettings,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n: 50,
            p_list: vec![50, 200, 400],
            kinds: vec![GraphKind::Random, GraphKind::Hub],
            replicates: 5,
            lambda_count: 30,
            lambda_ratio: 0.1,
            criteria: vec![
                Criterion::Gni,
                Criterion::Ebic,
                Criterion::Stars,
                Criterion::Ric,
            ],
            master_seed: 0,
            edge_prob: None,
            hub_count: None,
            precision: PrecisionParams::default(),
            gni_m: None,
            ebic_gammas: vec![0.0, 0.5, 1.0],
            stars_beta: 0.1,
            stars_subsamples: 25,
            stars_subsample_size: None,
            ric_permutations: 20,
            glasso: GlassoSettings::default(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < 1 {
            return Err(Error::Config("replicates must be >= 1".into()));
        }
        if self.p_list.is_empty() || self.p_list.iter().any(|&p| p < 2) {
            return Err(Error::Config("p list must be non-empty with p >= 2".into()));
        }
        if self.kinds.is_empty() {
            return Err(Error::Config("kinds must be non-empty".into()));
        }
        if self.n < 2 {
            return Err(Error::Config("n must be >= 2".into()));
        }
        if self.lambda_count < 1 {
            return Err(Error::Config("nlambda must be >= 1".into()));
        }
        if self.criteria.contains(&Criterion::Ebic) && self.ebic_gammas.is_empty() {
            return Err(Error::Config("ebic requires at least one gamma".into()));
        }
        Ok(())
    }

    /// Gamma reported in the summary table when EBIC ran with several.
    pub fn headline_gamma(&self) -> f64 {
        if self.ebic_gammas.contains(&0.5) {
            0.5
        } else {
            self.ebic_gammas.first().copied().unwrap_or(0.5)
        }
    }
}

/// One selector outcome on one dataset.
#[derive(Debug, Clone)]
pub struct MetricsRecord {
    pub kind: String,
    pub p: usize,
    pub replicate: usize,
    pub criterion: String,
    pub gamma: Option<f64>,
    pub lambda: Option<f64>,
    pub edges: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub shd: usize,
    pub runtime_seconds: f64,
    pub status: String,
    pub dataset_id: String,
    pub seed: u64,
}

/// One candidate-level (GNI, F1) observation.
#[derive(Debug, Clone)]
pub struct GniF1Row {
    pub kind: String,
    pub p: usize,
    pub replicate: usize,
    pub candidate: usize,
    pub lambda: f64,
    pub edges: usize,
    pub gni: f64,
    pub f1: f64,
}

#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub kind: String,
    pub p: usize,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchOutput {
    pub records: Vec<MetricsRecord>,
    pub gni_f1: Vec<GniF1Row>,
    /// Header of the summary table: kind, p, then metric_criterion columns.
    pub summary_header: Vec<String>,
    pub summary_rows: Vec<SummaryRow>,
}

struct CellContext<'a> {
    config: &'a BenchConfig,
    kind: GraphKind,
    p: usize,
    replicate: usize,
    dataset_id: String,
    data_seed: u64,
}

impl CellContext<'_> {
    fn stage_seed(&self, stage: &str) -> u64 {
        child_seed(
            self.config.master_seed,
            &format!("{}/{}/{}/{}", self.kind.as_str(), self.p, self.replicate, stage),
        )
    }

    fn record(
        &self,
        criterion: &str,
        gamma: Option<f64>,
        lambda: Option<f64>,
        selected: &AdjacencyGraph,
        truth: &AdjacencyGraph,
        runtime_seconds: f64,
    ) -> Result<MetricsRecord> {
        let m = metrics(&edge_confusion(selected, truth)?);
        Ok(MetricsRecord {
            kind: self.kind.as_str().to_string(),
            p: self.p,
            replicate: self.replicate,
            criterion: criterion.to_string(),
            gamma,
            lambda,
            edges: selected.edge_count(),
            precision: m.precision,
            recall: m.recall,
            f1: m.f1,
            shd: m.shd,
            runtime_seconds,
            status: "ok".to_string(),
            dataset_id: self.dataset_id.clone(),
            seed: self.data_seed,
        })
    }

    fn error_record(&self, message: String) -> MetricsRecord {
        MetricsRecord {
            kind: self.kind.as_str().to_string(),
            p: self.p,
            replicate: self.replicate,
            criterion: "error".to_string(),
            gamma: None,
            lambda: None,
            edges: 0,
            precision: 0.0,
            recall: 0.0,
            f1: 0.0,
            shd: 0,
            runtime_seconds: 0.0,
            status: message,
            dataset_id: self.dataset_id.clone(),
            seed: self.data_seed,
        }
    }
}

fn run_cell(ctx: &CellContext) -> (Vec<MetricsRecord>, Vec<GniF1Row>) {
    match run_cell_inner(ctx) {
        Ok(result) => result,
        Err(e) => (vec![ctx.error_record(e.to_string())], Vec::new()),
    }
}

fn run_cell_inner(ctx: &CellContext) -> Result<(Vec<MetricsRecord>, Vec<GniF1Row>)> {
    let cfg = ctx.config;
    let spec = GraphSpec {
        kind: ctx.kind,
        p: ctx.p,
        edge_prob: cfg.edge_prob,
        hub_count: cfg.hub_count,
        seed: ctx.stage_seed("truth"),
    };
    let truth = spec.generate()?;
    let theta = precision_from_graph(&truth, &cfg.precision)?;
    let sigma = covariance_from_precision(&theta)?;
    let raw = sample_gaussian(&sigma, cfg.n, ctx.data_seed)?;
    let data = standardize(&raw)?;
    let s = sample_covariance(&data)?;
    let grid = lambda_grid(&s, cfg.lambda_count, cfg.lambda_ratio)?;
    let path = glasso_path(&s, cfg.n, &grid, &cfg.glasso, ctx.dataset_id.clone())?;

    let mut records = Vec::new();
    let mut gni_rows = Vec::new();

    let started = Instant::now();
    let oracle_idx = oracle_select(&path, &truth)?;
    let oracle_time = started.elapsed().as_secs_f64();
    records.push(ctx.record(
        "oracle",
        None,
        Some(path.fits[oracle_idx].lambda),
        &path.adjacencies[oracle_idx],
        &truth,
        oracle_time,
    )?);

    for criterion in &cfg.criteria {
        match criterion {
            Criterion::Gni => {
                let m = cfg.gni_m.unwrap_or_else(|| default_m(cfg.n));
                let started = Instant::now();
                let selection = select_gni(&data, &path, m, ctx.stage_seed("gni"))?;
                let elapsed = started.elapsed().as_secs_f64();
                records.push(ctx.record(
                    "gni",
                    None,
                    Some(path.fits[selection.selected].lambda),
                    &path.adjacencies[selection.selected],
                    &truth,
                    elapsed,
                )?);
                for (i, score) in selection.scores.iter().enumerate() {
                    let f1 = metrics(&edge_confusion(&path.adjacencies[i], &truth)?).f1;
                    gni_rows.push(GniF1Row {
                        kind: ctx.kind.as_str().to_string(),
                        p: ctx.p,
                        replicate: ctx.replicate,
                        candidate: i,
                        lambda: path.fits[i].lambda,
                        edges: path.adjacencies[i].edge_count(),
                        gni: score.total,
                        f1,
                    });
                }
            }
            Criterion::Ebic => {
                for &gamma in &cfg.ebic_gammas {
                    let started = Instant::now();
                    let idx = select_ebic(&path, cfg.n, gamma)?;
                    let elapsed = started.elapsed().as_secs_f64();
                    records.push(ctx.record(
                        "ebic",
                        Some(gamma),
                        Some(path.fits[idx].lambda),
                        &path.adjacencies[idx],
                        &truth,
                        elapsed,
                    )?);
                }
            }
            Criterion::Stars => {
                let params = StarsParams {
                    beta: cfg.stars_beta,
                    num_subsamples: cfg.stars_subsamples,
                    subsample_size: cfg.stars_subsample_size,
                    seed: ctx.stage_seed("stars"),
                };
                let started = Instant::now();
                let result = select_stars(&data, &grid, &params, &cfg.glasso)?;
                let elapsed = started.elapsed().as_secs_f64();
                records.push(ctx.record(
                    "stars",
                    None,
                    Some(path.fits[result.selected].lambda),
                    &path.adjacencies[result.selected],
                    &truth,
                    elapsed,
                )?);
            }
            Criterion::Ric => {
                let params = RicParams {
                    num_permutations: cfg.ric_permutations,
                    seed: ctx.stage_seed("ric"),
                };
                let started = Instant::now();
                let selection = select_ric(&data, &params, &cfg.glasso)?;
                let elapsed = started.elapsed().as_secs_f64();
                records.push(ctx.record(
                    "ric",
                    None,
                    Some(selection.fit.lambda),
                    &selection.adjacency,
                    &truth,
                    elapsed,
                )?);
            }
        }
    }
    Ok((records, gni_rows))
}

/// Runs the whole grid. Individual cell failures become diagnostic records;
/// the run itself only fails on an invalid configuration.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchOutput> {
    config.validate()?;
    let mut cells = Vec::new();
    for &kind in &config.kinds {
        for &p in &config.p_list {
            for replicate in 0..config.replicates {
                cells.push((kind, p, replicate));
            }
        }
    }
    let results: Vec<(Vec<MetricsRecord>, Vec<GniF1Row>)> = cells
        .par_iter()
        .map(|&(kind, p, replicate)| {
            let ctx = CellContext {
                config,
                kind,
                p,
                replicate,
                dataset_id: format!("{}-p{}-r{}", kind.as_str(), p, replicate),
                data_seed: child_seed(
                    config.master_seed,
                    &format!("{}/{}/{}/data", kind.as_str(), p, replicate),
                ),
            };
            run_cell(&ctx)
        })
        .collect();

    let mut records = Vec::new();
    let mut gni_f1 = Vec::new();
    for (cell_records, cell_rows) in results {
        records.extend(cell_records);
        gni_f1.extend(cell_rows);
    }
    let (summary_header, summary_rows) = summarize(config, &records);
    Ok(BenchOutput {
        records,
        gni_f1,
        summary_header,
        summary_rows,
    })
}

fn summary_criteria(config: &BenchConfig) -> Vec<&'static str> {
    let mut names = vec!["oracle"];
    for criterion in &config.criteria {
        names.push(criterion.as_str());
    }
    names
}

fn summarize(config: &BenchConfig, records: &[MetricsRecord]) -> (Vec<String>, Vec<SummaryRow>) {
    let criteria = summary_criteria(config);
    let metrics_names = ["f1", "precision", "recall", "shd"];
    let mut header = vec!["kind".to_string(), "p".to_string()];
    for metric in metrics_names {
        for criterion in &criteria {
            header.push(format!("{metric}_{criterion}"));
        }
    }
    let headline = config.headline_gamma();
    let mut rows = Vec::new();
    for &kind in &config.kinds {
        for &p in &config.p_list {
            let mut values = Vec::new();
            for metric in metrics_names {
                for criterion in &criteria {
                    let selected: Vec<&MetricsRecord> = records
                        .iter()
                        .filter(|r| {
                            r.kind == kind.as_str()
                                && r.p == p
                                && r.criterion == *criterion
                                && r.status == "ok"
                                && (r.criterion != "ebic" || r.gamma == Some(headline))
                        })
                        .collect();
                    let mean = if selected.is_empty() {
                        f64::NAN
                    } else {
                        let total: f64 = selected
                            .iter()
                            .map(|r| match metric {
                                "f1" => r.f1,
                                "precision" => r.precision,
                                "recall" => r.recall,
                                _ => r.shd as f64,
                            })
                            .sum();
                        total / selected.len() as f64
                    };
                    values.push(mean);
                }
            }
            rows.push(SummaryRow {
                kind: kind.as_str().to_string(),
                p,
                values,
            });
        }
    }
    (header, rows)
}

/// Candidate-level GNI vs F1 association for one dataset and path.
#[derive(Debug, Clone)]
pub struct GniF1Study {
    /// (gni, f1) per candidate, in path order.
    pub pairs: Vec<(f64, f64)>,
    pub pearson: f64,
}

/// Scores every candidate with one shared diff matrix and correlates the
/// scores with the true F1. Errors when the correlation is undefined
/// (e.g. a path of identical candidates).
pub fn gni_f1_study(
    data: &Dataset,
    path: &CandidatePath,
    truth: &AdjacencyGraph,
    m: usize,
    seed: u64,
) -> Result<GniF1Study> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    let xb = build_diff_matrix(data, m, seed)?;
    let mut pairs = Vec::with_capacity(path.len());
    for (i, adjacency) in path.adjacencies.iter().enumerate() {
        let score = gni_score(&xb, adjacency, format!("candidate-{i}"))?;
        let f1 = metrics(&edge_confusion(adjacency, truth)?).f1;
        pairs.push((score.total, f1));
    }
    let gnis: Vec<f64> = pairs.iter().map(|&(g, _)| g).collect();
    let f1s: Vec<f64> = pairs.iter().map(|&(_, f)| f).collect();
    let pearson = pearson_correlation(&gnis, &f1s)?;
    Ok(GniF1Study { pairs, pearson })
}

// ---------------------------------------------------------------------------
// CSV rendering. All tables are LF-terminated and reuse Rust's shortest
// round-trip float formatting, so a fixed set of records always renders to
// identical bytes.

fn push_optional(out: &mut String, value: Option<f64>) {
    if let Some(v) = value {
        out.push_str(&format!("{v}"));
    }
}

pub fn render_runs_csv(records: &[MetricsRecord]) -> String {
    let mut out =
        String::from("kind,p,replicate,criterion,gamma,lambda,edges,precision,recall,f1,shd,status\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},",
            r.kind, r.p, r.replicate, r.criterion
        ));
        push_optional(&mut out, r.gamma);
        out.push(',');
        push_optional(&mut out, r.lambda);
        out.push_str(&format!(
            ",{},{},{},{},{},{}\n",
            r.edges, r.precision, r.recall, r.f1, r.shd, r.status
        ));
    }
    out
}

pub fn render_timings_csv(records: &[MetricsRecord]) -> String {
    let mut out = String::from("kind,p,replicate,criterion,gamma,runtime_seconds\n");
    for r in records {
        out.push_str(&format!("{},{},{},{},", r.kind, r.p, r.replicate, r.criterion));
        push_optional(&mut out, r.gamma);
        out.push_str(&format!(",{}\n", r.runtime_seconds));
    }
    out
}

pub fn render_summary_csv(output: &BenchOutput) -> String {
    let mut out = output.summary_header.join(",");
    out.push('\n');
    for row in &output.summary_rows {
        out.push_str(&format!("{},{}", row.kind, row.p));
        for v in &row.values {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

pub fn render_gni_f1_csv(rows: &[GniF1Row]) -> String {
    let mut out = String::from("kind,p,replicate,candidate,lambda,edges,gni,f1\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.kind, r.p, r.replicate, r.candidate, r.lambda, r.edges, r.gni, r.f1
        ));
    }
    out
}
