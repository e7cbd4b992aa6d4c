//! Command line interface: synthetic data generation, single-dataset model
//! selection and the full benchmark grid.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure, 2 usage or config error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use gni_core::baselines::{select_ebic, select_ric, select_stars, RicParams, StarsParams};
use gni_core::bench::{
    render_gni_f1_csv, render_runs_csv, render_summary_csv, render_timings_csv, run_benchmark,
};
use gni_core::config::parse_config;
use gni_core::dataset::{sample_covariance, standardize, Dataset};
use gni_core::error::Error;
use gni_core::glasso::{glasso_path, lambda_grid, GlassoSettings};
use gni_core::gni::{default_m, select_gni};
use gni_core::io::{atomic_write, read_matrix, write_adjacency, write_matrix};
use gni_core::synth::{
    covariance_from_precision, precision_from_graph, sample_gaussian, GraphKind, GraphSpec,
    PrecisionParams,
};

#[derive(Parser)]
#[command(name = "gni", version, about = "Gaussian graphical model selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    Hub,
}

impl From<KindArg> for GraphKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Random => GraphKind::Random,
            KindArg::Hub => GraphKind::Hub,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Gni,
    Ebic,
    Stars,
    Ric,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a ground-truth graph and Gaussian samples from it.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Number of variables.
        #[arg(long)]
        p: usize,
        /// Number of observations.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for random graphs (default 3/p).
        #[arg(long)]
        edge_prob: Option<f64>,
        /// Hub group count for hub graphs (default ceil(p/20)).
        #[arg(long)]
        hub_count: Option<usize>,
        /// Off-diagonal precision magnitude on edges.
        #[arg(long, default_value_t = 0.3)]
        v: f64,
        /// Diagonal augmentation of the precision matrix.
        #[arg(long, default_value_t = 0.1)]
        u: f64,
        /// Output path for the n x p observation matrix.
        #[arg(long)]
        out_data: PathBuf,
        /// Output path for the p x p truth adjacency matrix.
        #[arg(long)]
        out_truth: PathBuf,
    },
    /// Select a graph for a dataset with one criterion.
    Select {
        /// Input observation matrix (CSV, no header).
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Candidate path length.
        #[arg(long, default_value_t = 30)]
        nlambda: usize,
        /// Smallest lambda as a fraction of lambda_max.
        #[arg(long, default_value_t = 0.1)]
        lambda_ratio: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bootstrap difference sample count for GNI (default min(n^2, 10000)).
        #[arg(long)]
        m: Option<usize>,
        /// EBIC gamma.
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        /// StARS instability threshold.
        #[arg(long, default_value_t = 0.1)]
        beta: f64,
        /// StARS subsample count.
        #[arg(long, default_value_t = 25)]
        subsamples: usize,
        /// StARS subsample size (default 0.8n below 145, else 10*sqrt(n)).
        #[arg(long)]
        subsample_size: Option<usize>,
        /// RIC permutation count.
        #[arg(long, default_value_t = 20)]
        permutations: usize,
        /// Output path for the selected adjacency matrix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the benchmark grid described by a config file.
    Bench {
        /// key=value config file; see the project README for the key table.
        #[arg(long)]
        config: PathBuf,
        /// Directory receiving runs.csv, summary.csv, gni_f1.csv, timings.csv.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> gni_core::Result<ExitCode> {
    match cli.command {
        Command::Generate {
            kind,
            p,
            n,
            seed,
            edge_prob,
            hub_count,
            v,
            u,
            out_data,
            out_truth,
        } => {
            let spec = GraphSpec {
                kind: kind.into(),
                p,
                edge_prob,
                hub_count,
                seed,
            };
            let truth = spec.generate()?;
            let params = PrecisionParams { v, u };
            let theta = precision_from_graph(&truth, &params)?;
            let sigma = covariance_from_precision(&theta)?;
            let data = sample_gaussian(&sigma, n, seed)?;
            write_matrix(&out_data, data.values())?;
            write_adjacency(&out_truth, &truth)?;
            println!(
                "generated kind={} p={p} n={n} seed={seed} edges={}",
                spec.kind.as_str(),
                truth.edge_count()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Select {
            data,
            method,
            nlambda,
            lambda_ratio,
            seed,
            m,
            gamma,
            beta,
            subsamples,
            subsample_size,
            permutations,
            out,
        } => {
            let raw = Dataset::new(read_matrix(&data)?)?;
            let std = standardize(&raw)?;
            let n = std.n();
            let settings = GlassoSettings::default();
            let started = Instant::now();

            let (name, lambda, adjacency, score) = match method {
                MethodArg::Ric => {
                    let params = RicParams {
                        num_permutations: permutations,
                        seed,
                    };
                    let selection = select_ric(&std, &params, &settings)?;
                    let lambda = selection.fit.lambda;
                    ("ric", lambda, selection.adjacency, lambda)
                }
                _ => {
                    let s = sample_covariance(&std)?;
                    let grid = lambda_grid(&s, nlambda, lambda_ratio)?;
                    let path = glasso_path(&s, n, &grid, &settings, data.display().to_string())?;
                    match method {
                        MethodArg::Gni => {
                            let m = m.unwrap_or_else(|| default_m(n));
                            let selection = select_gni(&std, &path, m, seed)?;
                            let idx = selection.selected;
                            (
                                "gni",
                                path.fits[idx].lambda,
                                path.adjacencies[idx].clone(),
                                selection.scores[idx].total,
                            )
                        }
                        MethodArg::Ebic => {
                            let idx = select_ebic(&path, n, gamma)?;
                            let score = gni_core::baselines::ebic(&path.fits[idx], n, std.p(), gamma);
                            ("ebic", path.fits[idx].lambda, path.adjacencies[idx].clone(), score)
                        }
                        MethodArg::Stars => {
                            let params = StarsParams {
                                beta,
                                num_subsamples: subsamples,
                                subsample_size,
                                seed,
                            };
                            let result = select_stars(&std, &grid, &params, &settings)?;
                            let idx = result.selected;
                            (
                                "stars",
                                path.fits[idx].lambda,
                                path.adjacencies[idx].clone(),
                                result.monotone_instability[idx],
                            )
                        }
                        MethodArg::Ric => unreachable!(),
                    }
                }
            };
            write_adjacency(&out, &adjacency)?;
            println!(
                "method={name} lambda={lambda} edges={} score={score} runtime_seconds={}",
                adjacency.edge_count(),
                started.elapsed().as_secs_f64()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { config, out_dir } => {
            let text = std::fs::read_to_string(&config)?;
            let bench_config = parse_config(&text)?;
            std::fs::create_dir_all(&out_dir)?;
            let output = run_benchmark(&bench_config)?;
            atomic_write(&out_dir.join("runs.csv"), &render_runs_csv(&output.records))?;
            atomic_write(&out_dir.join("summary.csv"), &render_summary_csv(&output))?;
            atomic_write(&out_dir.join("gni_f1.csv"), &render_gni_f1_csv(&output.gni_f1))?;
            atomic_write(
                &out_dir.join("timings.csv"),
                &render_timings_csv(&output.records),
            )?;
            let ok = output.records.iter().filter(|r| r.status == "ok").count();
            let failed = output.records.len() - ok;
            println!(
                "wrote {} records ({ok} ok, {failed} failed) to {}",
                output.records.len(),
                out_dir.display()
            );
            if ok == 0 {
                eprintln!("error: every benchmark cell failed");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
