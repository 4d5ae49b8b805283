//! Command-line front end.
//!
//! Exit codes: `0` success, `1` usage or I/O error, `2` a numerical
//! precondition failed or the selftest found a violated inequality.

pub mod commands;
pub mod config;
pub mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::clustering::SpectrumEnd;
use crate::error::{Error, Result};
use crate::linalg::SpectrumKind;
use config::{ClusterOverrides, ClusterSettings, ConfigFile, DeflateOverrides, ExperimentConfig};
use selftest::{run_selftest, SelftestOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "deflatrix", version, about = "Hotelling deflation with inexact power iteration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Deflate a synthetic covariance and write traces, figures and bounds.
    Deflate(DeflateArgs),
    /// Evaluate the error bounds against a run and write bounds.csv.
    Bounds(DeflateArgs),
    /// Spectral clustering sweep over iteration counts and seeds.
    Cluster(ClusterArgs),
    /// Run the reduced-scale verification suite.
    Selftest(SelftestArgs),
}

fn spectrum_arg(s: &str) -> std::result::Result<SpectrumKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn end_arg(s: &str) -> std::result::Result<SpectrumEnd, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct DeflateArgs {
    /// Dimension of the covariance.
    #[arg(long)]
    d: Option<usize>,
    /// Number of components to extract.
    #[arg(long = "K", value_name = "K")]
    k_count: Option<usize>,
    /// Power-iteration steps per component.
    #[arg(long)]
    t: Option<usize>,
    /// power-law:<gamma>, exponential:<ratio> or explicit:<l1>,<l2>,...
    #[arg(long, value_parser = spectrum_arg)]
    spectrum: Option<SpectrumKind>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key = value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Eigenvector indices (1-based) traced in the figure files.
    #[arg(long, value_delimiter = ',')]
    slices: Option<Vec<usize>>,
    /// Target accuracy; adds per-step budget columns to bounds.csv.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Stop power iteration early at this residual (off by default).
    #[arg(long)]
    residual_tol: Option<f64>,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    /// CSV with a header and a `label` column.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Use the built-in Gaussian blob dataset instead of a file.
    #[arg(long)]
    synthetic: bool,
    /// Sample count for --synthetic.
    #[arg(long)]
    n: Option<usize>,
    /// Number of k-means clusters.
    #[arg(long)]
    clusters: Option<usize>,
    /// Neighbours per node in the similarity graph.
    #[arg(long)]
    r: Option<usize>,
    /// Eigenvectors in the embedding.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    t_values: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    /// top or bottom end of the Laplacian spectrum.
    #[arg(long, value_parser = end_arg)]
    spectrum_end: Option<SpectrumEnd>,
    #[arg(long)]
    row_normalize: bool,
    /// Concurrent (t, seed) cells.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomized instances per check family.
    #[arg(long, default_value_t = 40)]
    instances: usize,
    /// Evaluate the deflation bound with a wrong leading constant.
    #[arg(long, hide = true)]
    inject_wrong_constant: bool,
}

fn load_config(path: Option<&PathBuf>) -> Result<ConfigFile> {
    path.map_or_else(|| Ok(ConfigFile::default()), |p| ConfigFile::load(p))
}

fn deflate_config(a: DeflateArgs) -> Result<ExperimentConfig> {
    let file = load_config(a.config.as_ref())?;
    let flags = DeflateOverrides {
        d: a.d,
        k_count: a.k_count,
        t: a.t,
        spectrum: a.spectrum,
        seed: a.seed,
        out: a.out,
        slices: a.slices,
        epsilon: a.epsilon,
        residual_tol: a.residual_tol,
    };
    ExperimentConfig::resolve(flags, &file)
}

fn cluster_settings(a: ClusterArgs) -> Result<ClusterSettings> {
    let file = load_config(a.config.as_ref())?;
    let flags = ClusterOverrides {
        data: a.data,
        synthetic: a.synthetic,
        n: a.n,
        clusters: a.clusters,
        r: a.r,
        k: a.k,
        t_values: a.t_values,
        seeds: a.seeds,
        spectrum_end: a.spectrum_end,
        row_normalize: a.row_normalize,
        jobs: a.jobs,
        max_iters: a.max_iters,
        out: a.out,
    };
    ClusterSettings::resolve(flags, &file)
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Deflate(a) => commands::cmd_deflate(&deflate_config(a)?).map(|_| EXIT_OK),
        Command::Bounds(a) => commands::cmd_bounds(&deflate_config(a)?).map(|_| EXIT_OK),
        Command::Cluster(a) => commands::cmd_cluster(&cluster_settings(a)?).map(|_| EXIT_OK),
        Command::Selftest(a) => {
            let opts = SelftestOptions {
                seed: a.seed,
                instances: a.instances,
                wrong_leading_constant: a.inject_wrong_constant,
            };
            let report = run_selftest(&opts)?;
            print!("{}", report.table());
            println!("elapsed: {:.1} s", report.elapsed.as_secs_f64());
            Ok(if report.any_violated() { EXIT_MATH } else { EXIT_OK })
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_math() {
                EXIT_MATH
            } else {
                EXIT_USAGE
            }
        }
    }
}
