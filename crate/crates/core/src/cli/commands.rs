use std::path::Path;

use crate::bounds::{build_bound_report, eigengaps, write_bounds_csv, BoundInputs, BoundReport, BoundValue};
use crate::cli::config::{ClusterSettings, DataSource, ExperimentConfig};
use crate::clustering::{
    run_clustering_experiment, synthetic_blobs, write_clustering_outputs, ClusteringConfig, ClusteringReport,
    Dataset, TREND_ALLOWED_INVERSIONS, TREND_TOLERANCE,
};
use crate::csvio::fmt_f64;
use crate::deflation::{
    ideal_deflation, instrumented_deflation, write_run_outputs, DeflationRun, GroundTruthTrace, PowerIterationSolver,
};
use crate::diagnostics::{diagnose_run, write_figures};
use crate::error::{Error, Result};
use crate::linalg::{build_test_sigma, random_orthogonal_basis, vector, RandomSource, SpectrumKind};

/// Shape of the built-in blob dataset used by `cluster --synthetic`.
pub const BLOB_DIM: usize = 10;
pub const BLOB_SEPARATION: f64 = 3.0;
pub const BLOB_SPREAD: f64 = 0.5;
pub const BLOB_SEED: u64 = 0;

/// Deflation of a synthetic `Σ` together with its ideal counterpart.
#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub trace: GroundTruthTrace,
    pub run: DeflationRun,
}

/// Draws the basis from the root stream of `seed`, builds `Σ` with the given
/// spectrum and deflates it with `t`-step power iteration.
pub fn simulate_deflation(
    d: usize,
    spectrum: &SpectrumKind,
    k_count: usize,
    t: usize,
    seed: u64,
    residual_tol: Option<f64>,
) -> Result<ExperimentRun> {
    let rng = RandomSource::new(seed);
    let basis = random_orthogonal_basis(d, &mut rng.clone())?;
    let (sigma, truth) = build_test_sigma(d, spectrum, &basis)?;
    let trace = ideal_deflation(&truth, k_count)?;
    let mut solver = PowerIterationSolver::new(t, rng);
    solver.options.residual_tol = residual_tol;
    let mut run = instrumented_deflation(&sigma, &truth, k_count, &mut solver)?;
    run.t = t;
    run.seed = seed;
    Ok(ExperimentRun { trace, run })
}

pub fn execute_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    simulate_deflation(cfg.d, &cfg.spectrum, cfg.k_count, cfg.t, cfg.seed, cfg.residual_tol)
}

/// Bound report for a finished run, with `c0` measured from the recorded starts.
pub fn experiment_bounds(cfg: &ExperimentConfig, exp: &ExperimentRun) -> Result<BoundReport> {
    let lambdas = exp.trace.spectrum.eigenvalues.clone();
    let gaps = eigengaps(&lambdas)?;
    let deltas = exp.run.steps.iter().map(|s| s.delta_norm).collect();
    let c0 = exp
        .run
        .measured_c0()
        .ok_or_else(|| Error::Invariant("a power-iteration start is orthogonal to its target".into()))?;
    let mut inputs = BoundInputs::new(lambdas, deltas, c0, cfg.t, cfg.k_count)?;
    if let Some(eps) = cfg.epsilon {
        inputs = inputs.with_epsilon(eps);
    }
    let empirical: Vec<f64> = exp
        .run
        .steps
        .iter()
        .map(|s| vector::distance(&s.v, exp.trace.u_star(s.k)))
        .collect();
    build_bound_report(&inputs, &gaps, &empirical)
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn report_warnings(run: &DeflationRun) {
    for w in &run.warnings {
        eprintln!("warning: {w}");
    }
}

/// Runs the experiment and writes `run.csv`, `v.csv`, `u.csv`, `meta.json`,
/// the three figure traces and `bounds.csv` into `cfg.out`.
pub fn cmd_deflate(cfg: &ExperimentConfig) -> Result<()> {
    create_dir(&cfg.out)?;
    let exp = execute_experiment(cfg)?;
    report_warnings(&exp.run);
    write_run_outputs(&cfg.out, &exp.run, &exp.trace, &cfg.spectrum.to_string())?;
    let diags = diagnose_run(&exp.run, &exp.trace)?;
    write_figures(&cfg.out, &diags, &cfg.slices)?;
    let report = experiment_bounds(cfg, &exp)?;
    write_bounds_csv(&cfg.out.join("bounds.csv"), &report)?;
    let last = exp.run.steps.last().map(|s| vector::distance(&s.v, exp.trace.u_star(s.k)));
    println!(
        "deflated d={} K={} t={} seed={}; final error {}; outputs in {}",
        cfg.d,
        cfg.k_count,
        cfg.t,
        cfg.seed,
        last.map_or_else(|| "NA".into(), fmt_f64),
        cfg.out.display()
    );
    Ok(())
}

fn show(b: BoundValue) -> String {
    match b {
        BoundValue::Value(v) => format!("{v:.3e}"),
        BoundValue::PreconditionFailed => "gated".into(),
    }
}

/// Writes `bounds.csv` and prints the per-step table.
pub fn cmd_bounds(cfg: &ExperimentConfig) -> Result<()> {
    create_dir(&cfg.out)?;
    let exp = execute_experiment(cfg)?;
    report_warnings(&exp.run);
    let report = experiment_bounds(cfg, &exp)?;
    write_bounds_csv(&cfg.out.join("bounds.csv"), &report)?;
    println!("{:>4} {:>11} {:>11} {:>11} {:>6} {:>6} {:>6}", "k", "thm1", "thm2", "measured", "c7", "c12", "c13");
    for r in &report.rows {
        println!(
            "{:>4} {:>11} {:>11} {:>11.3e} {:>6} {:>6} {:>6}",
            r.k,
            show(r.thm1),
            show(r.thm2),
            r.empirical_err,
            r.cond7,
            r.cond12,
            r.cond13
        );
    }
    Ok(())
}

pub fn load_dataset(source: &DataSource) -> Result<Dataset> {
    match source {
        DataSource::File(p) => Dataset::from_path(p),
        DataSource::Synthetic { n, clusters } => {
            synthetic_blobs(*n, *clusters, BLOB_DIM, BLOB_SEPARATION, BLOB_SPREAD, BLOB_SEED)
        }
    }
}

pub fn execute_clustering(s: &ClusterSettings) -> Result<ClusteringReport> {
    let data = load_dataset(&s.source)?;
    let cfg = ClusteringConfig {
        r: s.r,
        k: s.k,
        k_clusters: s.k_clusters,
        t_values: s.t_values.clone(),
        seeds: s.seeds.clone(),
        embed: s.embed,
        max_iters: s.max_iters,
        jobs: s.jobs,
    };
    run_clustering_experiment(&data, &cfg)
}

/// Runs the `(t, seed)` sweep and writes `mi_vs_t.csv` and `mi_summary.csv`.
pub fn cmd_cluster(s: &ClusterSettings) -> Result<()> {
    let report = execute_clustering(s)?;
    write_clustering_outputs(&s.out, &report)?;
    println!("{:>6} {:>10} {:>10}", "t", "mean_mi", "std_mi");
    for m in &report.summary {
        println!("{:>6} {:>10.4} {:>10.4}", m.t, m.mean_mi, m.std_mi);
    }
    println!(
        "trend_non_decreasing={}",
        report.trend_non_decreasing(TREND_ALLOWED_INVERSIONS, TREND_TOLERANCE)
    );
    Ok(())
}
