use std::path::Path;

use crate::clustering::{
    build_rnn_graph, kmeans, mutual_information, normalized_laplacian, spectral_embed, Dataset, EmbedOptions,
    DEFAULT_MAX_ITERS,
};
use crate::csvio::{fmt_f64, CsvWriter};
use crate::error::{Error, Result};
use crate::linalg::{RandomSource, SymMatrix};

/// Substream key reserved for k-means, far from the per-step deflation keys.
const KMEANS_STREAM: u64 = 1 << 40;

/// Inversions of mean MI tolerated by the reported trend flag.
pub const TREND_ALLOWED_INVERSIONS: usize = 1;
/// Largest tolerated drop in mean MI between consecutive `t` values.
pub const TREND_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringConfig {
    /// Neighbour count of the similarity graph.
    pub r: usize,
    /// Number of embedding vectors.
    pub k: usize,
    pub k_clusters: usize,
    pub t_values: Vec<usize>,
    pub seeds: Vec<u64>,
    pub embed: EmbedOptions,
    pub max_iters: usize,
    /// Worker threads for the (t, seed) sweep.
    pub jobs: usize,
}

impl ClusteringConfig {
    /// Defaults: `k = k_clusters`, `r = 10`, unnormalized top-end embedding.
    pub fn new(k_clusters: usize, t_values: Vec<usize>, seeds: Vec<u64>) -> Self {
        ClusteringConfig {
            r: 10,
            k: k_clusters,
            k_clusters,
            t_values,
            seeds,
            embed: EmbedOptions::default(),
            max_iters: DEFAULT_MAX_ITERS,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiRow {
    pub t: usize,
    pub seed: u64,
    pub mi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiSummary {
    pub t: usize,
    pub mean_mi: f64,
    /// Sample standard deviation across seeds; zero for a single seed.
    pub std_mi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringReport {
    pub rows: Vec<MiRow>,
    pub summary: Vec<MiSummary>,
}

impl ClusteringReport {
    /// True when mean MI never drops as `t` grows, except for at most
    /// `allowed_inversions` drops each no larger than `tolerance`.
    pub fn trend_non_decreasing(&self, allowed_inversions: usize, tolerance: f64) -> bool {
        let mut inversions = 0;
        for w in self.summary.windows(2) {
            let drop = w[0].mean_mi - w[1].mean_mi;
            if drop > 0.0 {
                if drop > tolerance {
                    return false;
                }
                inversions += 1;
            }
        }
        inversions <= allowed_inversions
    }
}

/// Runs embedding, k-means and scoring for one `(t, seed)` cell.
pub fn cluster_once(l: &SymMatrix, labels: &[usize], cfg: &ClusteringConfig, t: usize, seed: u64) -> Result<f64> {
    let rng = RandomSource::new(seed);
    let embedding = spectral_embed(l, cfg.k, t, &rng, &cfg.embed)?;
    let points: Vec<Vec<f64>> = (0..embedding.rows()).map(|i| embedding.row(i)).collect();
    let mut km_rng = rng.substream(KMEANS_STREAM);
    let result = kmeans(&points, cfg.k_clusters, &mut km_rng, cfg.max_iters)?;
    mutual_information(&result.assignments, labels)
}

/// Full sweep over `t_values × seeds`. The graph and Laplacian are built once;
/// cells run on up to `cfg.jobs` threads and results keep sweep order.
pub fn run_clustering_experiment(data: &Dataset, cfg: &ClusteringConfig) -> Result<ClusteringReport> {
    if cfg.t_values.is_empty() || cfg.seeds.is_empty() {
        return Err(Error::InvalidArgument("need at least one t value and one seed".into()));
    }
    let graph = build_rnn_graph(data, cfg.r)?;
    let l = normalized_laplacian(&graph)?;
    let cells: Vec<(usize, u64)> = cfg
        .t_values
        .iter()
        .flat_map(|&t| cfg.seeds.iter().map(move |&s| (t, s)))
        .collect();
    let jobs = cfg.jobs.clamp(1, cells.len());
    let mut results: Vec<Option<Result<f64>>> = (0..cells.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunk = cells.len().div_ceil(jobs);
        for (cell_chunk, out_chunk) in cells.chunks(chunk).zip(results.chunks_mut(chunk)) {
            let l = &l;
            scope.spawn(move || {
                for (&(t, seed), out) in cell_chunk.iter().zip(out_chunk) {
                    *out = Some(cluster_once(l, &data.labels, cfg, t, seed));
                }
            });
        }
    });
    let mut rows = Vec::with_capacity(cells.len());
    for (&(t, seed), r) in cells.iter().zip(results) {
        let mi = r.ok_or_else(|| Error::Invariant("clustering cell did not run".into()))??;
        rows.push(MiRow { t, seed, mi });
    }
    let summary = cfg
        .t_values
        .iter()
        .map(|&t| {
            let v: Vec<f64> = rows.iter().filter(|r| r.t == t).map(|r| r.mi).collect();
            let mean = v.iter().sum::<f64>() / v.len() as f64;
            let var = if v.len() > 1 {
                v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (v.len() - 1) as f64
            } else {
                0.0
            };
            MiSummary { t, mean_mi: mean, std_mi: var.sqrt() }
        })
        .collect();
    Ok(ClusteringReport { rows, summary })
}

/// Writes `mi_vs_t.csv` and `mi_summary.csv` into `dir`.
pub fn write_clustering_outputs(dir: &Path, report: &ClusteringReport) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut rows = CsvWriter::new(&["t", "seed", "mi"]);
    for r in &report.rows {
        rows.row(&[r.t.to_string(), r.seed.to_string(), fmt_f64(r.mi)]);
    }
    rows.write_to(&dir.join("mi_vs_t.csv"))?;
    let mut summary = CsvWriter::new(&["t", "mean_mi", "std_mi"]);
    for s in &report.summary {
        summary.row(&[s.t.to_string(), fmt_f64(s.mean_mi), fmt_f64(s.std_mi)]);
    }
    summary.comment(&format!("trend_non_decreasing={}", report.trend_non_decreasing(TREND_ALLOWED_INVERSIONS, TREND_TOLERANCE)));
    summary.write_to(&dir.join("mi_summary.csv"))
}
