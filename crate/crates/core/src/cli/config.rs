//! Experiment configuration: flat `key = value` files merged under command-line
//! flags, then validated before any computation starts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::clustering::{EmbedOptions, SpectrumEnd, DEFAULT_MAX_ITERS};
use crate::csvio::read_text;
use crate::error::{Error, Result};
use crate::linalg::SpectrumKind;

/// Environment variable that overrides the output directory.
pub const OUT_ENV: &str = "DEFLATRIX_OUT";

/// Parsed `key = value` file. Blank lines and `#` comments are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
    source: String,
}

impl ConfigFile {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(source, format!("line {}: expected key = value", n + 1)))?;
            let key = key.trim().to_string();
            if key.is_empty() {
                return Err(Error::parse(source, format!("line {}: empty key", n + 1)));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::parse(source, format!("duplicate key '{key}'")));
            }
        }
        Ok(ConfigFile { entries, source: source.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?, &path.display().to_string())
    }

    /// Rejects any key outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::parse(
                &self.source,
                format!("unknown key '{k}' (expected one of: {})", allowed.join(", ")),
            )),
            None => Ok(()),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|e| Error::parse(&self.source, format!("{key}: {e}"))))
            .transpose()
    }
}

/// Comma-separated list, as used by `--slices`, `--t-values` and `--seeds`.
pub fn parse_list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|e| Error::parse(what, format!("'{}': {e}", s.trim()))))
        .collect()
}

/// Output directory: flag, then environment, then file, then `default`.
pub fn resolve_out(flag: Option<PathBuf>, file: &ConfigFile, default: &str) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .or_else(|| file.raw("out").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(default))
}

fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str, default: T) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    Ok(match flag {
        Some(v) => v,
        None => file.get(key)?.unwrap_or(default),
    })
}

fn pick_opt<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key),
    }
}

fn pick_list<T: FromStr>(flag: Option<Vec<T>>, file: &ConfigFile, key: &str) -> Result<Option<Vec<T>>>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.raw(key).map(|s| parse_list(s, key)).transpose(),
    }
}

/// Flag values for the deflation commands; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct DeflateOverrides {
    pub d: Option<usize>,
    pub k_count: Option<usize>,
    pub t: Option<usize>,
    pub spectrum: Option<SpectrumKind>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub slices: Option<Vec<usize>>,
    pub epsilon: Option<f64>,
    pub residual_tol: Option<f64>,
}

/// Validated settings for `deflate` and `bounds`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub d: usize,
    pub k_count: usize,
    pub t: usize,
    pub seed: u64,
    pub spectrum: SpectrumKind,
    pub out: PathBuf,
    /// 1-based eigenvector indices traced in the figure CSVs.
    pub slices: Vec<usize>,
    pub epsilon: Option<f64>,
    /// Early-stop residual for power iteration; off unless set.
    pub residual_tol: Option<f64>,
}

pub const DEFLATE_KEYS: &[&str] = &["d", "K", "t", "spectrum", "seed", "out", "slices", "epsilon", "residual_tol"];

/// Quartile indices `d/4, d/2, 3d/4, d`, deduplicated.
pub fn default_slices(d: usize) -> Vec<usize> {
    let mut s: Vec<usize> = [d / 4, d / 2, 3 * d / 4, d].into_iter().filter(|&j| j >= 1).collect();
    s.dedup();
    s
}

impl ExperimentConfig {
    pub fn resolve(flags: DeflateOverrides, file: &ConfigFile) -> Result<Self> {
        file.check_keys(DEFLATE_KEYS)?;
        let d = pick(flags.d, file, "d", 20)?;
        let cfg = ExperimentConfig {
            d,
            k_count: pick(flags.k_count, file, "K", d.min(10))?,
            t: pick(flags.t, file, "t", 100)?,
            seed: pick(flags.seed, file, "seed", 0)?,
            spectrum: pick(flags.spectrum, file, "spectrum", SpectrumKind::PowerLaw(1.0))?,
            out: resolve_out(flags.out, file, "out"),
            slices: pick_list(flags.slices, file, "slices")?.unwrap_or_else(|| default_slices(d)),
            epsilon: pick_opt(flags.epsilon, file, "epsilon")?,
            residual_tol: pick_opt(flags.residual_tol, file, "residual_tol")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.d == 0 {
            return bad("d must be at least 1".into());
        }
        if self.k_count == 0 || self.k_count > self.d {
            return bad(format!("K = {} must lie in [1, d = {}]", self.k_count, self.d));
        }
        if self.t == 0 {
            return bad("t must be at least 1".into());
        }
        if let Some(j) = self.slices.iter().find(|&&j| j == 0 || j > self.d) {
            return bad(format!("slice {j} outside [1, {}]", self.d));
        }
        if matches!(self.epsilon, Some(e) if !(e > 0.0 && e.is_finite())) {
            return bad("epsilon must be positive".into());
        }
        if matches!(self.residual_tol, Some(r) if !(r >= 0.0 && r.is_finite())) {
            return bad("residual tolerance must be non-negative".into());
        }
        // A malformed spectrum is a usage error here, not a numerical one.
        self.spectrum
            .eigenvalues(self.d)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(())
    }
}

/// Flag values for the clustering sweep.
#[derive(Debug, Clone, Default)]
pub struct ClusterOverrides {
    pub data: Option<PathBuf>,
    pub synthetic: bool,
    pub n: Option<usize>,
    pub clusters: Option<usize>,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub t_values: Option<Vec<usize>>,
    pub seeds: Option<Vec<u64>>,
    pub spectrum_end: Option<SpectrumEnd>,
    pub row_normalize: bool,
    pub jobs: Option<usize>,
    pub max_iters: Option<usize>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    File(PathBuf),
    /// Gaussian blobs with the given size, drawn from the dataset seed 0.
    Synthetic { n: usize, clusters: usize },
}

/// Validated settings for `cluster`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSettings {
    pub source: DataSource,
    pub r: usize,
    pub k: usize,
    pub k_clusters: usize,
    pub t_values: Vec<usize>,
    pub seeds: Vec<u64>,
    pub embed: EmbedOptions,
    pub jobs: usize,
    pub max_iters: usize,
    pub out: PathBuf,
}

pub const CLUSTER_KEYS: &[&str] = &[
    "data",
    "synthetic",
    "n",
    "clusters",
    "r",
    "k",
    "t_values",
    "seeds",
    "spectrum_end",
    "row_normalize",
    "jobs",
    "max_iters",
    "out",
];

impl ClusterSettings {
    pub fn resolve(flags: ClusterOverrides, file: &ConfigFile) -> Result<Self> {
        file.check_keys(CLUSTER_KEYS)?;
        let data = pick_opt(flags.data, file, "data")?;
        let synthetic = flags.synthetic || file.get::<bool>("synthetic")?.unwrap_or(false);
        let k_clusters = pick(flags.clusters, file, "clusters", 10)?;
        let source = match (data, synthetic) {
            (Some(_), true) => {
                return Err(Error::InvalidArgument("--data and --synthetic are mutually exclusive".into()))
            }
            (Some(p), false) => DataSource::File(p),
            (None, true) => DataSource::Synthetic { n: pick(flags.n, file, "n", 500)?, clusters: k_clusters },
            (None, false) => return Err(Error::InvalidArgument("one of --data or --synthetic is required".into())),
        };
        let row_normalize = flags.row_normalize || file.get::<bool>("row_normalize")?.unwrap_or(false);
        let s = ClusterSettings {
            source,
            r: pick(flags.r, file, "r", 10)?,
            k: pick(flags.k, file, "k", k_clusters)?,
            k_clusters,
            t_values: pick_list(flags.t_values, file, "t_values")?.unwrap_or_else(|| vec![5, 20, 100]),
            seeds: pick_list(flags.seeds, file, "seeds")?.unwrap_or_else(|| (0..5).collect()),
            embed: EmbedOptions {
                end: pick(flags.spectrum_end, file, "spectrum_end", SpectrumEnd::Top)?,
                row_normalize,
            },
            jobs: pick(flags.jobs, file, "jobs", 1)?,
            max_iters: pick(flags.max_iters, file, "max_iters", DEFAULT_MAX_ITERS)?,
            out: resolve_out(flags.out, file, "out"),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.r == 0 || self.k == 0 || self.k_clusters == 0 {
            return bad("r, k and the cluster count must be positive");
        }
        if self.t_values.is_empty() || self.t_values.contains(&0) {
            return bad("t values must be a non-empty list of positive integers");
        }
        if self.seeds.is_empty() {
            return bad("at least one seed is required");
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1");
        }
        if let DataSource::Synthetic { n, clusters } = self.source {
            if clusters > n {
                return bad("more clusters than samples");
            }
        }
        Ok(())
    }
}
