use std::path::Path;

use crate::csvio::read_text;
use crate::error::{Error, Result};
use crate::linalg::RandomSource;

/// Samples with integer ground-truth labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// One row per sample.
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
}

impl Dataset {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::DimensionMismatch { expected: features.len(), got: labels.len() });
        }
        let p = features.first().map_or(0, Vec::len);
        for (i, row) in features.iter().enumerate() {
            if row.len() != p {
                return Err(Error::DimensionMismatch { expected: p, got: row.len() });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument(format!("sample {i} has a non-finite feature")));
            }
        }
        if let (Some(&lo), Some(&hi)) = (labels.iter().min(), labels.iter().max()) {
            let mut seen = vec![false; hi - lo + 1];
            for &l in &labels {
                seen[l - lo] = true;
            }
            if let Some(gap) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidArgument(format!("label {} is missing from the range", lo + gap)));
            }
        }
        Ok(Dataset { features, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn feature_dim(&self) -> usize {
        self.features.first().map_or(0, Vec::len)
    }

    /// Parses CSV text with a header row and a `label` column; every other
    /// column is a numeric feature. Leading `#` lines are ignored.
    pub fn from_csv(text: &str) -> Result<Self> {
        let ctx = "dataset csv";
        let mut lines = text
            .lines()
            .map(|l| l.trim_end_matches('\r'))
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| Error::parse(ctx, "missing header"))?
            .split(',')
            .map(str::trim)
            .collect();
        let label_col = header
            .iter()
            .position(|h| *h == "label")
            .ok_or_else(|| Error::parse(ctx, "no 'label' column"))?;
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for (n, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != header.len() {
                return Err(Error::parse(ctx, format!("row {} has {} fields, expected {}", n + 1, fields.len(), header.len())));
            }
            let mut row = Vec::with_capacity(fields.len() - 1);
            for (c, f) in fields.iter().enumerate() {
                if c == label_col {
                    labels.push(f.parse::<usize>().map_err(|e| Error::parse(ctx, format!("label '{f}': {e}")))?);
                } else {
                    row.push(f.parse::<f64>().map_err(|e| Error::parse(ctx, format!("feature '{f}': {e}")))?);
                }
            }
            features.push(row);
        }
        Dataset::new(features, labels)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_csv(&read_text(path)?)
    }

    /// CSV text with columns `x1..xp,label`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let cols: Vec<String> = (1..=self.feature_dim()).map(|i| format!("x{i}")).collect();
        out.push_str(&cols.join(","));
        out.push_str(",label\n");
        for (row, label) in self.features.iter().zip(&self.labels) {
            for v in row {
                out.push_str(&format!("{v:e},"));
            }
            out.push_str(&format!("{label}\n"));
        }
        out
    }
}

/// Isotropic Gaussian blobs: `clusters` centres drawn as `separation · N(0, I)`
/// and `n` samples spread round-robin over them with noise `spread · N(0, I)`.
pub fn synthetic_blobs(n: usize, clusters: usize, dim: usize, separation: f64, spread: f64, seed: u64) -> Result<Dataset> {
    if clusters == 0 || clusters > n || dim == 0 {
        return Err(Error::InvalidArgument("need 1 <= clusters <= n and dim >= 1".into()));
    }
    let mut rng = RandomSource::new(seed);
    let centres: Vec<Vec<f64>> = (0..clusters)
        .map(|_| rng.normal_vec(dim).into_iter().map(|v| separation * v).collect())
        .collect();
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let c = i % clusters;
        features.push(centres[c].iter().map(|m| m + spread * rng.normal()).collect());
        labels.push(c);
    }
    Dataset::new(features, labels)
}
