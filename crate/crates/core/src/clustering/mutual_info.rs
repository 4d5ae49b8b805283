use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Mutual information (natural log) between two labelings of the same
/// samples; empty joint cells contribute zero.
pub fn mutual_information(c: &[usize], c_star: &[usize]) -> Result<f64> {
    if c.len() != c_star.len() {
        return Err(Error::DimensionMismatch { expected: c.len(), got: c_star.len() });
    }
    if c.is_empty() {
        return Ok(0.0);
    }
    let n = c.len() as f64;
    let mut joint: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut left: BTreeMap<usize, f64> = BTreeMap::new();
    let mut right: BTreeMap<usize, f64> = BTreeMap::new();
    for (&a, &b) in c.iter().zip(c_star) {
        *joint.entry((a, b)).or_default() += 1.0;
        *left.entry(a).or_default() += 1.0;
        *right.entry(b).or_default() += 1.0;
    }
    let mi: f64 = joint
        .iter()
        .map(|(&(a, b), &count)| {
            let p = count / n;
            p * (p / (left[&a] / n * (right[&b] / n))).ln()
        })
        .sum();
    Ok(mi.max(0.0))
}

/// Shannon entropy (natural log) of a labeling.
pub fn entropy(labels: &[usize]) -> f64 {
    let n = labels.len() as f64;
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_default() += 1.0;
    }
    counts.values().map(|&c| -(c / n) * (c / n).ln()).sum()
}
