use crate::error::{Error, Result};
use crate::linalg::RandomSource;

pub const DEFAULT_MAX_ITERS: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    pub assignments: Vec<usize>,
    pub centers: Vec<Vec<f64>>,
    /// Within-cluster sum of squares after each Lloyd update.
    pub objective: Vec<f64>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centre; ties keep `current` if it is among the closest, else the
/// lowest index.
fn nearest(p: &[f64], centers: &[Vec<f64>], current: Option<usize>) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, center) in centers.iter().enumerate() {
        let d = sq_dist(p, center);
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    match current {
        Some(c) if sq_dist(p, &centers[c]) == best_d => c,
        _ => best,
    }
}

/// k-means++ seeding: first centre uniform, then proportional to squared
/// distance from the nearest chosen centre.
fn seed_centers(points: &[Vec<f64>], k: usize, rng: &mut RandomSource) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut chosen = vec![false; n];
    let first = rng.below(n);
    chosen[first] = true;
    let mut centers = vec![points[first].clone()];
    let mut dist: Vec<f64> = points.iter().map(|p| sq_dist(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = dist.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.uniform() * total;
            let mut acc = 0.0;
            let mut idx = dist.iter().rposition(|d| *d > 0.0).unwrap_or(n - 1);
            for (i, d) in dist.iter().enumerate() {
                acc += d;
                if acc > target && *d > 0.0 {
                    idx = i;
                    break;
                }
            }
            idx
        } else {
            // Every remaining point coincides with a centre.
            chosen.iter().position(|c| !c).unwrap_or(0)
        };
        chosen[pick] = true;
        centers.push(points[pick].clone());
        for (d, p) in dist.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, &points[pick]));
        }
    }
    centers
}

fn means(points: &[Vec<f64>], assign: &[usize], k: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let dim = points[0].len();
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &a) in points.iter().zip(assign) {
        counts[a] += 1;
        for (s, v) in sums[a].iter_mut().zip(p) {
            *s += v;
        }
    }
    for (s, &c) in sums.iter_mut().zip(&counts) {
        if c > 0 {
            for v in s.iter_mut() {
                *v /= c as f64;
            }
        }
    }
    (sums, counts)
}

/// Moves the point of the largest cluster farthest from its centre into each
/// empty cluster, recomputing centres until none is empty.
fn repair_empty(points: &[Vec<f64>], assign: &mut [usize], k: usize) -> Vec<Vec<f64>> {
    loop {
        let (centers, counts) = means(points, assign, k);
        let Some(empty) = counts.iter().position(|c| *c == 0) else {
            return centers;
        };
        let largest = (0..k).max_by_key(|&c| (counts[c], std::cmp::Reverse(c))).unwrap_or(0);
        let far = (0..points.len())
            .filter(|&i| assign[i] == largest)
            .max_by(|&a, &b| {
                sq_dist(&points[a], &centers[largest])
                    .total_cmp(&sq_dist(&points[b], &centers[largest]))
                    .then(b.cmp(&a))
            })
            .unwrap_or(0);
        assign[far] = empty;
    }
}

/// Lloyd's algorithm from k-means++ seeds, stopping at an assignment fixpoint
/// or after `max_iters` updates.
pub fn kmeans(points: &[Vec<f64>], k_clusters: usize, rng: &mut RandomSource, max_iters: usize) -> Result<KMeansResult> {
    let n = points.len();
    if k_clusters == 0 || k_clusters > n {
        return Err(Error::InvalidArgument(format!("cluster count {k_clusters} must lie in [1, {n}]")));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidArgument("points have differing dimensions".into()));
    }
    let seeds = seed_centers(points, k_clusters, rng);
    let sse = |assign: &[usize], centers: &[Vec<f64>]| -> f64 {
        points.iter().zip(assign).map(|(p, &a)| sq_dist(p, &centers[a])).sum()
    };
    let mut assign: Vec<usize> = points.iter().map(|p| nearest(p, &seeds, None)).collect();
    let mut centers = repair_empty(points, &mut assign, k_clusters);
    let mut objective = vec![sse(&assign, &centers)];
    for _ in 0..max_iters {
        let next: Vec<usize> = points
            .iter()
            .zip(&assign)
            .map(|(p, &a)| nearest(p, &centers, Some(a)))
            .collect();
        if next == assign {
            break;
        }
        assign = next;
        centers = repair_empty(points, &mut assign, k_clusters);
        objective.push(sse(&assign, &centers));
    }
    Ok(KMeansResult { assignments: assign, centers, objective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separated_pairs_recovered() {
        let pts = vec![vec![0.0, 0.0], vec![0.1, 0.0], vec![10.0, 10.0], vec![10.1, 10.0]];
        let r = kmeans(&pts, 2, &mut RandomSource::new(0), 300).unwrap();
        assert_eq!(r.assignments[0], r.assignments[1]);
        assert_eq!(r.assignments[2], r.assignments[3]);
        assert_ne!(r.assignments[0], r.assignments[2]);
    }

    #[test]
    fn one_cluster_per_point() {
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let r = kmeans(&pts, 5, &mut RandomSource::new(4), 300).unwrap();
        assert_eq!(*r.objective.last().unwrap(), 0.0);
        let mut a = r.assignments.clone();
        a.sort();
        a.dedup();
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn duplicates_do_not_leave_empty_clusters() {
        let pts = vec![vec![1.0]; 4];
        let r = kmeans(&pts, 3, &mut RandomSource::new(2), 300).unwrap();
        let mut a = r.assignments.clone();
        a.sort();
        a.dedup();
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn too_many_clusters_rejected() {
        assert!(kmeans(&[vec![0.0]], 2, &mut RandomSource::new(0), 10).is_err());
    }
}
