use crate::clustering::Dataset;
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// Symmetric r-nearest-neighbour similarity graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityGraph {
    pub weights: SymMatrix,
    pub r: usize,
}

/// Connects `i` and `j` when either is among the other's `r` nearest
/// neighbours (ties at equal distance go to the lower index), with weight
/// `exp(−½‖x_i − x_j‖²)`.
pub fn build_rnn_graph(data: &Dataset, r: usize) -> Result<SimilarityGraph> {
    let n = data.len();
    if r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!("neighbour count {r} must lie in [1, {})", n)));
    }
    let sq = SymMatrix::from_upper_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            data.features[i]
                .iter()
                .zip(&data.features[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum()
        }
    });
    let mut linked = vec![false; n * n];
    for i in 0..n {
        for j in nearest_neighbours(&sq, i, r) {
            linked[i * n + j] = true;
            linked[j * n + i] = true;
        }
    }
    let weights = SymMatrix::from_upper_fn(n, |i, j| {
        if i != j && linked[i * n + j] {
            (-0.5 * sq.get(i, j)).exp()
        } else {
            0.0
        }
    });
    Ok(SimilarityGraph { weights, r })
}

/// The `r` nodes closest to `i` by squared distance, lower index first on ties.
fn nearest_neighbours(sq: &SymMatrix, i: usize, r: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sq.dim()).filter(|&j| j != i).collect();
    order.sort_by(|&a, &b| sq.get(i, a).total_cmp(&sq.get(i, b)).then(a.cmp(&b)));
    order.truncate(r);
    order
}

/// `L = I − D^{-1/2} A D^{-1/2}`
pub fn normalized_laplacian(g: &SimilarityGraph) -> Result<SymMatrix> {
    let n = g.weights.dim();
    let mut inv_sqrt = Vec::with_capacity(n);
    for i in 0..n {
        let deg: f64 = g.weights.row(i).iter().sum();
        if !(deg > 0.0) {
            return Err(Error::IsolatedNode { index: i });
        }
        inv_sqrt.push(1.0 / deg.sqrt());
    }
    Ok(SymMatrix::from_upper_fn(n, |i, j| {
        let off = g.weights.get(i, j) * inv_sqrt[i] * inv_sqrt[j];
        if i == j {
            1.0 - off
        } else {
            -off
        }
    }))
}
