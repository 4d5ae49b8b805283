use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix};

/// Seeded, platform-independent random stream.
///
/// A source is identified by `(seed, stream)`. [`RandomSource::substream`]
/// derives an independent stream for step `k` that does not depend on how
/// many draws were taken from the parent.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Independent stream keyed by `(seed, k)`. Stream 0 is the root itself,
    /// so step keys start at 1.
    pub fn substream(&self, k: u64) -> RandomSource {
        Self::with_stream(self.seed, k.wrapping_add(1))
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform integer in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn normal_vec(&mut self, d: usize) -> Vec<f64> {
        (0..d).map(|_| self.normal()).collect()
    }
}

/// Uniform draw from the unit sphere in `R^d` (normalized Gaussian vector).
pub fn sample_unit_sphere(d: usize, rng: &mut RandomSource) -> Result<Vec<f64>> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    loop {
        let g = rng.normal_vec(d);
        if let Some(u) = vector::normalized(&g) {
            return Ok(u);
        }
    }
}

/// Haar-distributed orthogonal matrix: Householder QR of a Gaussian matrix,
/// with column signs fixed so that `R` has a positive diagonal.
pub fn random_orthogonal_basis(d: usize, rng: &mut RandomSource) -> Result<Matrix> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    // Column-major working copy of the Gaussian matrix.
    let mut a: Vec<Vec<f64>> = (0..d).map(|_| rng.normal_vec(d)).collect();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut r_diag_sign = vec![1.0; d];

    for k in 0..d {
        let x = &a[k][k..];
        let alpha = vector::norm(x);
        let mut v = x.to_vec();
        let sign = if x[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vn = vector::norm(&v);
        if vn == 0.0 {
            reflectors.push(vec![0.0; d - k]);
            continue;
        }
        vector::scale(&mut v, 1.0 / vn);
        // R[k][k] = -sign * alpha after reflection.
        r_diag_sign[k] = if sign > 0.0 { -1.0 } else { 1.0 };
        for col in a.iter_mut().skip(k) {
            let seg = &mut col[k..];
            let proj = 2.0 * vector::dot(&v, seg);
            vector::axpy(seg, -proj, &v);
        }
        reflectors.push(v);
    }

    // Q = H_0 H_1 ... H_{d-1}; apply the reflectors to the identity in reverse.
    let mut q = Matrix::identity(d);
    for j in 0..d {
        let col = q.col_mut(j);
        for k in (0..d).rev() {
            let v = &reflectors[k];
            let seg = &mut col[k..];
            let proj = 2.0 * vector::dot(v, seg);
            vector::axpy(seg, -proj, v);
        }
        vector::scale(col, r_diag_sign[j]);
    }
    Ok(q)
}
