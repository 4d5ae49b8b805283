use crate::error::{Error, Result};
use crate::linalg::vector;

/// Real symmetric `d × d` matrix.
///
/// Storage is full row-major, but every constructor and every mutating
/// operation writes entry `(i, j)` and `(j, i)` from the same value, so the
/// matrix is exactly symmetric at all times.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = v;
        }
        m
    }

    /// Builds a matrix from its upper triangle: `f(i, j)` is called for `i <= j`.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Builds a matrix from row-major data, which must be exactly symmetric.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        vector::check_len(&data, dim * dim)?;
        for i in 0..dim {
            for j in (i + 1)..dim {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        if let Some(p) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite entry at ({}, {})",
                p / dim.max(1),
                p % dim.max(1)
            )));
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            vector::check_len(r, dim)?;
            data.extend_from_slice(r);
        }
        Self::from_row_major(dim, data)
    }

    /// Averages `a` with its transpose. Accepts any square row-major input.
    pub fn symmetrized(dim: usize, a: &[f64]) -> Result<Self> {
        vector::check_len(a, dim * dim)?;
        Ok(Self::from_upper_fn(dim, |i, j| {
            0.5 * (a[i * dim + j] + a[j * dim + i])
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// `M x`
    pub fn mat_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        vector::check_len(x, self.dim)?;
        let mut out = vec![0.0; self.dim];
        self.mat_vec_into(x, &mut out);
        Ok(out)
    }

    pub(crate) fn mat_vec_into(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = vector::dot(self.row(i), x);
        }
    }

    /// `xᵀ M x`
    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        let mx = self.mat_vec(x)?;
        Ok(vector::dot(x, &mx))
    }

    /// `xᵀ M y`
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        vector::check_len(x, self.dim)?;
        let my = self.mat_vec(y)?;
        Ok(vector::dot(x, &my))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest absolute eigenvalue, computed with the Jacobi oracle.
    pub fn spectral_norm(&self) -> Result<f64> {
        let spec = crate::linalg::jacobi_eigendecomposition(self, &Default::default())?;
        Ok(spec
            .eigenvalues
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs())))
    }

    /// `self + c v vᵀ`
    pub fn rank_one_update(&self, c: f64, v: &[f64]) -> Result<Self> {
        vector::check_len(v, self.dim)?;
        Ok(Self::from_upper_fn(self.dim, |i, j| {
            self.get(i, j) + c * (v[i] * v[j])
        }))
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &SymMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scaled(&self, c: f64) -> Self {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }
}

/// Dense column-major matrix, used for eigenbases and embeddings.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows * cols);
        for c in columns {
            vector::check_len(c, rows)?;
            data.extend_from_slice(c);
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// Largest entry of `|QᵀQ - I|`, i.e. the departure from orthonormal columns.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for a in 0..self.cols {
            for b in a..self.cols {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((vector::dot(self.col(a), self.col(b)) - target).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_construction_rejects_asymmetry() {
        let err = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { row: 0, col: 1 }));
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_ok());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn mat_vec_and_norms() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert_eq!(m.mat_vec(&[1.0, 1.0]).unwrap(), vec![3.0, 4.0]);
        assert_eq!(m.quad_form(&[1.0, 0.0]).unwrap(), 2.0);
        assert_eq!(m.frobenius_norm(), 15.0_f64.sqrt());
        let expected = (5.0 + 5.0_f64.sqrt()) / 2.0;
        assert!((m.spectral_norm().unwrap() - expected).abs() < 1e-13);
        assert!(m.mat_vec(&[1.0]).is_err());
    }

    #[test]
    fn rank_one_update_stays_symmetric() {
        let m = SymMatrix::identity(3);
        let v = [0.1, 0.7, -0.3];
        let r = m.rank_one_update(-0.37, &v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r.get(i, j), r.get(j, i));
            }
        }
        assert!((r.get(0, 1) + 0.37 * 0.07).abs() < 1e-16);
    }

    #[test]
    fn column_matrix_access() {
        let m = Matrix::from_columns(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(m.orthonormality_error(), 0.0);
        assert_eq!(m.row(1), vec![0.0, 1.0]);
    }
}
