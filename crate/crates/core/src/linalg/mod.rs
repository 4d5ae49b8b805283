//! Dense symmetric linear algebra: matrices, the Jacobi eigensolver used as
//! ground truth, seeded randomness and synthetic test matrices.

mod jacobi;
mod matrix;
mod random;
mod spectrum;
pub mod vector;

pub use jacobi::{jacobi_eigendecomposition, JacobiOptions};
pub use matrix::{Matrix, SymMatrix};
pub use random::{random_orthogonal_basis, sample_unit_sphere, RandomSource};
pub use spectrum::{abs_alignment, build_test_sigma, Spectrum, SpectrumKind};
pub(crate) use spectrum::check_strictly_decreasing_positive;

/// Free-function form of [`SymMatrix::mat_vec`].
pub fn mat_vec(m: &SymMatrix, x: &[f64]) -> crate::Result<Vec<f64>> {
    m.mat_vec(x)
}

pub fn frobenius_norm(m: &SymMatrix) -> f64 {
    m.frobenius_norm()
}

pub fn spectral_norm(m: &SymMatrix) -> crate::Result<f64> {
    m.spectral_norm()
}
