use std::fmt;
use std::str::FromStr;

use crate::deflation::{deflate, PowerIterationSolver};
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, RandomSource, SymMatrix};

/// Which end of the Laplacian spectrum feeds the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpectrumEnd {
    /// Top eigenvectors of `L`.
    #[default]
    Top,
    /// Bottom eigenvectors of `L`, found as the top of `2I − L`.
    Bottom,
}

impl fmt::Display for SpectrumEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumEnd::Top => "top",
            SpectrumEnd::Bottom => "bottom",
        })
    }
}

impl FromStr for SpectrumEnd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "top" => Ok(SpectrumEnd::Top),
            "bottom" => Ok(SpectrumEnd::Bottom),
            other => Err(Error::parse("spectrum end", format!("expected top or bottom, got '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmbedOptions {
    pub end: SpectrumEnd,
    /// Scale each embedded row to unit length.
    pub row_normalize: bool,
}

/// `n × k` embedding whose columns are the deflation outputs `v_1 … v_k`
/// computed with `t`-step power iteration. Laplacians can have repeated
/// eigenvalues, so no spectral-gap assumption is checked here.
pub fn spectral_embed(l: &SymMatrix, k: usize, t: usize, rng: &RandomSource, opts: &EmbedOptions) -> Result<Matrix> {
    let n = l.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("embedding size {k} must lie in [1, {n}]")));
    }
    let target = match opts.end {
        SpectrumEnd::Top => l.clone(),
        SpectrumEnd::Bottom => SymMatrix::identity(n).scaled(2.0).sub(l)?,
    };
    let mut solver = PowerIterationSolver::new(t, rng.clone());
    let out = deflate(&target, k, &mut solver)?;
    let mut m = Matrix::from_columns(&out.vectors)?;
    if opts.row_normalize {
        for i in 0..n {
            let row = m.row(i);
            let norm = vector::norm(&row);
            if norm > 0.0 {
                for (j, v) in row.iter().enumerate() {
                    m.set(i, j, v / norm);
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{abs_alignment, jacobi_eigendecomposition};

    #[test]
    fn single_vector_matches_oracle() {
        let l = SymMatrix::from_upper_fn(5, |i, j| if i == j { 1.0 } else { -0.1 / (1.0 + (i + j) as f64) });
        let oracle = jacobi_eigendecomposition(&l, &Default::default()).unwrap();
        let e = spectral_embed(&l, 1, 2000, &RandomSource::new(3), &EmbedOptions::default()).unwrap();
        assert!(abs_alignment(e.col(0), oracle.vector(0)) >= 1.0 - 1e-8);
    }

    #[test]
    fn bottom_end_picks_smallest() {
        let l = SymMatrix::from_diagonal(&[0.0, 1.0, 1.5]);
        let opts = EmbedOptions { end: SpectrumEnd::Bottom, row_normalize: false };
        let e = spectral_embed(&l, 1, 500, &RandomSource::new(1), &opts).unwrap();
        assert!(e.col(0)[0].abs() > 1.0 - 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let l = SymMatrix::from_upper_fn(6, |i, j| ((i * 7 + j * 3) % 5) as f64 / 10.0);
        let a = spectral_embed(&l, 3, 10, &RandomSource::new(8), &EmbedOptions::default()).unwrap();
        let b = spectral_embed(&l, 3, 10, &RandomSource::new(8), &EmbedOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn end_parses() {
        assert_eq!("bottom".parse::<SpectrumEnd>().unwrap(), SpectrumEnd::Bottom);
        assert!("middle".parse::<SpectrumEnd>().is_err());
    }
}
