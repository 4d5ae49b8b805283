use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, SymMatrix};

/// Eigenvalues in descending order with the matching orthonormal basis;
/// column `j` of `basis` is the eigenvector of `eigenvalues[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub basis: Matrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvector `j` (0-based).
    pub fn vector(&self, j: usize) -> &[f64] {
        self.basis.col(j)
    }

    /// `Σ_j λ_j u_j u_jᵀ`
    pub fn reconstruct(&self) -> SymMatrix {
        self.partial_sum(0)
    }

    /// `Σ_{j >= from} λ_j u_j u_jᵀ` (0-based `from`).
    pub fn partial_sum(&self, from: usize) -> SymMatrix {
        let d = self.dim();
        SymMatrix::from_upper_fn(d, |i, j| {
            (from..d)
                .map(|k| self.eigenvalues[k] * (self.basis.get(i, k) * self.basis.get(j, k)))
                .sum()
        })
    }
}

/// Shape of a synthetic test spectrum. All generated shapes have `λ_1 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumKind {
    /// `λ_j = j^(-γ)`
    PowerLaw(f64),
    /// `λ_j = ρ^(j-1)`
    Exponential(f64),
    /// Explicit descending list, used as given.
    Explicit(Vec<f64>),
}

impl SpectrumKind {
    pub fn eigenvalues(&self, d: usize) -> Result<Vec<f64>> {
        let vals: Vec<f64> = match self {
            SpectrumKind::PowerLaw(g) => {
                if !(*g > 0.0 && g.is_finite()) {
                    return Err(Error::InvalidSpectrum(format!("power-law exponent {g} must be positive")));
                }
                (1..=d).map(|j| (j as f64).powf(-g)).collect()
            }
            SpectrumKind::Exponential(r) => {
                if !(*r > 0.0 && *r < 1.0) {
                    return Err(Error::InvalidSpectrum(format!("exponential ratio {r} must lie in (0, 1)")));
                }
                (0..d).map(|j| r.powi(j as i32)).collect()
            }
            SpectrumKind::Explicit(list) => {
                if list.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, got: list.len() });
                }
                list.clone()
            }
        };
        check_strictly_decreasing_positive(&vals)?;
        Ok(vals)
    }
}

pub(crate) fn check_strictly_decreasing_positive(vals: &[f64]) -> Result<()> {
    if vals.is_empty() {
        return Err(Error::InvalidSpectrum("empty spectrum".into()));
    }
    for (j, v) in vals.iter().enumerate() {
        if !(*v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidSpectrum(format!("eigenvalue {} = {v} is not positive", j + 1)));
        }
        if j > 0 && !(vals[j - 1] > *v) {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalues {} and {} are not strictly decreasing",
                j,
                j + 1
            )));
        }
    }
    Ok(())
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumKind::PowerLaw(g) => write!(f, "power-law:{g}"),
            SpectrumKind::Exponential(r) => write!(f, "exponential:{r}"),
            SpectrumKind::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "explicit:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for SpectrumKind {
    type Err = Error;

    /// Accepts `power-law:<γ>`, `exponential:<ρ>` and `explicit:<λ1>,<λ2>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::parse("spectrum", format!("expected <kind>:<value>, got '{s}'")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::parse("spectrum", format!("'{t}': {e}")))
        };
        match name {
            "power-law" => Ok(SpectrumKind::PowerLaw(num(arg)?)),
            "exponential" => Ok(SpectrumKind::Exponential(num(arg)?)),
            "explicit" => Ok(SpectrumKind::Explicit(
                arg.split(',').map(num).collect::<Result<_>>()?,
            )),
            other => Err(Error::parse("spectrum", format!("unknown spectrum kind '{other}'"))),
        }
    }
}

/// Builds `Σ = U diag(λ) Uᵀ` and returns it with its exact spectrum.
pub fn build_test_sigma(d: usize, kind: &SpectrumKind, basis: &Matrix) -> Result<(SymMatrix, Spectrum)> {
    if basis.rows() != d || basis.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: basis.rows().max(basis.cols()) });
    }
    let err = basis.orthonormality_error();
    if err > 1e-10 {
        return Err(Error::InvalidArgument(format!("basis is not orthonormal (error {err:e})")));
    }
    let eigenvalues = kind.eigenvalues(d)?;
    let spectrum = Spectrum { eigenvalues, basis: basis.clone() };
    Ok((spectrum.reconstruct(), spectrum))
}

/// `|uᵀû|` for two unit vectors; 1 means equal up to sign.
pub fn abs_alignment(u: &[f64], v: &[f64]) -> f64 {
    vector::dot(u, v).abs()
}
