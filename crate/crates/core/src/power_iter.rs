//! Power iteration with a fixed step budget, plus the error and alignment
//! bounds used to analyse it.

use crate::error::{Error, Result};
use crate::linalg::{vector, SymMatrix};

/// Norm below which an iterate is treated as collapsed.
pub const DEGENERATE_NORM: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIterResult {
    /// Final unit iterate.
    pub x: Vec<f64>,
    /// `xᵀ M x` at the final iterate.
    pub rayleigh: f64,
    /// Multiplications actually performed.
    pub steps: usize,
    /// Starting vector.
    pub init: Vec<f64>,
    /// `|x_0ᵀ u|` against a reference top eigenvector, when one is supplied.
    pub c0_reciprocal: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PowerIterOptions {
    /// Stop early once `‖M x − (xᵀMx) x‖` falls to this value. Off by default,
    /// so that exactly `t` steps run.
    pub residual_tol: Option<f64>,
}

/// Runs exactly `t` steps of `x ← M x / ‖M x‖` from the unit vector `x0`.
pub fn power_iterate(m: &SymMatrix, x0: &[f64], t: usize) -> Result<PowerIterResult> {
    power_iterate_with(m, x0, t, &PowerIterOptions::default())
}

pub fn power_iterate_with(
    m: &SymMatrix,
    x0: &[f64],
    t: usize,
    opts: &PowerIterOptions,
) -> Result<PowerIterResult> {
    vector::check_len(x0, m.dim())?;
    vector::check_unit(x0)?;
    let mut x = x0.to_vec();
    let mut mx = vec![0.0; m.dim()];
    let mut steps = 0;
    while steps < t {
        m.mat_vec_into(&x, &mut mx);
        if let Some(tol) = opts.residual_tol {
            let rq = vector::dot(&x, &mx);
            let res: f64 = mx
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - rq * b) * (a - rq * b))
                .sum::<f64>()
                .sqrt();
            if res <= tol {
                break;
            }
        }
        let n = vector::norm(&mx);
        if !(n >= DEGENERATE_NORM) {
            return Err(Error::DegenerateIterate { step: steps + 1 });
        }
        for (xi, yi) in x.iter_mut().zip(&mx) {
            *xi = yi / n;
        }
        steps += 1;
    }
    let rayleigh = m.quad_form(&x)?;
    Ok(PowerIterResult {
        x,
        rayleigh,
        steps,
        init: x0.to_vec(),
        c0_reciprocal: None,
    })
}

impl PowerIterResult {
    /// Records `|x_0ᵀ u|` for a reference eigenvector `u`.
    pub fn with_reference(mut self, u: &[f64]) -> Self {
        self.c0_reciprocal = Some(vector::dot(&self.init, u).abs());
        self
    }
}

fn check_top_two(sigma1: f64, sigma2: f64) -> Result<()> {
    if !(sigma2 >= 0.0 && sigma1 > sigma2 && sigma1.is_finite()) {
        return Err(Error::InvalidSpectrum(format!(
            "need sigma1 > sigma2 >= 0, got {sigma1} and {sigma2}"
        )));
    }
    Ok(())
}

/// Worst-case distance bound `√2 (σ2/σ1)^t` for the final iterate.
///
/// Only valid for starts with `|x_0ᵀ a_1| >= 1/√2`; see
/// [`pi_error_bound_from_init`] for a bound that holds for any start.
pub fn pi_error_bound(sigma1: f64, sigma2: f64, t: usize) -> Result<f64> {
    check_top_two(sigma1, sigma2)?;
    Ok(2f64.sqrt() * (sigma2 / sigma1).powi(t as i32))
}

/// Distance bound `min(√2, √(c0² − 1) (σ2/σ1)^t)` with `c0 = 1/|x_0ᵀ a_1|`.
///
/// Follows from `tan θ_t <= tan θ_0 (σ2/σ1)^t` and `2 sin(θ/2) <= tan θ`.
pub fn pi_error_bound_from_init(sigma1: f64, sigma2: f64, c0: f64, t: usize) -> Result<f64> {
    check_top_two(sigma1, sigma2)?;
    if !(c0 >= 1.0) {
        return Err(Error::InvalidArgument(format!("c0 must be >= 1, got {c0}")));
    }
    let tan0 = (c0 * c0 - 1.0).sqrt();
    Ok((tan0 * (sigma2 / sigma1).powi(t as i32)).min(2f64.sqrt()))
}

/// Alignment bound `c0 ((σ_j/σ1)^t + σ_j/(σ1 − σ_j) ‖H a_j‖)` for the iterate
/// run on `M + H` against the eigenvector `a_j` of `M`.
pub fn pi_alignment_bound(
    sigma1: f64,
    sigma_j: f64,
    c0: f64,
    t: usize,
    perturbation_norm: f64,
) -> Result<f64> {
    check_top_two(sigma1, sigma_j)?;
    let ratio = sigma_j / sigma1;
    Ok(c0 * (ratio.powi(t as i32) + sigma_j / (sigma1 - sigma_j) * perturbation_norm))
}

/// Alignment bound `c0 ((σ_j/σ1)^t + ‖H a_j‖/(σ1 − σ_j))`, valid when `σ1`
/// is the spectral radius of `M + H` and `0 <= σ_j < σ1`.
///
/// Unrolling `x̂_tᵀa_j = σ_j x̂_{t−1}ᵀa_j + x̂_{t−1}ᵀH a_j` gives the weights
/// `σ_j^{t−1−t'}` on the perturbation terms; [`pi_alignment_bound`] uses
/// `σ_j^{t−t'}` and so carries an extra factor `σ_j` that can fail for
/// small `σ_j`.
pub fn pi_alignment_bound_rigorous(
    sigma1: f64,
    sigma_j: f64,
    c0: f64,
    t: usize,
    perturbation_norm: f64,
) -> Result<f64> {
    check_top_two(sigma1, sigma_j)?;
    let ratio = sigma_j / sigma1;
    Ok(c0 * (ratio.powi(t as i32) + perturbation_norm / (sigma1 - sigma_j)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitAlignment {
    /// `|x_0ᵀ u|`
    pub abs_inner: f64,
    /// `1/√(1 + 2 d³)`
    pub threshold: f64,
    pub passes: bool,
}

/// Checks the random-start alignment event `|x_0ᵀ u| >= 1/√(1 + 2d³)`.
pub fn check_init_alignment(x0: &[f64], u: &[f64]) -> Result<InitAlignment> {
    vector::check_len(u, x0.len())?;
    let d = x0.len() as f64;
    let abs_inner = vector::dot(x0, u).abs();
    let threshold = 1.0 / (1.0 + 2.0 * d * d * d).sqrt();
    Ok(InitAlignment {
        abs_inner,
        threshold,
        passes: abs_inner >= threshold,
    })
}
