//! Empirical error-propagation quantities for an instrumented deflation run,
//! the gated lemma checks built on them, and the figure CSVs.

mod checks;
mod figures;

pub use checks::*;
pub use figures::{write_fig2, write_fig3, write_fig4, write_figures};

use crate::deflation::{DeflationRun, GroundTruthTrace};
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigendecomposition, vector, JacobiOptions, SymMatrix};

/// Per-step measurements. Vectors indexed by `j` are 0-based over `u*_1 … u*_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDiagnostics {
    /// 1-based step index.
    pub k: usize,
    /// `‖v_k − u_k‖`
    pub delta_norm: f64,
    /// `‖Σ_k − Σ*_k‖_F`
    pub matrix_gap_fro: f64,
    /// `‖Σ_k − Σ*_k‖_2`
    pub matrix_gap_spec: f64,
    /// `‖v_k − u*_k‖`
    pub eig_err: f64,
    /// `‖u_k − u*_k‖`
    pub u_gap: f64,
    /// `‖(Σ_k − Σ*_k) u*_j‖` for every `j`.
    pub directional_gaps: Vec<f64>,
    /// `|v_kᵀ u*_j|` for every `j`.
    pub v_alignments: Vec<f64>,
    /// `|u_kᵀ u*_j|` for every `j`.
    pub u_alignments: Vec<f64>,
    /// `|u_kᵀ (Σ_k − Σ*_k) u*_k|`
    pub inner_gap: f64,
}

/// Spectral norm of a symmetric matrix via the oracle.
pub(crate) fn spectral_norm_of(m: &SymMatrix) -> Result<f64> {
    let s = jacobi_eigendecomposition(m, &JacobiOptions::default())?;
    Ok(s.eigenvalues.iter().fold(0.0_f64, |a, v| a.max(v.abs())))
}

/// Computes [`StepDiagnostics`] for every step of `run` against `truth`.
pub fn diagnose_run(run: &DeflationRun, truth: &GroundTruthTrace) -> Result<Vec<StepDiagnostics>> {
    let d = run.d;
    if truth.spectrum.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: truth.spectrum.dim() });
    }
    if truth.k_count() != run.k_count {
        return Err(Error::DimensionMismatch { expected: run.k_count, got: truth.k_count() });
    }
    run.steps.iter().map(|s| diagnose_step(run, truth, s.k)).collect()
}

fn diagnose_step(run: &DeflationRun, truth: &GroundTruthTrace, k: usize) -> Result<StepDiagnostics> {
    let step = run.step(k);
    let diff = run.sigma(k).sub(truth.sigma_star(k))?;
    let u_star = truth.u_star(k);
    let d = run.d;

    let mut directional_gaps = Vec::with_capacity(d);
    let mut v_alignments = Vec::with_capacity(d);
    let mut u_alignments = Vec::with_capacity(d);
    for j in 0..d {
        let uj = truth.spectrum.vector(j);
        directional_gaps.push(vector::norm(&diff.mat_vec(uj)?));
        v_alignments.push(vector::dot(&step.v, uj).abs());
        u_alignments.push(vector::dot(&step.top.u, uj).abs());
    }

    let diag = StepDiagnostics {
        k,
        delta_norm: step.delta_norm,
        matrix_gap_fro: diff.frobenius_norm(),
        matrix_gap_spec: spectral_norm_of(&diff)?,
        eig_err: vector::distance(&step.v, u_star),
        u_gap: vector::distance(&step.top.u, u_star),
        inner_gap: diff.bilinear(&step.top.u, u_star)?.abs(),
        directional_gaps,
        v_alignments,
        u_alignments,
    };
    if diag.eig_err > diag.delta_norm + diag.u_gap + 1e-12 {
        return Err(Error::Invariant(format!(
            "triangle inequality failed at step {k}: {} > {} + {}",
            diag.eig_err, diag.delta_norm, diag.u_gap
        )));
    }
    if diag.matrix_gap_spec > diag.matrix_gap_fro + 1e-12 {
        return Err(Error::Invariant(format!(
            "spectral norm exceeds Frobenius norm at step {k}"
        )));
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deflation::{ideal_deflation, instrumented_deflation, ExactSolver};
    use crate::linalg::{build_test_sigma, random_orthogonal_basis, RandomSource, SpectrumKind};

    #[test]
    fn exact_run_has_vanishing_gaps() {
        let mut rng = RandomSource::new(2);
        let q = random_orthogonal_basis(8, &mut rng).unwrap();
        let (sigma, truth) = build_test_sigma(8, &SpectrumKind::PowerLaw(1.0), &q).unwrap();
        let trace = ideal_deflation(&truth, 6).unwrap();
        let mut solver = ExactSolver { reference: Some(truth.clone()) };
        let run = instrumented_deflation(&sigma, &truth, 6, &mut solver).unwrap();
        let diags = diagnose_run(&run, &trace).unwrap();
        for d in &diags {
            assert!(d.matrix_gap_fro <= 1e-9 && d.matrix_gap_spec <= 1e-9 && d.eig_err <= 1e-9);
        }
    }

    #[test]
    fn mismatched_trace_rejected() {
        let (sigma, truth) =
            build_test_sigma(3, &SpectrumKind::Exponential(0.5), &crate::linalg::Matrix::identity(3)).unwrap();
        let trace = ideal_deflation(&truth, 1).unwrap();
        let run = crate::deflation::run_inexact_deflation_against(&sigma, &truth, 2, 10, &RandomSource::new(0)).unwrap();
        assert!(matches!(diagnose_run(&run, &trace), Err(Error::DimensionMismatch { .. })));
    }
}
