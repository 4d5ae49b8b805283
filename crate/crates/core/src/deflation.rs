//! Hotelling deflation driven by an inexact top-eigenvector subroutine, and
//! the ideal (exact) deflation sequence it is measured against.

use std::path::Path;

use serde::Serialize;

use crate::csvio::{fmt_f64, CsvWriter};
use crate::error::{Error, Result};
use crate::linalg::{
    check_strictly_decreasing_positive, jacobi_eigendecomposition, sample_unit_sphere, vector,
    JacobiOptions, RandomSource, Spectrum, SymMatrix,
};
use crate::power_iter::{power_iterate_with, PowerIterOptions};

/// Top eigenvalues closer than this are treated as tied.
pub const GAP_TOL: f64 = 1e-12;

/// `Σ − (vᵀΣv) v vᵀ` for a unit vector `v`.
pub fn deflate_step(sigma: &SymMatrix, v: &[f64]) -> Result<SymMatrix> {
    vector::check_len(v, sigma.dim())?;
    vector::check_unit(v)?;
    let rho = sigma.quad_form(v)?;
    sigma.rank_one_update(-rho, v)
}

/// Output of one call to a top-eigenvector subroutine.
#[derive(Debug, Clone, PartialEq)]
pub struct SubroutineOutput {
    pub v: Vec<f64>,
    /// Starting vector, for iterative methods.
    pub init: Option<Vec<f64>>,
}

/// Approximate top-eigenvector solver used at each deflation step.
pub trait TopEigenSolver {
    /// `step` is the 1-based deflation index.
    fn top_eigenvector(&mut self, m: &SymMatrix, step: usize) -> Result<SubroutineOutput>;
}

/// `t` steps of power iteration from a fresh uniform start per step. The start
/// for step `k` comes from substream `k` of the seed, so it does not depend on
/// earlier steps.
#[derive(Debug, Clone)]
pub struct PowerIterationSolver {
    pub t: usize,
    pub rng: RandomSource,
    pub options: PowerIterOptions,
}

impl PowerIterationSolver {
    pub fn new(t: usize, rng: RandomSource) -> Self {
        PowerIterationSolver {
            t,
            rng,
            options: PowerIterOptions::default(),
        }
    }
}

impl TopEigenSolver for PowerIterationSolver {
    fn top_eigenvector(&mut self, m: &SymMatrix, step: usize) -> Result<SubroutineOutput> {
        let mut sub = self.rng.substream(step as u64);
        let x0 = sample_unit_sphere(m.dim(), &mut sub)?;
        let r = power_iterate_with(m, &x0, self.t, &self.options)?;
        Ok(SubroutineOutput {
            v: r.x,
            init: Some(x0),
        })
    }
}

/// Exact top eigenvector from the Jacobi oracle. With a reference spectrum,
/// the sign at step `k` is chosen to agree with reference vector `k`.
#[derive(Debug, Clone, Default)]
pub struct ExactSolver {
    pub reference: Option<Spectrum>,
}

impl TopEigenSolver for ExactSolver {
    fn top_eigenvector(&mut self, m: &SymMatrix, step: usize) -> Result<SubroutineOutput> {
        let spec = jacobi_eigendecomposition(m, &JacobiOptions::default())?;
        let mut v = spec.vector(0).to_vec();
        if let Some(r) = &self.reference {
            if step <= r.dim() && vector::dot(&v, r.vector(step - 1)) < 0.0 {
                vector::scale(&mut v, -1.0);
            }
        }
        Ok(SubroutineOutput { v, init: None })
    }
}

/// Plain deflation output: no ground truth involved.
#[derive(Debug, Clone, PartialEq)]
pub struct Deflation {
    /// `v_1 … v_K`
    pub vectors: Vec<Vec<f64>>,
    /// `v_kᵀ Σ_k v_k`, the eigenvalue estimates.
    pub eigenvalue_estimates: Vec<f64>,
    /// Starting vectors per step when the solver reports them.
    pub inits: Vec<Option<Vec<f64>>>,
    /// `Σ_1 … Σ_{K+1}`
    pub matrices: Vec<SymMatrix>,
}

/// Runs `k_count` deflation steps with the given subroutine.
pub fn deflate<S: TopEigenSolver + ?Sized>(
    sigma: &SymMatrix,
    k_count: usize,
    solver: &mut S,
) -> Result<Deflation> {
    if k_count > sigma.dim() {
        return Err(Error::InvalidArgument(format!(
            "K = {k_count} exceeds dimension {}",
            sigma.dim()
        )));
    }
    let mut out = Deflation {
        vectors: Vec::with_capacity(k_count),
        eigenvalue_estimates: Vec::with_capacity(k_count),
        inits: Vec::with_capacity(k_count),
        matrices: vec![sigma.clone()],
    };
    for k in 1..=k_count {
        let current = &out.matrices[k - 1];
        let sub = solver.top_eigenvector(current, k)?;
        let rho = current.quad_form(&sub.v)?;
        let next = deflate_step(current, &sub.v)?;
        out.vectors.push(sub.v);
        out.eigenvalue_estimates.push(rho);
        out.inits.push(sub.init);
        out.matrices.push(next);
    }
    Ok(out)
}

/// Top eigenpair of `Σ_k` from the oracle, with the sign chosen so that
/// `uᵀ u* >= 0` for the reference vector `u*`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedTop {
    pub u: Vec<f64>,
    pub lambda: f64,
    pub second: f64,
    /// `uᵀ u*` vanished, so the sign choice is arbitrary.
    pub ambiguous: bool,
}

pub fn aligned_top_eigenvector(sigma: &SymMatrix, reference: &[f64]) -> Result<AlignedTop> {
    vector::check_len(reference, sigma.dim())?;
    let spec = jacobi_eigendecomposition(sigma, &JacobiOptions::default())?;
    let lambda = spec.eigenvalues[0];
    let second = spec.eigenvalues.get(1).copied().unwrap_or(f64::NEG_INFINITY);
    if lambda - second <= GAP_TOL {
        return Err(Error::DegenerateGap {
            first: lambda,
            second,
        });
    }
    let mut u = spec.vector(0).to_vec();
    let inner = vector::dot(&u, reference);
    if inner < 0.0 {
        vector::scale(&mut u, -1.0);
    }
    Ok(AlignedTop {
        u,
        lambda,
        second,
        ambiguous: inner.abs() < f64::EPSILON,
    })
}

/// Exact deflation sequence `Σ*_k = Σ_{j>=k} λ_j u_j u_jᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruthTrace {
    pub spectrum: Spectrum,
    /// `Σ*_1 … Σ*_{K+1}`
    pub matrices: Vec<SymMatrix>,
}

impl GroundTruthTrace {
    pub fn k_count(&self) -> usize {
        self.matrices.len() - 1
    }

    /// `Σ*_k`, 1-based.
    pub fn sigma_star(&self, k: usize) -> &SymMatrix {
        &self.matrices[k - 1]
    }

    /// `u*_k`, 1-based.
    pub fn u_star(&self, k: usize) -> &[f64] {
        self.spectrum.vector(k - 1)
    }

    /// `λ*_k`, 1-based.
    pub fn lambda_star(&self, k: usize) -> f64 {
        self.spectrum.eigenvalues[k - 1]
    }
}

/// Builds the exact sequence both recursively and in closed form, failing if
/// the two disagree by more than `1e-10 · max(1, ‖Σ‖_F)`.
pub fn ideal_deflation(truth: &Spectrum, k_count: usize) -> Result<GroundTruthTrace> {
    let d = truth.dim();
    if k_count > d {
        return Err(Error::InvalidArgument(format!("K = {k_count} exceeds dimension {d}")));
    }
    let first = truth.reconstruct();
    let tol = 1e-10 * first.frobenius_norm().max(1.0);
    let mut matrices = Vec::with_capacity(k_count + 1);
    matrices.push(first);
    for k in 1..=k_count {
        let u = truth.vector(k - 1);
        let recursive = matrices[k - 1].rank_one_update(-truth.eigenvalues[k - 1], u)?;
        let closed = truth.partial_sum(k);
        let gap = recursive.sub(&closed)?.frobenius_norm();
        if gap > tol {
            return Err(Error::Invariant(format!(
                "recursive and closed-form exact deflation differ by {gap:e} at step {}",
                k + 1
            )));
        }
        matrices.push(closed);
    }
    Ok(GroundTruthTrace {
        spectrum: truth.clone(),
        matrices,
    })
}

/// One instrumented deflation step.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflationStep {
    /// 1-based step index.
    pub k: usize,
    /// Sub-routine output, signed so that `v_kᵀ u*_k >= 0`.
    pub v: Vec<f64>,
    pub init: Option<Vec<f64>>,
    /// `v_kᵀ Σ_k v_k`
    pub rayleigh: f64,
    /// Oracle top eigenpair of `Σ_k`, aligned with `u*_k`.
    pub top: AlignedTop,
    /// `‖v_k − u_k‖`, the subroutine error.
    pub delta_norm: f64,
}

/// Deflation run with per-step oracle information.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflationRun {
    pub d: usize,
    pub k_count: usize,
    pub t: usize,
    pub seed: u64,
    pub steps: Vec<DeflationStep>,
    /// `Σ_1 … Σ_{K+1}`
    pub matrices: Vec<SymMatrix>,
    pub warnings: Vec<String>,
}

impl DeflationRun {
    /// `Σ_k`, 1-based.
    pub fn sigma(&self, k: usize) -> &SymMatrix {
        &self.matrices[k - 1]
    }

    pub fn step(&self, k: usize) -> &DeflationStep {
        &self.steps[k - 1]
    }

    /// `max_k 1/|x_{0,k}ᵀ u_k|` over the recorded starts; `None` when a step
    /// has no start or a start is orthogonal to `u_k`.
    pub fn measured_c0(&self) -> Option<f64> {
        let mut c0: f64 = 1.0;
        for s in &self.steps {
            let c = 1.0 / vector::dot(s.init.as_ref()?, &s.top.u).abs();
            if !c.is_finite() {
                return None;
            }
            c0 = c0.max(c);
        }
        Some(c0)
    }
}

/// Deflation with `t`-step power iteration, using the Jacobi oracle on `Σ` as
/// the reference spectrum.
pub fn run_inexact_deflation(
    sigma: &SymMatrix,
    k_count: usize,
    t: usize,
    rng: &RandomSource,
) -> Result<DeflationRun> {
    let truth = jacobi_eigendecomposition(sigma, &JacobiOptions::default())?;
    run_inexact_deflation_against(sigma, &truth, k_count, t, rng)
}

/// As [`run_inexact_deflation`] but against a known spectrum of `Σ`.
pub fn run_inexact_deflation_against(
    sigma: &SymMatrix,
    truth: &Spectrum,
    k_count: usize,
    t: usize,
    rng: &RandomSource,
) -> Result<DeflationRun> {
    let mut solver = PowerIterationSolver::new(t, rng.clone());
    let mut run = instrumented_deflation(sigma, truth, k_count, &mut solver)?;
    run.t = t;
    run.seed = rng.seed();
    Ok(run)
}

/// Runs any subroutine and records the oracle top eigenpair at every step.
pub fn instrumented_deflation<S: TopEigenSolver + ?Sized>(
    sigma: &SymMatrix,
    truth: &Spectrum,
    k_count: usize,
    solver: &mut S,
) -> Result<DeflationRun> {
    let d = sigma.dim();
    if truth.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: truth.dim(),
        });
    }
    check_strictly_decreasing_positive(&truth.eigenvalues)?;
    let mut warnings = Vec::new();
    if (truth.eigenvalues[0] - 1.0).abs() > 1e-9 {
        warnings.push(format!(
            "top eigenvalue is {} rather than 1; bounds assume a unit top eigenvalue",
            truth.eigenvalues[0]
        ));
    }
    let plain = deflate(sigma, k_count, solver)?;
    let mut steps = Vec::with_capacity(k_count);
    for k in 1..=k_count {
        let top = aligned_top_eigenvector(&plain.matrices[k - 1], truth.vector(k - 1))?;
        if top.ambiguous {
            warnings.push(format!("ambiguous alignment at step {k}"));
        }
        // Deflation only sees v vᵀ, so the sign is free; fix it against u*_k
        // so that the error measurements compare like with like.
        let mut v = plain.vectors[k - 1].clone();
        if vector::dot(&v, truth.vector(k - 1)) < 0.0 {
            vector::scale(&mut v, -1.0);
        }
        steps.push(DeflationStep {
            k,
            delta_norm: vector::distance(&v, &top.u),
            v,
            init: plain.inits[k - 1].clone(),
            rayleigh: plain.eigenvalue_estimates[k - 1],
            top,
        });
    }
    Ok(DeflationRun {
        d,
        k_count,
        t: 0,
        seed: 0,
        steps,
        matrices: plain.matrices,
        warnings,
    })
}

#[derive(Debug, Clone, Serialize)]
struct RunMeta<'a> {
    d: usize,
    #[serde(rename = "K")]
    k_count: usize,
    t: usize,
    seed: u64,
    spectrum: &'a str,
}

/// Writes `run.csv`, `v.csv`, `u.csv` and `meta.json` into `dir`.
pub fn write_run_outputs(
    dir: &Path,
    run: &DeflationRun,
    trace: &GroundTruthTrace,
    spectrum_label: &str,
) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut w = CsvWriter::new(&["k", "lambda_k", "delta_norm", "eig_err", "matrix_gap_fro"]);
    for s in &run.steps {
        let eig_err = vector::distance(&s.v, trace.u_star(s.k));
        let gap = run.sigma(s.k).sub(trace.sigma_star(s.k))?.frobenius_norm();
        w.row(&[
            s.k.to_string(),
            fmt_f64(s.top.lambda),
            fmt_f64(s.delta_norm),
            fmt_f64(eig_err),
            fmt_f64(gap),
        ]);
    }
    w.write_to(&dir.join("run.csv"))?;

    let header: Vec<String> = (1..=run.k_count).map(|k| format!("k{k}")).collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut v_csv = CsvWriter::new(&header_refs);
    let mut u_csv = CsvWriter::new(&header_refs);
    for i in 0..run.d {
        let vs: Vec<f64> = run.steps.iter().map(|s| s.v[i]).collect();
        let us: Vec<f64> = run.steps.iter().map(|s| s.top.u[i]).collect();
        v_csv.float_row(&vs);
        u_csv.float_row(&us);
    }
    v_csv.write_to(&dir.join("v.csv"))?;
    u_csv.write_to(&dir.join("u.csv"))?;

    let meta = RunMeta {
        d: run.d,
        k_count: run.k_count,
        t: run.t,
        seed: run.seed,
        spectrum: spectrum_label,
    };
    let text = serde_json::to_string_pretty(&meta)
        .map_err(|e| Error::Invariant(format!("meta serialization: {e}")))?;
    let path = dir.join("meta.json");
    std::fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))
}
