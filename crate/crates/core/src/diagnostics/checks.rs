//! Numerical checks of the individual lemmas behind the error bounds. Each
//! check evaluates its precondition first and reports a three-valued verdict.

use crate::bounds::{lemma10_u_gap_bound, lemma10_u_gap_bound_squared, BoundInputs, BoundValue, SpectrumGaps};
use crate::deflation::{aligned_top_eigenvector, DeflationRun, GroundTruthTrace};
use crate::diagnostics::{spectral_norm_of, StepDiagnostics};
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigendecomposition, vector, JacobiOptions, Spectrum, SymMatrix};
use crate::power_iter::{pi_alignment_bound, pi_alignment_bound_rigorous, pi_error_bound, power_iterate};

/// Absolute slack allowed on every inequality.
pub const INEQ_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Holds { lhs: f64, rhs: f64 },
    Violated { lhs: f64, rhs: f64 },
    Skipped(&'static str),
}

impl Verdict {
    /// Verdict for `lhs <= rhs` up to [`INEQ_TOL`].
    pub fn at_most(lhs: f64, rhs: f64) -> Self {
        if lhs <= rhs + INEQ_TOL {
            Verdict::Holds { lhs, rhs }
        } else {
            Verdict::Violated { lhs, rhs }
        }
    }

    /// Verdict for `lhs >= rhs` up to [`INEQ_TOL`].
    pub fn at_least(lhs: f64, rhs: f64) -> Self {
        if lhs + INEQ_TOL >= rhs {
            Verdict::Holds { lhs, rhs }
        } else {
            Verdict::Violated { lhs, rhs }
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }

    pub fn skipped(&self) -> bool {
        matches!(self, Verdict::Skipped(_))
    }
}

/// Running counts of verdicts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub holds: usize,
    pub violated: usize,
    pub skipped: usize,
}

impl Tally {
    pub fn add(&mut self, v: &Verdict) {
        match v {
            Verdict::Holds { .. } => self.holds += 1,
            Verdict::Violated { .. } => self.violated += 1,
            Verdict::Skipped(_) => self.skipped += 1,
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.holds += other.holds;
        self.violated += other.violated;
        self.skipped += other.skipped;
    }
}

/// Weyl: `max_i |λ_i(A) − λ_i(B)| <= ‖A − B‖_2`.
pub fn weyl_check(a: &SymMatrix, b: &SymMatrix) -> Result<Verdict> {
    let opts = JacobiOptions::default();
    let sa = jacobi_eigendecomposition(a, &opts)?;
    let sb = jacobi_eigendecomposition(b, &opts)?;
    let lhs = sa
        .eigenvalues
        .iter()
        .zip(&sb.eigenvalues)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(Verdict::at_most(lhs, spectral_norm_of(&a.sub(b)?)?))
}

/// One-step growth of the matrix gap:
/// `‖Σ_{k+1} − Σ*_{k+1}‖_F <= 3‖Σ_k − Σ*_k‖_F + 5λ*_k‖δ_k‖ + 2λ*_k‖u_k − u*_k‖`
/// whenever `‖δ_k‖ <= 1/6`. Entry `i` covers the step from `diags[i]` to `diags[i+1]`.
pub fn lemma3_recurrence_check(diags: &[StepDiagnostics], lambdas: &[f64]) -> Vec<Verdict> {
    diags
        .windows(2)
        .map(|w| {
            let (cur, next) = (&w[0], &w[1]);
            if cur.delta_norm > 1.0 / 6.0 {
                return Verdict::Skipped("step error above 1/6");
            }
            let lk = lambdas[cur.k - 1];
            let rhs = 3.0 * cur.matrix_gap_fro + 5.0 * lk * cur.delta_norm + 2.0 * lk * cur.u_gap;
            Verdict::at_most(next.matrix_gap_fro, rhs)
        })
        .collect()
}

/// Eigenvector perturbation: `‖u_k − u*_k‖ <= (2/T_k) ‖Σ_k − Σ*_k‖_F` whenever
/// the gap is at most `T_k/4`, with `T_k = min_{j≠k} |λ*_k − λ*_j|`.
pub fn lemma4_check(diag: &StepDiagnostics, gaps: &SpectrumGaps) -> Verdict {
    let t = gaps.davis_kahan_gap(diag.k);
    if diag.matrix_gap_fro > t / 4.0 {
        return Verdict::Skipped("matrix gap above T_k/4");
    }
    Verdict::at_most(diag.u_gap, 2.0 / t * diag.matrix_gap_fro)
}

/// Alignment of a `t`-step iterate on `M` with eigenvector `j` (1-based, `j >= 2`)
/// of `M*`: `|x_tᵀ a*_j| <= c0 ((σ*_j/σ_1)^t + σ*_j/(σ_1 − σ*_j) ‖H a*_j‖)`,
/// where `H = M − M*`, `σ_1` is the top eigenvalue of `M` and
/// `c0 = 1/|x_0ᵀ a_1|`. This is the bound as stated; it can fail for small
/// `σ*_j`, see [`rigorous_alignment_check`].
pub fn lemma6_alignment_check(
    m: &SymMatrix,
    m_star: &Spectrum,
    x0: &[f64],
    t: usize,
    j: usize,
) -> Result<Verdict> {
    alignment_check(m, m_star, x0, t, j, pi_alignment_bound)
}

/// As [`lemma6_alignment_check`] with the correctly unrolled bound
/// `c0 ((σ*_j/σ_1)^t + ‖H a*_j‖/(σ_1 − σ*_j))`.
pub fn rigorous_alignment_check(
    m: &SymMatrix,
    m_star: &Spectrum,
    x0: &[f64],
    t: usize,
    j: usize,
) -> Result<Verdict> {
    alignment_check(m, m_star, x0, t, j, pi_alignment_bound_rigorous)
}

type AlignmentBound = fn(f64, f64, f64, usize, f64) -> Result<f64>;

fn alignment_check(
    m: &SymMatrix,
    m_star: &Spectrum,
    x0: &[f64],
    t: usize,
    j: usize,
    bound: AlignmentBound,
) -> Result<Verdict> {
    if j < 2 || j > m_star.dim() {
        return Err(Error::InvalidArgument(format!("index {j} outside [2, {}]", m_star.dim())));
    }
    let spec = jacobi_eigendecomposition(m, &JacobiOptions::default())?;
    let sigma1 = spec.eigenvalues[0];
    let smallest = *spec.eigenvalues.last().unwrap_or(&sigma1);
    if sigma1 < smallest.abs() {
        return Ok(Verdict::Skipped("top eigenvalue is not the spectral radius"));
    }
    let sigma_j = m_star.eigenvalues[j - 1];
    if !(sigma_j > 0.0 && sigma1 > sigma_j) {
        return Ok(Verdict::Skipped("needs sigma_1 > sigma*_j > 0"));
    }
    let c0_inv = vector::dot(x0, spec.vector(0)).abs();
    if c0_inv == 0.0 {
        return Ok(Verdict::Skipped("start orthogonal to top eigenvector"));
    }
    let a_j = m_star.vector(j - 1);
    let h = m.sub(&m_star.reconstruct())?;
    let h_norm = vector::norm(&h.mat_vec(a_j)?);
    let x_t = power_iterate(m, x0, t)?.x;
    let lhs = vector::dot(&x_t, a_j).abs();
    Ok(Verdict::at_most(lhs, bound(sigma1, sigma_j, 1.0 / c0_inv, t, h_norm)?))
}

/// Directional gap growth: for `j >= k`,
/// `‖(Σ*_k − Σ_k) u*_j‖ <= Σ_{k'<k} λ_{k'} |v_{k'}ᵀ u*_j|`, where `λ_{k'}` is
/// the top eigenvalue of `Σ_{k'}`. `k` and `j` are 1-based.
///
/// The bound replaces each `|v_{k'}ᵀ Σ_{k'} v_{k'}|` by `λ_{k'}`, which needs
/// the top eigenvalue to dominate in magnitude. A rough deflation can leave
/// `Σ_{k'}` indefinite with a larger negative eigenvalue, so the check is
/// skipped when some earlier Rayleigh quotient is below `−λ_{k'}`.
pub fn lemma7_check(run: &DeflationRun, diags: &[StepDiagnostics], k: usize, j: usize) -> Result<Verdict> {
    check_directional_indices(run, diags, k, j)?;
    // Rayleigh quotients never exceed the top eigenvalue, so only a dominant
    // negative quotient can break the bound.
    if (1..k).any(|kp| run.step(kp).rayleigh < -run.step(kp).top.lambda) {
        return Ok(Verdict::Skipped("negative eigenvalue dominates an earlier deflated matrix"));
    }
    let lhs = diags[k - 1].directional_gaps[j - 1];
    let rhs: f64 = (1..k)
        .map(|kp| run.step(kp).top.lambda * diags[kp - 1].v_alignments[j - 1])
        .sum();
    Ok(Verdict::at_most(lhs, rhs))
}

/// The exact form behind [`lemma7_check`], valid on every run:
/// `‖(Σ*_k − Σ_k) u*_j‖ <= Σ_{k'<k} |v_{k'}ᵀ Σ_{k'} v_{k'}| |v_{k'}ᵀ u*_j|`.
pub fn directional_identity_check(
    run: &DeflationRun,
    diags: &[StepDiagnostics],
    k: usize,
    j: usize,
) -> Result<Verdict> {
    check_directional_indices(run, diags, k, j)?;
    let lhs = diags[k - 1].directional_gaps[j - 1];
    let rhs: f64 = (1..k)
        .map(|kp| run.step(kp).rayleigh.abs() * diags[kp - 1].v_alignments[j - 1])
        .sum();
    Ok(Verdict::at_most(lhs, rhs))
}

fn check_directional_indices(run: &DeflationRun, diags: &[StepDiagnostics], k: usize, j: usize) -> Result<()> {
    if k == 0 || k > diags.len() || j < k || j > run.d {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= j <= d, got k={k}, j={j}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

/// Eigenvector identity `a_iᵀ a*_j = a_iᵀ H a*_j / (σ_i − σ*_j)` with
/// `H = M − M*`; `i` and `j` are 1-based.
pub fn lemma8_identity_check(m: &SymMatrix, m_star: &SymMatrix, i: usize, j: usize) -> Result<IdentityCheck> {
    let opts = JacobiOptions::default();
    let s = jacobi_eigendecomposition(m, &opts)?;
    let s_star = jacobi_eigendecomposition(m_star, &opts)?;
    if i == 0 || j == 0 || i > s.dim() || j > s_star.dim() {
        return Err(Error::InvalidArgument(format!("indices ({i}, {j}) out of range")));
    }
    let (sigma_i, sigma_j) = (s.eigenvalues[i - 1], s_star.eigenvalues[j - 1]);
    if (sigma_i - sigma_j).abs() < 1e-8 {
        return Err(Error::DegenerateGap { first: sigma_i, second: sigma_j });
    }
    let a_i = s.vector(i - 1);
    let a_j = s_star.vector(j - 1);
    let h = m.sub(m_star)?;
    let lhs = vector::dot(a_i, a_j);
    let rhs = h.bilinear(a_i, a_j)? / (sigma_i - sigma_j);
    Ok(IdentityCheck {
        lhs,
        rhs,
        rel_err: (lhs - rhs).abs() / lhs.abs().max(1e-12),
    })
}

/// Alignment lower bound
/// `(u_kᵀu*_k)² >= 1 − (2.4/λ*_k²) ‖Σ_k − Σ*_k‖_F² − Σ_{j>k} (u_kᵀu*_j)²`
/// whenever `‖Σ_k − Σ*_k‖_F <= λ*_k/8`.
pub fn lemma9_lower_bound_check(sigma_k: &SymMatrix, truth: &GroundTruthTrace, k: usize) -> Result<Verdict> {
    let lk = truth.lambda_star(k);
    let gap = sigma_k.sub(truth.sigma_star(k))?.frobenius_norm();
    if gap > lk / 8.0 {
        return Ok(Verdict::Skipped("matrix gap above lambda_k/8"));
    }
    let u = aligned_top_eigenvector(sigma_k, truth.u_star(k))?.u;
    let lhs = vector::dot(&u, truth.u_star(k)).powi(2);
    let tail: f64 = (k..truth.spectrum.dim())
        .map(|j| vector::dot(&u, truth.spectrum.vector(j)).powi(2))
        .sum();
    Ok(Verdict::at_least(lhs, 1.0 - 2.4 / (lk * lk) * gap * gap - tail))
}

type UGapBound = fn(&BoundInputs, &SpectrumGaps, usize, f64, &[f64]) -> Result<BoundValue>;

/// Eigenvector gap against the closed-form bound, skipped when the bound's
/// preconditions fail. `diags` must cover steps `1..=k`.
pub fn lemma10_check(
    diags: &[StepDiagnostics],
    inputs: &BoundInputs,
    gaps: &SpectrumGaps,
    k: usize,
) -> Result<Verdict> {
    u_gap_check(diags, inputs, gaps, k, lemma10_u_gap_bound)
}

/// As [`lemma10_check`] with the `4.8/λ_k²` perturbation term.
pub fn lemma10_squared_check(
    diags: &[StepDiagnostics],
    inputs: &BoundInputs,
    gaps: &SpectrumGaps,
    k: usize,
) -> Result<Verdict> {
    u_gap_check(diags, inputs, gaps, k, lemma10_u_gap_bound_squared)
}

fn u_gap_check(
    diags: &[StepDiagnostics],
    inputs: &BoundInputs,
    gaps: &SpectrumGaps,
    k: usize,
    bound: UGapBound,
) -> Result<Verdict> {
    let fro: Vec<f64> = diags.iter().map(|d| d.matrix_gap_fro).collect();
    let d = &diags[k - 1];
    Ok(match bound(inputs, gaps, k, d.matrix_gap_spec, &fro)? {
        BoundValue::Value(b) => Verdict::at_most(d.u_gap, b),
        BoundValue::PreconditionFailed => Verdict::Skipped("lemma preconditions fail"),
    })
}

/// Sign-aligned distance `min_s ‖s x_t − a_1‖ <= √2 (σ_2/σ_1)^t` for starts
/// with `|x_0ᵀ a_1| >= 1/√2`, where `σ_2` is the largest remaining `|σ_j|`.
pub fn lemma12_check(m: &SymMatrix, x0: &[f64], t: usize) -> Result<Verdict> {
    let spec = jacobi_eigendecomposition(m, &JacobiOptions::default())?;
    let sigma1 = spec.eigenvalues[0];
    let sigma2 = spec.eigenvalues[1..].iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if !(sigma1 > sigma2) {
        return Ok(Verdict::Skipped("top eigenvalue not dominant"));
    }
    let a1 = spec.vector(0);
    if vector::dot(x0, a1).abs() < 0.5_f64.sqrt() {
        return Ok(Verdict::Skipped("start alignment below 1/sqrt(2)"));
    }
    let x = power_iterate(m, x0, t)?.x;
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    let lhs = vector::distance(&x, a1).min(vector::distance(&neg, a1));
    Ok(Verdict::at_most(lhs, pi_error_bound(sigma1, sigma2, t)?))
}

/// Norm dominates the inner product: when `inner_gap >= 1e-5`,
/// `‖(Σ_k − Σ*_k) u*_k‖ >= inner_gap`.
pub fn inner_gap_check(diag: &StepDiagnostics) -> Verdict {
    if diag.inner_gap < 1e-5 {
        return Verdict::Skipped("inner gap below 1e-5");
    }
    let norm = diag.directional_gaps[diag.k - 1];
    if norm >= diag.inner_gap - 1e-12 {
        Verdict::Holds { lhs: norm, rhs: diag.inner_gap }
    } else {
        Verdict::Violated { lhs: norm, rhs: diag.inner_gap }
    }
}
