//! Closed-form error bounds, their preconditions, and iteration budgets.
//!
//! Step indices `k` are 1-based throughout. Eigenvalues beyond the last are
//! taken as zero, so `T_d = λ_d` and terms with `λ_{d+1}` vanish.

mod recurrences;
mod report;

pub use recurrences::{unroll_recurrences, Recurrence};
pub use report::{build_bound_report, write_bounds_csv, BoundReport, BoundRow};

use crate::error::{Error, Result};
use crate::linalg::check_strictly_decreasing_positive;

/// Leading constant of the sub-routine-agnostic bound.
pub const THM1_LEADING_CONSTANT: f64 = 5.0;

/// Eigengaps of a strictly decreasing positive spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGaps {
    lambdas: Vec<f64>,
    gaps: Vec<f64>,
}

pub fn eigengaps(lambdas: &[f64]) -> Result<SpectrumGaps> {
    check_strictly_decreasing_positive(lambdas)?;
    let d = lambdas.len();
    let gaps = (0..d)
        .map(|j| lambdas[j] - lambdas.get(j + 1).copied().unwrap_or(0.0))
        .collect();
    Ok(SpectrumGaps {
        lambdas: lambdas.to_vec(),
        gaps,
    })
}

impl SpectrumGaps {
    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    /// `T_1 … T_d`
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    /// `T_k`
    pub fn gap(&self, k: usize) -> f64 {
        self.gaps[k - 1]
    }

    /// `λ_k`, with `λ_{d+1} = 0`.
    pub fn lambda(&self, k: usize) -> f64 {
        self.lambdas.get(k - 1).copied().unwrap_or(0.0)
    }

    /// `min_{k ≤ K} T_k`
    pub fn min_gap(&self, k_count: usize) -> f64 {
        self.gaps[..k_count].iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `min_{j ≠ k} |λ_k − λ_j|`
    pub fn davis_kahan_gap(&self, k: usize) -> f64 {
        let lk = self.lambda(k);
        self.lambdas
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k - 1)
            .map(|(_, l)| (lk - l).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// `3 + 2 λ_j / T_j`
    fn growth(&self, j: usize) -> f64 {
        3.0 + 2.0 * self.lambda(j) / self.gap(j)
    }

    /// `(λ_{k+1} + 7 λ_k) / (λ_k + 7 λ_{k+1})`, greater than one.
    fn contraction_inverse(&self, k: usize) -> f64 {
        let (a, b) = (self.lambda(k), self.lambda(k + 1));
        (b + 7.0 * a) / (a + 7.0 * b)
    }
}

/// A bound, or the marker that its precondition did not hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Value(f64),
    PreconditionFailed,
}

impl BoundValue {
    pub fn value(self) -> Option<f64> {
        match self {
            BoundValue::Value(v) => Some(v),
            BoundValue::PreconditionFailed => None,
        }
    }
}

/// Measured and chosen quantities that the bounds depend on.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    pub lambdas: Vec<f64>,
    /// `‖δ_1‖ … ‖δ_K‖`; may be empty for budget-only use.
    pub delta_norms: Vec<f64>,
    /// Initialization constant, `c0 >= 1`.
    pub c0: f64,
    pub t: usize,
    pub k_count: usize,
    pub epsilon: Option<f64>,
    /// Linear convergence rate per step, for the generic iteration budget.
    pub alpha: Option<Vec<f64>>,
}

impl BoundInputs {
    pub fn new(lambdas: Vec<f64>, delta_norms: Vec<f64>, c0: f64, t: usize, k_count: usize) -> Result<Self> {
        check_strictly_decreasing_positive(&lambdas)?;
        if k_count == 0 || k_count > lambdas.len() {
            return Err(Error::InvalidArgument(format!(
                "K = {k_count} must lie in [1, {}]",
                lambdas.len()
            )));
        }
        if !(c0 >= 1.0 && c0.is_finite()) {
            return Err(Error::InvalidArgument(format!("c0 must be finite and >= 1, got {c0}")));
        }
        if !delta_norms.is_empty() && delta_norms.len() != k_count {
            return Err(Error::DimensionMismatch { expected: k_count, got: delta_norms.len() });
        }
        Ok(BoundInputs {
            lambdas,
            delta_norms,
            c0,
            t,
            k_count,
            epsilon: None,
            alpha: None,
        })
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn with_alpha(mut self, alpha: Vec<f64>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    fn lambda(&self, k: usize) -> f64 {
        self.lambdas.get(k - 1).copied().unwrap_or(0.0)
    }

    fn delta(&self, k: usize) -> Result<f64> {
        self.delta_norms
            .get(k - 1)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("no measured error for step {k}")))
    }

    fn epsilon(&self) -> Result<f64> {
        match self.epsilon {
            Some(e) if e > 0.0 => Ok(e),
            _ => Err(Error::InvalidArgument("a positive target accuracy is required".into())),
        }
    }

    /// `𝒢_k = 1 + c0 λ_k λ_{k+1} / (λ_k − λ_{k+1})`
    pub fn g_k(&self, k: usize) -> f64 {
        let (a, b) = (self.lambda(k), self.lambda(k + 1));
        1.0 + self.c0 * a * b / (a - b)
    }

    /// `𝒢 = max_{k ≤ K} 𝒢_k`
    pub fn g(&self) -> f64 {
        (1..=self.k_count).map(|k| self.g_k(k)).fold(1.0, f64::max)
    }
}

fn check_step(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<()> {
    if gaps.dim() != inputs.lambdas.len() {
        return Err(Error::DimensionMismatch { expected: inputs.lambdas.len(), got: gaps.dim() });
    }
    if k == 0 || k > inputs.k_count {
        return Err(Error::InvalidArgument(format!("step {k} outside [1, {}]", inputs.k_count)));
    }
    Ok(())
}

/// Left side of the small-error condition:
/// `Σ_{k'<k} λ_{k'} ‖δ_{k'}‖ ∏_{j=k'+1}^{k-1} (3 + 2λ_j/T_j)`.
pub fn thm1_condition_lhs(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<f64> {
    check_step(inputs, gaps, k)?;
    let mut acc = 0.0;
    for kp in 1..k {
        let prod: f64 = (kp + 1..k).map(|j| gaps.growth(j)).product();
        acc += inputs.lambda(kp) * inputs.delta(kp)? * prod;
    }
    Ok(acc)
}

/// Small-error condition at step `k`: left side `<= T_{K,min} / 20`.
pub fn thm1_condition(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<bool> {
    Ok(thm1_condition_lhs(inputs, gaps, k)? <= gaps.min_gap(inputs.k_count) / 20.0)
}

/// `5 Σ_{k'≤k} (λ_{k'}/λ_k) ‖δ_{k'}‖ ∏_{j=k'+1}^{k} (3 + 2λ_j/T_j)`, gated on
/// the small-error condition at every step up to `k`.
pub fn thm1_bound(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<BoundValue> {
    thm1_bound_with_leading(inputs, gaps, k, THM1_LEADING_CONSTANT)
}

/// [`thm1_bound`] with a replaceable leading constant. Exists so that checkers
/// can be shown to catch a wrong constant.
pub fn thm1_bound_with_leading(
    inputs: &BoundInputs,
    gaps: &SpectrumGaps,
    k: usize,
    leading: f64,
) -> Result<BoundValue> {
    check_step(inputs, gaps, k)?;
    for kk in 1..=k {
        if !thm1_condition(inputs, gaps, kk)? {
            return Ok(BoundValue::PreconditionFailed);
        }
    }
    let lk = inputs.lambda(k);
    let mut acc = 0.0;
    for kp in 1..=k {
        let prod: f64 = (kp + 1..=k).map(|j| gaps.growth(j)).product();
        acc += inputs.lambda(kp) / lk * inputs.delta(kp)? * prod;
    }
    Ok(BoundValue::Value(leading * acc))
}

/// Per-step error budget that guarantees `‖v_k − u*_k‖ <= ε` for all `k <= K`:
/// `min(ε λ_K, T_{K,min}) / (20K) ∏_{j=k+1}^{K} (3 + 2λ_j/T_j)^{-1}`.
pub fn cor1_delta_budget(epsilon: f64, inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<f64> {
    check_step(inputs, gaps, k)?;
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let kk = inputs.k_count;
    let head = (epsilon * inputs.lambda(kk)).min(gaps.min_gap(kk)) / (20.0 * kk as f64);
    let prod: f64 = (k + 1..=kk).map(|j| gaps.growth(j)).product();
    Ok(head / prod)
}

/// Iteration-count predictor for a linearly converging sub-routine with rate
/// `α_k`, with the asymptotic constant set to one:
/// `(log(c0 K / min(ε λ_k, T_{K,min})) + Σ_{j=k+1}^{K} log(λ_j/T_j + 1)) / log(1/α_k)`.
pub fn cor2_iteration_budget(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<f64> {
    check_step(inputs, gaps, k)?;
    let eps = inputs.epsilon()?;
    let alpha = inputs
        .alpha
        .as_ref()
        .and_then(|a| a.get(k - 1).copied())
        .ok_or_else(|| Error::InvalidArgument(format!("no convergence rate for step {k}")))?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("rate {alpha} must lie in (0, 1)")));
    }
    let kk = inputs.k_count;
    let head = (inputs.c0 * kk as f64 / (eps * inputs.lambda(k)).min(gaps.min_gap(kk))).ln();
    let tail: f64 = (k + 1..=kk).map(|j| (inputs.lambda(j) / gaps.gap(j) + 1.0).ln()).sum();
    Ok((head + tail) / (1.0 / alpha).ln())
}

/// Evaluated iteration-count requirements of the power-iteration bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Thm2Conditions {
    /// Per step `k <= K`: both iteration floors hold.
    pub floor_ok: Vec<bool>,
    /// Smallest `t` meeting the floors at each step.
    pub t_floor: Vec<f64>,
    pub tail_ok: bool,
    pub tail_lhs: f64,
    pub tail_rhs: f64,
}

impl Thm2Conditions {
    pub fn all_hold(&self) -> bool {
        self.tail_ok && self.floor_ok.iter().all(|b| *b)
    }
}

/// Floor on `t` at step `k`: `log(2𝒢_k) / log((λ_{k'+1} + 7λ_{k'})/(λ_{k'} + 7λ_{k'+1}))`
/// for every `k' <= k`.
pub fn thm2_t_floor(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> f64 {
    let num = (2.0 * inputs.g_k(k)).ln();
    (1..=k)
        .map(|kp| num / gaps.contraction_inverse(kp).ln())
        .fold(0.0, f64::max)
}

/// Floor `1 / (log λ_k − log λ_{k+1})` required for every `k <= d`.
pub fn spectral_t_floor(gaps: &SpectrumGaps) -> f64 {
    (1..=gaps.dim())
        .map(|k| 1.0 / (gaps.lambda(k).ln() - gaps.lambda(k + 1).ln()))
        .fold(0.0, f64::max)
}

pub fn thm2_conditions(inputs: &BoundInputs, gaps: &SpectrumGaps) -> Result<Thm2Conditions> {
    check_step(inputs, gaps, 1)?;
    let t = inputs.t as f64;
    let global = spectral_t_floor(gaps);
    let t_floor: Vec<f64> = (1..=inputs.k_count)
        .map(|k| thm2_t_floor(inputs, gaps, k).max(global))
        .collect();
    let floor_ok = t_floor.iter().map(|f| t >= *f).collect();

    let kk = inputs.k_count;
    let mut lhs = 0.0;
    for kp in 1..kk {
        let r = 1.0 / gaps.contraction_inverse(kp);
        lhs += 8f64.powi((kk - kp) as i32) * inputs.lambda(kp) / gaps.gap(kp) * r.powi(inputs.t as i32);
    }
    let rhs = gaps.min_gap(kk) / (140.0 * inputs.c0);
    Ok(Thm2Conditions {
        floor_ok,
        t_floor,
        tail_ok: lhs <= rhs,
        tail_lhs: lhs,
        tail_rhs: rhs,
    })
}

/// Power-iteration bound
/// `3 Σ_{k'≤k} 8^{k−k'} (λ_{k'}/λ_k) (5‖δ_{k'}‖ + (7c0/T_{k'}) (λ_{k'+1}/λ_{k'})^t)`,
/// gated on both iteration requirements.
pub fn thm2_bound(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<BoundValue> {
    check_step(inputs, gaps, k)?;
    if !thm2_conditions(inputs, gaps)?.all_hold() {
        return Ok(BoundValue::PreconditionFailed);
    }
    Ok(BoundValue::Value(thm2_formula(inputs, gaps, k)?))
}

/// The power-iteration bound without the gate.
pub fn thm2_formula(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<f64> {
    check_step(inputs, gaps, k)?;
    let lk = inputs.lambda(k);
    let mut acc = 0.0;
    for kp in 1..=k {
        let lkp = inputs.lambda(kp);
        let decay = (inputs.lambda(kp + 1) / lkp).powi(inputs.t as i32);
        let term = 5.0 * inputs.delta(kp)? + 7.0 * inputs.c0 / gaps.gap(kp) * decay;
        acc += 8f64.powi((k - kp) as i32) * lkp / lk * term;
    }
    Ok(3.0 * acc)
}

/// Iteration-count predictor for power iteration, constants set to one:
/// the larger of `max(log 𝒢, K − k + log(c0 K/(ε T_{K,min}))) / (log(7λ_k + λ_{k+1}) − log(7λ_{k+1} + λ_k))`
/// and `1 / (log λ_k − log λ_{k+1})`.
pub fn cor3_iteration_budget(inputs: &BoundInputs, gaps: &SpectrumGaps, k: usize) -> Result<f64> {
    check_step(inputs, gaps, k)?;
    let eps = inputs.epsilon()?;
    let kk = inputs.k_count;
    let num = inputs
        .g()
        .ln()
        .max((kk - k) as f64 + (inputs.c0 * kk as f64 / (eps * gaps.min_gap(kk))).ln());
    let first = num / gaps.contraction_inverse(k).ln();
    let second = 1.0 / (gaps.lambda(k).ln() - gaps.lambda(k + 1).ln());
    Ok(first.max(second))
}

/// Unrolled directional bound
/// `c0 Σ_{k'<k} 𝒢_k^{k−k'−1} (λ*_j / λ_k)^{t−1}`, where `λ_k` is the top
/// eigenvalue of the deflated matrix `Σ_k`. `j >= k`.
pub fn directional_gap_bound(inputs: &BoundInputs, k: usize, j: usize, lambda_k: f64) -> Result<f64> {
    if k == 0 || j < k || j > inputs.lambdas.len() {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= j <= d, got k={k}, j={j}")));
    }
    if inputs.t == 0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let lj = inputs.lambda(j);
    if !(lambda_k > lj) {
        return Err(Error::InvalidSpectrum(format!(
            "deflated top eigenvalue {lambda_k} does not exceed λ*_{j} = {lj}"
        )));
    }
    let g = inputs.g_k(k);
    let decay = (lj / lambda_k).powi(inputs.t as i32 - 1);
    let sum: f64 = (1..k).map(|kp| g.powi((k - kp - 1) as i32)).sum();
    Ok(inputs.c0 * sum * decay)
}

/// Eigenvector-gap bound
/// `sqrt((4.8/λ_k) ‖Σ_k − Σ*_k‖_2² + (11 c0² / (2 T_k²)) Σ_{j>k} (λ_j/λ_k)^{2t})`.
///
/// Gated on `‖Σ_{k'} − Σ*_{k'}‖_F <= T_{k,min}/8` for every `k' <= k`
/// (`matrix_gaps_fro[k'-1]`) and on the iteration floor at step `k`.
///
/// For `λ_k < 1` the first term can undershoot the true rotation of the top
/// eigenvector; [`lemma10_u_gap_bound_squared`] uses `4.8/λ_k²` instead.
pub fn lemma10_u_gap_bound(
    inputs: &BoundInputs,
    gaps: &SpectrumGaps,
    k: usize,
    matrix_gap_spec: f64,
    matrix_gaps_fro: &[f64],
) -> Result<BoundValue> {
    lemma10_gated(inputs, gaps, k, matrix_gap_spec, matrix_gaps_fro, 1)
}

/// [`lemma10_u_gap_bound`] with the perturbation term `(4.8/λ_k²) ‖Σ_k − Σ*_k‖_2²`,
/// the scaling that the Neumann-series argument actually produces.
pub fn lemma10_u_gap_bound_squared(
    inputs: &BoundInputs,
    gaps: &SpectrumGaps,
    k: usize,
    matrix_gap_spec: f64,
    matrix_gaps_fro: &[f64],
) -> Result<BoundValue> {
    lemma10_gated(inputs, gaps, k, matrix_gap_spec, matrix_gaps_fro, 2)
}

fn lemma10_gated(
    inputs: &BoundInputs,
    gaps: &SpectrumGaps,
    k: usize,
    matrix_gap_spec: f64,
    matrix_gaps_fro: &[f64],
    lambda_power: i32,
) -> Result<BoundValue> {
    check_step(inputs, gaps, k)?;
    if matrix_gaps_fro.len() < k {
        return Err(Error::DimensionMismatch { expected: k, got: matrix_gaps_fro.len() });
    }
    let limit = gaps.min_gap(k) / 8.0;
    if matrix_gaps_fro[..k].iter().any(|g| *g > limit)
        || (inputs.t as f64) < thm2_t_floor(inputs, gaps, k)
    {
        return Ok(BoundValue::PreconditionFailed);
    }
    let lk = inputs.lambda(k);
    let tk = gaps.gap(k);
    let tail: f64 = (k + 1..=inputs.lambdas.len())
        .map(|j| (inputs.lambda(j) / lk).powi(2 * inputs.t as i32))
        .sum();
    let c0 = inputs.c0;
    let head = 4.8 / lk.powi(lambda_power) * matrix_gap_spec * matrix_gap_spec;
    Ok(BoundValue::Value((head + 11.0 * c0 * c0 / (2.0 * tk * tk) * tail).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(l: &[f64], d: &[f64], c0: f64, t: usize, k: usize) -> BoundInputs {
        BoundInputs::new(l.to_vec(), d.to_vec(), c0, t, k).unwrap()
    }

    #[test]
    fn gaps_examples() {
        let g = eigengaps(&[1.0, 0.5, 1.0 / 3.0]).unwrap();
        assert_eq!(g.gaps(), &[0.5, 0.5 - 1.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(g.min_gap(2), 0.5 - 1.0 / 3.0);
        assert_eq!(eigengaps(&[1.0, 0.5]).unwrap().gaps(), &[0.5, 0.5]);
        assert!(eigengaps(&[1.0, 1.0]).is_err());
        assert!(eigengaps(&[1.0, 0.0]).is_err());
        assert_eq!(g.davis_kahan_gap(1), 0.5);
        assert_eq!(g.davis_kahan_gap(2), 0.5 - 1.0 / 3.0);
    }

    #[test]
    fn thm1_condition_examples() {
        let l = [1.0, 0.5];
        let g = eigengaps(&l).unwrap();
        let inp = inputs(&l, &[0.1, 0.0], 1.0, 1, 2);
        assert!(thm1_condition(&inp, &g, 1).unwrap());
        assert_eq!(thm1_condition_lhs(&inp, &g, 2).unwrap(), 0.1);
        assert!(!thm1_condition(&inp, &g, 2).unwrap());
        let zero = inputs(&l, &[0.0, 0.0], 1.0, 1, 2);
        assert!(thm1_condition(&zero, &g, 2).unwrap());
    }

    #[test]
    fn thm1_bound_examples() {
        let l = [1.0, 0.5];
        let g = eigengaps(&l).unwrap();
        let inp = inputs(&l, &[0.01, 0.01], 1.0, 1, 2);
        let b2 = thm1_bound(&inp, &g, 2).unwrap().value().unwrap();
        assert!((b2 - 0.55).abs() < 1e-15);
        assert!((thm1_bound(&inp, &g, 1).unwrap().value().unwrap() - 0.05).abs() < 1e-17);
        let zero = inputs(&l, &[0.0, 0.0], 1.0, 1, 2);
        assert_eq!(thm1_bound(&zero, &g, 2).unwrap(), BoundValue::Value(0.0));
        let big = inputs(&l, &[0.1, 0.0], 1.0, 1, 2);
        assert_eq!(thm1_bound(&big, &g, 2).unwrap(), BoundValue::PreconditionFailed);
    }

    #[test]
    fn cor1_budget_example() {
        let l = [1.0, 0.5];
        let g = eigengaps(&l).unwrap();
        let inp = inputs(&l, &[], 1.0, 1, 1);
        assert!((cor1_delta_budget(0.1, &inp, &g, 1).unwrap() - 0.005).abs() < 1e-17);
    }

    #[test]
    fn cor2_reduces_when_no_tail() {
        let l = [1.0, 0.5, 0.25];
        let g = eigengaps(&l).unwrap();
        let inp = inputs(&l, &[], 1.0, 1, 2).with_epsilon(0.01).with_alpha(vec![0.5, 0.5]);
        let expect = (2.0 / (0.01 * 0.5_f64)).ln() / 2f64.ln();
        assert!((cor2_iteration_budget(&inp, &g, 2).unwrap() - expect).abs() < 1e-12);
        let bad = inputs(&l, &[], 1.0, 1, 2).with_epsilon(0.01).with_alpha(vec![1.5, 1.5]);
        assert!(cor2_iteration_budget(&bad, &g, 1).is_err());
    }

    #[test]
    fn g_bounded_for_power_law() {
        let l: Vec<f64> = (1..=30).map(|j| 1.0 / j as f64).collect();
        let inp = inputs(&l, &[], 2.0, 1, 30);
        assert!(inp.g() <= 3.0 + 1e-12);
    }

    #[test]
    fn directional_bound_empty_at_first_step() {
        let l = [1.0, 0.5, 0.25];
        let inp = inputs(&l, &[], 1.0, 10, 3);
        assert_eq!(directional_gap_bound(&inp, 1, 2, 1.0).unwrap(), 0.0);
        assert!(directional_gap_bound(&inp, 2, 2, 0.4).is_err());
    }

    #[test]
    fn lemma10_vanishes_in_ideal_limit() {
        let l = [1.0, 0.5, 0.25];
        let g = eigengaps(&l).unwrap();
        let inp = inputs(&l, &[], 1.0, 2000, 2);
        let b = lemma10_u_gap_bound(&inp, &g, 2, 0.0, &[0.0, 0.0]).unwrap();
        assert!(b.value().unwrap() < 1e-300);
        let gated = lemma10_u_gap_bound(&inp, &g, 2, 0.0, &[0.0, 1.0]).unwrap();
        assert_eq!(gated, BoundValue::PreconditionFailed);
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(BoundInputs::new(vec![1.0, 0.5], vec![], 0.5, 1, 1).is_err());
        assert!(BoundInputs::new(vec![1.0, 0.5], vec![], 1.0, 1, 3).is_err());
        assert!(BoundInputs::new(vec![1.0, 0.5], vec![0.1], 1.0, 1, 2).is_err());
    }
}
