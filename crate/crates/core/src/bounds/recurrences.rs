//! Closed forms for the recurrences that appear when unrolling the error
//! propagation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub enum Recurrence<'a> {
    /// `Q_k = a_k + b_k Σ_{k'<k} Q_{k'}` with `a = (a_1..a_k)`, `b = (b_1..b_k)`.
    SumForm { a: &'a [f64], b: &'a [f64] },
    /// `Q_{k+1} = a_k Q_k + b_k` with `a = (a_1..a_{k-1})` and
    /// `b = (b_0..b_{k-1})`, where `b_0 = Q_1`.
    AffineForm { a: &'a [f64], b: &'a [f64] },
    /// Upper bound on `S_k = Σ_{k'<k} p_{k'}^t / g^{k'}` with `p = (p_1..p_k)`.
    GeometricTail { p: &'a [f64], g: f64, t: f64 },
}

/// Evaluates the closed form of a recurrence at its last index.
pub fn unroll_recurrences(r: &Recurrence<'_>) -> Result<f64> {
    match *r {
        Recurrence::SumForm { a, b } => sum_form(a, b),
        Recurrence::AffineForm { a, b } => affine_form(a, b),
        Recurrence::GeometricTail { p, g, t } => geometric_tail(p, g, t),
    }
}

fn non_negative(name: &str, xs: &[f64]) -> Result<()> {
    match xs.iter().position(|x| !(*x >= 0.0 && x.is_finite())) {
        Some(i) => Err(Error::InvalidArgument(format!("{name}[{i}] must be finite and non-negative"))),
        None => Ok(()),
    }
}

/// `a_k + b_k Σ_{k'=1}^{k-1} a_{k'} ∏_{ℓ=k'+1}^{k-1} (1 + b_ℓ)`
fn sum_form(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::InvalidArgument("sum form needs equal, non-empty a and b".into()));
    }
    non_negative("a", a)?;
    non_negative("b", b)?;
    let k = a.len();
    // Accumulate Σ a_{k'} ∏ (1 + b_ℓ) from the innermost index outwards.
    let mut acc = 0.0;
    for kp in 0..k - 1 {
        acc = acc * (1.0 + b[kp]) + a[kp];
    }
    Ok(a[k - 1] + b[k - 1] * acc)
}

/// `Σ_{k'=0}^{k-1} b_{k'} ∏_{j=k'+1}^{k-1} a_j`
fn affine_form(a: &[f64], b: &[f64]) -> Result<f64> {
    if b.is_empty() || b.len() != a.len() + 1 {
        return Err(Error::InvalidArgument("affine form needs len(b) = len(a) + 1 >= 1".into()));
    }
    non_negative("a", a)?;
    non_negative("b", b)?;
    let mut total = 0.0;
    for (kp, bk) in b.iter().enumerate() {
        let prod: f64 = a[kp..].iter().product();
        total += bk * prod;
    }
    Ok(total)
}

/// `(1 − γ)^{-1} p_{k-1}^t / g^{k-1}` with `γ = max_{k'<k} g (p_{k'}/p_{k'+1})^t`.
fn geometric_tail(p: &[f64], g: f64, t: f64) -> Result<f64> {
    if p.len() < 2 {
        return Err(Error::InvalidArgument("geometric tail needs at least p_1 and p_2".into()));
    }
    if !(g > 0.0 && t > 0.0) {
        return Err(Error::InvalidArgument("g and t must be positive".into()));
    }
    for w in p.windows(2) {
        if !(w[0] > 0.0 && w[1] > w[0]) {
            return Err(Error::InvalidArgument("p must be positive and strictly increasing".into()));
        }
    }
    let gamma = p
        .windows(2)
        .map(|w| g * (w[0] / w[1]).powf(t))
        .fold(0.0_f64, f64::max);
    if gamma >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "t = {t} is below the floor log g / log(p_(k'+1)/p_k') (ratio {gamma})"
        )));
    }
    let k = p.len();
    Ok(p[k - 2].powf(t) / g.powi(k as i32 - 1) / (1.0 - gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_with_unit_multipliers_is_cumulative_sum() {
        let b = [0.5, 1.0, 2.0, 0.25];
        let q = unroll_recurrences(&Recurrence::AffineForm { a: &[1.0; 3], b: &b }).unwrap();
        assert_eq!(q, 3.75);
    }

    #[test]
    fn sum_form_small_case() {
        // Q1 = 1, Q2 = 2 + 3·1 = 5, Q3 = 1 + 2·(1 + 5) = 13
        let q = unroll_recurrences(&Recurrence::SumForm { a: &[1.0, 2.0, 1.0], b: &[9.0, 3.0, 2.0] }).unwrap();
        assert_eq!(q, 13.0);
    }

    #[test]
    fn geometric_tail_floor_enforced() {
        let p = [1.0, 1.1, 1.2];
        assert!(unroll_recurrences(&Recurrence::GeometricTail { p: &p, g: 2.0, t: 1.0 }).is_err());
        assert!(unroll_recurrences(&Recurrence::GeometricTail { p: &p, g: 2.0, t: 20.0 }).is_ok());
    }

    #[test]
    fn negative_inputs_rejected() {
        assert!(unroll_recurrences(&Recurrence::SumForm { a: &[-1.0], b: &[0.0] }).is_err());
        assert!(unroll_recurrences(&Recurrence::AffineForm { a: &[], b: &[] }).is_err());
    }
}
