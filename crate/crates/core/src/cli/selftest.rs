//! Reduced-scale verification suite: every gated check runs on randomized
//! instances with `d <= 20` and the verdicts are tallied per check.

use std::time::{Duration, Instant};

use crate::bounds::{
    eigengaps, thm1_bound_with_leading, thm2_bound, unroll_recurrences, BoundInputs, BoundValue, Recurrence,
    SpectrumGaps, THM1_LEADING_CONSTANT,
};
use crate::cli::commands::{simulate_deflation, ExperimentRun};
use crate::diagnostics::{
    diagnose_run, directional_identity_check, inner_gap_check, lemma10_check, lemma10_squared_check, lemma12_check, lemma3_recurrence_check, lemma4_check,
    lemma6_alignment_check, lemma7_check, lemma8_identity_check, lemma9_lower_bound_check, rigorous_alignment_check, weyl_check,
    Tally, Verdict,
};
use crate::error::Result;
use crate::linalg::{
    build_test_sigma, random_orthogonal_basis, vector, Matrix, RandomSource, Spectrum, SpectrumKind, SymMatrix,
};

/// Largest relative error accepted for the exact eigenvector identity.
pub const IDENTITY_REL_TOL: f64 = 1e-6;
/// Relative agreement required between closed forms and brute force.
pub const RECURRENCE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Randomized instances per check family.
    pub instances: usize,
    /// Evaluates the deflation bound with leading constant 4 instead of 5.
    pub wrong_leading_constant: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { seed: 0, instances: 40, wrong_leading_constant: false }
    }
}

/// Verdict counts for one check, plus how many instances produced at least one
/// non-skipped verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub tally: Tally,
    pub instances_checked: usize,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub checks: Vec<CheckSummary>,
    pub elapsed: Duration,
}

impl SelftestReport {
    pub fn any_violated(&self) -> bool {
        self.checks.iter().any(|c| c.tally.violated > 0)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn table(&self) -> String {
        let mut s = format!(
            "{:<28} {:>8} {:>8} {:>8} {:>10}\n",
            "check", "holds", "violated", "skipped", "instances"
        );
        for c in &self.checks {
            s.push_str(&format!(
                "{:<28} {:>8} {:>8} {:>8} {:>10}\n",
                c.name, c.tally.holds, c.tally.violated, c.tally.skipped, c.instances_checked
            ));
        }
        s
    }
}

/// Accumulates verdicts for a single instance before folding them in.
struct Collector {
    checks: Vec<CheckSummary>,
}

impl Collector {
    fn new(names: &[&'static str]) -> Self {
        Collector {
            checks: names.iter().map(|&name| CheckSummary { name, ..Default::default() }).collect(),
        }
    }

    fn record(&mut self, name: &'static str, verdicts: &[Verdict]) {
        let c = self
            .checks
            .iter_mut()
            .find(|c| c.name == name)
            .expect("check names are registered up front");
        let mut t = Tally::default();
        for v in verdicts {
            t.add(v);
        }
        if t.holds + t.violated > 0 {
            c.instances_checked += 1;
        }
        c.tally.merge(t);
    }
}

pub const CHECK_NAMES: &[&str] = &[
    "weyl",
    "lemma3_recurrence",
    "lemma4_perturbation",
    "lemma6_alignment",
    "alignment_rigorous",
    "lemma7_directional",
    "directional_identity",
    "lemma8_identity",
    "lemma9_lower_bound",
    "lemma10_u_gap",
    "lemma10_squared_scale",
    "lemma12_power_iteration",
    "inner_gap_norm",
    "thm1_soundness",
    "thm2_soundness",
    "thm1_formula_oracle",
    "recurrence_sum_form",
    "recurrence_affine_form",
    "recurrence_geometric_tail",
];

/// Runs every check family on `opts.instances` instances.
pub fn run_selftest(opts: &SelftestOptions) -> Result<SelftestReport> {
    let start = Instant::now();
    let mut col = Collector::new(CHECK_NAMES);
    let leading = if opts.wrong_leading_constant { 4.0 } else { THM1_LEADING_CONSTANT };
    let root = RandomSource::new(opts.seed);
    for i in 0..opts.instances {
        let mut rng = root.substream(i as u64);
        deflation_family(&mut col, &mut rng, i, leading)?;
        identity_family(&mut col, &mut rng)?;
        power_iteration_family(&mut col, &mut rng)?;
        recurrence_family(&mut col, &mut rng)?;
    }
    Ok(SelftestReport { checks: col.checks, elapsed: start.elapsed() })
}

/// Random strictly decreasing spectrum with `λ_1 = 1`, one of three shapes.
pub fn random_spectrum(d: usize, rng: &mut RandomSource) -> SpectrumKind {
    match rng.below(3) {
        0 => SpectrumKind::PowerLaw(0.8 + 1.2 * rng.uniform()),
        1 => SpectrumKind::Exponential(0.5 + 0.35 * rng.uniform()),
        _ => {
            // Ratios in [0.55, 0.9] keep every gap comfortably away from zero.
            let mut l = vec![1.0];
            for _ in 1..d {
                let last = *l.last().unwrap_or(&1.0);
                l.push(last * (0.55 + 0.35 * rng.uniform()));
            }
            SpectrumKind::Explicit(l)
        }
    }
}

/// Spectrum of the ideal deflated matrix at step `k`: `λ_k … λ_d` followed by
/// `k − 1` zeros, with the matching eigenvectors.
fn ideal_spectrum_at(truth: &Spectrum, k: usize) -> Result<Spectrum> {
    let d = truth.dim();
    let order: Vec<usize> = (k - 1..d).chain(0..k - 1).collect();
    let eigenvalues = order.iter().map(|&j| if j >= k - 1 { truth.eigenvalues[j] } else { 0.0 }).collect();
    let cols: Vec<Vec<f64>> = order.iter().map(|&j| truth.vector(j).to_vec()).collect();
    Ok(Spectrum { eigenvalues, basis: Matrix::from_columns(&cols)? })
}

fn bound_inputs(exp: &ExperimentRun, t: usize) -> Result<Option<(BoundInputs, SpectrumGaps)>> {
    let Some(c0) = exp.run.measured_c0() else {
        return Ok(None);
    };
    let lambdas = exp.trace.spectrum.eigenvalues.clone();
    let gaps = eigengaps(&lambdas)?;
    let deltas = exp.run.steps.iter().map(|s| s.delta_norm).collect();
    Ok(Some((BoundInputs::new(lambdas, deltas, c0, t, exp.run.k_count)?, gaps)))
}

/// `5 Σ_{k'≤k} (λ_{k'}/λ_k) δ_{k'} ∏_{j=k'+1}^{k} (3 + 2λ_j/(λ_j − λ_{j+1}))`,
/// evaluated from scratch as an oracle for the library.
fn deflation_bound_oracle(lambdas: &[f64], deltas: &[f64], k: usize) -> f64 {
    let lam = |j: usize| lambdas.get(j - 1).copied().unwrap_or(0.0);
    let mut total = 0.0;
    for kp in 1..=k {
        let mut prod = 1.0;
        for j in kp + 1..=k {
            prod *= 3.0 + 2.0 * lam(j) / (lam(j) - lam(j + 1));
        }
        total += lam(kp) / lam(k) * deltas[kp - 1] * prod;
    }
    5.0 * total
}

fn bound_verdict(b: BoundValue, measured: f64) -> Verdict {
    match b {
        BoundValue::Value(v) => Verdict::at_most(measured, v),
        BoundValue::PreconditionFailed => Verdict::Skipped("bound preconditions fail"),
    }
}

fn deflation_family(col: &mut Collector, rng: &mut RandomSource, i: usize, leading: f64) -> Result<()> {
    let d = [8, 12, 16, 20][i % 4];
    let k_count = d / 2;
    let kind = random_spectrum(d, rng);
    // Alternate accurate and deliberately rough subroutines.
    let t = if i % 2 == 0 { 150 + rng.below(250) } else { 2 + rng.below(12) };
    let seed = (rng.uniform() * 1e9) as u64;
    let exp = simulate_deflation(d, &kind, k_count, t, seed, None)?;
    let diags = diagnose_run(&exp.run, &exp.trace)?;
    let lambdas = &exp.trace.spectrum.eigenvalues;
    let gaps = eigengaps(lambdas)?;

    let weyl: Vec<Verdict> = (1..=k_count)
        .map(|k| weyl_check(exp.run.sigma(k), exp.trace.sigma_star(k)))
        .collect::<Result<_>>()?;
    col.record("weyl", &weyl);
    col.record("lemma3_recurrence", &lemma3_recurrence_check(&diags, lambdas));
    let l4: Vec<Verdict> = diags.iter().map(|g| lemma4_check(g, &gaps)).collect();
    col.record("lemma4_perturbation", &l4);

    let mut l6 = Vec::new();
    let mut l6r = Vec::new();
    for k in 1..=k_count {
        let star = ideal_spectrum_at(&exp.trace.spectrum, k)?;
        let x0 = exp.run.step(k).init.as_deref().unwrap_or_default();
        let positive = d - k + 1;
        for j in [2, 3, positive] {
            if j >= 2 && j <= positive {
                l6.push(lemma6_alignment_check(exp.run.sigma(k), &star, x0, t, j)?);
                l6r.push(rigorous_alignment_check(exp.run.sigma(k), &star, x0, t, j)?);
            }
        }
    }
    col.record("lemma6_alignment", &l6);
    col.record("alignment_rigorous", &l6r);

    let mut l7 = Vec::new();
    let mut exact = Vec::new();
    for k in 1..=k_count {
        for j in [k, k + 1, d] {
            if j <= d {
                l7.push(lemma7_check(&exp.run, &diags, k, j)?);
                exact.push(directional_identity_check(&exp.run, &diags, k, j)?);
            }
        }
    }
    col.record("lemma7_directional", &l7);
    col.record("directional_identity", &exact);

    let l9: Vec<Verdict> = (1..=k_count)
        .map(|k| lemma9_lower_bound_check(exp.run.sigma(k), &exp.trace, k))
        .collect::<Result<_>>()?;
    col.record("lemma9_lower_bound", &l9);
    let inner: Vec<Verdict> = diags.iter().map(inner_gap_check).collect();
    col.record("inner_gap_norm", &inner);

    let Some((inputs, gaps)) = bound_inputs(&exp, t)? else {
        return Ok(());
    };
    let l10: Vec<Verdict> = (1..=k_count)
        .map(|k| lemma10_check(&diags, &inputs, &gaps, k))
        .collect::<Result<_>>()?;
    col.record("lemma10_u_gap", &l10);
    let l10s: Vec<Verdict> = (1..=k_count)
        .map(|k| lemma10_squared_check(&diags, &inputs, &gaps, k))
        .collect::<Result<_>>()?;
    col.record("lemma10_squared_scale", &l10s);

    let mut thm1 = Vec::new();
    let mut thm2 = Vec::new();
    let mut oracle = Vec::new();
    for (k, g) in (1..=k_count).zip(&diags) {
        let b1 = thm1_bound_with_leading(&inputs, &gaps, k, leading)?;
        thm1.push(bound_verdict(b1, g.eig_err));
        thm2.push(bound_verdict(thm2_bound(&inputs, &gaps, k)?, g.eig_err));
        let expected = deflation_bound_oracle(&inputs.lambdas, &inputs.delta_norms, k);
        oracle.push(match b1 {
            BoundValue::Value(v) if expected > 0.0 => Verdict::at_most((v - expected).abs() / expected, 1e-12),
            BoundValue::Value(_) => Verdict::Skipped("zero bound"),
            BoundValue::PreconditionFailed => Verdict::Skipped("bound preconditions fail"),
        });
    }
    col.record("thm1_soundness", &thm1);
    col.record("thm2_soundness", &thm2);
    col.record("thm1_formula_oracle", &oracle);
    Ok(())
}

/// Random symmetric `E` with unit Frobenius norm.
fn random_symmetric_direction(d: usize, rng: &mut RandomSource) -> Result<SymMatrix> {
    let e = SymMatrix::from_upper_fn(d, |_, _| rng.normal());
    let n = e.frobenius_norm();
    Ok(e.scaled(1.0 / n))
}

fn random_sigma(rng: &mut RandomSource) -> Result<(SymMatrix, Spectrum)> {
    let d = 4 + rng.below(17);
    let kind = random_spectrum(d, rng);
    let basis = random_orthogonal_basis(d, rng)?;
    build_test_sigma(d, &kind, &basis)
}

/// Exact identity `a_iᵀ a*_j (σ_i − σ*_j) = a_iᵀ H a*_j` on `M = M* + H`.
fn identity_family(col: &mut Collector, rng: &mut RandomSource) -> Result<()> {
    let (m_star, _) = random_sigma(rng)?;
    let d = m_star.dim();
    let scale = 10f64.powf(-3.0 + 2.0 * rng.uniform());
    let m = m_star.add(&random_symmetric_direction(d, rng)?.scaled(scale))?;
    let mut out = Vec::new();
    for _ in 0..4 {
        let (i, j) = (1 + rng.below(d), 1 + rng.below(d));
        out.push(match lemma8_identity_check(&m, &m_star, i, j) {
            // Tiny inner products carry no relative information.
            Ok(c) if c.lhs.abs() < 1e-6 => Verdict::Skipped("inner product below 1e-6"),
            Ok(c) => Verdict::at_most(c.rel_err, IDENTITY_REL_TOL),
            Err(e) if e.is_math() => Verdict::Skipped("eigenvalues too close"),
            Err(e) => return Err(e),
        });
    }
    col.record("lemma8_identity", &out);
    Ok(())
}

/// Power iteration from starts well aligned with the top eigenvector.
fn power_iteration_family(col: &mut Collector, rng: &mut RandomSource) -> Result<()> {
    let (m, spec) = random_sigma(rng)?;
    let d = m.dim();
    let mut x0 = spec.vector(0).to_vec();
    let noise = rng.normal_vec(d);
    vector::axpy(&mut x0, 0.8 * rng.uniform(), &vector::normalized(&noise).unwrap_or_default());
    let Some(x0) = vector::normalized(&x0) else {
        return Ok(());
    };
    let t = 1 + rng.below(40);
    col.record("lemma12_power_iteration", &[lemma12_check(&m, &x0, t)?]);
    Ok(())
}

fn rel_close(a: f64, b: f64) -> Verdict {
    Verdict::at_most((a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE), RECURRENCE_REL_TOL)
}

/// Closed forms against direct recursion on random non-negative sequences.
fn recurrence_family(col: &mut Collector, rng: &mut RandomSource) -> Result<()> {
    let k = 2 + rng.below(10);
    let a: Vec<f64> = (0..k).map(|_| rng.uniform() * 2.0).collect();
    let b: Vec<f64> = (0..k).map(|_| rng.uniform() * 2.0).collect();

    let mut q: Vec<f64> = Vec::with_capacity(k);
    for i in 0..k {
        let prev: f64 = q.iter().sum();
        q.push(a[i] + b[i] * prev);
    }
    let closed = unroll_recurrences(&Recurrence::SumForm { a: &a, b: &b })?;
    col.record("recurrence_sum_form", &[rel_close(q[k - 1], closed)]);

    let mut qa = b[0];
    for i in 0..k - 1 {
        qa = a[i] * qa + b[i + 1];
    }
    let closed = unroll_recurrences(&Recurrence::AffineForm { a: &a[..k - 1], b: &b })?;
    col.record("recurrence_affine_form", &[rel_close(qa, closed)]);

    let mut p = vec![0.5 + rng.uniform()];
    for _ in 1..k {
        let last = *p.last().unwrap_or(&1.0);
        p.push(last * (1.2 + rng.uniform()));
    }
    let g = 0.5 + 2.0 * rng.uniform();
    // Large enough that every ratio term stays below one.
    let t = 2.0 + ((2.0 * g).ln() / (1.2f64).ln()).max(0.0) + 5.0 * rng.uniform();
    let direct: f64 = (1..k).map(|kp| p[kp - 1].powf(t) / g.powi(kp as i32)).sum();
    let closed = unroll_recurrences(&Recurrence::GeometricTail { p: &p, g, t })?;
    col.record(
        "recurrence_geometric_tail",
        &[Verdict::at_most(direct, closed * (1.0 + RECURRENCE_REL_TOL))],
    );
    Ok(())
}
