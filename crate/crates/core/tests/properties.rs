//! Property tests for the structural invariants of every module. Random
//! instances are derived from proptest-chosen seeds so that failures shrink to
//! a reproducible seed.

use proptest::prelude::*;

use deflatrix::bounds::{
    cor1_delta_budget, cor3_iteration_budget, eigengaps, thm1_bound, thm2_bound, thm2_conditions, unroll_recurrences,
    BoundInputs, BoundValue, Recurrence,
};
use deflatrix::cli::commands::simulate_deflation;
use deflatrix::clustering::{
    build_rnn_graph, entropy, kmeans, mutual_information, normalized_laplacian, spectral_embed, synthetic_blobs,
    EmbedOptions,
};
use deflatrix::csvio::{parse_csv, CsvWriter};
use deflatrix::deflation::{
    deflate, deflate_step, ideal_deflation, instrumented_deflation, write_run_outputs, ExactSolver,
    PowerIterationSolver,
};
use deflatrix::diagnostics::{diagnose_run, directional_identity_check, inner_gap_check, lemma4_check, lemma7_check};
use deflatrix::linalg::{
    build_test_sigma, jacobi_eigendecomposition, random_orthogonal_basis, sample_unit_sphere, vector, JacobiOptions,
    RandomSource, Spectrum, SpectrumKind, SymMatrix,
};
use deflatrix::power_iter::{pi_alignment_bound, pi_error_bound, pi_error_bound_from_init, power_iterate};

const TOL: f64 = 1e-10;

/// Strictly decreasing spectrum with `λ_1 = 1` and ratios in `[0.5, 0.95]`.
fn decaying_spectrum(d: usize, rng: &mut RandomSource) -> Vec<f64> {
    let mut l = vec![1.0];
    for _ in 1..d {
        let r = 0.5 + 0.45 * rng.uniform();
        l.push(l.last().unwrap() * r);
    }
    l
}

fn test_sigma(d: usize, seed: u64) -> (SymMatrix, Spectrum) {
    let mut rng = RandomSource::new(seed);
    let l = decaying_spectrum(d, &mut rng);
    let basis = random_orthogonal_basis(d, &mut rng).unwrap();
    build_test_sigma(d, &SpectrumKind::Explicit(l), &basis).unwrap()
}

fn random_symmetric(d: usize, rng: &mut RandomSource) -> SymMatrix {
    SymMatrix::from_upper_fn(d, |_, _| rng.normal())
}

fn oracle(m: &SymMatrix) -> Spectrum {
    jacobi_eigendecomposition(m, &JacobiOptions::default()).unwrap()
}

fn min_eigenvalue(m: &SymMatrix) -> f64 {
    *oracle(m).eigenvalues.last().unwrap()
}

fn spectral_norm(m: &SymMatrix) -> f64 {
    m.spectral_norm().unwrap()
}

fn fro_distance(a: &SymMatrix, b: &SymMatrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm()
}

// ---------------------------------------------------------------- linalg

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn generated_pairs_are_eigenpairs(seed in any::<u64>(), d in 1usize..25) {
        let (sigma, spec) = test_sigma(d, seed);
        for j in 0..d {
            let su = sigma.mat_vec(spec.vector(j)).unwrap();
            let mut r = su.clone();
            vector::axpy(&mut r, -spec.eigenvalues[j], spec.vector(j));
            prop_assert!(vector::norm(&r) <= 1e-9);
        }
    }

    #[test]
    fn oracle_matches_construction(seed in any::<u64>(), d in 2usize..20) {
        let (sigma, spec) = test_sigma(d, seed);
        let found = oracle(&sigma);
        for j in 0..d {
            prop_assert!((found.eigenvalues[j] - spec.eigenvalues[j]).abs() <= 1e-9);
            let gap_prev = if j > 0 { spec.eigenvalues[j - 1] - spec.eigenvalues[j] } else { f64::INFINITY };
            let gap_next = spec.eigenvalues.get(j + 1).map_or(f64::INFINITY, |n| spec.eigenvalues[j] - n);
            if gap_prev.min(gap_next) > 1e-6 {
                prop_assert!(vector::dot(found.vector(j), spec.vector(j)).abs() >= 1.0 - 1e-8);
            }
        }
    }

    #[test]
    fn oracle_reconstructs_dense_matrices(seed in any::<u64>()) {
        let mut rng = RandomSource::new(seed);
        let m = random_symmetric(20, &mut rng);
        let s = oracle(&m);
        prop_assert!(s.basis.orthonormality_error() <= TOL);
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let residual = fro_distance(&s.reconstruct(), &m);
        prop_assert!(residual <= 1e-8 * m.frobenius_norm().max(1.0), "{}", residual);
    }

    #[test]
    fn two_by_two_oracle_matches_closed_form(a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0) {
        let m = SymMatrix::from_rows(&[vec![a, b], vec![b, c]]).unwrap();
        let s = oracle(&m);
        let mid = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        let scale = 1.0 + a.abs() + b.abs() + c.abs();
        prop_assert!((s.eigenvalues[0] - (mid + rad)).abs() <= 1e-12 * scale);
        prop_assert!((s.eigenvalues[1] - (mid - rad)).abs() <= 1e-12 * scale);
    }

    #[test]
    fn spectral_norm_never_exceeds_frobenius(seed in any::<u64>(), d in 1usize..15) {
        let mut rng = RandomSource::new(seed);
        let m = random_symmetric(d, &mut rng);
        prop_assert!(spectral_norm(&m) <= m.frobenius_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn random_bases_are_orthonormal_and_reproducible(seed in any::<u64>(), d in 1usize..30) {
        let a = random_orthogonal_basis(d, &mut RandomSource::new(seed)).unwrap();
        let b = random_orthogonal_basis(d, &mut RandomSource::new(seed)).unwrap();
        prop_assert!(a.orthonormality_error() <= 1e-12);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn same_seed_same_stream(seed in any::<u64>()) {
        let mut a = RandomSource::new(seed);
        let mut b = RandomSource::new(seed);
        for _ in 0..32 {
            prop_assert_eq!(a.normal().to_bits(), b.normal().to_bits());
        }
    }

    #[test]
    fn sphere_samples_are_unit(seed in any::<u64>(), d in 1usize..64) {
        let x = sample_unit_sphere(d, &mut RandomSource::new(seed)).unwrap();
        prop_assert!((vector::norm(&x) - 1.0).abs() <= 1e-14);
    }
}

// ------------------------------------------------------------ power-iter

/// Symmetric matrix with top eigenvalue 1 and every other `|σ_j| <= ratio`,
/// plus its top eigenvector.
fn gapped_matrix(d: usize, ratio: f64, rng: &mut RandomSource, psd: bool) -> (SymMatrix, Vec<f64>, f64) {
    let mut l = vec![1.0, ratio];
    for _ in 2..d {
        let u = rng.uniform();
        l.push(if psd { ratio * u } else { ratio * (2.0 * u - 1.0) });
    }
    if !psd && rng.uniform() < 0.5 {
        l[1] = -ratio;
    }
    let mut sorted = l.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let basis = random_orthogonal_basis(d, rng).unwrap();
    let spec = Spectrum { eigenvalues: sorted, basis };
    let top = spec.vector(0).to_vec();
    (spec.reconstruct(), top, ratio)
}

/// Unit start with `|x_0ᵀ a| = alignment`.
fn start_with_alignment(a: &[f64], alignment: f64, rng: &mut RandomSource) -> Vec<f64> {
    let mut w = rng.normal_vec(a.len());
    let p = vector::dot(&w, a);
    vector::axpy(&mut w, -p, a);
    let w = vector::normalized(&w).unwrap();
    let mut x: Vec<f64> = a.iter().map(|v| v * alignment).collect();
    vector::axpy(&mut x, (1.0 - alignment * alignment).sqrt(), &w);
    vector::normalized(&x).unwrap()
}

fn sign_aligned_distance(x: &[f64], a: &[f64]) -> f64 {
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    vector::distance(x, a).min(vector::distance(&neg, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn power_iteration_converges_within_start_dependent_bound(
        seed in any::<u64>(),
        d in 2usize..12,
        ratio in 0.05f64..0.9,
        alignment in 0.1f64..1.0,
    ) {
        let mut rng = RandomSource::new(seed);
        let (m, a1, ratio) = gapped_matrix(d, ratio, &mut rng, false);
        let x0 = start_with_alignment(&a1, alignment, &mut rng);
        let c0 = 1.0 / vector::dot(&x0, &a1).abs();
        for t in [1, 5, 20, 100] {
            let x = power_iterate(&m, &x0, t).unwrap().x;
            let err = sign_aligned_distance(&x, &a1);
            prop_assert!(err <= pi_error_bound_from_init(1.0, ratio, c0, t).unwrap() + TOL);
            if alignment >= 0.5_f64.sqrt() {
                prop_assert!(err <= pi_error_bound(1.0, ratio, t).unwrap() + TOL);
            }
        }
    }

    #[test]
    fn rayleigh_quotient_rises_on_psd_matrices(seed in any::<u64>(), d in 2usize..12, ratio in 0.1f64..0.95) {
        let mut rng = RandomSource::new(seed);
        let (m, _, _) = gapped_matrix(d, ratio, &mut rng, true);
        let x0 = sample_unit_sphere(d, &mut rng).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for t in 0..30 {
            let r = power_iterate(&m, &x0, t).unwrap().rayleigh;
            prop_assert!(r >= prev - 1e-14, "t = {}: {} < {}", t, r, prev);
            prev = r;
        }
    }

    #[test]
    fn power_iteration_bounds_are_plain_formulas(
        s2 in 0.0f64..0.99,
        c0 in 1.0f64..50.0,
        t in 0usize..200,
        h in 0.0f64..1.0,
    ) {
        let stated = 2f64.sqrt() * (s2 / 1.0).powi(t as i32);
        prop_assert_eq!(pi_error_bound(1.0, s2, t).unwrap(), stated);
        let align = c0 * (s2.powi(t as i32) + s2 / (1.0 - s2) * h);
        let got = pi_alignment_bound(1.0, s2, c0, t, h).unwrap();
        prop_assert!((got - align).abs() <= 1e-15 * align.abs().max(f64::MIN_POSITIVE));
    }
}

// ------------------------------------------------------------- deflation

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deflated_matrices_stay_near_psd(seed in any::<u64>(), d in 4usize..16, t in 1usize..60) {
        let (sigma, spec) = test_sigma(d, seed);
        let k_count = d / 2;
        let trace = ideal_deflation(&spec, k_count).unwrap();
        let run = instrumented_deflation(
            &sigma, &spec, k_count, &mut PowerIterationSolver::new(t, RandomSource::new(seed)),
        ).unwrap();
        for k in 1..=k_count + 1 {
            prop_assert!(min_eigenvalue(trace.sigma_star(k)) >= -TOL);
            let gap = spectral_norm(&run.sigma(k).sub(trace.sigma_star(k)).unwrap());
            prop_assert!(min_eigenvalue(run.sigma(k)) >= -gap - TOL);
        }
        // Weyl: the top eigenvalue moves by at most the perturbation.
        for k in 1..=k_count {
            let gap = spectral_norm(&run.sigma(k).sub(trace.sigma_star(k)).unwrap());
            prop_assert!((run.step(k).top.lambda - trace.lambda_star(k)).abs() <= gap + TOL);
        }
    }

    #[test]
    fn exact_subroutine_reproduces_ideal_trace(seed in any::<u64>(), d in 2usize..16) {
        let (sigma, spec) = test_sigma(d, seed);
        let trace = ideal_deflation(&spec, d).unwrap();
        let mut solver = ExactSolver { reference: Some(spec.clone()) };
        let out = deflate(&sigma, d, &mut solver).unwrap();
        for k in 1..=d + 1 {
            prop_assert!(fro_distance(&out.matrices[k - 1], trace.sigma_star(k)) <= TOL);
        }
    }

    #[test]
    fn ideal_recursion_matches_closed_form(seed in any::<u64>()) {
        let d = 20;
        let (_, spec) = test_sigma(d, seed);
        let trace = ideal_deflation(&spec, d).unwrap();
        let mut current = spec.reconstruct();
        for k in 1..=d {
            prop_assert!(fro_distance(&current, trace.sigma_star(k)) <= TOL);
            current = deflate_step(&current, spec.vector(k - 1)).unwrap();
        }
        prop_assert!(current.frobenius_norm() <= TOL);
    }

    #[test]
    fn identical_inputs_give_identical_traces(seed in any::<u64>(), d in 2usize..10, t in 1usize..40) {
        let a = simulate_deflation(d, &SpectrumKind::PowerLaw(1.0), d, t, seed, None).unwrap();
        let b = simulate_deflation(d, &SpectrumKind::PowerLaw(1.0), d, t, seed, None).unwrap();
        prop_assert_eq!(&a.run, &b.run);
        let (da, db) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        write_run_outputs(da.path(), &a.run, &a.trace, "power-law:1").unwrap();
        write_run_outputs(db.path(), &b.run, &b.trace, "power-law:1").unwrap();
        for f in ["run.csv", "v.csv", "u.csv", "meta.json"] {
            prop_assert_eq!(std::fs::read(da.path().join(f)).unwrap(), std::fs::read(db.path().join(f)).unwrap());
        }
    }

    #[test]
    fn full_sweep_returns_orthogonal_vectors(seed in any::<u64>(), d in 2usize..10) {
        let mut rng = RandomSource::new(seed);
        let l: Vec<f64> = (1..=d).map(|j| 0.6f64.powi(j as i32 - 1)).collect();
        let basis = random_orthogonal_basis(d, &mut rng).unwrap();
        let (sigma, _) = build_test_sigma(d, &SpectrumKind::Explicit(l), &basis).unwrap();
        let out = deflate(&sigma, d, &mut PowerIterationSolver::new(400, rng)).unwrap();
        for i in 0..d {
            for j in i + 1..d {
                prop_assert!(vector::dot(&out.vectors[i], &out.vectors[j]).abs() <= 1e-6);
            }
        }
    }
}

// ----------------------------------------------------------- diagnostics

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn diagnostic_invariants_hold_on_random_runs(seed in any::<u64>(), d in 4usize..16, t in 2usize..120) {
        let (sigma, spec) = test_sigma(d, seed);
        let k_count = d / 2;
        let trace = ideal_deflation(&spec, k_count).unwrap();
        let run = instrumented_deflation(
            &sigma, &spec, k_count, &mut PowerIterationSolver::new(t, RandomSource::new(seed)),
        ).unwrap();
        let diags = diagnose_run(&run, &trace).unwrap();
        let gaps = eigengaps(&spec.eigenvalues).unwrap();
        for g in &diags {
            prop_assert!(g.eig_err <= g.delta_norm + g.u_gap + 1e-12);
            prop_assert!(!lemma4_check(g, &gaps).violated());
            prop_assert!(!inner_gap_check(g).violated());
        }
        for k in 1..=k_count {
            for j in k..=d {
                prop_assert!(!lemma7_check(&run, &diags, k, j).unwrap().violated());
                prop_assert!(directional_identity_check(&run, &diags, k, j).unwrap().holds());
            }
        }
    }
}

// ---------------------------------------------------------------- bounds

fn random_inputs(seed: u64, d: usize, k_count: usize) -> (BoundInputs, deflatrix::bounds::SpectrumGaps) {
    let mut rng = RandomSource::new(seed);
    let l = decaying_spectrum(d, &mut rng);
    let deltas: Vec<f64> = (0..k_count).map(|_| 10f64.powf(-12.0 * rng.uniform())).collect();
    let c0 = 1.0 + 50.0 * rng.uniform();
    let gaps = eigengaps(&l).unwrap();
    (BoundInputs::new(l, deltas, c0, 1 + rng.below(400), k_count).unwrap(), gaps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaps_and_constants_are_well_formed(seed in any::<u64>(), d in 2usize..30) {
        let (inputs, gaps) = random_inputs(seed, d, d);
        prop_assert!(gaps.gaps().iter().all(|g| *g > 0.0));
        for k in 2..=d {
            prop_assert!(gaps.min_gap(k) <= gaps.min_gap(k - 1));
        }
        prop_assert!(inputs.c0 >= 1.0 && inputs.g() >= 1.0);
    }

    #[test]
    fn reported_bounds_are_non_negative_and_pure(seed in any::<u64>(), d in 2usize..20) {
        let k_count = 1 + (seed as usize) % d;
        let (inputs, gaps) = random_inputs(seed, d, k_count);
        let again = inputs.clone();
        for k in 1..=k_count {
            for (a, b) in [
                (thm1_bound(&inputs, &gaps, k).unwrap(), thm1_bound(&again, &gaps, k).unwrap()),
                (thm2_bound(&inputs, &gaps, k).unwrap(), thm2_bound(&again, &gaps, k).unwrap()),
            ] {
                match (a, b) {
                    (BoundValue::Value(x), BoundValue::Value(y)) => {
                        prop_assert!(x >= 0.0 && !x.is_nan());
                        prop_assert_eq!(x.to_bits(), y.to_bits());
                    }
                    (x, y) => prop_assert_eq!(x, y),
                }
            }
        }
    }

    #[test]
    fn budgets_shrink_with_more_steps_or_tighter_targets(seed in any::<u64>(), d in 3usize..20) {
        let mut rng = RandomSource::new(seed);
        let l = decaying_spectrum(d, &mut rng);
        let gaps = eigengaps(&l).unwrap();
        let eps = 10f64.powf(-1.0 - 4.0 * rng.uniform());
        for kk in 2..=d {
            let small = BoundInputs::new(l.clone(), vec![], 2.0, 10, kk - 1).unwrap();
            let large = BoundInputs::new(l.clone(), vec![], 2.0, 10, kk).unwrap();
            prop_assert!(
                cor1_delta_budget(eps, &large, &gaps, 1).unwrap()
                    <= cor1_delta_budget(eps, &small, &gaps, 1).unwrap()
            );
        }
        let base = BoundInputs::new(l.clone(), vec![], 2.0, 10, d).unwrap();
        let tight = base.clone().with_epsilon(eps);
        let loose = base.with_epsilon(eps * 10.0);
        for k in 1..=d {
            prop_assert!(cor3_iteration_budget(&loose, &gaps, k).unwrap() <= cor3_iteration_budget(&tight, &gaps, k).unwrap());
        }
    }

    #[test]
    fn iteration_tail_vanishes_for_large_t(seed in any::<u64>(), d in 2usize..20) {
        let (inputs, gaps) = random_inputs(seed, d, d);
        let mut late = inputs.clone();
        late.t = 100_000;
        let c = thm2_conditions(&late, &gaps).unwrap();
        prop_assert!(c.tail_lhs <= 1e-300 || c.tail_lhs == 0.0);
        prop_assert!(c.tail_ok);
    }

    #[test]
    fn recurrences_match_brute_force(seed in any::<u64>(), k in 1usize..12) {
        let mut rng = RandomSource::new(seed);
        let a: Vec<f64> = (0..k).map(|_| 3.0 * rng.uniform()).collect();
        let b: Vec<f64> = (0..k).map(|_| 3.0 * rng.uniform()).collect();
        let mut q: Vec<f64> = Vec::new();
        for i in 0..k {
            let prev: f64 = q.iter().sum();
            q.push(a[i] + b[i] * prev);
        }
        let closed = unroll_recurrences(&Recurrence::SumForm { a: &a, b: &b }).unwrap();
        prop_assert!((closed - q[k - 1]).abs() <= 1e-12 * q[k - 1].abs().max(1e-300));

        let mut v = b[0];
        for i in 1..k {
            v = a[i - 1] * v + b[i];
        }
        let closed = unroll_recurrences(&Recurrence::AffineForm { a: &a[..k - 1], b: &b }).unwrap();
        prop_assert!((closed - v).abs() <= 1e-12 * v.abs().max(1e-300));
    }
}

// ------------------------------------------------------------ clustering

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutual_information_is_bounded_and_symmetric(
        c in proptest::collection::vec(0usize..5, 1..200),
        seed in any::<u64>(),
    ) {
        let mut rng = RandomSource::new(seed);
        let c_star: Vec<usize> = c.iter().map(|_| rng.below(4)).collect();
        let mi = mutual_information(&c, &c_star).unwrap();
        prop_assert!(mi >= 0.0);
        prop_assert!(mi <= entropy(&c).min(entropy(&c_star)) + 1e-12);
        prop_assert!((mi - mutual_information(&c_star, &c).unwrap()).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn graph_and_laplacian_are_well_formed(seed in any::<u64>(), n in 8usize..60, r in 1usize..6) {
        let data = synthetic_blobs(n, 3, 2, 2.0, 1.0, seed).unwrap();
        let g = build_rnn_graph(&data, r).unwrap();
        let w = &g.weights;
        let dist = |i: usize, j: usize| -> f64 {
            data.features[i].iter().zip(&data.features[j]).map(|(a, b)| (a - b) * (a - b)).sum()
        };
        // j is among i's r nearest when fewer than r points beat it, counting
        // equal distances at lower indices.
        let in_rnn = |i: usize, j: usize| -> bool {
            let dj = dist(i, j);
            let closer = (0..n)
                .filter(|&m| m != i && m != j)
                .filter(|&m| dist(i, m) < dj || (dist(i, m) == dj && m < j))
                .count();
            closer < r
        };
        for i in 0..n {
            prop_assert_eq!(w.get(i, i), 0.0);
            for j in 0..n {
                prop_assert_eq!(w.get(i, j), w.get(j, i));
                if i != j {
                    let linked = in_rnn(i, j) || in_rnn(j, i);
                    prop_assert_eq!(w.get(i, j) > 0.0, linked);
                    if linked {
                        prop_assert!(w.get(i, j) <= 1.0);
                        prop_assert!((w.get(i, j) - (-0.5 * dist(i, j)).exp()).abs() <= 1e-15);
                    }
                }
            }
        }
        let l = normalized_laplacian(&g).unwrap();
        let s = oracle(&l);
        prop_assert!(*s.eigenvalues.last().unwrap() >= -1e-9);
        prop_assert!(s.eigenvalues[0] <= 2.0 + 1e-10);
    }

    #[test]
    fn embedding_is_deterministic(seed in any::<u64>(), t in 1usize..50) {
        let data = synthetic_blobs(40, 3, 3, 3.0, 0.5, 1).unwrap();
        let l = normalized_laplacian(&build_rnn_graph(&data, 5).unwrap()).unwrap();
        let embed = |s: u64| {
            let m = spectral_embed(&l, 3, t, &RandomSource::new(s), &EmbedOptions::default()).unwrap();
            let mut w = CsvWriter::headerless();
            for i in 0..m.rows() {
                w.float_row(&m.row(i));
            }
            w.as_str().to_owned()
        };
        prop_assert_eq!(embed(seed), embed(seed));
    }

    #[test]
    fn lloyd_objective_never_increases(seed in any::<u64>(), k in 1usize..6) {
        let data = synthetic_blobs(60, 4, 2, 2.0, 1.0, seed).unwrap();
        let res = kmeans(&data.features, k, &mut RandomSource::new(seed), 300).unwrap();
        prop_assert!(res.objective.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }
}

// ------------------------------------------------------------------- csv

proptest! {
    #[test]
    fn unknown_schema_versions_are_rejected(version in 0u32..1000, body in "[a-z0-9,]{0,20}") {
        let text = format!("# schema={version}\n{body}\n");
        let parsed = parse_csv(&text, "test");
        prop_assert_eq!(parsed.is_ok(), version == 1);
    }
}

// ------------------------------------------------------ tightness ordering

/// Smallest `k` at which the growth product `∏_{j=2}^{k} (2j + 5)` of the
/// first bound on `λ_j = 1/j` overtakes the `3 · 8^{k−1}` weight of the second
/// bound. Beyond it the second bound is the tighter one at equal errors.
fn harmonic_crossover() -> usize {
    let mut prod = 1.0;
    for k in 2.. {
        prod *= (2 * k + 5) as f64;
        if prod >= 3.0 * 8f64.powi(k as i32 - 1) {
            return k;
        }
    }
    unreachable!()
}

#[test]
fn second_bound_is_tighter_once_errors_have_propagated() {
    let (d, k_count, t) = (30, 15, 1000);
    let crossover = harmonic_crossover();
    assert_eq!(crossover, 5);
    for seed in 0..5 {
        let exp = simulate_deflation(d, &SpectrumKind::PowerLaw(1.0), k_count, t, seed, None).unwrap();
        let l = exp.trace.spectrum.eigenvalues.clone();
        let gaps = eigengaps(&l).unwrap();
        let deltas = exp.run.steps.iter().map(|s| s.delta_norm).collect();
        let inputs = BoundInputs::new(l, deltas, exp.run.measured_c0().unwrap(), t, k_count).unwrap();
        assert!(thm2_conditions(&inputs, &gaps).unwrap().all_hold());
        let mut compared = 0;
        for k in crossover..=k_count {
            if let (BoundValue::Value(b1), BoundValue::Value(b2)) =
                (thm1_bound(&inputs, &gaps, k).unwrap(), thm2_bound(&inputs, &gaps, k).unwrap())
            {
                assert!(b2 <= b1, "seed {seed}, k = {k}: {b2} > {b1}");
                compared += 1;
            }
        }
        assert!(compared >= 3, "seed {seed}: only {compared} comparable steps");
    }
}
