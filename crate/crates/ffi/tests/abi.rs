use std::ffi::CStr;
use std::ptr;

use deflatrix_ffi::*;

fn last_error() -> String {
    let p = dfx_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn diagonal(values: &[f64]) -> *mut DfxMatrix {
    let d = values.len();
    let mut data = vec![0.0; d * d];
    for (i, v) in values.iter().enumerate() {
        data[i * d + i] = *v;
    }
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dfx_matrix_new(d, data.as_ptr(), &mut m) }, DfxStatus::Ok);
    m
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(dfx_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn asymmetric_input_is_rejected_with_a_message() {
    let data = [1.0, 2.0, 0.0, 1.0];
    let mut m = ptr::null_mut();
    let status = unsafe { dfx_matrix_new(2, data.as_ptr(), &mut m) };
    assert_eq!(status, DfxStatus::NotSymmetric);
    assert!(m.is_null());
    assert!(last_error().contains("symmetric"));
}

#[test]
fn null_pointers_are_reported_not_dereferenced() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dfx_matrix_new(2, ptr::null(), &mut m) }, DfxStatus::NullPointer);
    assert_eq!(unsafe { dfx_matrix_new(0, ptr::null(), ptr::null_mut()) }, DfxStatus::NullPointer);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { dfx_deflate(ptr::null(), 1, 10, 0, &mut r) }, DfxStatus::NullPointer);
    assert_eq!(unsafe { dfx_run_steps(ptr::null()) }, 0);
    unsafe {
        dfx_matrix_free(ptr::null_mut());
        dfx_run_free(ptr::null_mut());
    }
}

#[test]
fn power_iteration_finds_the_dominant_axis() {
    let m = diagonal(&[3.0, 1.0]);
    let x0 = [std::f64::consts::FRAC_1_SQRT_2; 2];
    let mut x = [0.0; 2];
    assert_eq!(unsafe { dfx_power_iterate(m, x0.as_ptr(), 40, x.as_mut_ptr(), 2) }, DfxStatus::Ok);
    // After t steps the iterate is (3^t, 1) normalised.
    let tail = 3f64.powi(-40);
    assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - tail).abs() < 1e-25);

    let mut short = [0.0; 3];
    let status = unsafe { dfx_power_iterate(m, x0.as_ptr(), 5, short.as_mut_ptr(), 3) };
    assert_eq!(status, DfxStatus::DimensionMismatch);
    unsafe { dfx_matrix_free(m) };
}

#[test]
fn deflation_of_a_diagonal_matrix_recovers_its_axes() {
    let lambdas = [1.0, 0.5, 0.25, 0.125];
    let m = diagonal(&lambdas);
    assert_eq!(unsafe { dfx_matrix_dim(m) }, 4);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { dfx_deflate(m, 3, 200, 11, &mut r) }, DfxStatus::Ok);
    assert_eq!(unsafe { dfx_run_steps(r) }, 3);
    assert_eq!(unsafe { dfx_run_dim(r) }, 4);
    for k in 1..=3 {
        let mut v = [0.0; 4];
        assert_eq!(unsafe { dfx_run_vector(r, k, v.as_mut_ptr(), 4) }, DfxStatus::Ok);
        assert!((v[k - 1].abs() - 1.0).abs() < 1e-10, "step {k}: {v:?}");
        let (mut ev, mut err) = (0.0, 0.0);
        assert_eq!(unsafe { dfx_run_eigenvalue(r, k, &mut ev) }, DfxStatus::Ok);
        assert_eq!(unsafe { dfx_run_subroutine_error(r, k, &mut err) }, DfxStatus::Ok);
        assert!((ev - lambdas[k - 1]).abs() < 1e-10);
        assert!(err < 1e-10);
    }
    let mut ev = 0.0;
    assert_eq!(unsafe { dfx_run_eigenvalue(r, 4, &mut ev) }, DfxStatus::InvalidArgument);
    assert_eq!(unsafe { dfx_run_eigenvalue(r, 0, &mut ev) }, DfxStatus::InvalidArgument);
    unsafe {
        dfx_run_free(r);
        dfx_matrix_free(m);
    }
}

#[test]
fn simulation_matches_the_library_and_is_deterministic() {
    let run = |seed| {
        let mut r = ptr::null_mut();
        assert_eq!(unsafe { dfx_simulate_power_law(12, 1.0, 4, 60, seed, &mut r) }, DfxStatus::Ok);
        let mut v = vec![0.0; 12 * 4];
        for (k, chunk) in v.chunks_mut(12).enumerate() {
            assert_eq!(unsafe { dfx_run_vector(r, k + 1, chunk.as_mut_ptr(), 12) }, DfxStatus::Ok);
        }
        unsafe { dfx_run_free(r) };
        v
    };
    let a = run(3);
    assert_eq!(a, run(3));
    let lib = deflatrix::cli::commands::simulate_deflation(
        12,
        &deflatrix::linalg::SpectrumKind::PowerLaw(1.0),
        4,
        60,
        3,
        None,
    )
    .unwrap();
    let expected: Vec<f64> = lib.run.steps.iter().flat_map(|s| s.v.clone()).collect();
    assert_eq!(a, expected);
}

#[test]
fn math_failures_map_to_their_own_codes() {
    let mut r = ptr::null_mut();
    let status = unsafe { dfx_simulate_power_law(5, 1.0, 6, 10, 0, &mut r) };
    assert_eq!(status, DfxStatus::InvalidArgument);
    assert!(r.is_null());
    // A start orthogonal to everything the matrix sees collapses to zero.
    let m = diagonal(&[1.0, 0.0]);
    let x0 = [0.0, 1.0];
    let mut x = [0.0; 2];
    let status = unsafe { dfx_power_iterate(m, x0.as_ptr(), 3, x.as_mut_ptr(), 2) };
    assert_eq!(status, DfxStatus::DegenerateIterate);
    assert!(!last_error().is_empty());
    unsafe { dfx_matrix_free(m) };
}

#[test]
fn header_declares_every_exported_function() {
    let header = include_str!("../include/deflatrix.h");
    let source = include_str!("../src/lib.rs");
    let exported: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 14);
    for name in exported {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}
