//! C interface to `deflatrix`.
//!
//! Objects cross the boundary as opaque handles created by `dfx_*_new` style
//! constructors and released with the matching `dfx_*_free`. Every fallible
//! call returns a [`DfxStatus`]; on failure a message is kept per thread and
//! can be read with [`dfx_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use deflatrix::cli::commands::simulate_deflation;
use deflatrix::deflation::{run_inexact_deflation, DeflationRun, DeflationStep};
use deflatrix::linalg::{vector, RandomSource, SpectrumKind, SymMatrix};
use deflatrix::power_iter::power_iterate;
use deflatrix::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotSymmetric = 4,
    NotUnit = 5,
    DegenerateIterate = 6,
    InvalidSpectrum = 7,
    DegenerateGap = 8,
    NoConvergence = 9,
    IsolatedNode = 10,
    Invariant = 11,
    Parse = 12,
    Io = 13,
    Panic = 14,
}

impl From<&Error> for DfxStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DimensionMismatch { .. } => DfxStatus::DimensionMismatch,
            Error::NotSymmetric { .. } => DfxStatus::NotSymmetric,
            Error::NotUnit { .. } => DfxStatus::NotUnit,
            Error::DegenerateIterate { .. } => DfxStatus::DegenerateIterate,
            Error::InvalidSpectrum(_) => DfxStatus::InvalidSpectrum,
            Error::DegenerateGap { .. } => DfxStatus::DegenerateGap,
            Error::NoConvergence { .. } => DfxStatus::NoConvergence,
            Error::IsolatedNode { .. } => DfxStatus::IsolatedNode,
            Error::InvalidArgument(_) => DfxStatus::InvalidArgument,
            Error::Invariant(_) => DfxStatus::Invariant,
            Error::Parse { .. } => DfxStatus::Parse,
            Error::Io { .. } => DfxStatus::Io,
        }
    }
}

/// Symmetric matrix handle.
pub struct DfxMatrix(SymMatrix);

/// Finished deflation run handle.
pub struct DfxRun(DeflationRun);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(DfxStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(DfxStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DfxStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(DfxStatus::InvalidArgument, msg.into())
}

/// Runs `f`, converting errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DfxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DfxStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            DfxStatus::Panic
        }
    }
}

unsafe fn input<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a>(p: *mut f64, len: usize, what: &str) -> Result<&'a mut [f64], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn publish<T>(out: *mut *mut T, value: T) {
    // SAFETY: callers check `out` for null before doing any work.
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Message of the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dfx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static, nul-terminated crate version.
#[no_mangle]
pub extern "C" fn dfx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a `dim × dim` symmetric matrix from `dim * dim` row-major values.
/// Fails with `NotSymmetric` unless the input is symmetric to round-off.
///
/// # Safety
/// `data` must point to `dim * dim` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dfx_matrix_new(dim: usize, data: *const f64, out: *mut *mut DfxMatrix) -> DfxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let len = dim.checked_mul(dim).ok_or_else(|| invalid("dimension overflows"))?;
        let values = input(data, len, "data")?.to_vec();
        publish(out, DfxMatrix(SymMatrix::from_row_major(dim, values)?));
        Ok(())
    })
}

/// Releases a matrix. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from [`dfx_matrix_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dfx_matrix_free(m: *mut DfxMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of `m`, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn dfx_matrix_dim(m: *const DfxMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// Runs exactly `t` power-iteration steps from the unit vector `x0` and writes
/// the final unit iterate to `x_out`. Both buffers hold `dim` doubles.
///
/// # Safety
/// `m` must be a live matrix handle; `x0` and `x_out` must each hold `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn dfx_power_iterate(
    m: *const DfxMatrix,
    x0: *const f64,
    t: usize,
    x_out: *mut f64,
    dim: usize,
) -> DfxStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let x0 = input(x0, dim, "x0")?;
        let out = output(x_out, dim, "x_out")?;
        if dim != m.0.dim() {
            return Err(Error::DimensionMismatch { expected: m.0.dim(), got: dim }.into());
        }
        out.copy_from_slice(&power_iterate(&m.0, x0, t)?.x);
        Ok(())
    })
}

/// Deflates `m` for `k_count` steps, each using `t` power-iteration steps from
/// a start drawn from `seed`. The reference spectrum comes from the Jacobi
/// eigendecomposition of `m`.
///
/// # Safety
/// `m` must be a live matrix handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dfx_deflate(
    m: *const DfxMatrix,
    k_count: usize,
    t: usize,
    seed: u64,
    out: *mut *mut DfxRun,
) -> DfxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = handle(m, "matrix")?;
        let mut run = run_inexact_deflation(&m.0, k_count, t, &RandomSource::new(seed))?;
        run.seed = seed;
        publish(out, DfxRun(run));
        Ok(())
    })
}

/// Builds a random `d × d` test matrix with eigenvalues `j^(-gamma)` and
/// deflates it, exactly as the `deflate` command does.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dfx_simulate_power_law(
    d: usize,
    gamma: f64,
    k_count: usize,
    t: usize,
    seed: u64,
    out: *mut *mut DfxRun,
) -> DfxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let exp = simulate_deflation(d, &SpectrumKind::PowerLaw(gamma), k_count, t, seed, None)?;
        publish(out, DfxRun(exp.run));
        Ok(())
    })
}

/// Releases a run. Null is ignored.
///
/// # Safety
/// `r` must be null or a run handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dfx_run_free(r: *mut DfxRun) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of deflation steps in `r`, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live run handle.
#[no_mangle]
pub unsafe extern "C" fn dfx_run_steps(r: *const DfxRun) -> usize {
    r.as_ref().map_or(0, |r| r.0.k_count)
}

/// Dimension of the deflated matrix, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live run handle.
#[no_mangle]
pub unsafe extern "C" fn dfx_run_dim(r: *const DfxRun) -> usize {
    r.as_ref().map_or(0, |r| r.0.d)
}

unsafe fn step_of<'a>(r: *const DfxRun, k: usize) -> Result<&'a DeflationStep, Failure> {
    let r = handle(r, "run")?;
    if k == 0 || k > r.0.k_count {
        return Err(invalid(format!("step {k} outside 1..={}", r.0.k_count)));
    }
    Ok(r.0.step(k))
}

/// Copies the step-`k` eigenvector estimate (1-based `k`) into `v_out`.
///
/// # Safety
/// `r` must be a live run handle and `v_out` must hold `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn dfx_run_vector(r: *const DfxRun, k: usize, v_out: *mut f64, dim: usize) -> DfxStatus {
    guard(|| {
        let s = step_of(r, k)?;
        vector::check_len(&s.v, dim)?;
        output(v_out, dim, "v_out")?.copy_from_slice(&s.v);
        Ok(())
    })
}

/// Step-`k` eigenvalue estimate `v_kᵀ Σ_k v_k`.
///
/// # Safety
/// `r` must be a live run handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn dfx_run_eigenvalue(r: *const DfxRun, k: usize, value: *mut f64) -> DfxStatus {
    guard(|| {
        let s = step_of(r, k)?;
        *output(value, 1, "value")?.first_mut().unwrap() = s.rayleigh;
        Ok(())
    })
}

/// Step-`k` subroutine error `‖v_k − u_k‖` against the top eigenvector of the
/// current deflated matrix.
///
/// # Safety
/// `r` must be a live run handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn dfx_run_subroutine_error(r: *const DfxRun, k: usize, value: *mut f64) -> DfxStatus {
    guard(|| {
        let s = step_of(r, k)?;
        *output(value, 1, "value")?.first_mut().unwrap() = s.delta_norm;
        Ok(())
    })
}
