//! Dense vector helpers over `&[f64]`.

use crate::error::{Error, Result};

/// Tolerance on `|‖x‖ - 1|` used when a routine requires a unit vector.
pub const UNIT_TOL: f64 = 1e-10;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Euclidean distance between two vectors of equal length.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn scale(a: &mut [f64], c: f64) {
    for x in a {
        *x *= c;
    }
}

/// `y += c * x`
pub fn axpy(y: &mut [f64], c: f64, x: &[f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

/// Returns `x / ‖x‖`, or `None` when the norm is zero or not finite.
pub fn normalized(x: &[f64]) -> Option<Vec<f64>> {
    let n = norm(x);
    if n > 0.0 && n.is_finite() {
        Some(x.iter().map(|v| v / n).collect())
    } else {
        None
    }
}

pub fn check_len(x: &[f64], expected: usize) -> Result<()> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            got: x.len(),
        })
    }
}

pub fn check_unit(x: &[f64]) -> Result<()> {
    let n = norm(x);
    if (n - 1.0).abs() <= UNIT_TOL {
        Ok(())
    } else {
        Err(Error::NotUnit { norm: n })
    }
}
