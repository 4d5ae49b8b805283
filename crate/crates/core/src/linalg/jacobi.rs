use crate::error::{Error, Result};
use crate::linalg::{Matrix, Spectrum, SymMatrix};

#[derive(Debug, Clone, Copy)]
pub struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius mass is below `tol * ‖M‖_F`.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions {
            tol: 1e-14,
            max_sweeps: 100,
        }
    }
}

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Eigenvalues come back in descending order with the basis columns permuted
/// to match; equal eigenvalues keep their diagonal order.
pub fn jacobi_eigendecomposition(m: &SymMatrix, opts: &JacobiOptions) -> Result<Spectrum> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "jacobi tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let d = m.dim();
    let mut a = m.as_row_major().to_vec();
    let mut v = vec![0.0; d * d];
    for i in 0..d {
        v[i * d + i] = 1.0;
    }
    let threshold = opts.tol * m.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal(&a, d);
        if off <= threshold {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, d, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..d).collect();
    // Stable sort: ties keep their original index order.
    order.sort_by(|&i, &j| a[j * d + j].total_cmp(&a[i * d + i]));
    let eigenvalues = order.iter().map(|&i| a[i * d + i]).collect();
    let mut basis = Matrix::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        let col = basis.col_mut(dst);
        for r in 0..d {
            // v is row-major; column `src` holds the eigenvector.
            col[r] = v[r * d + src];
        }
    }
    Ok(Spectrum { eigenvalues, basis })
}

fn off_diagonal(a: &[f64], d: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a[i * d + j] * a[i * d + j];
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut [f64], v: &mut [f64], d: usize, p: usize, q: usize) {
    let apq = a[p * d + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * d + p];
    let aqq = a[q * d + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[p * d + p] = app - t * apq;
    a[q * d + q] = aqq + t * apq;
    a[p * d + q] = 0.0;
    a[q * d + p] = 0.0;
    for r in 0..d {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * d + p];
        let arq = a[r * d + q];
        let new_p = c * arp - s * arq;
        let new_q = s * arp + c * arq;
        a[r * d + p] = new_p;
        a[p * d + r] = new_p;
        a[r * d + q] = new_q;
        a[q * d + r] = new_q;
    }
    for r in 0..d {
        let vrp = v[r * d + p];
        let vrq = v[r * d + q];
        v[r * d + p] = c * vrp - s * vrq;
        v[r * d + q] = s * vrp + c * vrq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn two_by_two_closed_form() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let s = jacobi_eigendecomposition(&m, &JacobiOptions::default()).unwrap();
        assert!((s.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
        let u = s.basis.col(0);
        assert!((u[0].abs() - 0.5_f64.sqrt()).abs() < 1e-14);
        assert!((u[0] - u[1]).abs() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_sorted_with_stable_ties() {
        let m = SymMatrix::from_diagonal(&[1.0, 5.0, 1.0, 3.0]);
        let s = jacobi_eigendecomposition(&m, &JacobiOptions::default()).unwrap();
        assert_eq!(s.eigenvalues, vec![5.0, 3.0, 1.0, 1.0]);
        assert_eq!(s.basis.col(2), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.basis.col(3), &[0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn zero_matrix_and_empty() {
        let s = jacobi_eigendecomposition(&SymMatrix::zeros(3), &JacobiOptions::default()).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0; 3]);
        let e = jacobi_eigendecomposition(&SymMatrix::zeros(0), &JacobiOptions::default()).unwrap();
        assert!(e.eigenvalues.is_empty());
    }

    #[test]
    fn residuals_small_on_dense_matrix() {
        let m = SymMatrix::from_upper_fn(6, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        let s = jacobi_eigendecomposition(&m, &JacobiOptions::default()).unwrap();
        assert!(s.basis.orthonormality_error() < 1e-12);
        for j in 0..6 {
            let u = s.basis.col(j);
            let mu = m.mat_vec(u).unwrap();
            let r: Vec<f64> = mu.iter().zip(u).map(|(a, b)| a - s.eigenvalues[j] * b).collect();
            assert!(vector::norm(&r) < 1e-12);
        }
    }

    #[test]
    fn sweep_budget_exhaustion_is_reported() {
        let m = SymMatrix::from_upper_fn(5, |i, j| (i * 3 + j) as f64);
        let opts = JacobiOptions { tol: 1e-14, max_sweeps: 0 };
        assert!(matches!(
            jacobi_eigendecomposition(&m, &opts),
            Err(Error::NoConvergence { .. })
        ));
    }
}
