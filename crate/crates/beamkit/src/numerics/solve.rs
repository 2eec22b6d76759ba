//! Direct solve of Hermitian positive-definite systems via Cholesky.
//!
//! This is the oracle path used for the true-covariance MVDR weight and the
//! optimal-SINR scalar; it is allowed to be O(N³) because it never runs on
//! sample data in production sweeps.

use num_complex::Complex64;

use super::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

/// Solves `A x = b` for Hermitian positive-definite `A` by `L L^H`
/// factorization with forward/back substitution.
pub fn solve_hermitian_pd(a: &ComplexMatrix, b: &ComplexVector) -> Result<ComplexVector> {
    if a.rows() != a.cols() {
        return Err(Error::dimension(
            "solve_hermitian_pd",
            format!("matrix is {}x{}, must be square", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    if b.len() != n {
        return Err(Error::dimension(
            "solve_hermitian_pd",
            format!("matrix is {n}x{n}, right-hand side has length {}", b.len()),
        ));
    }
    if a.hermitian_deviation() > 1e-8 * a.frobenius_norm().max(f64::MIN_POSITIVE) {
        return Err(Error::invalid(
            "solve_hermitian_pd",
            "matrix is not Hermitian within tolerance".to_string(),
        ));
    }

    // Lower-triangular factor, built column by column.
    let mut l = ComplexMatrix::zeros(n, n)?;
    for j in 0..n {
        let mut diag = a.get(j, j).re;
        for k in 0..j {
            diag -= l.get(j, k).norm_sqr();
        }
        if !(diag > 0.0) || !diag.is_finite() {
            return Err(Error::NotPositiveDefinite {
                op: "solve_hermitian_pd",
                details: format!("Cholesky pivot {j} is {diag:.6e}"),
            });
        }
        let ljj = diag.sqrt();
        l.set(j, j, Complex64::new(ljj, 0.0));
        for i in j + 1..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l.get(i, k) * l.get(j, k).conj();
            }
            l.set(i, j, v / ljj);
        }
    }

    // Forward substitution: L y = b.
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut v = b.get(i);
        for k in 0..i {
            v -= l.get(i, k) * y[k];
        }
        y[i] = v / l.get(i, i);
    }
    // Back substitution: L^H x = y.
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut v = y[i];
        for k in i + 1..n {
            v -= l.get(k, i).conj() * x[k];
        }
        x[i] = v / l.get(i, i);
    }
    ComplexVector::from_vec(x)
}
