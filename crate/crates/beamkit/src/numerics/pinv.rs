//! Moore-Penrose pseudoinverse of Hermitian positive-semidefinite matrices.

use num_complex::Complex64;

use super::{herm_evd, ComplexMatrix};
use crate::error::{Error, Result};

/// Standard numerical-rank tolerance for an `n`-dimensional problem:
/// eigenvalues at or below `default_rank_rtol(n)·λ_max` count as zero.
pub fn default_rank_rtol(n: usize) -> f64 {
    n as f64 * f64::EPSILON
}

/// Pseudoinverse `A† = V Σ† V^H` of a Hermitian PSD matrix.
///
/// Eigenvalues greater than `rtol·λ_max` are inverted, the rest are zeroed.
/// `rtol = None` uses [`default_rank_rtol`]. Slightly negative eigenvalues
/// (above `-1e-10·λ_max`, i.e. round-off from a PSD construction) are
/// clamped to zero; anything more negative is rejected. The all-zero matrix
/// maps to the all-zero matrix.
pub fn pinv_psd(a: &ComplexMatrix, rtol: Option<f64>) -> Result<ComplexMatrix> {
    if a.rows() != a.cols() {
        return Err(Error::dimension(
            "pinv_psd",
            format!("matrix is {}x{}, must be square", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let rtol = match rtol {
        Some(r) if r.is_finite() && r >= 0.0 => r,
        Some(r) => {
            return Err(Error::invalid(
                "pinv_psd",
                format!("rtol must be finite and >= 0, got {r}"),
            ))
        }
        None => default_rank_rtol(n),
    };

    let evd = herm_evd(a)?;
    let lambda_max = evd.values[0].max(0.0);
    if let Some(&worst) = evd
        .values
        .iter()
        .filter(|&&v| v < -1e-10 * lambda_max.max(f64::MIN_POSITIVE))
        .last()
    {
        return Err(Error::NotPositiveDefinite {
            op: "pinv_psd",
            details: format!(
                "matrix is not positive semidefinite: eigenvalue {worst:.6e} with λ_max {lambda_max:.6e}"
            ),
        });
    }
    if lambda_max == 0.0 {
        return ComplexMatrix::zeros(n, n);
    }

    let cut = rtol * lambda_max;
    let mut out = ComplexMatrix::zeros(n, n)?;
    for (k, &v) in evd.values.iter().enumerate() {
        if v <= cut {
            continue; // zeroed mode (includes the clamped negatives)
        }
        let inv = 1.0 / v;
        let col = evd.vectors.col(k);
        for j in 0..n {
            let scaled = col[j].conj() * inv;
            for i in 0..=j {
                let upd = out.get(i, j) + col[i] * scaled;
                out.set(i, j, upd);
            }
        }
    }
    // Mirror the upper triangle; the accumulation above only filled i <= j.
    for j in 0..n {
        for i in 0..j {
            out.set(j, i, out.get(i, j).conj());
        }
        let d = out.get(j, j);
        out.set(j, j, Complex64::new(d.re, 0.0));
    }
    Ok(out)
}
