//! Conventional full-dimensional reference constructions.
//!
//! Everything here forms N×N matrices (sample covariance, projector) and
//! decomposes them with nalgebra — exactly what the Gram-route production
//! code avoids. These functions serve two roles:
//!
//! 1. independent oracles for the equivalence tests (same math, different
//!    code path and different underlying linear algebra), and
//! 2. the honest timing baseline: the benchmark harness times [`smi_dense`]
//!    as "SMI", because the N²L + N³ cost model being benchmarked against
//!    describes the conventional full-dimensional algorithm, not the
//!    Gram-route shortcut used in the quality sweeps.
//!
//! Do not call these from production sweep paths.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{finalize, Diagnostics, Method, WeightVector};
use crate::error::{Error, Result};
use crate::metrics::mdn_estimate;
use crate::numerics::{default_rank_rtol, ComplexVector};
use crate::scenario::DataMatrix;

fn to_na(x: &DataMatrix) -> DMatrix<Complex64> {
    let m = x.matrix();
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j))
}

fn vec_to_na(v: &ComplexVector) -> DVector<Complex64> {
    DVector::from_fn(v.len(), |i, _| v.get(i))
}

fn vec_from_na(v: &DVector<Complex64>) -> ComplexVector {
    ComplexVector::from_vec(v.iter().copied().collect()).expect("nalgebra vectors are non-empty")
}

/// Dense N×N sample covariance `(1/L)·X X^H`.
fn dense_scm(x: &DataMatrix) -> DMatrix<Complex64> {
    let xm = to_na(x);
    let scale = Complex64::new(1.0 / x.l() as f64, 0.0);
    (&xm * xm.adjoint()) * scale
}

/// Eigenpairs of a Hermitian nalgebra matrix, sorted non-increasing.
fn sorted_eigen(a: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = a.symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), n, |i, k| {
        eig.eigenvectors[(i, order[k])]
    });
    (values, vectors)
}

/// `Σ_{i<take} u_i · f(λ_i) · (u_i^H y)` over sorted eigenpairs.
fn eigen_sum(
    values: &[f64],
    vectors: &DMatrix<Complex64>,
    y: &DVector<Complex64>,
    take: usize,
    f: impl Fn(f64) -> f64,
) -> DVector<Complex64> {
    let mut out = DVector::from_element(vectors.nrows(), Complex64::new(0.0, 0.0));
    for i in 0..take {
        let u = vectors.column(i);
        let coef = u.dotc(y) * f(values[i]);
        out += u * coef;
    }
    out
}

/// SMI via the dense SCM pseudoinverse: EVD of the N×N covariance, invert
/// the numerically nonzero eigenvalues, apply to `s`, normalize.
pub fn smi_dense(x: &DataMatrix, s: &ComplexVector) -> Result<WeightVector> {
    let start = Instant::now();
    check_steering(x, s, "smi_dense")?;
    let (values, vectors) = sorted_eigen(dense_scm(x));
    let cut = default_rank_rtol(x.n()) * values[0].max(0.0);
    let rank = values.iter().filter(|&&v| v > cut).count();
    let s_na = vec_to_na(s);
    let w_raw = eigen_sum(&values, &vectors, &s_na, rank, |v| 1.0 / v);
    Ok(finalize(
        vec_from_na(&w_raw),
        s,
        Method::Smi,
        rank,
        mdn_estimate(Method::Smi, x.n(), x.l(), 0),
        start,
    ))
}

/// LSMI via a dense Cholesky solve of `(R + δI) w = s`.
pub fn lsmi_dense(x: &DataMatrix, s: &ComplexVector, loading: f64) -> Result<WeightVector> {
    let start = Instant::now();
    check_steering(x, s, "lsmi_dense")?;
    if !loading.is_finite() || loading <= 0.0 {
        return Err(Error::invalid(
            "lsmi_dense",
            format!("loading must be finite and > 0, got {loading}"),
        ));
    }
    let n = x.n();
    let mut a = dense_scm(x);
    for i in 0..n {
        a[(i, i)] += Complex64::new(loading, 0.0);
    }
    let chol = nalgebra::linalg::Cholesky::new(a).ok_or(Error::NotPositiveDefinite {
        op: "lsmi_dense",
        details: "loaded covariance failed Cholesky".to_string(),
    })?;
    let w_raw = chol.solve(&vec_to_na(s));
    Ok(finalize(
        vec_from_na(&w_raw),
        s,
        Method::Lsmi,
        n.min(x.l()),
        mdn_estimate(Method::Lsmi, x.n(), x.l(), 0),
        start,
    ))
}

/// Eigenspace baseline via the dense SCM: SMI weight projected onto the
/// span of the `r` dominant eigenvectors.
pub fn eigenspace_dense(x: &DataMatrix, s: &ComplexVector, r: usize) -> Result<WeightVector> {
    let start = Instant::now();
    check_steering(x, s, "eigenspace_dense")?;
    let max_r = x.n().min(x.l());
    if r == 0 || r > max_r {
        return Err(Error::invalid(
            "eigenspace_dense",
            format!("subspace dimension must satisfy 1 <= r <= min(N, L) = {max_r}, got {r}"),
        ));
    }
    let (values, vectors) = sorted_eigen(dense_scm(x));
    let cut = default_rank_rtol(x.n()) * values[0].max(0.0);
    let rank = values.iter().filter(|&&v| v > cut).count();
    if r > rank {
        return Err(Error::RankExceeded {
            op: "eigenspace_dense",
            requested: r,
            numerical_rank: rank,
        });
    }
    let s_na = vec_to_na(s);
    let w_smi = eigen_sum(&values, &vectors, &s_na, rank, |v| 1.0 / v);
    let w_proj = eigen_sum(&values, &vectors, &w_smi, r, |_| 1.0);
    Ok(finalize(
        vec_from_na(&w_proj),
        s,
        Method::Eigenspace,
        r,
        mdn_estimate(Method::Eigenspace, x.n(), x.l(), r),
        start,
    ))
}

/// Kernel beamformer assembled from explicit dense pieces: forms
/// `P = I − s s^H` as a matrix, `R̂ = (PX)^H (PX)` densely, decomposes it
/// with nalgebra, and evaluates `w = s + P X β`.
pub fn kernel_dense(x: &DataMatrix, s: &ComplexVector, m_opt: Option<usize>) -> Result<WeightVector> {
    let start = Instant::now();
    check_steering(x, s, "kernel_dense")?;
    let n = x.n();
    let l = x.l();
    let s_na = vec_to_na(s);
    let p = DMatrix::identity(n, n) - &s_na * s_na.adjoint();
    let xm = to_na(x);
    let xhat = &p * &xm;
    let r_hat = xhat.adjoint() * &xhat;
    let (values, vectors) = sorted_eigen(r_hat);
    let cut = default_rank_rtol(l) * values[0].max(0.0);
    let rank = values.iter().filter(|&&v| v > cut).count();
    let take = match m_opt {
        Some(m) => {
            if m == 0 || m >= l {
                return Err(Error::invalid(
                    "kernel_dense",
                    format!("truncation order must satisfy 1 <= m < L, got m = {m}, L = {l}"),
                ));
            }
            if m > rank {
                return Err(Error::RankExceeded {
                    op: "kernel_dense",
                    requested: m,
                    numerical_rank: rank,
                });
            }
            m
        }
        None => rank,
    };
    let y = xm.adjoint() * &s_na;
    let beta = -eigen_sum(&values, &vectors, &y, take, |v| 1.0 / v);
    let w = &s_na + &p * (&xm * beta);
    Ok(WeightVector {
        w: vec_from_na(&w),
        method: Method::Kernel,
        diagnostics: Diagnostics {
            rank_used: take,
            wall_time: start.elapsed(),
            mdn_estimate: mdn_estimate(Method::Kernel, n, l, 0),
            degenerate: false,
        },
    })
}

fn check_steering(x: &DataMatrix, s: &ComplexVector, op: &'static str) -> Result<()> {
    if s.len() != x.n() {
        return Err(Error::dimension(
            op,
            format!("steering length {} vs {} sensors", s.len(), x.n()),
        ));
    }
    Ok(())
}
