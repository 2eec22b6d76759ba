//! Scale-invariant quality metrics and the analytic cost model.
//!
//! Every quality number is computed against the TRUE interference-plus-noise
//! covariance from the scenario — never against sample estimates — so a
//! method's score reflects only its weight vector, and scaling a weight
//! changes nothing.

use crate::beamformers::{Method, WeightVector};
use crate::error::{Error, Result};
use crate::numerics::{solve_hermitian_pd, ComplexMatrix, ComplexVector};
use crate::scenario::{steering, Ula};

/// One Monte Carlo trial's quality outcome for one method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrRecord {
    pub method: Method,
    pub trial: usize,
    pub sinr_db: f64,
    /// `sinr_db − sinr_opt_db` of the same scenario; ≤ 0 up to round-off.
    pub loss_db: f64,
}

/// Normalized power response over an angle grid, 0 dB toward the desired
/// direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Beampattern {
    pub angles_deg: Vec<f64>,
    pub gain_db: Vec<f64>,
}

/// Output SINR in dB: `10·log10(σ_s²·|w^H s|² / (w^H R_{i+n} w))`.
///
/// `r_true` must be the exact interference-plus-noise covariance. Invariant
/// under `w → c·w`.
pub fn output_sinr(
    w: &WeightVector,
    s: &ComplexVector,
    sigma_s2: f64,
    r_true: &ComplexMatrix,
) -> Result<f64> {
    check_sigma(sigma_s2, "output_sinr")?;
    if w.w.norm2() == 0.0 {
        return Err(Error::invalid("output_sinr", "weight vector is zero"));
    }
    let rw = r_true.gemv(&w.w)?;
    let den = w.w.inner(&rw)?.re;
    if !(den > 0.0) {
        return Err(Error::NotPositiveDefinite {
            op: "output_sinr",
            details: format!("w^H R w = {den:.6e} must be positive"),
        });
    }
    let num = sigma_s2 * w.w.inner(s)?.norm_sqr();
    Ok(10.0 * (num / den).log10())
}

/// Best achievable output SINR in dB: `10·log10(σ_s²·s^H R_{i+n}^{-1} s)`.
pub fn sinr_opt(s: &ComplexVector, sigma_s2: f64, r_true: &ComplexMatrix) -> Result<f64> {
    check_sigma(sigma_s2, "sinr_opt")?;
    let q = solve_hermitian_pd(r_true, s)?;
    let quad = s.inner(&q)?.re;
    if !(quad > 0.0) {
        return Err(Error::NotPositiveDefinite {
            op: "sinr_opt",
            details: format!("s^H R^-1 s = {quad:.6e} must be positive"),
        });
    }
    Ok(10.0 * (sigma_s2 * quad).log10())
}

fn check_sigma(sigma_s2: f64, op: &'static str) -> Result<()> {
    if !sigma_s2.is_finite() || sigma_s2 <= 0.0 {
        return Err(Error::invalid(
            op,
            format!("sigma_s2 must be finite and > 0, got {sigma_s2}"),
        ));
    }
    Ok(())
}

/// Averaged SINR loss over Monte Carlo trials, averaged in the LINEAR
/// domain (mean of the per-trial SINR/SINR_opt ratios) and then converted
/// to dB. This is not the mean of the per-trial dB losses unless all trials
/// are equal.
pub fn sinr_loss_avg(records: &[SinrRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::invalid("sinr_loss_avg", "need at least one record"));
    }
    let mean: f64 = records
        .iter()
        .map(|r| 10f64.powf(r.loss_db / 10.0))
        .sum::<f64>()
        / records.len() as f64;
    Ok(10.0 * mean.log10())
}

/// Power pattern of a weight over an angle grid, in dB relative to the
/// response toward `desired_doa_deg`: `20·log10(|w^H s(θ)| / |w^H s(θ_s)|)`.
/// Ratios are floored at 1e-15 (−300 dB) so exact nulls stay plottable.
pub fn beampattern(
    w: &WeightVector,
    array: &Ula,
    desired_doa_deg: f64,
    grid: &[f64],
) -> Result<Beampattern> {
    if grid.is_empty() {
        return Err(Error::invalid("beampattern", "angle grid is empty"));
    }
    let s_des = steering(array, desired_doa_deg)?;
    let reference = w.w.inner(&s_des)?.norm();
    if reference == 0.0 {
        return Err(Error::invalid(
            "beampattern",
            "weight has exactly zero response toward the desired direction",
        ));
    }
    let mut gain_db = Vec::with_capacity(grid.len());
    for &theta in grid {
        let sv = steering(array, theta)?;
        let ratio = (w.w.inner(&sv)?.norm() / reference).max(1e-15);
        gain_db.push(20.0 * ratio.log10());
    }
    Ok(Beampattern {
        angles_deg: grid.to_vec(),
        gain_db,
    })
}

/// Analytic multiplication/division count of one weight computation, as an
/// order-level formula of the array size `n`, sample count `l`, and (for
/// the eigenspace method) the subspace dimension `rank`:
///
/// - SMI (conventional dense route): `N²L + N³`
/// - kernel and LSMI (Gram route):   `L²N + L³ + LN`
/// - eigenspace (Gram route):        `L²N + L³ + r·LN`
/// - optimal (oracle N×N solve):     `N³ + N²`
///
/// These are the cost models the timing benchmark is compared against, not
/// instrumented counts.
pub fn mdn_estimate(method: Method, n: usize, l: usize, rank: usize) -> f64 {
    let n = n as f64;
    let l = l as f64;
    match method {
        Method::Optimal => n * n * n + n * n,
        Method::Smi => n * n * l + n * n * n,
        Method::Kernel | Method::Lsmi => l * l * n + l * l * l + l * n,
        Method::Eigenspace => l * l * n + l * l * l + rank as f64 * l * n,
    }
}
