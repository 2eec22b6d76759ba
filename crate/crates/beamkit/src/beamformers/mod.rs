//! Weight-vector computations.
//!
//! Production paths never materialize an N×N matrix: every inverse routes
//! through the L×L Gram matrix of the (projected) snapshots, which is the
//! whole point when L ≪ N. The conventional full-dimensional constructions
//! live in [`dense`] and exist only as reference implementations for the
//! oracle tests and the timing baseline.
//!
//! All methods return a [`WeightVector`] normalized to `w^H s = 1` unless
//! the raw weight is (numerically) orthogonal to the steering vector, in
//! which case the weight is returned unscaled with
//! [`Diagnostics::degenerate`] set so Monte Carlo sweeps can record the
//! failure instead of aborting.

pub mod dense;

use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::mdn_estimate;
use crate::numerics::{default_rank_rtol, herm_evd, pinv_psd, solve_hermitian_pd};
use crate::numerics::{ComplexMatrix, ComplexVector, HermEvd};
use crate::scenario::DataMatrix;

/// Tags for every weight computation this crate offers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// True-covariance MVDR (oracle; needs the exact covariance).
    Optimal,
    /// Sample matrix inversion with the pseudoinverse of the SCM.
    Smi,
    /// Diagonally loaded SMI.
    Lsmi,
    /// SMI weight projected onto the dominant SCM eigen-subspace.
    Eigenspace,
    /// Gram-route (linear-kernel) beamformer.
    Kernel,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Optimal,
        Method::Smi,
        Method::Lsmi,
        Method::Eigenspace,
        Method::Kernel,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Optimal => "optimal",
            Method::Smi => "smi",
            Method::Lsmi => "lsmi",
            Method::Eigenspace => "eigenspace",
            Method::Kernel => "kernel",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(tag: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == tag)
            .ok_or_else(|| {
                Error::invalid(
                    "Method::from_str",
                    format!("unknown method `{tag}` (expected one of optimal, smi, lsmi, eigenspace, kernel)"),
                )
            })
    }
}

/// Bookkeeping attached to every computed weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// Effective rank the computation used: the truncation order, the
    /// numerical rank inverted, or the full system dimension.
    pub rank_used: usize,
    /// Wall-clock time of the weight computation itself.
    pub wall_time: Duration,
    /// Analytic multiplication/division count for this method and shape.
    pub mdn_estimate: f64,
    /// Set when `|w_raw^H s| ≤ 1e-12·‖w_raw‖`: the weight could not be
    /// normalized to `w^H s = 1` and is returned unscaled (possibly zero).
    pub degenerate: bool,
}

/// A beamforming weight vector plus the method tag and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub w: ComplexVector,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

impl WeightVector {
    pub fn is_degenerate(&self) -> bool {
        self.diagnostics.degenerate
    }
}

/// L×L Gram matrix `X̂^H X̂` of the steering-projected snapshots
/// `X̂ = P_s^⊥ X`. Exactly Hermitian by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    r_hat: ComplexMatrix,
}

impl GramMatrix {
    pub fn l(&self) -> usize {
        self.r_hat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.r_hat
    }
}

/// Low-dimensional combination vector: the weight is `s + P_s^⊥ X β`.
#[derive(Debug, Clone, PartialEq)]
pub struct Beta {
    beta: ComplexVector,
}

impl Beta {
    pub fn new(beta: ComplexVector) -> Self {
        Beta { beta }
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.beta
    }

    pub fn l(&self) -> usize {
        self.beta.len()
    }
}

/// Applies the orthogonal-complement projector of a unit vector:
/// `y − s·(s^H y)`, i.e. `(I − s s^H)·y` without forming the N×N matrix.
pub fn projector_apply(s: &ComplexVector, y: &ComplexVector) -> Result<ComplexVector> {
    if (s.norm2() - 1.0).abs() > 1e-10 {
        return Err(Error::invalid(
            "projector_apply",
            format!("s must be unit norm, got ‖s‖ = {:.12}", s.norm2()),
        ));
    }
    let coef = s.inner(y)?;
    y.sub(&s.scale(coef))
}

/// Gram matrix of the projected snapshots: projects each column of `X`
/// against `s`, then forms all pairwise inner products.
pub fn gram(x: &DataMatrix, s: &ComplexVector) -> Result<GramMatrix> {
    let m = x.matrix();
    if s.len() != x.n() {
        return Err(Error::dimension(
            "gram",
            format!("steering length {} vs {} sensors", s.len(), x.n()),
        ));
    }
    let l = x.l();
    let projected: Vec<ComplexVector> = (0..l)
        .map(|t| projector_apply(s, &m.col_vector(t)))
        .collect::<Result<_>>()?;

    let mut r_hat = ComplexMatrix::zeros(l, l)?;
    for j in 0..l {
        for i in 0..=j {
            let v = projected[i].inner(&projected[j])?;
            if i == j {
                r_hat.set(i, i, Complex64::new(v.re, 0.0));
            } else {
                r_hat.set(i, j, v);
                r_hat.set(j, i, v.conj());
            }
        }
    }
    Ok(GramMatrix { r_hat })
}

/// Minimum-norm solution of the Gram-domain normal equations:
/// `β = −R̂†·(X^H s)`.
pub fn kernel_beta_full(r_hat: &GramMatrix, x: &DataMatrix, s: &ComplexVector) -> Result<Beta> {
    Ok(kernel_beta_full_with_rank(r_hat, x, s)?.0)
}

fn kernel_beta_full_with_rank(
    r_hat: &GramMatrix,
    x: &DataMatrix,
    s: &ComplexVector,
) -> Result<(Beta, usize)> {
    check_kernel_shapes("kernel_beta_full", r_hat, x, s)?;
    let y = x.matrix().adjoint_gemv(s)?;
    let pinv = pinv_psd(&r_hat.r_hat, None)?;
    let beta = pinv.gemv(&y)?.scale(Complex64::new(-1.0, 0.0));
    // The rank the pseudoinverse kept, recomputed from the spectrum it used.
    let evd = herm_evd(&r_hat.r_hat)?;
    let cut = default_rank_rtol(r_hat.l()) * evd.values[0].max(0.0);
    let rank = evd.values.iter().filter(|&&v| v > cut).count();
    Ok((Beta::new(beta), rank))
}

/// Rank-truncated combination vector from the `m` dominant eigenpairs of
/// the Gram matrix: `β = −Σ_{i≤m} v_i·(v_i^H X^H s)/σ_i`. Truncation below
/// the numerical rank discards the small, noise-dominated eigenmodes.
pub fn kernel_beta_truncated(
    r_hat: &GramMatrix,
    x: &DataMatrix,
    s: &ComplexVector,
    m: usize,
) -> Result<Beta> {
    check_kernel_shapes("kernel_beta_truncated", r_hat, x, s)?;
    let l = r_hat.l();
    if m == 0 || m >= l {
        return Err(Error::invalid(
            "kernel_beta_truncated",
            format!("truncation order must satisfy 1 <= m < L, got m = {m}, L = {l}"),
        ));
    }
    let evd = herm_evd(&r_hat.r_hat)?;
    let rank = numerical_rank(&evd, l);
    if m > rank {
        return Err(Error::RankExceeded {
            op: "kernel_beta_truncated",
            requested: m,
            numerical_rank: rank,
        });
    }
    let y = x.matrix().adjoint_gemv(s)?;
    Ok(Beta::new(truncated_beta(&evd, &y, m)?))
}

fn truncated_beta(evd: &HermEvd, y: &ComplexVector, m: usize) -> Result<ComplexVector> {
    let l = y.len();
    let mut beta = ComplexVector::zeros(l)?;
    for i in 0..m {
        let v = evd.vectors.col_vector(i);
        let coef = -v.inner(y)? / evd.values[i];
        for k in 0..l {
            let upd = beta.get(k) + v.get(k) * coef;
            beta.set(k, upd);
        }
    }
    Ok(beta)
}

fn numerical_rank(evd: &HermEvd, n: usize) -> usize {
    let cut = default_rank_rtol(n) * evd.values[0].max(0.0);
    evd.values.iter().filter(|&&v| v > cut).count()
}

fn check_kernel_shapes(
    op: &'static str,
    r_hat: &GramMatrix,
    x: &DataMatrix,
    s: &ComplexVector,
) -> Result<()> {
    if r_hat.l() != x.l() || s.len() != x.n() {
        return Err(Error::dimension(
            op,
            format!(
                "gram is {0}x{0}, data is {1}x{2}, steering has length {3}",
                r_hat.l(),
                x.n(),
                x.l(),
                s.len()
            ),
        ));
    }
    Ok(())
}

/// Assembles the weight from a combination vector: `w = s + P_s^⊥(X β)`.
/// One N×L product and one projection; `w^H s = 1` holds by construction
/// because the correction term is orthogonal to `s`.
pub fn kernel_weight(x: &DataMatrix, s: &ComplexVector, beta: &Beta) -> Result<WeightVector> {
    let start = Instant::now();
    if beta.l() != x.l() || s.len() != x.n() {
        return Err(Error::dimension(
            "kernel_weight",
            format!(
                "data is {}x{}, steering has length {}, beta has length {}",
                x.n(),
                x.l(),
                s.len(),
                beta.l()
            ),
        ));
    }
    let t = x.matrix().gemv(&beta.beta)?;
    let w = s.add(&projector_apply(s, &t)?)?;
    Ok(WeightVector {
        w,
        method: Method::Kernel,
        diagnostics: Diagnostics {
            rank_used: beta.l(),
            wall_time: start.elapsed(),
            mdn_estimate: mdn_estimate(Method::Kernel, x.n(), x.l(), 0),
            degenerate: false,
        },
    })
}

/// End-to-end Gram-route beamformer: Gram matrix, eigendecomposition,
/// combination vector (`m_opt` dominant eigenpairs if given, else the full
/// minimum-norm solution), weight assembly.
pub fn kernel_beamformer(
    x: &DataMatrix,
    s: &ComplexVector,
    m_opt: Option<usize>,
) -> Result<WeightVector> {
    let start = Instant::now();
    let r_hat = gram(x, s)?;
    let (beta, rank_used) = match m_opt {
        Some(m) => (kernel_beta_truncated(&r_hat, x, s, m)?, m),
        None => kernel_beta_full_with_rank(&r_hat, x, s)?,
    };
    let mut wv = kernel_weight(x, s, &beta)?;
    wv.diagnostics.rank_used = rank_used;
    wv.diagnostics.wall_time = start.elapsed();
    Ok(wv)
}

/// True-covariance MVDR weight `w ∝ R_{i+n}^{-1} s`, the quality oracle.
/// Solves the N×N system directly; allowed to be slow.
pub fn mvdr_optimal(r_true: &ComplexMatrix, s: &ComplexVector) -> Result<WeightVector> {
    let start = Instant::now();
    let w_raw = solve_hermitian_pd(r_true, s)?;
    let n = s.len();
    Ok(finalize(
        w_raw,
        s,
        Method::Optimal,
        n,
        mdn_estimate(Method::Optimal, n, 1, 0),
        start,
    ))
}

/// Sample matrix inversion with the SCM pseudoinverse, computed without
/// forming the N×N SCM: with the snapshot Gram matrix `G = X^H X = VΣV^H`,
/// `R† s = L·X·V·Σ^{-2}·V^H·(X^H s)` restricted to the numerically nonzero
/// eigenvalues.
pub fn smi(x: &DataMatrix, s: &ComplexVector) -> Result<WeightVector> {
    let start = Instant::now();
    let (evd, y) = snapshot_gram_evd(x, s)?;
    let rank = numerical_rank(&evd, x.l());
    let z = scaled_eigvec_combination(&evd, &y, rank, |sigma| 1.0 / (sigma * sigma))?;
    let w_raw = x.matrix().gemv(&z)?.scale(Complex64::new(x.l() as f64, 0.0));
    Ok(finalize(
        w_raw,
        s,
        Method::Smi,
        rank,
        mdn_estimate(Method::Smi, x.n(), x.l(), 0),
        start,
    ))
}

/// Diagonally loaded SMI `w ∝ (R + δI)^{-1} s` via the Woodbury identity on
/// the L×L system: `(δI + (1/L)XX^H)^{-1} s = (1/δ)[s − X(δL·I + X^H X)^{-1} X^H s]`.
pub fn lsmi(x: &DataMatrix, s: &ComplexVector, loading: f64) -> Result<WeightVector> {
    let start = Instant::now();
    if !loading.is_finite() || loading <= 0.0 {
        return Err(Error::invalid(
            "lsmi",
            format!("loading must be finite and > 0, got {loading}"),
        ));
    }
    if s.len() != x.n() {
        return Err(Error::dimension(
            "lsmi",
            format!("steering length {} vs {} sensors", s.len(), x.n()),
        ));
    }
    let m = x.matrix();
    let g = snapshot_gram(x)?;
    let a = g.add_scaled_identity(loading * x.l() as f64)?;
    let y = m.adjoint_gemv(s)?;
    let t = solve_hermitian_pd(&a, &y)?;
    let w_raw = s
        .sub(&m.gemv(&t)?)?
        .scale(Complex64::new(1.0 / loading, 0.0));
    Ok(finalize(
        w_raw,
        s,
        Method::Lsmi,
        x.l(),
        mdn_estimate(Method::Lsmi, x.n(), x.l(), 0),
        start,
    ))
}

/// Eigenspace baseline: the SMI weight projected onto the span of the `r`
/// dominant SCM eigenvectors. Via the Gram route the projection collapses
/// to truncating the SMI eigen-sum at `r` terms.
pub fn eigenspace(x: &DataMatrix, s: &ComplexVector, r: usize) -> Result<WeightVector> {
    let start = Instant::now();
    let max_r = x.n().min(x.l());
    if r == 0 || r > max_r {
        return Err(Error::invalid(
            "eigenspace",
            format!(
                "subspace dimension must satisfy 1 <= r <= min(N, L) = {max_r}, got {r}"
            ),
        ));
    }
    let (evd, y) = snapshot_gram_evd(x, s)?;
    let rank = numerical_rank(&evd, x.l());
    if r > rank {
        return Err(Error::RankExceeded {
            op: "eigenspace",
            requested: r,
            numerical_rank: rank,
        });
    }
    let z = scaled_eigvec_combination(&evd, &y, r, |sigma| 1.0 / (sigma * sigma))?;
    let w_raw = x.matrix().gemv(&z)?.scale(Complex64::new(x.l() as f64, 0.0));
    Ok(finalize(
        w_raw,
        s,
        Method::Eigenspace,
        r,
        mdn_estimate(Method::Eigenspace, x.n(), x.l(), r),
        start,
    ))
}

/// Snapshot Gram matrix `G = X^H X` (no steering projection).
fn snapshot_gram(x: &DataMatrix) -> Result<ComplexMatrix> {
    let m = x.matrix();
    let l = x.l();
    let mut g = ComplexMatrix::zeros(l, l)?;
    for j in 0..l {
        let cj = m.col_vector(j);
        for i in 0..=j {
            let v = m.col_vector(i).inner(&cj)?;
            if i == j {
                g.set(i, i, Complex64::new(v.re, 0.0));
            } else {
                g.set(i, j, v);
                g.set(j, i, v.conj());
            }
        }
    }
    Ok(g)
}

fn snapshot_gram_evd(x: &DataMatrix, s: &ComplexVector) -> Result<(HermEvd, ComplexVector)> {
    if s.len() != x.n() {
        return Err(Error::dimension(
            "smi",
            format!("steering length {} vs {} sensors", s.len(), x.n()),
        ));
    }
    let g = snapshot_gram(x)?;
    let evd = herm_evd(&g)?;
    let y = x.matrix().adjoint_gemv(s)?;
    Ok((evd, y))
}

/// `Σ_{i<take} v_i·f(√σ_i is not needed — f receives σ_i)·(v_i^H y)`, the
/// shared eigen-sum of the SMI and eigenspace weights.
fn scaled_eigvec_combination(
    evd: &HermEvd,
    y: &ComplexVector,
    take: usize,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexVector> {
    let l = y.len();
    let mut z = ComplexVector::zeros(l)?;
    for i in 0..take {
        let v = evd.vectors.col_vector(i);
        let coef = v.inner(y)? * f(evd.values[i]);
        for k in 0..l {
            let upd = z.get(k) + v.get(k) * coef;
            z.set(k, upd);
        }
    }
    Ok(z)
}

/// Normalizes to `w^H s = 1`, or flags the weight as degenerate when the
/// raw weight is numerically orthogonal to the steering vector.
fn finalize(
    w_raw: ComplexVector,
    s: &ComplexVector,
    method: Method,
    rank_used: usize,
    mdn: f64,
    start: Instant,
) -> WeightVector {
    let c = w_raw.inner(s).expect("shapes checked by callers");
    let degenerate = c.norm() <= 1e-12 * w_raw.norm2();
    let w = if degenerate {
        w_raw
    } else {
        // (αw)^H s = ᾱ·(w^H s), so α = 1/conj(c) lands exactly on 1.
        w_raw.scale(Complex64::new(1.0, 0.0) / c.conj())
    };
    WeightVector {
        w,
        method,
        diagnostics: Diagnostics {
            rank_used,
            wall_time: start.elapsed(),
            mdn_estimate: mdn,
            degenerate,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{steering, Scenario, Source, Ula};

    fn test_rng(seed: u64) -> impl FnMut() -> Complex64 {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        move || {
            let re = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            let im = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            Complex64::new(re, im)
        }
    }

    fn random_unit(n: usize, seed: u64) -> ComplexVector {
        let mut next = test_rng(seed);
        let v = ComplexVector::from_vec((0..n).map(|_| next()).collect()).unwrap();
        v.scale(Complex64::new(1.0 / v.norm2(), 0.0))
    }

    fn random_data(n: usize, l: usize, seed: u64) -> DataMatrix {
        let mut next = test_rng(seed);
        DataMatrix::new(ComplexMatrix::from_fn(n, l, |_, _| next()).unwrap()).unwrap()
    }

    /// Unit vector orthogonal to `s`, built by projecting a random vector.
    fn random_unit_orthogonal(s: &ComplexVector, seed: u64) -> ComplexVector {
        let u = projector_apply(s, &random_unit(s.len(), seed)).unwrap();
        u.scale(Complex64::new(1.0 / u.norm2(), 0.0))
    }

    #[test]
    fn projector_annihilates_s_and_keeps_orthogonal_vectors() {
        let s = random_unit(9, 1);
        let ps = projector_apply(&s, &s).unwrap();
        assert!(ps.norm2() < 1e-12);

        let u = random_unit_orthogonal(&s, 2);
        let pu = projector_apply(&s, &u).unwrap();
        assert!(pu.sub(&u).unwrap().norm2() < 1e-12);
    }

    #[test]
    fn projector_is_idempotent() {
        let s = random_unit(12, 3);
        let y = random_unit(12, 4).scale(Complex64::new(2.5, -1.0));
        let once = projector_apply(&s, &y).unwrap();
        let twice = projector_apply(&s, &once).unwrap();
        assert!(twice.sub(&once).unwrap().norm2() < 1e-12);
    }

    #[test]
    fn projector_rejects_non_unit_s() {
        let s = random_unit(5, 5).scale(Complex64::new(2.0, 0.0));
        let y = random_unit(5, 6);
        assert!(projector_apply(&s, &y).is_err());
    }

    #[test]
    fn gram_of_steering_column_is_zero() {
        let s = random_unit(8, 7);
        let x = DataMatrix::new(ComplexMatrix::from_columns(&[s.clone()]).unwrap()).unwrap();
        let g = gram(&x, &s).unwrap();
        assert_eq!(g.l(), 1);
        assert!(g.matrix().get(0, 0).norm() < 1e-12);
    }

    #[test]
    fn gram_of_orthogonal_unit_column_is_one() {
        let s = random_unit(8, 8);
        let u = random_unit_orthogonal(&s, 9);
        let x = DataMatrix::new(ComplexMatrix::from_columns(&[u]).unwrap()).unwrap();
        let g = gram(&x, &s).unwrap();
        assert!((g.matrix().get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gram_matches_dense_projector_oracle() {
        let s = random_unit(8, 10);
        let x = random_data(8, 3, 11);
        let g = gram(&x, &s).unwrap();

        // Dense oracle: form P = I − s s^H explicitly, then X^H P X.
        let n = 8;
        let p = ComplexMatrix::from_fn(n, n, |i, j| {
            let eye = if i == j { 1.0 } else { 0.0 };
            Complex64::new(eye, 0.0) - s.get(i) * s.get(j).conj()
        })
        .unwrap();
        let px = p.matmul(x.matrix()).unwrap();
        let dense = x.matrix().hermitian_transpose().matmul(&px).unwrap();
        assert!(g.matrix().sub(&dense).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn beta_is_zero_when_training_carries_no_signal_component() {
        // X = [s]: the projector removes the only column entirely.
        let s = random_unit(10, 12);
        let x = DataMatrix::new(ComplexMatrix::from_columns(&[s.clone()]).unwrap()).unwrap();
        let g = gram(&x, &s).unwrap();
        let beta = kernel_beta_full(&g, &x, &s).unwrap();
        assert!(beta.vector().norm2() < 1e-10);
        let w = kernel_weight(&x, &s, &beta).unwrap();
        assert!(w.w.sub(&s).unwrap().norm2() < 1e-10);

        // X = [u], u ⊥ s: X^H s = 0 forces β = 0, so w = s again.
        let u = random_unit_orthogonal(&s, 13);
        let x2 = DataMatrix::new(ComplexMatrix::from_columns(&[u]).unwrap()).unwrap();
        let g2 = gram(&x2, &s).unwrap();
        let beta2 = kernel_beta_full(&g2, &x2, &s).unwrap();
        assert!(beta2.vector().norm2() < 1e-12);
    }

    /// The two minimum-norm characterizations agree: `−R̂†X^Hs` versus
    /// `−(R̂²)†R̂X^Hs` (one random instance here; the randomized suite with
    /// constructed singular cases lives in the acceptance tests).
    #[test]
    fn minimum_norm_solutions_agree() {
        let s = random_unit(12, 14);
        let x = random_data(12, 5, 15);
        let g = gram(&x, &s).unwrap();
        let beta = kernel_beta_full(&g, &x, &s).unwrap();

        let r = g.matrix();
        let r2 = r.matmul(r).unwrap().hermitize();
        let y = x.matrix().adjoint_gemv(&s).unwrap();
        let ry = r.gemv(&y).unwrap();
        let alt = pinv_psd(&r2, None)
            .unwrap()
            .gemv(&ry)
            .unwrap()
            .scale(Complex64::new(-1.0, 0.0));

        let diff = beta.vector().sub(&alt).unwrap().norm2();
        let scale = beta.vector().norm2().max(alt.norm2()).max(1e-300);
        assert!(diff / scale < 1e-8, "relative difference {}", diff / scale);
    }

    #[test]
    fn truncation_at_full_rank_equals_full_solution() {
        // Noise-free data: two interferers, so the Gram matrix has rank 2.
        let scenario = Scenario::noiseless(
            Ula::new(10).unwrap(),
            Source::new(3.0, 1.0).unwrap(),
            vec![
                Source::new(-20.0, 5.0).unwrap(),
                Source::new(30.0, 5.0).unwrap(),
            ],
            false,
        )
        .unwrap();
        let x = scenario.generate_snapshots(6, 21).unwrap();
        let s = scenario.desired_steering().unwrap();
        let g = gram(&x, &s).unwrap();
        let full = kernel_beta_full(&g, &x, &s).unwrap();
        let trunc = kernel_beta_truncated(&g, &x, &s, 2).unwrap();
        let diff = full.vector().sub(trunc.vector()).unwrap().norm2();
        assert!(diff < 1e-9 * full.vector().norm2().max(1e-300));
    }

    #[test]
    fn truncated_weight_nulls_a_noiseless_orthogonal_interferer() {
        // Single noise-free interferer along u ⊥ s, L = 4 snapshots, m = 1.
        let s = random_unit(9, 22);
        let u = random_unit_orthogonal(&s, 23);
        let mut next = test_rng(24);
        let cols: Vec<ComplexVector> = (0..4).map(|_| u.scale(next())).collect();
        let x = DataMatrix::new(ComplexMatrix::from_columns(&cols).unwrap()).unwrap();
        let g = gram(&x, &s).unwrap();
        let beta = kernel_beta_truncated(&g, &x, &s, 1).unwrap();
        let w = kernel_weight(&x, &s, &beta).unwrap();
        let null_depth = w.w.inner(&u).unwrap().norm();
        assert!(null_depth <= 1e-8 * w.w.norm2());
    }

    #[test]
    fn truncated_beta_ignores_small_eigenmode_perturbations() {
        // One dominant column (projected norm² ~ 1e6) plus small ones; m = 1
        // must be insensitive to perturbing the small columns. The dominant
        // column needs a component along s — that is what the right-hand
        // side X^H s keys on — while its projected part carries the
        // dominant eigenvalue.
        let n = 16;
        let s = random_unit(n, 25);
        let dom = s
            .scale(Complex64::new(50.0, 0.0))
            .add(&random_unit_orthogonal(&s, 26).scale(Complex64::new(1e3, 0.0)))
            .unwrap();
        let mut next = test_rng(27);
        let mut cols = vec![dom.clone()];
        for _ in 0..4 {
            cols.push(ComplexVector::from_vec((0..n).map(|_| next()).collect()).unwrap());
        }
        let x = DataMatrix::new(ComplexMatrix::from_columns(&cols).unwrap()).unwrap();
        let g = gram(&x, &s).unwrap();
        let beta = kernel_beta_truncated(&g, &x, &s, 1).unwrap();

        // Perturb only the small columns.
        let mut cols2 = vec![dom];
        for j in 1..5 {
            let d = ComplexVector::from_vec((0..n).map(|_| next() * 0.01).collect()).unwrap();
            cols2.push(cols[j].add(&d).unwrap());
        }
        let x2 = DataMatrix::new(ComplexMatrix::from_columns(&cols2).unwrap()).unwrap();
        let g2 = gram(&x2, &s).unwrap();
        let beta2 = kernel_beta_truncated(&g2, &x2, &s, 1).unwrap();

        let rel = beta.vector().sub(beta2.vector()).unwrap().norm2() / beta.vector().norm2();
        assert!(rel < 1e-4, "relative change {rel}");
    }

    #[test]
    fn truncation_order_bounds_are_enforced() {
        let s = random_unit(8, 30);
        let x = random_data(8, 4, 31);
        let g = gram(&x, &s).unwrap();
        assert!(matches!(
            kernel_beta_truncated(&g, &x, &s, 0),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            kernel_beta_truncated(&g, &x, &s, 4),
            Err(Error::InvalidParameter { .. })
        ));

        // Rank-1 data with m = 2 names the numerical rank in the error.
        let u = random_unit_orthogonal(&s, 32);
        let cols: Vec<ComplexVector> =
            (0..4).map(|t| u.scale(Complex64::new(1.0 + t as f64, 0.0))).collect();
        let x1 = DataMatrix::new(ComplexMatrix::from_columns(&cols).unwrap()).unwrap();
        let g1 = gram(&x1, &s).unwrap();
        match kernel_beta_truncated(&g1, &x1, &s, 2) {
            Err(Error::RankExceeded {
                requested,
                numerical_rank,
                ..
            }) => {
                assert_eq!(requested, 2);
                assert_eq!(numerical_rank, 1);
            }
            other => panic!("expected rank error, got {other:?}"),
        }
    }

    #[test]
    fn kernel_weight_is_distortionless_by_construction() {
        let s = random_unit(11, 33);
        let x = random_data(11, 6, 34);
        // β = 0 → w = s
        let w0 = kernel_weight(&x, &s, &Beta::new(ComplexVector::zeros(6).unwrap())).unwrap();
        assert!(w0.w.sub(&s).unwrap().norm2() < 1e-15);

        let mut next = test_rng(35);
        let beta = Beta::new(ComplexVector::from_vec((0..6).map(|_| next()).collect()).unwrap());
        let w = kernel_weight(&x, &s, &beta).unwrap();
        let gain = w.w.inner(&s).unwrap();
        assert!((gain - Complex64::new(1.0, 0.0)).norm() <= 1e-10);

        // Dense oracle: s + (I − s s^H)·X·β.
        let n = 11;
        let p = ComplexMatrix::from_fn(n, n, |i, j| {
            let eye = if i == j { 1.0 } else { 0.0 };
            Complex64::new(eye, 0.0) - s.get(i) * s.get(j).conj()
        })
        .unwrap();
        let dense = s
            .add(&p.gemv(&x.matrix().gemv(beta.vector()).unwrap()).unwrap())
            .unwrap();
        assert!(w.w.sub(&dense).unwrap().norm2() < 1e-12);
    }

    #[test]
    fn kernel_beamformer_returns_steering_for_single_orthogonal_snapshot() {
        let s = random_unit(7, 36);
        let u = random_unit_orthogonal(&s, 37);
        let x = DataMatrix::new(ComplexMatrix::from_columns(&[u]).unwrap()).unwrap();
        let w = kernel_beamformer(&x, &s, None).unwrap();
        assert!(w.w.sub(&s).unwrap().norm2() < 1e-12);
        assert_eq!(w.method, Method::Kernel);
    }

    #[test]
    fn kernel_beamformer_nulls_noiseless_interferers() {
        let scenario = Scenario::noiseless(
            Ula::new(12).unwrap(),
            Source::new(3.0, 1.0).unwrap(),
            vec![
                Source::new(-25.0, 10.0).unwrap(),
                Source::new(40.0, 10.0).unwrap(),
            ],
            false,
        )
        .unwrap();
        let x = scenario.generate_snapshots(6, 40).unwrap();
        let s = scenario.desired_steering().unwrap();
        let w = kernel_beamformer(&x, &s, Some(2)).unwrap();
        for itf in scenario.interferers() {
            let sv = steering(scenario.array(), itf.doa_deg()).unwrap();
            assert!(w.w.inner(&sv).unwrap().norm() <= 1e-8 * w.w.norm2());
        }
        assert_eq!(w.diagnostics.rank_used, 2);
    }

    #[test]
    fn mvdr_optimal_white_noise_cases() {
        let s = random_unit(6, 41);
        let eye = ComplexMatrix::identity(6).unwrap();
        let w = mvdr_optimal(&eye, &s).unwrap();
        assert!(w.w.sub(&s).unwrap().norm2() < 1e-12);

        // Scaling the covariance must not change the normalized weight.
        let w2 = mvdr_optimal(&eye.scale(Complex64::new(2.0, 0.0)), &s).unwrap();
        assert!(w2.w.sub(&s).unwrap().norm2() < 1e-12);
    }

    #[test]
    fn mvdr_optimal_nulls_an_overwhelming_interferer() {
        let array = Ula::new(16).unwrap();
        let s = steering(&array, 3.0).unwrap();
        let scenario = Scenario::new(
            array,
            Source::new(3.0, 1.0).unwrap(),
            vec![Source::new(-40.0, 1e8).unwrap()],
            1.0,
            true,
        )
        .unwrap();
        let r = scenario.true_covariance().unwrap();
        let w = mvdr_optimal(&r, &s).unwrap();
        let s1 = steering(scenario.array(), -40.0).unwrap();
        assert!(w.w.inner(&s1).unwrap().norm() <= 1e-4 * w.w.norm2());
    }

    #[test]
    fn smi_flags_training_orthogonal_to_steering_as_degenerate() {
        let s = random_unit(8, 44);
        let cols: Vec<ComplexVector> = (0..3).map(|t| random_unit_orthogonal(&s, 45 + t)).collect();
        let x = DataMatrix::new(ComplexMatrix::from_columns(&cols).unwrap()).unwrap();
        let w = smi(&x, &s).unwrap();
        assert!(w.is_degenerate());
        assert!(w.w.norm2() < 1e-10); // R†s is exactly zero here
    }

    #[test]
    fn smi_matches_dense_scm_pseudoinverse_when_full_rank() {
        let s = random_unit(8, 50);
        let x = random_data(8, 16, 51); // L = 2N: SCM full rank
        let fast = smi(&x, &s).unwrap();
        let reference = dense::smi_dense(&x, &s).unwrap();
        let diff = fast.w.sub(&reference.w).unwrap().norm2();
        assert!(diff <= 1e-8 * reference.w.norm2());
    }

    #[test]
    fn lsmi_limits() {
        let s = random_unit(8, 52);
        // All-zero snapshots: the loaded SCM is δI, so w = s.
        let x0 = DataMatrix::new(ComplexMatrix::zeros(8, 4).unwrap()).unwrap();
        let w0 = lsmi(&x0, &s, 10.0).unwrap();
        assert!(w0.w.sub(&s).unwrap().norm2() < 1e-12);

        // Huge loading swamps the data entirely.
        let x = random_data(8, 4, 53);
        let winf = lsmi(&x, &s, 1e12).unwrap();
        assert!(winf.w.sub(&s).unwrap().norm2() < 1e-5);

        assert!(lsmi(&x, &s, 0.0).is_err());
        assert!(lsmi(&x, &s, -1.0).is_err());
    }

    #[test]
    fn lsmi_matches_dense_loaded_inverse() {
        let s = random_unit(8, 54);
        let x = random_data(8, 4, 55);
        let fast = lsmi(&x, &s, 7.5).unwrap();
        let reference = dense::lsmi_dense(&x, &s, 7.5).unwrap();
        assert!(fast.w.sub(&reference.w).unwrap().norm2() <= 1e-9 * reference.w.norm2());
    }

    #[test]
    fn eigenspace_at_full_rank_equals_smi() {
        let s = random_unit(8, 56);
        let x = random_data(8, 6, 57);
        let w_smi = smi(&x, &s).unwrap();
        let w_es = eigenspace(&x, &s, 6).unwrap();
        assert!(w_es.w.sub(&w_smi.w).unwrap().norm2() <= 1e-9 * w_smi.w.norm2());
    }

    #[test]
    fn eigenspace_degenerates_when_s_misses_the_dominant_subspace() {
        // Strong training energy along u ⊥ s; the r = 1 dominant subspace
        // cannot represent s at all.
        let s = random_unit(10, 58);
        let u = random_unit_orthogonal(&s, 59);
        let mut next = test_rng(60);
        let cols: Vec<ComplexVector> = (0..5).map(|_| u.scale(next() * 100.0)).collect();
        let x = DataMatrix::new(ComplexMatrix::from_columns(&cols).unwrap()).unwrap();
        let w = eigenspace(&x, &s, 1).unwrap();
        assert!(w.is_degenerate());
    }

    #[test]
    fn eigenspace_matches_dense_construction() {
        let s = random_unit(8, 61);
        let x = random_data(8, 6, 62);
        let fast = eigenspace(&x, &s, 2).unwrap();
        let reference = dense::eigenspace_dense(&x, &s, 2).unwrap();
        assert!(fast.w.sub(&reference.w).unwrap().norm2() <= 1e-9 * reference.w.norm2());
    }

    #[test]
    fn eigenspace_validates_subspace_dimension() {
        let s = random_unit(8, 63);
        let x = random_data(8, 4, 64);
        assert!(eigenspace(&x, &s, 0).is_err());
        assert!(eigenspace(&x, &s, 5).is_err()); // > min(N, L)
    }

    #[test]
    fn method_tags_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("mvdr".parse::<Method>().is_err());
    }
}
