//! Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! All eigendecompositions in this crate are of small L×L Gram matrices
//! (L ≤ a few hundred), where cyclic Jacobi is simple, accurate, and fast
//! enough. The iteration runs sweeps of complex Givens rotations until the
//! off-diagonal Frobenius norm falls below `1e-12·‖A‖_F`, then keeps
//! polishing (quadratic convergence makes this one or two extra sweeps)
//! down toward the floating-point floor. The polish matters: eigenvalues
//! that are exactly zero in exact arithmetic must come out small enough to
//! fall below the pseudoinverse rank cut, otherwise downstream code would
//! divide by pure round-off.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix: `A = V diag(values) V^H`.
///
/// `values` is sorted non-increasing and `vectors` holds the matching
/// orthonormal eigenvectors as columns. Each eigenvector's phase is fixed by
/// making its largest-magnitude component real and positive, so repeated
/// runs (and cross-implementation comparisons) see identical output.
#[derive(Debug, Clone)]
pub struct HermEvd {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

const MAX_SWEEPS: usize = 100;
/// Declared convergence gate for the off-diagonal norm, relative to ‖A‖_F.
const CONVERGENCE_RTOL: f64 = 1e-12;
/// Polish target near the floating-point floor, relative to ‖A‖_F.
const POLISH_RTOL: f64 = 16.0 * f64::EPSILON;

/// Off-diagonal Frobenius norm, `sqrt(2·Σ_{i<j} |a_ij|²)`.
fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for j in 0..n {
        for i in 0..j {
            acc += a.get(i, j).norm_sqr();
        }
    }
    (2.0 * acc).sqrt()
}

pub fn herm_evd(a: &ComplexMatrix) -> Result<HermEvd> {
    if a.rows() != a.cols() {
        return Err(Error::dimension(
            "herm_evd",
            format!("matrix is {}x{}, must be square", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let fro = a.frobenius_norm();
    if a.hermitian_deviation() > 1e-8 * fro.max(f64::MIN_POSITIVE) {
        return Err(Error::invalid(
            "herm_evd",
            format!(
                "matrix is not Hermitian: asymmetry {:.3e} exceeds 1e-8 of norm {:.3e}",
                a.hermitian_deviation(),
                fro
            ),
        ));
    }

    // Work on the exactly-Hermitian part; small asymmetry within tolerance
    // is averaged away rather than silently kept.
    let mut work = a.hermitize();
    let mut vectors = ComplexMatrix::identity(n)?;

    if fro == 0.0 || n == 1 {
        let values = (0..n).map(|i| work.get(i, i).re).collect();
        return Ok(sort_and_fix_phase(values, vectors));
    }

    let target = CONVERGENCE_RTOL * fro;
    let floor = POLISH_RTOL * fro;
    // Rotations with |a_pq| below this contribute nothing above the polish
    // floor even if every pair sat at the threshold; skipping them makes the
    // final polish sweeps nearly free.
    let skip = floor / n as f64;

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&work);
    let mut prev_off = f64::INFINITY;
    while sweeps < MAX_SWEEPS {
        if off <= floor {
            break;
        }
        // Once the declared gate is met, stop as soon as a sweep no longer
        // makes real progress: we are at this matrix's floating-point floor.
        if off <= target && off >= 0.5 * prev_off {
            break;
        }
        prev_off = off;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut work, &mut vectors, p, q, skip);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&work);
    }
    if off > target {
        return Err(Error::NoConvergence {
            op: "herm_evd",
            iterations: sweeps,
            residual: off / fro,
        });
    }

    let values = (0..n).map(|i| work.get(i, i).re).collect();
    Ok(sort_and_fix_phase(values, vectors))
}

/// One complex Jacobi rotation `A ← J^H A J`, `V ← V·J`, annihilating the
/// (p, q) entry. `J` is the identity except for the 2×2 block
/// `[c  s·e^{iφ}; -s·e^{-iφ}  c]` with `e^{iφ} = a_pq / |a_pq|`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, skip: f64) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r <= skip {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (app - aqq) / (2.0 * r);
    // Smaller-angle root of the quadratic for tan, the numerically stable pick.
    let t = -theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = apq / r;
    let s_pos = phase * s; // s·e^{+iφ}
    let s_neg = phase.conj() * s; // s·e^{-iφ}

    let n = a.rows();
    // A ← A·J, column pair (p, q).
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * s_neg);
        a.set(i, q, aip * s_pos + aiq * c);
    }
    // A ← J^H·A, row pair (p, q).
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * s_pos);
        a.set(q, j, apj * s_neg + aqj * c);
    }
    // V ← V·J.
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c - viq * s_neg);
        v.set(i, q, vip * s_pos + viq * c);
    }
    // Clean up what the rotation made zero/real in exact arithmetic.
    let zero = Complex64::new(0.0, 0.0);
    a.set(p, q, zero);
    a.set(q, p, zero);
    let dp = a.get(p, p);
    let dq = a.get(q, q);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(q, q, Complex64::new(dq.re, 0.0));
}

/// Sorts eigenpairs non-increasing (stable in the original index for ties)
/// and applies the phase convention.
fn sort_and_fix_phase(values: Vec<f64>, vectors: ComplexMatrix) -> HermEvd {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));

    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vectors = ComplexMatrix::zeros(vectors.rows(), n).expect("dims >= 1");
    for (dst, &src) in order.iter().enumerate() {
        let col = vectors.col(src);
        // Largest-magnitude component (first one on ties) made real positive.
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for (i, z) in col.iter().enumerate() {
            let m = z.norm();
            if m > best_mag {
                best_mag = m;
                best = i;
            }
        }
        let phase = if best_mag > 0.0 {
            let z = col[best];
            (z / best_mag).conj()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for (i, z) in col.iter().enumerate() {
            sorted_vectors.set(i, dst, z * phase);
        }
    }
    HermEvd {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;

    /// Deterministic pseudo-random complex entries for test matrices.
    fn test_rng(seed: u64) -> impl FnMut() -> Complex64 {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        move || {
            let re = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            let im = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            Complex64::new(re, im)
        }
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut next = test_rng(seed);
        let g = ComplexMatrix::from_fn(n, n, |_, _| next()).unwrap();
        g.add(&g.hermitian_transpose()).unwrap().scale(c(0.5, 0.0))
    }

    /// Random unitary via modified Gram-Schmidt on a random matrix.
    fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
        let mut next = test_rng(seed);
        let mut q = ComplexMatrix::from_fn(n, n, |_, _| next()).unwrap();
        for j in 0..n {
            for k in 0..j {
                let mut proj = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    proj += q.get(i, k).conj() * q.get(i, j);
                }
                for i in 0..n {
                    let v = q.get(i, j) - proj * q.get(i, k);
                    q.set(i, j, v);
                }
            }
            let norm: f64 = (0..n).map(|i| q.get(i, j).norm_sqr()).sum::<f64>().sqrt();
            for i in 0..n {
                let v = q.get(i, j) / norm;
                q.set(i, j, v);
            }
        }
        q
    }

    fn reconstruct(evd: &HermEvd) -> ComplexMatrix {
        let n = evd.values.len();
        ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += evd.vectors.get(i, k) * evd.values[k] * evd.vectors.get(j, k).conj();
            }
            acc
        })
        .unwrap()
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let evd = herm_evd(&ComplexMatrix::identity(3).unwrap()).unwrap();
        for v in &evd.values {
            assert!((v - 1.0).abs() < 1e-14);
        }
        // vectors unitary
        let vtv = evd.vectors.hermitian_transpose().matmul(&evd.vectors).unwrap();
        assert!(vtv.sub(&ComplexMatrix::identity(3).unwrap()).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn diagonal_matrix_sorts_eigenvalues() {
        let d = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                c([3.0, 1.0, 2.0][i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
        .unwrap();
        let evd = herm_evd(&d).unwrap();
        assert_eq!(evd.values, vec![3.0, 2.0, 1.0]);
        // eigenvectors are (permuted) standard basis vectors with positive phase
        let expected_pos = [0usize, 2, 1]; // columns pick out entries 3, 2, 1
        for (k, &pos) in expected_pos.iter().enumerate() {
            assert!((evd.vectors.get(pos, k) - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    /// Independent oracle: the matrix is built as Q·diag(d)·Q^H from a known
    /// spectrum and a random unitary, so the expected eigenvalues are known
    /// before the solver runs. A power iteration provides a second,
    /// algorithm-independent estimate of the dominant eigenvalue.
    #[test]
    fn random_hermitian_matches_constructed_spectrum_and_power_iteration() {
        let spectrum = [5.0, 3.5, 2.2, 1.1, 0.6, 0.25, -0.8, -2.0];
        let q = random_unitary(8, 99);
        let a = ComplexMatrix::from_fn(8, 8, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..8 {
                acc += q.get(i, k) * spectrum[k] * q.get(j, k).conj();
            }
            acc
        })
        .unwrap()
        .hermitize();

        let evd = herm_evd(&a).unwrap();
        let scale = a.frobenius_norm();
        for (got, want) in evd.values.iter().zip(spectrum.iter()) {
            assert!(
                (got - want).abs() < 1e-10 * scale,
                "eigenvalue {got} vs constructed {want}"
            );
        }

        // Power iteration on A: dominant eigenvalue is 5.0 (|5| > |-2|).
        let mut next = test_rng(123);
        let mut v: Vec<Complex64> = (0..8).map(|_| next()).collect();
        for _ in 0..300 {
            let mut w = vec![Complex64::new(0.0, 0.0); 8];
            for j in 0..8 {
                for i in 0..8 {
                    w[i] += a.get(i, j) * v[j];
                }
            }
            let norm: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut w {
                *z /= norm;
            }
            v = w;
        }
        // Rayleigh quotient
        let mut av = vec![Complex64::new(0.0, 0.0); 8];
        for j in 0..8 {
            for i in 0..8 {
                av[i] += a.get(i, j) * v[j];
            }
        }
        let lambda: f64 = v.iter().zip(&av).map(|(x, y)| (x.conj() * y).re).sum();
        assert!((lambda - evd.values[0]).abs() < 1e-8);

        // Reconstruction and orthonormality.
        assert!(reconstruct(&evd).sub(&a).unwrap().frobenius_norm() < 1e-9 * scale);
        let vtv = evd.vectors.hermitian_transpose().matmul(&evd.vectors).unwrap();
        assert!(
            vtv.sub(&ComplexMatrix::identity(8).unwrap()).unwrap().frobenius_norm() < 1e-10
        );
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let a = random_hermitian(12, 5);
        let evd = herm_evd(&a).unwrap();
        let trace: f64 = (0..12).map(|i| a.get(i, i).re).sum();
        let sum: f64 = evd.values.iter().sum();
        assert!((trace - sum).abs() < 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn zero_eigenvalues_land_near_the_floating_point_floor() {
        // Rank-2 PSD matrix: eigenvalues {≈large, ≈large, 0, 0, 0, 0}. The
        // zero eigenvalues must come out orders of magnitude below the
        // default pseudoinverse rank cut (n·eps·λ_max), which is what makes
        // pinv_psd safe to call on singular Gram matrices.
        let mut next = test_rng(17);
        let n = 6;
        let u1: Vec<Complex64> = (0..n).map(|_| next()).collect();
        let u2: Vec<Complex64> = (0..n).map(|_| next()).collect();
        let a = ComplexMatrix::from_fn(n, n, |i, j| {
            3.0 * u1[i] * u1[j].conj() + 1.5 * u2[i] * u2[j].conj()
        })
        .unwrap()
        .hermitize();
        let evd = herm_evd(&a).unwrap();
        let cut = n as f64 * f64::EPSILON * evd.values[0];
        for &v in &evd.values[2..] {
            assert!(
                v.abs() < 0.1 * cut,
                "spurious eigenvalue {v:.3e} too close to rank cut {cut:.3e}"
            );
        }
    }

    #[test]
    fn deterministic_bitwise() {
        let a = random_hermitian(10, 77);
        let e1 = herm_evd(&a).unwrap();
        let e2 = herm_evd(&a).unwrap();
        assert_eq!(e1.values, e2.values);
        assert_eq!(e1.vectors, e2.vectors);
    }

    #[test]
    fn rejects_non_square_and_non_hermitian() {
        let rect = ComplexMatrix::zeros(2, 3).unwrap();
        assert!(matches!(herm_evd(&rect), Err(Error::Dimension { .. })));
        let skew = ComplexMatrix::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 0.0)).unwrap();
        assert!(matches!(herm_evd(&skew), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn zero_matrix_is_fine() {
        let evd = herm_evd(&ComplexMatrix::zeros(4, 4).unwrap()).unwrap();
        assert_eq!(evd.values, vec![0.0; 4]);
        assert_eq!(evd.vectors, ComplexMatrix::identity(4).unwrap());
    }
}
