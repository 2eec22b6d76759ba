//! Built-in numerical self-checks.
//!
//! `beamkit selftest` runs each check and prints one PASS/FAIL line. The
//! checks are small (fractions of a second together), deterministic, and
//! cover the numerical kernels end to end: steering construction, the
//! orthogonal projector, the eigendecomposition, pseudoinverse and solver,
//! the equivalence of the two normal-equation forms, distortionless
//! responses, agreement between the Gram route and a dense reference, exact
//! null steering on noiseless data, snapshot reproducibility, and the
//! optimality of the oracle weights.

use num_complex::Complex64;

use crate::beamformers::{
    dense, eigenspace, gram, kernel_beamformer, kernel_beta_full, lsmi, mvdr_optimal,
    projector_apply, smi,
};
use crate::metrics::{output_sinr, sinr_opt};
use crate::numerics::{herm_evd, pinv_psd, solve_hermitian_pd};
use crate::scenario::{steering, DataMatrix, Scenario, Source, Ula};

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Failure description; empty on success.
    pub detail: String,
}

type Check = fn() -> Result<(), String>;

/// Run every self-check. Never panics; failures are reported in the
/// returned outcomes.
pub fn run_selftest() -> Vec<SelftestOutcome> {
    let checks: &[(&'static str, Check)] = &[
        ("steering_vectors_unit_norm", check_steering),
        ("projector_annihilates_steering", check_projector),
        ("eigendecomposition_reconstructs", check_evd),
        ("pseudoinverse_moore_penrose", check_pinv),
        ("hermitian_solve_residual", check_solve),
        ("normal_equation_forms_agree", check_beta_equivalence),
        ("weights_distortionless", check_distortionless),
        ("gram_route_matches_dense_route", check_dense_agreement),
        ("noiseless_interferers_nulled", check_null_steering),
        ("snapshot_generation_deterministic", check_determinism),
        ("oracle_weights_attain_best_sinr", check_optimal),
    ];
    checks
        .iter()
        .map(|&(name, f)| match f() {
            Ok(()) => SelftestOutcome { name, passed: true, detail: String::new() },
            Err(detail) => SelftestOutcome { name, passed: false, detail },
        })
        .collect()
}

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

fn test_scenario() -> Result<Scenario, String> {
    Scenario::new(
        Ula::new(16).map_err(|e| e.to_string())?,
        Source::new(3.0, 1.0).map_err(|e| e.to_string())?,
        vec![
            Source::new(-20.0, 100.0).map_err(|e| e.to_string())?,
            Source::new(40.0, 100.0).map_err(|e| e.to_string())?,
        ],
        1.0,
        true,
    )
    .map_err(|e| e.to_string())
}

fn snapshots(l: usize, seed: u64) -> Result<DataMatrix, String> {
    test_scenario()?.generate_snapshots(l, seed).map_err(|e| e.to_string())
}

fn check_steering() -> Result<(), String> {
    let array = Ula::new(32).map_err(|e| e.to_string())?;
    for &deg in &[-60.0, -3.5, 0.0, 3.0, 45.0, 89.0] {
        let s = steering(&array, deg).map_err(|e| e.to_string())?;
        let err = (s.norm2() - 1.0).abs();
        expect(err < 1e-12, format!("‖s({deg}°)‖ off unit norm by {err:.3e}"))?;
    }
    Ok(())
}

fn check_projector() -> Result<(), String> {
    let array = Ula::new(16).map_err(|e| e.to_string())?;
    let s = steering(&array, 3.0).map_err(|e| e.to_string())?;
    let y = steering(&array, 25.0).map_err(|e| e.to_string())?;
    let p = projector_apply(&s, &y).map_err(|e| e.to_string())?;
    let leak = s.inner(&p).map_err(|e| e.to_string())?.norm();
    expect(leak < 1e-12, format!("projected vector keeps {leak:.3e} along s"))?;
    let pp = projector_apply(&s, &p).map_err(|e| e.to_string())?;
    let drift = pp.sub(&p).map_err(|e| e.to_string())?.norm2();
    expect(drift < 1e-12, format!("projector not idempotent, drift {drift:.3e}"))
}

fn check_evd() -> Result<(), String> {
    let x = snapshots(10, 7)?;
    let m = x.matrix();
    let a = m.matmul(&m.hermitian_transpose()).map_err(|e| e.to_string())?;
    let evd = herm_evd(&a).map_err(|e| e.to_string())?;
    expect(
        evd.values.windows(2).all(|w| w[0] >= w[1]),
        "eigenvalues not sorted non-increasing",
    )?;
    // Reconstruct A = V diag(λ) V^H and compare.
    let n = a.rows();
    let mut recon = crate::numerics::ComplexMatrix::zeros(n, n).map_err(|e| e.to_string())?;
    for k in 0..n {
        let v = evd.vectors.col_vector(k);
        for i in 0..n {
            for j in 0..n {
                let add = v.as_slice()[i] * v.as_slice()[j].conj() * evd.values[k];
                recon.set(i, j, recon.get(i, j) + add);
            }
        }
    }
    let err = recon.sub(&a).map_err(|e| e.to_string())?.frobenius_norm()
        / a.frobenius_norm().max(1e-300);
    expect(err < 1e-10, format!("V diag(λ) V^H misses A by relative {err:.3e}"))
}

fn check_pinv() -> Result<(), String> {
    // Rank-deficient Gram matrix: 8 snapshots from a 4-element array.
    let sc = Scenario::new(
        Ula::new(4).map_err(|e| e.to_string())?,
        Source::new(0.0, 1.0).map_err(|e| e.to_string())?,
        vec![],
        1.0,
        true,
    )
    .map_err(|e| e.to_string())?;
    let x = sc.generate_snapshots(8, 3).map_err(|e| e.to_string())?;
    let m = x.matrix();
    let g = m.hermitian_transpose().matmul(m).map_err(|e| e.to_string())?;
    let gp = pinv_psd(&g, None).map_err(|e| e.to_string())?;
    let ggp = g.matmul(&gp).map_err(|e| e.to_string())?;
    let scale = g.frobenius_norm();
    let c1 = ggp.matmul(&g).map_err(|e| e.to_string())?.sub(&g).map_err(|e| e.to_string())?;
    expect(
        c1.frobenius_norm() < 1e-8 * scale,
        format!("G G⁺ G ≠ G, residual {:.3e}", c1.frobenius_norm()),
    )?;
    let c4 = ggp.sub(&ggp.hermitian_transpose()).map_err(|e| e.to_string())?;
    expect(
        c4.frobenius_norm() < 1e-8,
        format!("G G⁺ not Hermitian, residual {:.3e}", c4.frobenius_norm()),
    )
}

fn check_solve() -> Result<(), String> {
    let sc = test_scenario()?;
    let r = sc.true_covariance().map_err(|e| e.to_string())?;
    let b = sc.desired_steering().map_err(|e| e.to_string())?;
    let x = solve_hermitian_pd(&r, &b).map_err(|e| e.to_string())?;
    let resid = r.gemv(&x).map_err(|e| e.to_string())?.sub(&b).map_err(|e| e.to_string())?;
    let err = resid.norm2() / b.norm2();
    expect(err < 1e-9, format!("R x = s residual {err:.3e}"))
}

fn check_beta_equivalence() -> Result<(), String> {
    // The squared normal equations (pseudoinverse of R̂² applied to R̂ X^H s)
    // and the direct minimum-norm form (pseudoinverse of R̂ applied to X^H s)
    // must produce the same coefficients, including on rank-deficient data.
    let x = snapshots(8, 11)?;
    let sc = test_scenario()?;
    let s = sc.desired_steering().map_err(|e| e.to_string())?;
    let r_hat = gram(&x, &s).map_err(|e| e.to_string())?;
    let beta_direct = kernel_beta_full(&r_hat, &x, &s).map_err(|e| e.to_string())?;

    let y = x.matrix().adjoint_gemv(&s).map_err(|e| e.to_string())?;
    let rr = r_hat.matrix().matmul(r_hat.matrix()).map_err(|e| e.to_string())?;
    let rr_pinv = pinv_psd(&rr, None).map_err(|e| e.to_string())?;
    let ry = r_hat.matrix().gemv(&y).map_err(|e| e.to_string())?;
    let beta_squared = rr_pinv.gemv(&ry).map_err(|e| e.to_string())?.scale(Complex64::new(-1.0, 0.0));

    let diff = beta_direct
        .vector()
        .sub(&beta_squared)
        .map_err(|e| e.to_string())?
        .norm2();
    let scale = beta_direct.vector().norm2().max(1e-300);
    expect(
        diff < 1e-8 * scale,
        format!("normal-equation forms disagree by relative {:.3e}", diff / scale),
    )
}

fn check_distortionless() -> Result<(), String> {
    let sc = test_scenario()?;
    let s = sc.desired_steering().map_err(|e| e.to_string())?;
    let r = sc.true_covariance().map_err(|e| e.to_string())?;
    let x = sc.generate_snapshots(32, 5).map_err(|e| e.to_string())?;
    let weights = [
        ("optimal", mvdr_optimal(&r, &s)),
        ("smi", smi(&x, &s)),
        ("lsmi", lsmi(&x, &s, 10.0)),
        ("eigenspace", eigenspace(&x, &s, 3)),
        ("kernel", kernel_beamformer(&x, &s, Some(2))),
    ];
    for (name, w) in weights {
        let w = w.map_err(|e| format!("{name}: {e}"))?;
        let resp = w.w.inner(&s).map_err(|e| e.to_string())?;
        let err = (resp - Complex64::new(1.0, 0.0)).norm();
        expect(err < 1e-10, format!("{name}: w^H s off unity by {err:.3e}"))?;
    }
    Ok(())
}

fn check_dense_agreement() -> Result<(), String> {
    let sc = test_scenario()?;
    let s = sc.desired_steering().map_err(|e| e.to_string())?;
    let x = sc.generate_snapshots(20, 13).map_err(|e| e.to_string())?;
    let pairs = [
        ("smi", smi(&x, &s), dense::smi_dense(&x, &s)),
        ("lsmi", lsmi(&x, &s, 10.0), dense::lsmi_dense(&x, &s, 10.0)),
        ("eigenspace", eigenspace(&x, &s, 3), dense::eigenspace_dense(&x, &s, 3)),
        ("kernel", kernel_beamformer(&x, &s, Some(2)), dense::kernel_dense(&x, &s, Some(2))),
        ("kernel-full", kernel_beamformer(&x, &s, None), dense::kernel_dense(&x, &s, None)),
    ];
    for (name, fast, reference) in pairs {
        let fast = fast.map_err(|e| format!("{name}: {e}"))?;
        let reference = reference.map_err(|e| format!("{name} (dense): {e}"))?;
        let diff = fast.w.sub(&reference.w).map_err(|e| e.to_string())?.norm2();
        let scale = reference.w.norm2().max(1e-300);
        expect(
            diff < 1e-6 * scale,
            format!("{name}: Gram route differs from dense by relative {:.3e}", diff / scale),
        )?;
    }
    Ok(())
}

fn check_null_steering() -> Result<(), String> {
    let sc = Scenario::noiseless(
        Ula::new(16).map_err(|e| e.to_string())?,
        Source::new(3.0, 1.0).map_err(|e| e.to_string())?,
        vec![
            Source::new(-20.0, 100.0).map_err(|e| e.to_string())?,
            Source::new(40.0, 100.0).map_err(|e| e.to_string())?,
        ],
        false,
    )
    .map_err(|e| e.to_string())?;
    let s = sc.desired_steering().map_err(|e| e.to_string())?;
    let x = sc.generate_snapshots(5, 17).map_err(|e| e.to_string())?;
    let w = kernel_beamformer(&x, &s, Some(2)).map_err(|e| e.to_string())?;
    for src in sc.interferers() {
        let sv = steering(sc.array(), src.doa_deg()).map_err(|e| e.to_string())?;
        let resp = w.w.inner(&sv).map_err(|e| e.to_string())?.norm() / w.w.norm2();
        expect(
            resp < 1e-8,
            format!("response toward {}° is {resp:.3e}, expected an exact null", src.doa_deg()),
        )?;
    }
    Ok(())
}

fn check_determinism() -> Result<(), String> {
    let a = snapshots(12, 99)?;
    let b = snapshots(12, 99)?;
    let c = snapshots(12, 100)?;
    for col in 0..12 {
        for row in 0..16 {
            let va = a.matrix().get(row, col);
            let vb = b.matrix().get(row, col);
            expect(
                va.re.to_bits() == vb.re.to_bits() && va.im.to_bits() == vb.im.to_bits(),
                format!("snapshot ({row},{col}) differs between identical seeds"),
            )?;
        }
    }
    let same_everywhere = (0..12)
        .all(|col| (0..16).all(|row| a.matrix().get(row, col) == c.matrix().get(row, col)));
    expect(!same_everywhere, "different seeds produced identical snapshots")
}

fn check_optimal() -> Result<(), String> {
    let sc = test_scenario()?;
    let s = sc.desired_steering().map_err(|e| e.to_string())?;
    let r = sc.true_covariance().map_err(|e| e.to_string())?;
    let sigma_s2 = sc.desired().power();
    let best = sinr_opt(&s, sigma_s2, &r).map_err(|e| e.to_string())?;
    let w = mvdr_optimal(&r, &s).map_err(|e| e.to_string())?;
    let got = output_sinr(&w, &s, sigma_s2, &r).map_err(|e| e.to_string())?;
    expect(
        (got - best).abs() < 1e-9,
        format!("oracle weights reach {got:.6} dB, bound is {best:.6} dB"),
    )?;
    // No competitor may beat the bound.
    let x = sc.generate_snapshots(32, 23).map_err(|e| e.to_string())?;
    for (name, w) in [
        ("smi", smi(&x, &s)),
        ("lsmi", lsmi(&x, &s, 10.0)),
        ("kernel", kernel_beamformer(&x, &s, Some(2))),
    ] {
        let w = w.map_err(|e| format!("{name}: {e}"))?;
        let sinr = output_sinr(&w, &s, sigma_s2, &r).map_err(|e| e.to_string())?;
        expect(
            sinr <= best + 1e-9,
            format!("{name} reports {sinr:.6} dB above the optimum {best:.6} dB"),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_selftests_pass() {
        let outcomes = run_selftest();
        assert_eq!(outcomes.len(), 11);
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn selftest_names_are_unique() {
        let outcomes = run_selftest();
        let mut names: Vec<_> = outcomes.iter().map(|o| o.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), outcomes.len());
    }
}
