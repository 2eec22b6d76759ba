//! The coefficient solve behind the kernel route, done two ways.
//!
//! Minimizing ‖X^H w‖² over w = s + P_s^⊥Xβ gives the normal equations
//! R̂(R̂β + X^Hs) = 0 with R̂ the L×L Gram matrix of projected snapshots.
//! The brute-force solution pseudo-inverts R̂² — squaring the condition
//! number. The shortcut solves β = −R̂⁺(X^Hs) directly. This example shows
//! the two agree to machine precision (also when s lies in the span of the
//! data, where R̂ is singular), and that the result actually minimizes the
//! quadratic cost: 200 random perturbations all score worse.
//!
//! Run with: cargo run --example normal_equations_shortcut

use beamkit::beamformers::{gram, kernel_beta_full, kernel_weight};
use beamkit::numerics::{pinv_psd, ComplexVector};
use beamkit::scenario::{Scenario, Source, Ula};
use num_complex::Complex64;

fn main() -> beamkit::Result<()> {
    let scenario = Scenario::new(
        Ula::new(24)?,
        Source::new(3.0, 1.0)?,
        vec![Source::new(-20.0, 100.0)?, Source::new(40.0, 100.0)?],
        1.0,
        true,
    )?;
    let x = scenario.generate_snapshots(12, 5)?;
    let s = scenario.desired_steering()?;

    let r_hat = gram(&x, &s)?;
    let y = x.matrix().adjoint_gemv(&s)?;

    // Brute force: β = −(R̂²)⁺ R̂ y.
    let rr = r_hat.matrix().matmul(r_hat.matrix())?;
    let beta_brute = pinv_psd(&rr, None)?
        .gemv(&r_hat.matrix().gemv(&y)?)?
        .scale(Complex64::new(-1.0, 0.0));

    // Shortcut: β = −R̂⁺ y.
    let beta = kernel_beta_full(&r_hat, &x, &s)?;

    let rel = beta.vector().sub(&beta_brute)?.norm2() / beta.vector().norm2();
    println!("relative difference between the two solves: {rel:.3e}");

    // The shortcut really is the minimizer of ‖X^H w‖².
    let cost = |b: &ComplexVector| -> beamkit::Result<f64> {
        let w = kernel_weight(&x, &s, &beamkit::beamformers::Beta::new(b.clone()))?;
        Ok(x.matrix().adjoint_gemv(&w.w)?.norm2().powi(2))
    };
    let best = cost(beta.vector())?;
    let noise = noise_columns(&scenario, 12, 999)?;
    let mut worse = 0usize;
    for (k, d) in noise.iter().enumerate() {
        let scale = Complex64::new(1e-3 * (1.0 + k as f64 / noise.len() as f64), 0.0);
        let perturbed = beta.vector().add(&d.scale(scale))?;
        if cost(&perturbed)? >= best - 1e-12 * best.abs().max(1.0) {
            worse += 1;
        }
    }
    println!("cost at solution    : {best:.6e}");
    println!("perturbations worse : {worse} / {}", noise.len());
    Ok(())
}

// Random complex directions, drawn through the snapshot generator so the
// example needs no RNG dependency of its own.
fn noise_columns(
    scenario: &Scenario,
    l: usize,
    seed: u64,
) -> beamkit::Result<Vec<ComplexVector>> {
    let noise_only = Scenario::new(
        Ula::new(l)?,
        Source::new(0.0, 0.0)?,
        vec![],
        scenario.noise_power(),
        false,
    )?;
    let m = noise_only.generate_snapshots(200, seed)?;
    Ok((0..200).map(|j| m.matrix().col_vector(j)).collect())
}
