//! Smallest end-to-end use of the library: build a scenario, draw a handful
//! of training snapshots, compute the kernel-route adaptive weight, and
//! score it against the true interference-plus-noise covariance.
//!
//! Run with: cargo run --example quickstart

use beamkit::beamformers::{kernel_beamformer, smi};
use beamkit::metrics::{output_sinr, sinr_opt};
use beamkit::scenario::{Scenario, Source, Ula};

fn main() -> beamkit::Result<()> {
    // 16-element half-wavelength array; weak desired signal at 3° (-10 dB
    // SNR, the small-sample regime these methods target); one strong
    // interferer at -20°; unit noise power; the desired signal contaminates
    // the training data (the hard, realistic case).
    let scenario = Scenario::new(
        Ula::new(16)?,
        Source::new(3.0, 0.1)?,
        vec![Source::new(-20.0, 100.0)?],
        1.0,
        true,
    )?;

    // Eight snapshots: half the array size, far below the classical two-N
    // rule of thumb.
    let x = scenario.generate_snapshots(8, 42)?;
    let s = scenario.desired_steering()?;

    // Truncation rank = number of interferers.
    let w = kernel_beamformer(&x, &s, Some(1))?;

    let r_true = scenario.true_covariance()?;
    let sigma_s2 = scenario.desired().power();
    let achieved = output_sinr(&w, &s, sigma_s2, &r_true)?;
    let best = sinr_opt(&s, sigma_s2, &r_true)?;

    // Classical sample-matrix inversion on the same snapshots, for contrast.
    let w_smi = smi(&x, &s)?;
    let smi_sinr = output_sinr(&w_smi, &s, sigma_s2, &r_true)?;

    println!("snapshots used      : {}", x.l());
    println!("array elements      : {}", x.n());
    println!("optimal SINR        : {best:.2} dB");
    println!("kernel output SINR  : {achieved:.2} dB (loss {:.2} dB)", achieved - best);
    println!("smi output SINR     : {smi_sinr:.2} dB (loss {:.2} dB)", smi_sinr - best);
    println!("rank used           : {}", w.diagnostics.rank_used);
    println!("weight compute time : {:.1} µs", w.diagnostics.wall_time.as_secs_f64() * 1e6);
    Ok(())
}
