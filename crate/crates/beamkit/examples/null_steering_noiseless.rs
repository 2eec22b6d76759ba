//! Exact null steering from almost no data. With zero noise and M
//! interferers, the projected Gram matrix has numerical rank exactly M, and
//! the rank-M truncated solution places a perfect null on every interferer
//! — from just M+3 snapshots, far fewer than the array size.
//!
//! Run with: cargo run --example null_steering_noiseless

use beamkit::beamformers::{gram, kernel_beamformer};
use beamkit::numerics::{default_rank_rtol, herm_evd};
use beamkit::scenario::{steering, Scenario, Source, Ula};

fn main() -> beamkit::Result<()> {
    let n = 32;
    for m in 1..=3usize {
        let interferers: Vec<Source> = (0..m)
            .map(|i| Source::new(-15.0 - 10.0 * i as f64, 100.0))
            .collect::<beamkit::Result<_>>()?;
        let doas: Vec<f64> = interferers.iter().map(|s| s.doa_deg()).collect();
        let scenario =
            Scenario::noiseless(Ula::new(n)?, Source::new(3.0, 1.0)?, interferers, false)?;
        let l = m + 3;
        let x = scenario.generate_snapshots(l, 11)?;
        let s = scenario.desired_steering()?;

        // Numerical rank of the projected Gram matrix: exactly M.
        let r_hat = gram(&x, &s)?;
        let evd = herm_evd(r_hat.matrix())?;
        let cut = default_rank_rtol(l) * evd.values[0].max(0.0);
        let rank = evd.values.iter().filter(|&&v| v > cut).count();

        let w = kernel_beamformer(&x, &s, Some(m))?;
        println!("M = {m} interferers, L = {l} snapshots, N = {n} sensors");
        println!("  numerical rank of projected Gram matrix: {rank}");
        for doa in doas {
            let sv = steering(scenario.array(), doa)?;
            let response = w.w.inner(&sv)?.norm() / w.w.norm2();
            println!("  |w^H s({doa:>6.1}°)| / ‖w‖ = {response:.2e}");
        }
    }
    println!("\nEach interferer direction is annihilated to round-off; the desired");
    println!("direction keeps unit gain by construction.");
    Ok(())
}
