//! Monte Carlo SINR-loss comparison versus training sample count on a large
//! (N = 400) array — the sample-starved regime the Gram route is built for.
//! This is a desk-scale cut of the bundled `configs/fig1.json` experiment.
//!
//! Run with: cargo run --example sinr_loss_vs_samples

use beamkit::beamformers::Method;
use beamkit::harness::{
    run_sweep_samples, ExperimentConfig, InterfererConfig, MethodParams, MonteCarloConfig,
    ScenarioConfig, SweepConfig, SweepVariable,
};

fn main() -> beamkit::Result<()> {
    let cfg = ExperimentConfig {
        scenario: ScenarioConfig {
            n_elements: 400,
            desired_doa_deg: 3.0,
            snr_db: -15.0,
            interferers: vec![
                InterfererConfig { doa_deg: -2.0, inr_db: 30.0 },
                InterfererConfig { doa_deg: -4.0, inr_db: 30.0 },
                InterfererConfig { doa_deg: -6.0, inr_db: 30.0 },
            ],
            signal_in_training: true,
        },
        sweep: SweepConfig {
            variable: SweepVariable::Samples,
            grid: vec![10.0, 20.0, 30.0, 50.0],
            fixed_samples: None,
        },
        methods: vec![Method::Smi, Method::Eigenspace, Method::Kernel],
        monte_carlo: MonteCarloConfig { trials: 10, base_seed: 7 },
        params: MethodParams::default(),
    };

    let table = run_sweep_samples(&cfg)?;

    println!("mean SINR loss (dB; 0 dB is ideal), N = 400, SNR = -15 dB, 3 interferers @ 30 dB\n");
    println!("{:>8} {:>12} {:>12} {:>12}", "samples", "smi", "eigenspace", "kernel");
    for &l in &cfg.sweep.grid {
        let loss = |m: Method| {
            table
                .rows
                .iter()
                .find(|r| r.sweep_value == l && r.method == m)
                .map(|r| r.mean_loss_db)
                .unwrap()
        };
        println!(
            "{:>8} {:>12.2} {:>12.2} {:>12.2}",
            l as usize,
            loss(Method::Smi),
            loss(Method::Eigenspace),
            loss(Method::Kernel)
        );
    }
    println!("\nThe kernel route stays near 0 dB with a tenth of the classic 2N samples;");
    println!("write CSVs for plotting with the `beamkit` CLI and configs/fig1.json.");
    Ok(())
}
