//! Output SINR versus input SNR at a fixed, tiny sample budget (L = 30 for
//! N = 400). Shows why the eigenspace projection needs high SNR — its
//! assumed signal-plus-interference subspace loses the signal once the
//! signal eigenvalue sinks below the sample noise spread — while the kernel
//! route is SNR-indifferent: the steering component is handled exactly and
//! only interference is estimated from data.
//!
//! Run with: cargo run --example sinr_vs_snr

use beamkit::beamformers::Method;
use beamkit::harness::{
    run_sweep_snr, ExperimentConfig, InterfererConfig, MethodParams, MonteCarloConfig,
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
            // Training free of the desired signal isolates the regime claim;
            // with contamination, every sample-based method self-nulls at
            // high SNR and the comparison measures that instead.
            signal_in_training: false,
        },
        sweep: SweepConfig {
            variable: SweepVariable::Snr,
            grid: vec![-20.0, -10.0, 0.0, 10.0, 20.0],
            fixed_samples: Some(30),
        },
        methods: vec![Method::Optimal, Method::Eigenspace, Method::Kernel],
        monte_carlo: MonteCarloConfig { trials: 10, base_seed: 7 },
        params: MethodParams::default(),
    };

    let table = run_sweep_snr(&cfg)?;

    println!("mean output SINR (dB), N = 400, L = 30, signal-free training\n");
    println!("{:>8} {:>12} {:>12} {:>12}", "snr_db", "optimal", "eigenspace", "kernel");
    for &snr in &cfg.sweep.grid {
        let sinr = |m: Method| {
            table
                .rows
                .iter()
                .find(|r| r.sweep_value == snr && r.method == m)
                .map(|r| r.mean_sinr_db)
                .unwrap()
        };
        println!(
            "{:>8} {:>12.2} {:>12.2} {:>12.2}",
            snr,
            sinr(Method::Optimal),
            sinr(Method::Eigenspace),
            sinr(Method::Kernel)
        );
    }
    println!("\nKernel tracks the optimum at every SNR; eigenspace trails by tens of dB");
    println!("until the signal eigenvalue dominates the sample noise spread.");
    Ok(())
}
