//! Experiment harness: config-driven Monte Carlo sweeps, beampattern dumps,
//! and timing benchmarks over the beamformers in this crate.
//!
//! Reproducibility contract: every quality number is a deterministic
//! function of the config (including `monte_carlo.base_seed`). Trial `t`
//! draws its snapshots from seed `base_seed + t`, every method inside a
//! trial consumes the *same* snapshot matrix (paired design), and
//! aggregation runs in trial order regardless of how many worker threads
//! rayon uses. Wall-clock columns are excluded from that contract and kept
//! in separate files.

pub mod cli;
mod config;
mod selftest;
mod table;

pub use config::{
    ExperimentConfig, InterfererConfig, MethodParams, MonteCarloConfig, ScenarioConfig,
    SweepConfig, SweepVariable,
};
pub use selftest::{run_selftest, SelftestOutcome};
pub use table::{ResultRow, ResultTable, TimingRow, TimingTable};

use std::time::Instant;

use rayon::prelude::*;

use crate::beamformers::{
    dense, eigenspace, kernel_beamformer, lsmi, mvdr_optimal, smi, Method, WeightVector,
};
use crate::error::{Error, Result};
use crate::metrics::{beampattern, mdn_estimate, output_sinr, sinr_opt, Beampattern, SinrRecord};
use crate::numerics::{ComplexMatrix, ComplexVector};
use crate::scenario::{DataMatrix, Scenario};

/// Environment variable selecting the rayon worker count. Unset or `0`
/// means one worker per available CPU.
pub const THREADS_ENV: &str = "BEAMKIT_THREADS";

/// Untimed warm-up calls before each `(method, L)` timing measurement.
pub const BENCH_WARMUP: usize = 3;
/// Timed repetitions per `(method, L)` cell; quantiles come from this set.
pub const BENCH_REPS: usize = 11;

/// Method parameters with config defaults applied.
#[derive(Debug, Clone, Copy)]
struct ResolvedParams {
    loading: f64,
    eigenspace_rank: usize,
    kernel_rank: Option<usize>,
}

impl ResolvedParams {
    fn from_config(cfg: &ExperimentConfig) -> Self {
        ResolvedParams {
            loading: cfg.loading_linear(),
            eigenspace_rank: cfg.resolved_eigenspace_rank(),
            kernel_rank: cfg.resolved_kernel_rank(),
        }
    }
}

fn compute_weight(
    method: Method,
    x: &DataMatrix,
    s: &ComplexVector,
    r_true: &ComplexMatrix,
    p: &ResolvedParams,
) -> Result<WeightVector> {
    match method {
        Method::Optimal => mvdr_optimal(r_true, s),
        Method::Smi => smi(x, s),
        Method::Lsmi => lsmi(x, s, p.loading),
        Method::Eigenspace => eigenspace(x, s, p.eigenspace_rank),
        Method::Kernel => kernel_beamformer(x, s, p.kernel_rank),
    }
}

/// Rayon pool honoring [`THREADS_ENV`].
fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw.trim().parse().map_err(|_| {
            Error::invalid(
                "thread_pool",
                format!("{THREADS_ENV} must be a non-negative integer, got `{raw}`"),
            )
        })?;
        if n > 0 {
            builder = builder.num_threads(n);
        }
    }
    builder
        .build()
        .map_err(|e| Error::invalid("thread_pool", e.to_string()))
}

/// Monte Carlo evaluation of one sweep point: all configured methods on the
/// same snapshot draws, aggregated into one row per method.
fn evaluate_point(
    pool: &rayon::ThreadPool,
    scenario: &Scenario,
    sweep_value: f64,
    l: usize,
    methods: &[Method],
    trials: usize,
    base_seed: u64,
    params: &ResolvedParams,
) -> Result<Vec<ResultRow>> {
    let s = scenario.desired_steering()?;
    let r_true = scenario.true_covariance()?;
    let sigma_s2 = scenario.desired().power();
    let opt_db = sinr_opt(&s, sigma_s2, &r_true)?;

    // (method, sinr_db, weight-computation seconds) per trial, in trial
    // order after collect.
    let per_trial: Vec<Vec<(Method, f64, f64)>> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|trial| {
                let x = scenario.generate_snapshots(l, base_seed + trial as u64)?;
                methods
                    .iter()
                    .map(|&method| {
                        let w = compute_weight(method, &x, &s, &r_true, params)?;
                        let secs = w.diagnostics.wall_time.as_secs_f64();
                        let sinr_db = output_sinr(&w, &s, sigma_s2, &r_true)?;
                        Ok((method, sinr_db, secs))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let n = scenario.array().n_elements();
    let mut rows = Vec::with_capacity(methods.len());
    for (mi, &method) in methods.iter().enumerate() {
        let records: Vec<SinrRecord> = per_trial
            .iter()
            .enumerate()
            .map(|(trial, results)| {
                let (_, sinr_db, _) = results[mi];
                SinrRecord { method, trial, sinr_db, loss_db: sinr_db - opt_db }
            })
            .collect();
        let mean_loss_db = crate::metrics::sinr_loss_avg(&records)?;
        let mean_sinr_db = mean_loss_db + opt_db;
        let losses_db: Vec<f64> = records.iter().map(|r| r.loss_db).collect();
        let mean_of_db = losses_db.iter().sum::<f64>() / losses_db.len() as f64;
        let std_loss_db = if losses_db.len() < 2 {
            0.0
        } else {
            let var = losses_db
                .iter()
                .map(|v| (v - mean_of_db).powi(2))
                .sum::<f64>()
                / (losses_db.len() - 1) as f64;
            var.sqrt()
        };
        let mean_wall_time_s = per_trial
            .iter()
            .map(|results| results[mi].2)
            .sum::<f64>()
            / trials as f64;
        rows.push(ResultRow {
            sweep_value,
            method,
            mean_loss_db,
            std_loss_db,
            mean_sinr_db,
            mean_wall_time_s,
            mdn: mdn_estimate(method, n, l, params.eigenspace_rank),
            mean_of_db,
        });
    }
    Ok(rows)
}

/// SINR-loss sweep over the snapshot count.
pub fn run_sweep_samples(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    if cfg.sweep.variable != SweepVariable::Samples {
        return Err(Error::config("sweep.variable", "expected `samples` for this command"));
    }
    let scenario = cfg.scenario()?;
    let params = ResolvedParams::from_config(cfg);
    let pool = thread_pool()?;
    let mut table = ResultTable::default();
    for &value in &cfg.sweep.grid {
        let rows = evaluate_point(
            &pool,
            &scenario,
            value,
            value as usize,
            &cfg.methods,
            cfg.monte_carlo.trials,
            cfg.monte_carlo.base_seed,
            &params,
        )?;
        table.rows.extend(rows);
    }
    Ok(table)
}

/// Output-SINR sweep over the desired-signal SNR at a fixed snapshot count.
pub fn run_sweep_snr(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    if cfg.sweep.variable != SweepVariable::Snr {
        return Err(Error::config("sweep.variable", "expected `snr` for this command"));
    }
    let l = cfg.sweep.fixed_samples.expect("validated");
    let params = ResolvedParams::from_config(cfg);
    let pool = thread_pool()?;
    let mut table = ResultTable::default();
    for &snr_db in &cfg.sweep.grid {
        let scenario = cfg.scenario_with_snr(snr_db)?;
        let rows = evaluate_point(
            &pool,
            &scenario,
            snr_db,
            l,
            &cfg.methods,
            cfg.monte_carlo.trials,
            cfg.monte_carlo.base_seed,
            &params,
        )?;
        table.rows.extend(rows);
    }
    Ok(table)
}

/// Dense angle grid for beampattern dumps: −89.95° to +89.95° in 0.05°
/// steps (array endpoints excluded, where the steering model degenerates).
pub fn pattern_angle_grid() -> Vec<f64> {
    (1..3600).map(|k| (-9000 + 5 * k) as f64 / 100.0).collect()
}

/// Beampatterns of every configured method from a single training draw.
///
/// Requires a one-point `samples` grid and exactly one trial so the plotted
/// weight is unambiguous.
pub fn run_beampattern(cfg: &ExperimentConfig) -> Result<Vec<(Method, Beampattern)>> {
    cfg.validate()?;
    if cfg.sweep.variable != SweepVariable::Samples || cfg.sweep.grid.len() != 1 {
        return Err(Error::config(
            "sweep.grid",
            "beampattern runs need a one-point samples grid (the snapshot count)",
        ));
    }
    if cfg.monte_carlo.trials != 1 {
        return Err(Error::config(
            "monte_carlo.trials",
            "beampattern runs plot a single training draw; set trials to 1",
        ));
    }
    let scenario = cfg.scenario()?;
    let params = ResolvedParams::from_config(cfg);
    let l = cfg.sweep.grid[0] as usize;
    let s = scenario.desired_steering()?;
    let r_true = scenario.true_covariance()?;
    let x = scenario.generate_snapshots(l, cfg.monte_carlo.base_seed)?;
    let grid = pattern_angle_grid();
    let theta_s = scenario.desired().doa_deg();
    cfg.methods
        .iter()
        .map(|&method| {
            let w = compute_weight(method, &x, &s, &r_true, &params)?;
            let bp = beampattern(&w, scenario.array(), theta_s, &grid)?;
            Ok((method, bp))
        })
        .collect()
}

/// Wall-clock benchmark of weight computation over the snapshot-count grid.
///
/// Each (snapshot count, method) cell reuses one snapshot matrix, runs
/// [`BENCH_WARMUP`] untimed calls, then [`BENCH_REPS`] timed calls, and
/// reports the median with the 10th/90th percentiles. The `smi` label times
/// the conventional dense covariance route (see [`dense`]), which is the
/// baseline its cost model `N²L + N³` describes; the Gram-route methods are
/// timed on their production implementations. Runs single-threaded: timing
/// wants a quiet machine, not throughput.
pub fn run_bench(cfg: &ExperimentConfig) -> Result<TimingTable> {
    cfg.validate()?;
    if cfg.sweep.variable != SweepVariable::Samples {
        return Err(Error::config("sweep.variable", "bench sweeps the snapshot count"));
    }
    if cfg.methods.contains(&Method::Optimal) {
        return Err(Error::config(
            "methods",
            "`optimal` uses the true covariance, not snapshots; there is nothing to time",
        ));
    }
    let scenario = cfg.scenario()?;
    let params = ResolvedParams::from_config(cfg);
    let n = scenario.array().n_elements();
    let s = scenario.desired_steering()?;
    // compute_weight needs a true covariance only for `optimal`, which is
    // rejected above; a placeholder keeps allocations out of the timed loop.
    let unused_r = ComplexMatrix::identity(n)?;
    let mut table = TimingTable::default();
    for &value in &cfg.sweep.grid {
        let l = value as usize;
        let x = scenario.generate_snapshots(l, cfg.monte_carlo.base_seed)?;
        for &method in &cfg.methods {
            let run = || -> Result<WeightVector> {
                match method {
                    Method::Smi => dense::smi_dense(&x, &s),
                    _ => compute_weight(method, &x, &s, &unused_r, &params),
                }
            };
            for _ in 0..BENCH_WARMUP {
                run()?;
            }
            let mut times = Vec::with_capacity(BENCH_REPS);
            for _ in 0..BENCH_REPS {
                let t0 = Instant::now();
                let w = run()?;
                let dt = t0.elapsed().as_secs_f64();
                std::hint::black_box(&w.w);
                times.push(dt);
            }
            times.sort_by(f64::total_cmp);
            table.rows.push(TimingRow {
                sweep_value: value,
                method,
                median_s: times[BENCH_REPS / 2],
                p10_s: times[1],
                p90_s: times[BENCH_REPS - 2],
                mdn: mdn_estimate(method, n, l, params.eigenspace_rank),
            });
        }
    }
    Ok(table)
}
