//! Command-line front end.
//!
//! `run` is the whole CLI as a function of argv, returning the process exit
//! code, so integration tests can drive it without spawning a process.
//! Artifacts land in the `--out` directory and are named after the config
//! file stem: `<stem>_loss.csv`, `<stem>_sinr.csv`, `<stem>_time.csv`,
//! `<stem>_timing.csv`, `<stem>_beampattern_<method>.csv`, plus a
//! `<stem>_meta.json` recording the resolved config next to its results.
//!
//! Exit codes: 0 success, 1 usage/config/I-O errors, 2 numerical failures
//! (non-convergence, indefinite matrices, failed self-checks).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::table::fmt_sig;
use super::{
    run_beampattern, run_bench, run_selftest, run_sweep_samples, run_sweep_snr, ExperimentConfig,
};
use crate::beamformers::Method;
use crate::error::{Error, Result};
use crate::metrics::Beampattern;

#[derive(Debug, Parser)]
#[command(
    name = "beamkit",
    version,
    about = "Adaptive beamformer comparison harness (sample-starved MVDR)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo SINR-loss sweep over the training snapshot count
    SweepSamples(RunArgs),
    /// Monte Carlo output-SINR sweep over the desired-signal SNR
    SweepSnr(RunArgs),
    /// Beampattern of each method from a single training draw
    Beampattern(RunArgs),
    /// Wall-clock timing of weight computation over the snapshot count
    Bench(RunArgs),
    /// Run the built-in numerical self-checks
    Selftest,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Path to the JSON experiment config
    #[arg(long)]
    config: PathBuf,
    /// Directory for output files (created if missing)
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Override monte_carlo.base_seed from the config
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's method list (comma-separated, e.g. smi,kernel)
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
}

/// Execute the CLI for the given argv (including the program name) and
/// return the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Selftest => selftest_main(),
        command => match execute(command) {
            Ok(files) => {
                for f in &files {
                    println!("wrote {}", f.display());
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    }
}

fn selftest_main() -> u8 {
    let outcomes = run_selftest();
    let mut failures = 0usize;
    for o in &outcomes {
        if o.passed {
            println!("selftest: {} ... PASS", o.name);
        } else {
            println!("selftest: {} ... FAIL ({})", o.name, o.detail);
            failures += 1;
        }
    }
    if failures == 0 {
        println!("selftest: all {} checks passed", outcomes.len());
        0
    } else {
        eprintln!("selftest: {failures} of {} checks failed", outcomes.len());
        2
    }
}

fn execute(command: Command) -> Result<Vec<PathBuf>> {
    let (name, args) = match &command {
        Command::SweepSamples(a) => ("sweep-samples", a),
        Command::SweepSnr(a) => ("sweep-snr", a),
        Command::Beampattern(a) => ("beampattern", a),
        Command::Bench(a) => ("bench", a),
        Command::Selftest => unreachable!("handled in run"),
    };
    let cfg = load_config(args)?;
    std::fs::create_dir_all(&args.out).map_err(|e| {
        Error::Io(format!("cannot create output directory {}: {e}", args.out.display()))
    })?;
    let stem = config_stem(&args.config);

    // (file name, content) pairs, written after the run succeeds.
    let mut outputs: Vec<(String, String)> = Vec::new();
    match command {
        Command::SweepSamples(_) => {
            let table = run_sweep_samples(&cfg)?;
            outputs.push((format!("{stem}_loss.csv"), table.quality_csv()));
            outputs.push((format!("{stem}_time.csv"), table.timing_csv()));
        }
        Command::SweepSnr(_) => {
            let table = run_sweep_snr(&cfg)?;
            outputs.push((format!("{stem}_sinr.csv"), table.quality_csv()));
            outputs.push((format!("{stem}_time.csv"), table.timing_csv()));
        }
        Command::Beampattern(_) => {
            for (method, bp) in run_beampattern(&cfg)? {
                outputs.push((format!("{stem}_beampattern_{method}.csv"), beampattern_csv(&bp)));
            }
        }
        Command::Bench(_) => {
            let table = run_bench(&cfg)?;
            outputs.push((format!("{stem}_timing.csv"), table.csv()));
        }
        Command::Selftest => unreachable!("handled in run"),
    }

    let meta = RunMeta {
        command: name,
        crate_version: env!("CARGO_PKG_VERSION"),
        config: &cfg,
        outputs: outputs.iter().map(|(f, _)| f.clone()).collect(),
    };
    let meta_text = serde_json::to_string_pretty(&meta)
        .map_err(|e| Error::Io(format!("cannot serialize run metadata: {e}")))?;
    outputs.push((format!("{stem}_meta.json"), meta_text + "\n"));

    let mut written = Vec::with_capacity(outputs.len());
    for (file, content) in outputs {
        let path = args.out.join(file);
        std::fs::write(&path, content)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}

/// Archived next to the results so a CSV can always be traced back to the
/// exact resolved experiment that produced it.
#[derive(Serialize)]
struct RunMeta<'a> {
    command: &'a str,
    crate_version: &'a str,
    config: &'a ExperimentConfig,
    outputs: Vec<String>,
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::from_path(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.monte_carlo.base_seed = seed;
    }
    if let Some(methods) = &args.methods {
        cfg.methods = methods
            .iter()
            .map(|m| m.trim().parse::<Method>())
            .collect::<Result<Vec<_>>>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn config_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "run".to_string())
}

fn beampattern_csv(bp: &Beampattern) -> String {
    let mut out = String::from("angle_deg,gain_db\n");
    for (angle, gain) in bp.angles_deg.iter().zip(&bp.gain_db) {
        out.push_str(&format!("{angle:.2},{}\n", fmt_sig(*gain)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_follow_the_config_name() {
        assert_eq!(config_stem(Path::new("configs/fig1.json")), "fig1");
        assert_eq!(config_stem(Path::new("x.json")), "x");
    }

    #[test]
    fn help_exits_zero_and_bad_args_exit_one() {
        assert_eq!(run(["beamkit", "--help"]), 0);
        assert_eq!(run(["beamkit", "no-such-command"]), 1);
        assert_eq!(run(["beamkit", "sweep-samples"]), 1); // missing --config
    }

    #[test]
    fn beampattern_rows_use_two_decimal_angles() {
        let bp = Beampattern {
            angles_deg: vec![-89.95, 0.0, 3.0],
            gain_db: vec![-41.25, -0.5, 0.0],
        };
        assert_eq!(
            beampattern_csv(&bp),
            "angle_deg,gain_db\n-89.95,-41.2500\n0.00,-0.500000\n3.00,0\n"
        );
    }
}
