//! JSON experiment configuration.
//!
//! A config fully determines an experiment: scenario geometry, the sweep
//! axis and grid, the methods to compare, Monte Carlo size and base seed,
//! and method parameters. Configs round-trip through serde without loss, so
//! the resolved config can be archived next to the results it produced.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::beamformers::Method;
use crate::error::{Error, Result};
use crate::scenario::{Scenario, Source, Ula};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: ScenarioConfig,
    pub sweep: SweepConfig,
    pub methods: Vec<Method>,
    pub monte_carlo: MonteCarloConfig,
    #[serde(default)]
    pub params: MethodParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_elements: usize,
    pub desired_doa_deg: f64,
    /// Desired-signal power over the unit noise floor, in dB.
    pub snr_db: f64,
    pub interferers: Vec<InterfererConfig>,
    /// Whether the desired signal contaminates the training snapshots.
    pub signal_in_training: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterfererConfig {
    pub doa_deg: f64,
    pub inr_db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    /// Sweep the number of training snapshots at fixed SNR.
    Samples,
    /// Sweep the desired-signal SNR at a fixed snapshot count.
    Snr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    pub grid: Vec<f64>,
    /// Snapshot count for `snr` sweeps; not accepted for `samples` sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloConfig {
    pub trials: usize,
    /// Trial `t` draws its snapshots from seed `base_seed + t`.
    pub base_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MethodParams {
    /// Diagonal loading over the unit noise floor, in dB.
    pub loading_db: f64,
    /// Subspace dimension for the eigenspace method. Defaults to the number
    /// of interferers plus one (signal + interference subspace).
    pub eigenspace_rank: Option<usize>,
    /// Truncation rank for the kernel method. Defaults to the number of
    /// interferers; with no interferers the untruncated solution is used.
    pub kernel_rank: Option<usize>,
}

impl Default for MethodParams {
    fn default() -> Self {
        MethodParams { loading_db: 10.0, eigenspace_rank: None, kernel_rank: None }
    }
}

impl ExperimentConfig {
    /// Read and parse a config file. The file is not validated here;
    /// call [`ExperimentConfig::validate`] before running anything.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::config(path.display().to_string(), format!("cannot read file: {e}"))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| Error::config(path.display().to_string(), e.to_string()))
    }

    /// Check every field, reporting the JSON path of the first offender.
    pub fn validate(&self) -> Result<()> {
        let s = &self.scenario;
        if s.n_elements < 2 {
            return cfg_err("scenario.n_elements", "need at least 2 elements");
        }
        check_doa("scenario.desired_doa_deg", s.desired_doa_deg)?;
        check_db("scenario.snr_db", s.snr_db)?;
        for (i, intf) in s.interferers.iter().enumerate() {
            let path = format!("scenario.interferers[{i}].doa_deg");
            check_doa(&path, intf.doa_deg)?;
            check_db(&format!("scenario.interferers[{i}].inr_db"), intf.inr_db)?;
            if intf.doa_deg == s.desired_doa_deg {
                return cfg_err(&path, "coincides with the desired direction");
            }
            if s.interferers[..i].iter().any(|other| other.doa_deg == intf.doa_deg) {
                return cfg_err(&path, "duplicate interferer direction");
            }
        }

        let sweep = &self.sweep;
        if sweep.grid.is_empty() {
            return cfg_err("sweep.grid", "must not be empty");
        }
        if sweep.grid.iter().any(|v| !v.is_finite()) {
            return cfg_err("sweep.grid", "all values must be finite");
        }
        if sweep.grid.windows(2).any(|w| w[0] >= w[1]) {
            return cfg_err("sweep.grid", "values must be strictly increasing");
        }
        match sweep.variable {
            SweepVariable::Samples => {
                if sweep.grid.iter().any(|&v| v.fract() != 0.0 || v < 1.0) {
                    return cfg_err("sweep.grid", "sample counts must be positive integers");
                }
                if sweep.fixed_samples.is_some() {
                    return cfg_err(
                        "sweep.fixed_samples",
                        "only meaningful for snr sweeps; remove it here",
                    );
                }
            }
            SweepVariable::Snr => match sweep.fixed_samples {
                None => {
                    return cfg_err("sweep.fixed_samples", "required for snr sweeps");
                }
                Some(0) => {
                    return cfg_err("sweep.fixed_samples", "must be at least 1");
                }
                Some(_) => {
                    sweep.grid.iter().try_for_each(|&v| check_db("sweep.grid", v))?;
                }
            },
        }

        if self.methods.is_empty() {
            return cfg_err("methods", "must list at least one method");
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return cfg_err(&format!("methods[{i}]"), &format!("duplicate method `{m}`"));
            }
        }

        if self.monte_carlo.trials == 0 {
            return cfg_err("monte_carlo.trials", "must be at least 1");
        }

        check_db("params.loading_db", self.params.loading_db)?;
        if self.params.eigenspace_rank == Some(0) {
            return cfg_err("params.eigenspace_rank", "must be at least 1");
        }
        if self.params.kernel_rank == Some(0) {
            return cfg_err("params.kernel_rank", "must be at least 1");
        }

        // Rank parameters must fit the smallest snapshot count in the sweep
        // so a long run cannot die halfway through the grid.
        let min_samples = match sweep.variable {
            SweepVariable::Samples => sweep.grid[0] as usize,
            SweepVariable::Snr => sweep.fixed_samples.unwrap_or(1),
        };
        if self.methods.contains(&Method::Eigenspace) {
            let r = self.resolved_eigenspace_rank();
            if r > s.n_elements.min(min_samples) {
                return cfg_err(
                    "params.eigenspace_rank",
                    &format!(
                        "subspace dimension {r} exceeds min(array size, smallest snapshot count) = {}",
                        s.n_elements.min(min_samples)
                    ),
                );
            }
        }
        if self.methods.contains(&Method::Kernel) {
            if let Some(m) = self.resolved_kernel_rank() {
                if m >= min_samples {
                    return cfg_err(
                        "params.kernel_rank",
                        &format!(
                            "truncation rank {m} must be below the smallest snapshot count {min_samples}"
                        ),
                    );
                }
            }
        }
        Ok(())
    }

    /// Scenario with the configured SNR.
    pub fn scenario(&self) -> Result<Scenario> {
        self.scenario_with_snr(self.scenario.snr_db)
    }

    /// Scenario with the SNR replaced, for `snr` sweeps.
    pub fn scenario_with_snr(&self, snr_db: f64) -> Result<Scenario> {
        let s = &self.scenario;
        let desired = Source::new(s.desired_doa_deg, db_to_linear(snr_db))?;
        let interferers = s
            .interferers
            .iter()
            .map(|i| Source::new(i.doa_deg, db_to_linear(i.inr_db)))
            .collect::<Result<Vec<_>>>()?;
        Scenario::new(Ula::new(s.n_elements)?, desired, interferers, 1.0, s.signal_in_training)
    }

    /// Eigenspace subspace dimension after applying the default.
    pub fn resolved_eigenspace_rank(&self) -> usize {
        self.params.eigenspace_rank.unwrap_or(self.scenario.interferers.len() + 1)
    }

    /// Kernel truncation rank after applying the default (`None` keeps the
    /// untruncated minimum-norm solution).
    pub fn resolved_kernel_rank(&self) -> Option<usize> {
        match self.params.kernel_rank {
            Some(m) => Some(m),
            None => {
                let m = self.scenario.interferers.len();
                if m == 0 {
                    None
                } else {
                    Some(m)
                }
            }
        }
    }

    /// Diagonal loading in linear power units.
    pub fn loading_linear(&self) -> f64 {
        db_to_linear(self.params.loading_db)
    }
}

pub(crate) fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn cfg_err<T>(path: &str, details: &str) -> Result<T> {
    Err(Error::config(path, details))
}

fn check_doa(path: &str, deg: f64) -> Result<()> {
    if !deg.is_finite() || deg.abs() >= 90.0 {
        cfg_err(path, "direction must lie strictly inside (-90, 90) degrees")
    } else {
        Ok(())
    }
}

fn check_db(path: &str, db: f64) -> Result<()> {
    if !db.is_finite() || db.abs() > 300.0 {
        cfg_err(path, "dB value must be finite and within +/-300")
    } else {
        Ok(())
    }
}
