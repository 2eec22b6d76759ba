//! Result containers and their CSV renderings.
//!
//! Quality results and timing results are kept in separate files on
//! purpose: quality CSVs are byte-reproducible for a fixed config and seed,
//! wall-clock numbers never are.

use crate::beamformers::Method;

/// Aggregated quality outcome for one (sweep value, method) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub sweep_value: f64,
    pub method: Method,
    /// dB of the linear-domain mean SINR-loss ratio (the reported curve).
    pub mean_loss_db: f64,
    /// Sample standard deviation of the per-trial dB losses.
    pub std_loss_db: f64,
    /// dB of the linear-domain mean output SINR.
    pub mean_sinr_db: f64,
    /// Mean wall-clock seconds per weight computation (not reproducible).
    pub mean_wall_time_s: f64,
    /// Analytic multiplication/division count for this method and shape.
    pub mdn: f64,
    /// Arithmetic mean of the per-trial dB losses, for comparison with the
    /// linear-domain convention in `mean_loss_db`.
    pub mean_of_db: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    /// Deterministic quality CSV.
    pub fn quality_csv(&self) -> String {
        let mut out =
            String::from("sweep_value,method,mean_loss_db,std_loss_db,mean_sinr_db,mdn,mean_of_db\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fmt_sweep_value(r.sweep_value),
                r.method,
                fmt_sig(r.mean_loss_db),
                fmt_sig(r.std_loss_db),
                fmt_sig(r.mean_sinr_db),
                fmt_sig(r.mdn),
                fmt_sig(r.mean_of_db),
            ));
        }
        out
    }

    /// Wall-clock companion CSV (kept out of the deterministic file).
    pub fn timing_csv(&self) -> String {
        let mut out = String::from("sweep_value,method,mean_wall_time_s\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_sweep_value(r.sweep_value),
                r.method,
                fmt_sig(r.mean_wall_time_s),
            ));
        }
        out
    }
}

/// One benchmark cell: timing quantiles over the repetitions, plus the
/// analytic cost model for comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub sweep_value: f64,
    pub method: Method,
    pub median_s: f64,
    pub p10_s: f64,
    pub p90_s: f64,
    pub mdn: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimingTable {
    pub rows: Vec<TimingRow>,
}

impl TimingTable {
    pub fn csv(&self) -> String {
        let mut out = String::from("sweep_value,method,median_s,p10_s,p90_s,mdn\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_sweep_value(r.sweep_value),
                r.method,
                fmt_sig(r.median_s),
                fmt_sig(r.p10_s),
                fmt_sig(r.p90_s),
                fmt_sig(r.mdn),
            ));
        }
        out
    }
}

/// Six significant digits, fixed-point where reasonable, scientific
/// otherwise. Pure function of the value, so output files are reproducible.
pub(crate) fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..=8).contains(&exp) {
        format!("{x:.5e}")
    } else {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

/// Sweep values that are whole numbers (sample counts, integer dB grids)
/// print without a decimal point.
pub(crate) fn fmt_sweep_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        fmt_sig(v)
    }
}
