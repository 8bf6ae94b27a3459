use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{BenchmarkReport, Method};
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 9] = [
    "method",
    "true_xmin",
    "seed",
    "xmin_hat",
    "alpha_hat",
    "wall_time_s",
    "candidates_evaluated",
    "stopped_early",
    "error",
];

const TIMING_NOTE: &str =
    "wall times cover the estimator call only (alpha fitting included, data generation excluded)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    /// Both plot tables, separated by two blank lines (gnuplot `index` blocks).
    PlotData,
}

/// Whitespace-delimited tables: mean estimate and mean wall time per method,
/// one line per true `xmin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotData {
    pub estimates: String,
    pub timings: String,
}

pub fn emit_report(report: &BenchmarkReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Json => serde_json::to_vec_pretty(report)
            .map_err(|e| Error::Argument(format!("cannot serialize report: {e}"))),
        ReportFormat::PlotData => {
            let plot = plot_data(report);
            Ok(format!("{}\n\n{}", plot.estimates, plot.timings).into_bytes())
        }
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<BenchmarkReport> {
    serde_json::from_slice(bytes).map_err(|e| Error::Argument(format!("invalid report JSON: {e}")))
}

fn emit_csv(report: &BenchmarkReport) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Argument(format!("cannot write csv: {e}"));
    writer.write_record(CSV_COLUMNS).map_err(fail)?;
    for row in &report.rows {
        writer
            .write_record([
                row.method.name().to_string(),
                row.true_xmin.to_string(),
                row.seed.to_string(),
                opt(row.xmin_hat),
                opt(row.alpha_hat),
                row.wall_time_s.to_string(),
                opt(row.candidates_evaluated),
                opt(row.stopped_early),
                row.error.clone().unwrap_or_default(),
            ])
            .map_err(fail)?;
    }
    writer
        .into_inner()
        .map_err(|e| Error::Argument(format!("cannot write csv: {e}")))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn plot_data(report: &BenchmarkReport) -> PlotData {
    let methods = &report.config.methods;
    let header: String = methods.iter().map(|m| format!(" {m}")).collect();
    let mut estimates = format!(
        "# estimated xmin vs true xmin, mean over seeds (nan: every run failed)\n# true_xmin{header}\n"
    );
    let mut timings = format!(
        "# wall time [s] vs true xmin, mean over seeds\n# {TIMING_NOTE}\n# true_xmin{header}\n"
    );
    for &x in &report.config.xmin_grid {
        estimates.push_str(&x.to_string());
        timings.push_str(&x.to_string());
        for &m in methods {
            let rows: Vec<_> = report.rows_for(m).filter(|r| r.true_xmin == x).collect();
            let ok: Vec<f64> = rows
                .iter()
                .filter(|r| r.error.is_none())
                .filter_map(|r| r.xmin_hat.map(|v| v as f64))
                .collect();
            let _ = write!(estimates, " {}", mean(&ok));
            let times: Vec<f64> = rows.iter().map(|r| r.wall_time_s).collect();
            let _ = write!(timings, " {}", mean(&times));
        }
        estimates.push('\n');
        timings.push('\n');
    }
    PlotData { estimates, timings }
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        f64::NAN
    } else {
        v.iter().sum::<f64>() / v.len() as f64
    }
}

/// Writes `report.csv`, `report.json`, `estimates.dat` and `timings.dat`.
pub fn write_report_files(report: &BenchmarkReport, dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let to_io = |e: Error| std::io::Error::other(e.to_string());
    fs::write(
        dir.join("report.csv"),
        emit_report(report, ReportFormat::Csv).map_err(to_io)?,
    )?;
    fs::write(
        dir.join("report.json"),
        emit_report(report, ReportFormat::Json).map_err(to_io)?,
    )?;
    let plot = plot_data(report);
    fs::write(dir.join("estimates.dat"), plot.estimates)?;
    fs::write(dir.join("timings.dat"), plot.timings)?;
    Ok(())
}

/// Accuracy and timing table, one line per method.
pub fn summary_table(report: &BenchmarkReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:>12} {:>10} {:>10} {:>12} {:>7}",
        "method", "MSE", "RMSE", "MAE", "time [s]", "errors"
    );
    let methods: Vec<Method> = report.config.methods.clone();
    for m in methods {
        let Some(s) = report.summary.get(m.name()) else {
            continue;
        };
        let f = |v: Option<f64>, p: usize| v.map_or("-".to_string(), |v| format!("{v:.p$}"));
        let _ = writeln!(
            out,
            "{:<12} {:>12} {:>10} {:>10} {:>12.4} {:>7}",
            m.name(),
            f(s.mse, 1),
            f(s.rmse, 2),
            f(s.mae, 1),
            s.total_time_s,
            s.error_count
        );
    }
    let _ = writeln!(out, "({TIMING_NOTE})");
    out
}
