//! Accuracy and timing comparison of the three estimators on synthetic data.
//!
//! For every `(true xmin, seed)` cell the harness draws a body/tail mixture
//! sample, runs each configured method, and records the estimate together
//! with the wall time of the estimator call alone (data generation is not
//! timed, α fitting is).

mod report;

pub use report::{
    emit_report, parse_json, summary_table, write_report_files, PlotData, ReportFormat,
};

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::DistanceKind;
use crate::error::{Error, Result};
use crate::estimators::{fast_scan, scan_all, scan_all_par, FastScanConfig, XminEstimate};
use crate::sample::Sample;
use crate::synth::{sample_eq1, Body, SyntheticSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exhaustive KS scan.
    ScanAll,
    /// Early-stopping KS scan.
    GetXmin,
    /// Early-stopping PMF scan.
    GetXmin2,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::ScanAll, Method::GetXmin, Method::GetXmin2];

    pub fn name(&self) -> &'static str {
        match self {
            Method::ScanAll => "scan_all",
            Method::GetXmin => "get_xmin",
            Method::GetXmin2 => "get_xmin2",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scan_all" | "traditional" | "estimate_xmin" => Ok(Method::ScanAll),
            "get_xmin" | "getxmin" => Ok(Method::GetXmin),
            "get_xmin2" | "getxmin2" => Ok(Method::GetXmin2),
            other => Err(Error::config(
                "methods",
                format!("unknown method `{other}`"),
            )),
        }
    }
}

/// Where the fast methods' guess `g` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GPolicy {
    /// `g` equals the true lower bound of the cell.
    TrueXmin,
    /// The same `g` for every cell.
    Fixed(f64),
}

impl GPolicy {
    pub fn resolve(&self, true_xmin: u64) -> f64 {
        match self {
            GPolicy::TrueXmin => true_xmin as f64,
            GPolicy::Fixed(g) => *g,
        }
    }
}

impl std::str::FromStr for GPolicy {
    type Err = Error;

    /// `true_xmin` or `fixed:<value>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "true_xmin" {
            return Ok(GPolicy::TrueXmin);
        }
        s.strip_prefix("fixed:")
            .and_then(|v| v.trim().parse::<f64>().ok())
            .map(GPolicy::Fixed)
            .ok_or_else(|| {
                Error::config(
                    "g_policy",
                    format!("expected `true_xmin` or `fixed:<value>`, got `{s}`"),
                )
            })
    }
}

impl TryFrom<String> for GPolicy {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GPolicy> for String {
    fn from(p: GPolicy) -> String {
        match p {
            GPolicy::TrueXmin => "true_xmin".to_string(),
            GPolicy::Fixed(g) => format!("fixed:{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub alpha: f64,
    pub xmin_grid: Vec<u64>,
    pub g_policy: GPolicy,
    pub c: u32,
    pub k: usize,
    pub seeds: Vec<u64>,
    pub methods: Vec<Method>,
}

impl Default for ExperimentConfig {
    /// Full-scale setting: n = 500,000, α = 3, xmin ∈ {50, 100, ..., 500},
    /// g = true xmin, c = 90, k = 5, five seeds, all methods.
    fn default() -> Self {
        ExperimentConfig {
            n: 500_000,
            alpha: 3.0,
            xmin_grid: (1..=10).map(|i| 50 * i).collect(),
            g_policy: GPolicy::TrueXmin,
            c: 90,
            k: 5,
            seeds: vec![1, 2, 3, 4, 5],
            methods: Method::ALL.to_vec(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config("n", "sample size must be >= 2"));
        }
        if !(self.alpha.is_finite() && self.alpha > 1.0) {
            return Err(Error::config(
                "alpha",
                format!("must be > 1, got {}", self.alpha),
            ));
        }
        if self.xmin_grid.is_empty() {
            return Err(Error::config("xmin_grid", "grid must not be empty"));
        }
        if self.xmin_grid[0] < 1 || self.xmin_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config(
                "xmin_grid",
                "grid must be strictly increasing positive integers",
            ));
        }
        if let GPolicy::Fixed(g) = self.g_policy {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::config(
                    "g_policy",
                    format!("fixed guess must be > 0, got {g}"),
                ));
            }
        }
        if !(1..=100).contains(&self.c) {
            return Err(Error::config(
                "c",
                format!("must lie in [1, 100], got {}", self.c),
            ));
        }
        if self.k < 1 {
            return Err(Error::config("k", "must be >= 1"));
        }
        if self.seeds.is_empty() {
            return Err(Error::config("seeds", "at least one seed is required"));
        }
        Ok(())
    }
}

/// One `(method, true xmin, seed)` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub method: Method,
    pub true_xmin: u64,
    pub seed: u64,
    pub xmin_hat: Option<u64>,
    pub alpha_hat: Option<f64>,
    pub wall_time_s: f64,
    pub candidates_evaluated: Option<usize>,
    pub stopped_early: Option<bool>,
    pub zeta_calls: Option<u64>,
    /// Produced while other cells ran concurrently; timings are then noisier.
    pub concurrent: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccuracyMetrics {
    pub mse: f64,
    pub rmse: f64,
    pub mae: f64,
}

/// MSE, RMSE and MAE of `estimates` against `truths`.
pub fn accuracy(estimates: &[f64], truths: &[f64]) -> Result<AccuracyMetrics> {
    if estimates.len() != truths.len() {
        return Err(Error::Argument(format!(
            "{} estimates but {} truths",
            estimates.len(),
            truths.len()
        )));
    }
    if estimates.is_empty() {
        return Err(Error::Argument(
            "accuracy needs at least one estimate".into(),
        ));
    }
    let n = estimates.len() as f64;
    let mut sq = 0.0;
    let mut abs = 0.0;
    for (e, t) in estimates.iter().zip(truths) {
        let d = e - t;
        sq += d * d;
        abs += d.abs();
    }
    let mse = sq / n;
    Ok(AccuracyMetrics {
        mse,
        rmse: mse.sqrt(),
        mae: abs / n,
    })
}

/// Per-method aggregate over all successful rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    /// `None` when every run of the method failed.
    pub mse: Option<f64>,
    pub rmse: Option<f64>,
    pub mae: Option<f64>,
    pub total_time_s: f64,
    pub error_count: usize,
}

impl MethodSummary {
    pub fn metrics(&self) -> Option<AccuracyMetrics> {
        Some(AccuracyMetrics {
            mse: self.mse?,
            rmse: self.rmse?,
            mae: self.mae?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub config: ExperimentConfig,
    pub rows: Vec<BenchRow>,
    pub summary: BTreeMap<String, MethodSummary>,
}

impl BenchmarkReport {
    pub fn rows_for(&self, method: Method) -> impl Iterator<Item = &BenchRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }
}

/// Aggregates rows per method, in row order.
pub fn summarize(methods: &[Method], rows: &[BenchRow]) -> BTreeMap<String, MethodSummary> {
    let mut out = BTreeMap::new();
    for &method in methods {
        let mut estimates = Vec::new();
        let mut truths = Vec::new();
        let mut total_time_s = 0.0;
        let mut error_count = 0;
        for row in rows.iter().filter(|r| r.method == method) {
            total_time_s += row.wall_time_s;
            match row.xmin_hat {
                Some(x) if row.error.is_none() => {
                    estimates.push(x as f64);
                    truths.push(row.true_xmin as f64);
                }
                _ => error_count += 1,
            }
        }
        let metrics = accuracy(&estimates, &truths).ok();
        out.insert(
            method.name().to_string(),
            MethodSummary {
                mse: metrics.map(|m| m.mse),
                rmse: metrics.map(|m| m.rmse),
                mae: metrics.map(|m| m.mae),
                total_time_s,
                error_count,
            },
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Cells and candidate evaluations run one at a time, for clean timings.
    Serial,
    /// Cells run concurrently on the current rayon pool.
    #[default]
    Parallel,
}

/// Runs the experiment on the current rayon pool.
pub fn run_experiment(config: &ExperimentConfig) -> Result<BenchmarkReport> {
    run_experiment_with(config, Execution::Parallel)
}

pub fn run_experiment_with(
    config: &ExperimentConfig,
    execution: Execution,
) -> Result<BenchmarkReport> {
    config.validate()?;
    warm_up();

    let cells: Vec<(u64, u64)> = config
        .xmin_grid
        .iter()
        .flat_map(|&x| config.seeds.iter().map(move |&s| (x, s)))
        .collect();

    let per_cell: Vec<Vec<BenchRow>> = match execution {
        Execution::Serial => cells
            .iter()
            .map(|&(x, s)| run_cell(config, x, s, execution))
            .collect(),
        Execution::Parallel => cells
            .par_iter()
            .map(|&(x, s)| run_cell(config, x, s, execution))
            .collect(),
    };

    // method-major, then grid, then seed
    let mut rows: Vec<BenchRow> = Vec::with_capacity(cells.len() * config.methods.len());
    for (m, _) in config.methods.iter().enumerate() {
        for cell in &per_cell {
            rows.push(cell[m].clone());
        }
    }
    let summary = summarize(&config.methods, &rows);
    Ok(BenchmarkReport {
        config: config.clone(),
        rows,
        summary,
    })
}

fn run_cell(
    config: &ExperimentConfig,
    true_xmin: u64,
    seed: u64,
    execution: Execution,
) -> Vec<BenchRow> {
    let spec = SyntheticSpec {
        n: config.n,
        alpha: config.alpha,
        xmin: true_xmin,
        seed,
        body: Body::Eq1Mixture,
    };
    let sample = sample_eq1(&spec);
    config
        .methods
        .iter()
        .map(|&method| {
            let (outcome, wall_time_s) = match &sample {
                Ok(sample) => {
                    let started = Instant::now();
                    let out = run_method(method, sample, config, true_xmin, execution);
                    (out, started.elapsed().as_secs_f64())
                }
                Err(e) => (Err(e.clone()), 0.0),
            };
            row_from(method, true_xmin, seed, wall_time_s, execution, outcome)
        })
        .collect()
}

fn run_method(
    method: Method,
    sample: &Sample,
    config: &ExperimentConfig,
    true_xmin: u64,
    execution: Execution,
) -> Result<XminEstimate> {
    let guess = config.g_policy.resolve(true_xmin);
    match method {
        Method::ScanAll => match execution {
            Execution::Serial => scan_all(sample, DistanceKind::Ks),
            Execution::Parallel => scan_all_par(sample, DistanceKind::Ks),
        },
        Method::GetXmin => fast_scan(
            sample,
            &FastScanConfig::new(guess, config.c, config.k, DistanceKind::Ks)?,
        ),
        Method::GetXmin2 => fast_scan(
            sample,
            &FastScanConfig::new(guess, config.c, config.k, DistanceKind::Pmf)?,
        ),
    }
}

fn row_from(
    method: Method,
    true_xmin: u64,
    seed: u64,
    wall_time_s: f64,
    execution: Execution,
    outcome: Result<XminEstimate>,
) -> BenchRow {
    let concurrent = execution == Execution::Parallel;
    match outcome {
        Ok(est) => BenchRow {
            method,
            true_xmin,
            seed,
            xmin_hat: Some(est.xmin),
            alpha_hat: Some(est.alpha),
            wall_time_s,
            candidates_evaluated: Some(est.candidates_evaluated),
            stopped_early: Some(est.stopped_early()),
            zeta_calls: Some(est.zeta_calls()),
            concurrent,
            error: None,
        },
        Err(e) => BenchRow {
            method,
            true_xmin,
            seed,
            xmin_hat: None,
            alpha_hat: None,
            wall_time_s,
            candidates_evaluated: None,
            stopped_early: None,
            zeta_calls: None,
            concurrent,
            error: Some(e.to_string()),
        },
    }
}

/// One untimed call per method per process, on a small sample.
fn warm_up() {
    static WARM: OnceLock<()> = OnceLock::new();
    WARM.get_or_init(|| {
        let spec = SyntheticSpec {
            n: 2000,
            alpha: 3.0,
            xmin: 50,
            seed: 0,
            body: Body::Eq1Mixture,
        };
        if let Ok(sample) = sample_eq1(&spec) {
            let _ = scan_all(&sample, DistanceKind::Ks);
            for kind in [DistanceKind::Ks, DistanceKind::Pmf] {
                if let Ok(cfg) = FastScanConfig::new(50.0, 90, 5, kind) {
                    let _ = fast_scan(&sample, &cfg);
                }
            }
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig {
            n: 3000,
            alpha: 3.0,
            xmin_grid: vec![20, 40],
            g_policy: GPolicy::TrueXmin,
            c: 90,
            k: 5,
            seeds: vec![7, 8, 9],
            methods: Method::ALL.to_vec(),
        }
    }

    #[test]
    fn accuracy_examples() {
        let m = accuracy(&[50.0, 100.0], &[50.0, 100.0]).unwrap();
        assert_eq!((m.mse, m.rmse, m.mae), (0.0, 0.0, 0.0));
        let m = accuracy(&[60.0, 110.0], &[50.0, 100.0]).unwrap();
        assert_eq!((m.mse, m.rmse, m.mae), (100.0, 10.0, 10.0));
        assert!(accuracy(&[1.0], &[1.0, 2.0]).is_err());
        assert!(accuracy(&[], &[]).is_err());
    }

    #[test]
    fn g_policy_parsing() {
        assert_eq!("true_xmin".parse::<GPolicy>().unwrap(), GPolicy::TrueXmin);
        assert_eq!(
            "fixed:450".parse::<GPolicy>().unwrap(),
            GPolicy::Fixed(450.0)
        );
        assert!("guess".parse::<GPolicy>().is_err());
        assert_eq!(String::from(GPolicy::Fixed(12.5)), "fixed:12.5");
    }

    #[test]
    fn method_names_and_aliases() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!("traditional".parse::<Method>().unwrap(), Method::ScanAll);
        assert_eq!("getxmin2".parse::<Method>().unwrap(), Method::GetXmin2);
        assert!("golden".parse::<Method>().is_err());
    }

    #[test]
    fn config_validation_names_the_key() {
        let check = |f: &dyn Fn(&mut ExperimentConfig), key: &str| {
            let mut c = tiny_config();
            f(&mut c);
            match c.validate() {
                Err(Error::InvalidConfig { key: k, .. }) => assert_eq!(k, key),
                other => panic!("expected error on {key}, got {other:?}"),
            }
        };
        check(&|c| c.n = 1, "n");
        check(&|c| c.alpha = 1.0, "alpha");
        check(&|c| c.xmin_grid.clear(), "xmin_grid");
        check(&|c| c.xmin_grid = vec![50, 50], "xmin_grid");
        check(&|c| c.c = 0, "c");
        check(&|c| c.k = 0, "k");
        check(&|c| c.seeds.clear(), "seeds");
        check(&|c| c.g_policy = GPolicy::Fixed(-1.0), "g_policy");
        assert!(tiny_config().validate().is_ok());
        assert!(ExperimentConfig::default().validate().is_ok());
    }

    #[test]
    fn single_cell_single_method() {
        let mut c = tiny_config();
        c.xmin_grid = vec![30];
        c.seeds = vec![1];
        c.methods = vec![Method::ScanAll];
        let report = run_experiment(&c).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.summary.len(), 1);
        assert!(report.rows[0].error.is_none());
    }

    #[test]
    fn rows_cover_every_cell_and_summary_matches() {
        let c = tiny_config();
        let report = run_experiment_with(&c, Execution::Serial).unwrap();
        assert_eq!(report.rows.len(), 3 * 2 * 3);
        for m in Method::ALL {
            let rows: Vec<_> = report.rows_for(m).collect();
            let est: Vec<f64> = rows.iter().map(|r| r.xmin_hat.unwrap() as f64).collect();
            let truth: Vec<f64> = rows.iter().map(|r| r.true_xmin as f64).collect();
            let s = &report.summary[m.name()];
            let metrics = accuracy(&est, &truth).unwrap();
            assert_eq!(s.metrics().unwrap(), metrics);
            assert!(
                (s.rmse.unwrap().powi(2) - s.mse.unwrap()).abs() <= 1e-12 * s.mse.unwrap().max(1.0)
            );
            assert!(s.mae.unwrap() <= s.rmse.unwrap());
            assert_eq!(s.error_count, 0);
            assert!(rows.iter().all(|r| !r.concurrent));
        }
    }

    #[test]
    fn error_rows_are_kept_and_excluded_from_metrics() {
        let rows = vec![
            row_from(
                Method::ScanAll,
                10,
                1,
                0.5,
                Execution::Serial,
                Err(Error::InsufficientData("x".into())),
            ),
            BenchRow {
                xmin_hat: Some(12),
                alpha_hat: Some(2.0),
                error: None,
                ..row_from(
                    Method::ScanAll,
                    10,
                    2,
                    0.25,
                    Execution::Serial,
                    Err(Error::Domain("y".into())),
                )
            },
        ];
        let s = &summarize(&[Method::ScanAll], &rows)["scan_all"];
        assert_eq!(s.error_count, 1);
        assert_eq!(s.mae, Some(2.0));
        assert_eq!(s.total_time_s, 0.75);
    }
}
