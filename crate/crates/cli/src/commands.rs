use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use plxmin::bench::{
    run_experiment_with, summary_table, write_report_files, Execution, ExperimentConfig, GPolicy,
    Method,
};
use plxmin::estimators::BootstrapSummary;
use plxmin::io::{read_binary, read_text, write_binary, write_text};
use plxmin::synth::{draw, tail_weight, Body, SyntheticSpec};
use plxmin::{
    bootstrap_xmin, candidate_set, ks_distance, mle_alpha, pmf_distance, scan_all, AlphaMode,
    DistanceKind, Estimator, FastScanConfig, PowerLawModel, Sample,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::{
    BenchArgs, BodyArg, EstimateArgs, FitArgs, FormatArg, GenerateArgs, InputArgs, InspectArgs,
    MethodArg,
};

type Result<T> = std::result::Result<T, CliError>;

fn load(input: &InputArgs) -> Result<Sample> {
    let path = &input.input;
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let reader = BufReader::new(file);
    let data = if input.binary {
        read_binary(reader)
    } else {
        read_text(reader)
    }
    .map_err(|source| CliError::Data {
        path: path.clone(),
        source,
    })?;
    Ok(Sample::new(data)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
    println!("{text}");
    Ok(())
}

fn body_name(body: Body) -> &'static str {
    match body {
        Body::Eq1Mixture => "eq1",
        Body::PurePowerlaw => "pure",
    }
}

#[derive(Serialize)]
struct GenerateReport<'a> {
    n: usize,
    alpha: f64,
    xmin: u64,
    seed: u64,
    body: &'static str,
    tail_weight: f64,
    out: &'a Path,
}

pub fn generate(args: GenerateArgs) -> Result<()> {
    let spec = SyntheticSpec {
        n: args.n,
        alpha: args.alpha,
        xmin: args.xmin,
        seed: args.seed,
        body: match args.body {
            BodyArg::Eq1 => Body::Eq1Mixture,
            BodyArg::Pure => Body::PurePowerlaw,
        },
    };
    spec.validate()?;
    let weight = tail_weight(spec.alpha, spec.xmin as f64)?;
    let data = draw(&spec)?;

    let file = File::create(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let writer = BufWriter::new(file);
    match args.format {
        FormatArg::Text => write_text(writer, &data),
        FormatArg::Binary => write_binary(writer, &data),
    }
    .map_err(|e| CliError::io(&args.out, e))?;

    let report = GenerateReport {
        n: spec.n,
        alpha: spec.alpha,
        xmin: spec.xmin,
        seed: spec.seed,
        body: body_name(spec.body),
        tail_weight: weight,
        out: &args.out,
    };
    if args.json {
        return print_json(&report);
    }
    println!("n: {}", report.n);
    println!("alpha: {}", report.alpha);
    println!("xmin: {}", report.xmin);
    println!("seed: {}", report.seed);
    println!("body: {}", report.body);
    println!("tail_weight: {}", report.tail_weight);
    println!("wrote {} values to {}", data.len(), args.out.display());
    Ok(())
}

#[derive(Serialize)]
struct FitReport {
    xmin: u64,
    /// `given` or `scan_all`.
    xmin_source: &'static str,
    alpha: f64,
    alpha_approx: f64,
    tail_size: u64,
    at_bound: bool,
    ks_distance: f64,
    pmf_distance: f64,
}

pub fn fit(args: FitArgs) -> Result<()> {
    let sample = load(&args.input)?;
    let (xmin, source) = match args.xmin {
        Some(x) => (x, "given"),
        None => (scan_all(&sample, DistanceKind::Ks)?.xmin, "scan_all"),
    };
    let exact = mle_alpha(&sample, xmin, AlphaMode::Exact)?;
    let approx = mle_alpha(&sample, xmin, AlphaMode::Approximate)?;
    let model = PowerLawModel::discrete(exact.alpha, xmin)?;
    let report = FitReport {
        xmin,
        xmin_source: source,
        alpha: exact.alpha,
        alpha_approx: approx.alpha,
        tail_size: exact.tail_size,
        at_bound: exact.at_bound,
        ks_distance: ks_distance(&sample, &model)?,
        pmf_distance: pmf_distance(&sample, &model)?,
    };
    if args.json {
        return print_json(&report);
    }
    println!("xmin: {} ({})", report.xmin, report.xmin_source);
    println!("alpha: {}", report.alpha);
    println!("alpha_approx: {}", report.alpha_approx);
    println!("tail_size: {}", report.tail_size);
    if report.at_bound {
        println!("warning: alpha hit the search bound");
    }
    println!("ks_distance: {}", report.ks_distance);
    println!("pmf_distance: {}", report.pmf_distance);
    Ok(())
}

#[derive(Serialize)]
struct EstimateReport {
    method: &'static str,
    xmin_hat: u64,
    alpha_hat: f64,
    distance: f64,
    candidates_evaluated: usize,
    stopped_early: bool,
    exhausted: bool,
    bootstrap: Option<BootstrapSummary>,
}

pub fn estimate(args: EstimateArgs) -> Result<()> {
    let (name, estimator) = match args.method {
        MethodArg::Traditional => (
            "traditional",
            Estimator::ScanAll {
                distance: DistanceKind::Ks,
            },
        ),
        MethodArg::Getxmin | MethodArg::Getxmin2 => {
            let (name, distance) = match args.method {
                MethodArg::Getxmin => ("getxmin", DistanceKind::Ks),
                _ => ("getxmin2", DistanceKind::Pmf),
            };
            let g = args
                .g
                .ok_or_else(|| CliError::Usage(format!("--g is required for {name}")))?;
            let config = FastScanConfig::new(g, args.c, args.k, distance)?;
            (name, Estimator::FastScan(config))
        }
    };
    let sample = load(&args.input)?;
    let est = estimator.estimate(&sample)?;

    let bootstrap = match args.bootstrap {
        Some(b) => {
            let results = bootstrap_xmin(&sample, &estimator, b, args.seed)?;
            Some(BootstrapSummary::from_replicates(&results).ok_or_else(|| {
                CliError::InsufficientData("every bootstrap replicate failed".into())
            })?)
        }
        None => None,
    };

    let report = EstimateReport {
        method: name,
        xmin_hat: est.xmin,
        alpha_hat: est.alpha,
        distance: est.distance,
        candidates_evaluated: est.candidates_evaluated,
        stopped_early: est.trace.stopped_early,
        exhausted: est.trace.exhausted,
        bootstrap,
    };
    if args.json {
        return print_json(&report);
    }
    println!("method: {}", report.method);
    println!("xmin_hat: {}", report.xmin_hat);
    println!("alpha_hat: {}", report.alpha_hat);
    println!("distance: {}", report.distance);
    println!("candidates_evaluated: {}", report.candidates_evaluated);
    println!("stopped_early: {}", report.stopped_early);
    println!("exhausted: {}", report.exhausted);
    if let Some(b) = &report.bootstrap {
        println!(
            "bootstrap: {} replicates ({} failed), xmin median {}, mean {:.2}, sd {:.2}; alpha mean {:.4}, sd {:.4}",
            b.replicates, b.failures, b.xmin_median, b.xmin_mean, b.xmin_sd, b.alpha_mean, b.alpha_sd
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct InspectRow {
    xmin: u64,
    alpha: f64,
    ks_distance: f64,
    pmf_distance: f64,
    tail_size: u64,
}

pub fn inspect(args: InspectArgs) -> Result<()> {
    let sample = load(&args.input)?;
    let candidates = candidate_set(&sample)?;
    let mut rows = Vec::new();
    for &xmin in &args.xmins {
        if candidates.binary_search(&xmin).is_err() {
            eprintln!("warning: {xmin} is not a candidate xmin, skipped");
            continue;
        }
        let fit = mle_alpha(&sample, xmin, AlphaMode::Approximate)?;
        let model = PowerLawModel::discrete(fit.alpha, xmin)?;
        rows.push(InspectRow {
            xmin,
            alpha: fit.alpha,
            ks_distance: ks_distance(&sample, &model)?,
            pmf_distance: pmf_distance(&sample, &model)?,
            tail_size: fit.tail_size,
        });
    }

    if let Some(path) = &args.dump {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut w = BufWriter::new(file);
        let write = |w: &mut BufWriter<File>| -> std::io::Result<()> {
            writeln!(w, "# x Pr(X >= x)")?;
            for (x, p) in sample.empirical_ccdf() {
                writeln!(w, "{x} {p}")?;
            }
            w.flush()
        };
        write(&mut w).map_err(|e| CliError::io(path, e))?;
    }

    if args.json {
        return print_json(&rows);
    }
    println!(
        "{:>10} {:>12} {:>12} {:>12} {:>10}",
        "xmin", "alpha", "D", "D_pmf", "tail_size"
    );
    for r in &rows {
        println!(
            "{:>10} {:>12.6} {:>12.6} {:>12.6} {:>10}",
            r.xmin, r.alpha, r.ks_distance, r.pmf_distance, r.tail_size
        );
    }
    Ok(())
}

/// Bench config file: every key optional, unknown keys rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: Option<usize>,
    alpha: Option<f64>,
    xmin_grid: Option<Vec<u64>>,
    g_policy: Option<String>,
    c: Option<u32>,
    k: Option<usize>,
    seeds: Option<Vec<u64>>,
    methods: Option<Vec<String>>,
}

impl ConfigFile {
    fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: invalid config: {e}", path.display())))
    }

    fn overlay(&mut self, args: &BenchArgs) {
        fn set<T: Clone>(slot: &mut Option<T>, flag: &Option<T>) {
            if flag.is_some() {
                slot.clone_from(flag);
            }
        }
        set(&mut self.n, &args.n);
        set(&mut self.alpha, &args.alpha);
        set(&mut self.xmin_grid, &args.xmin_grid);
        set(&mut self.g_policy, &args.g_policy);
        set(&mut self.c, &args.c);
        set(&mut self.k, &args.k);
        set(&mut self.seeds, &args.seeds);
        set(&mut self.methods, &args.methods);
    }

    fn resolve(self) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::default();
        if let Some(v) = self.n {
            config.n = v;
        }
        if let Some(v) = self.alpha {
            config.alpha = v;
        }
        if let Some(v) = self.xmin_grid {
            config.xmin_grid = v;
        }
        if let Some(v) = self.g_policy {
            config.g_policy = v.parse::<GPolicy>()?;
        }
        if let Some(v) = self.c {
            config.c = v;
        }
        if let Some(v) = self.k {
            config.k = v;
        }
        if let Some(v) = self.seeds {
            config.seeds = v;
        }
        if let Some(v) = self.methods {
            config.methods = v
                .iter()
                .map(|m| m.parse::<Method>())
                .collect::<plxmin::Result<_>>()?;
        }
        config.validate()?;
        Ok(config)
    }
}

pub fn bench(args: BenchArgs) -> Result<()> {
    let mut file = match &args.config {
        Some(path) => ConfigFile::read(path)?,
        None => ConfigFile::default(),
    };
    file.overlay(&args);
    let config = file.resolve()?;
    let execution = if args.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };

    let report = match args.threads {
        Some(0) => return Err(CliError::Usage("--threads must be >= 1".into())),
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?
            .install(|| run_experiment_with(&config, execution))?,
        None => run_experiment_with(&config, execution)?,
    };
    write_report_files(&report, &args.out).map_err(|e| CliError::io(&args.out, e))?;

    if args.json {
        return print_json(&report.summary);
    }
    print!("{}", summary_table(&report));
    println!("reports written to {}", args.out.display());
    Ok(())
}
