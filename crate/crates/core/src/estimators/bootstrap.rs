use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Estimator, XminEstimate};
use crate::error::{Error, Result};
use crate::sample::Sample;

/// Runs `estimator` on `replicates` with-replacement resamples of `sample`.
///
/// Replicate `r` draws from ChaCha8 seeded with `seed` on stream `r`, so the
/// output depends only on `(sample, estimator, replicates, seed)` and not on
/// how many threads run the replicates. Failed replicates stay in place as
/// errors.
pub fn bootstrap_xmin(
    sample: &Sample,
    estimator: &Estimator,
    replicates: usize,
    seed: u64,
) -> Result<Vec<Result<XminEstimate>>> {
    bootstrap_with(sample, estimator, replicates, |r, s| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let data = s.data();
        (0..data.len())
            .map(|_| data[rng.random_range(0..data.len())])
            .collect()
    })
}

fn bootstrap_with<F>(
    sample: &Sample,
    estimator: &Estimator,
    replicates: usize,
    resample: F,
) -> Result<Vec<Result<XminEstimate>>>
where
    F: Fn(usize, &Sample) -> Vec<u64> + Sync,
{
    if replicates < 1 {
        return Err(Error::Argument(
            "bootstrap needs at least one replicate".into(),
        ));
    }
    Ok((0..replicates)
        .into_par_iter()
        .map(|r| Sample::new(resample(r, sample)).and_then(|s| estimator.estimate(&s)))
        .collect())
}

/// Spread of the successful bootstrap estimates of `xmin`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapSummary {
    pub replicates: usize,
    pub failures: usize,
    pub xmin_mean: f64,
    pub xmin_sd: f64,
    pub xmin_median: f64,
    pub alpha_mean: f64,
    pub alpha_sd: f64,
}

impl BootstrapSummary {
    /// `None` when every replicate failed.
    pub fn from_replicates(results: &[Result<XminEstimate>]) -> Option<Self> {
        let ok: Vec<&XminEstimate> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
        if ok.is_empty() {
            return None;
        }
        let xmins: Vec<f64> = ok.iter().map(|e| e.xmin as f64).collect();
        let alphas: Vec<f64> = ok.iter().map(|e| e.alpha).collect();
        let (xmin_mean, xmin_sd) = mean_sd(&xmins);
        let (alpha_mean, alpha_sd) = mean_sd(&alphas);
        Some(BootstrapSummary {
            replicates: results.len(),
            failures: results.len() - ok.len(),
            xmin_mean,
            xmin_sd,
            xmin_median: median(&xmins),
            alpha_mean,
            alpha_sd,
        })
    }
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len().is_multiple_of(2) {
        0.5 * (sorted[mid - 1] + sorted[mid])
    } else {
        sorted[mid]
    }
}
