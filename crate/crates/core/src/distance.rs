//! Distances between the empirical tail and a fitted discrete power law.
//!
//! Both statistics look only at the distinct observed tail values. The KS
//! distance needs a Hurwitz zeta per evaluation point (the model CDF), the
//! PMF distance needs only the normalizer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PowerLawModel;
use crate::sample::{Sample, TailTable, TailView};
use crate::zeta::ZetaMemo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    /// max |E - T| between cumulative distribution functions.
    Ks,
    /// max |E_pmf - T_pmf| between probability mass functions.
    Pmf,
}

impl std::fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DistanceKind::Ks => "ks",
            DistanceKind::Pmf => "pmf",
        })
    }
}

impl std::str::FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ks" => Ok(DistanceKind::Ks),
            "pmf" => Ok(DistanceKind::Pmf),
            other => Err(Error::Argument(format!("unknown distance kind `{other}`"))),
        }
    }
}

/// A distance value and the number of zeta evaluations it took.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceEval {
    pub value: f64,
    pub zeta_calls: u64,
}

/// Kolmogorov–Smirnov distance over the tail `x >= xmin`.
pub fn ks_distance(sample: &Sample, model: &PowerLawModel) -> Result<f64> {
    Ok(evaluate(sample, model, DistanceKind::Ks)?.value)
}

/// Maximum absolute difference between empirical and model PMFs over the tail.
pub fn pmf_distance(sample: &Sample, model: &PowerLawModel) -> Result<f64> {
    Ok(evaluate(sample, model, DistanceKind::Pmf)?.value)
}

/// Evaluates either distance, reporting how many zeta calls were made.
pub fn evaluate(
    sample: &Sample,
    model: &PowerLawModel,
    kind: DistanceKind,
) -> Result<DistanceEval> {
    let xmin = model.discrete_xmin()?;
    let table = TailTable::new(sample);
    let start = table
        .first_at_or_above(xmin)
        .ok_or_else(|| Error::InsufficientData(format!("no observations >= xmin = {xmin}")))?;
    tail_distance(kind, table.tail(start), model.alpha(), xmin)
}

pub(crate) fn tail_distance(
    kind: DistanceKind,
    tail: TailView<'_>,
    alpha: f64,
    xmin: u64,
) -> Result<DistanceEval> {
    if tail.size == 0 {
        return Err(Error::InsufficientData("empty tail".into()));
    }
    // Zeta values are scaled by xmin^α; only their ratios enter.
    let mut memo = ZetaMemo::new(alpha, xmin)?;
    let norm = memo.get(xmin)?;
    let m = tail.size as f64;
    let log_xmin = (xmin as f64).ln();

    let mut worst = 0.0f64;
    match kind {
        DistanceKind::Ks => {
            // E and T are step functions; between observed values E is flat
            // while T keeps rising, so compare on both sides of every step.
            let mut below = 0u64;
            for (&v, &c) in tail.values.iter().zip(tail.counts) {
                let e_before = below as f64 / m;
                let t_before = 1.0 - memo.get(v)? / norm;
                worst = worst.max((e_before - t_before).abs());

                below += c;
                let e_after = below as f64 / m;
                let t_after = 1.0 - memo.get(v + 1)? / norm;
                worst = worst.max((e_after - t_after).abs());
            }
        }
        DistanceKind::Pmf => {
            for (&v, &c) in tail.values.iter().zip(tail.counts) {
                let empirical = c as f64 / m;
                let theoretical = (-alpha * ((v as f64).ln() - log_xmin)).exp() / norm;
                worst = worst.max((empirical - theoretical).abs());
            }
        }
    }

    Ok(DistanceEval {
        value: worst,
        zeta_calls: memo.calls,
    })
}
