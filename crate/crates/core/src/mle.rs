//! Maximum-likelihood fit of the scaling parameter for a discrete tail.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::{Sample, TailTable, TailView};
use crate::zeta::hurwitz_zeta_scaled;

/// Lower end of the exact-mode search interval.
pub const ALPHA_SEARCH_MIN: f64 = 1.0 + 1e-6;
/// Upper end of the exact-mode search interval. Optima here are flagged.
pub const ALPHA_SEARCH_MAX: f64 = 50.0;

const GOLDEN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaMode {
    /// Closed form `1 + m / Σ ln(x_i / (xmin - 1/2))`.
    #[default]
    Approximate,
    /// Numerical maximization of the discrete log-likelihood.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaFit {
    pub alpha: f64,
    /// Number of observations `>= xmin` used in the fit.
    pub tail_size: u64,
    /// Set when the estimate sits on (or beyond) the search bound, which
    /// usually signals a degenerate tail.
    pub at_bound: bool,
}

/// Fits α to the observations `>= xmin`.
pub fn mle_alpha(sample: &Sample, xmin: u64, mode: AlphaMode) -> Result<AlphaFit> {
    if xmin == 0 {
        return Err(Error::Domain("xmin must be >= 1".into()));
    }
    let table = TailTable::new(sample);
    let start = table
        .first_at_or_above(xmin)
        .ok_or_else(|| tail_too_small(xmin, 0))?;
    fit_tail(table.tail(start), xmin, mode)
}

pub(crate) fn fit_tail(tail: TailView<'_>, xmin: u64, mode: AlphaMode) -> Result<AlphaFit> {
    if tail.size < 2 {
        return Err(tail_too_small(xmin, tail.size));
    }
    let alpha = match mode {
        AlphaMode::Approximate => approximate_alpha(tail, xmin),
        AlphaMode::Exact => exact_alpha(tail, xmin)?,
    };
    Ok(AlphaFit {
        alpha,
        tail_size: tail.size,
        at_bound: alpha >= ALPHA_SEARCH_MAX - 1e-6 || alpha <= ALPHA_SEARCH_MIN + 1e-6,
    })
}

fn tail_too_small(xmin: u64, found: u64) -> Error {
    Error::InsufficientData(format!(
        "fitting alpha needs at least 2 observations >= {xmin}, found {found}"
    ))
}

pub(crate) fn approximate_alpha(tail: TailView<'_>, xmin: u64) -> f64 {
    let m = tail.size as f64;
    let shift = (xmin as f64 - 0.5).ln();
    1.0 + m / (tail.log_sum - m * shift)
}

/// ℓ(α) = -m ln ζ(α, xmin) - α Σ ln x_i
pub fn log_likelihood(alpha: f64, xmin: u64, tail_size: u64, log_sum: f64) -> Result<f64> {
    // ln ζ(α, xmin) = ln(xmin^α ζ(α, xmin)) - α ln xmin, without underflow.
    let scale = xmin as f64;
    let ln_zeta = hurwitz_zeta_scaled(alpha, scale, scale)?.value.ln() - alpha * scale.ln();
    Ok(-(tail_size as f64) * ln_zeta - alpha * log_sum)
}

// ℓ is concave in α (ln ζ is a log-sum-exp in α), so golden-section search
// finds the maximum on the bracket.
fn exact_alpha(tail: TailView<'_>, xmin: u64) -> Result<f64> {
    let ll = |a: f64| log_likelihood(a, xmin, tail.size, tail.log_sum);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;

    let (mut lo, mut hi) = (ALPHA_SEARCH_MIN, ALPHA_SEARCH_MAX);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = ll(x1)?;
    let mut f2 = ll(x2)?;
    while hi - lo > GOLDEN_TOLERANCE {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = ll(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = ll(x1)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    // The interior point can lose to an endpoint when the optimum is on the bound.
    let mut best = (mid, ll(mid)?);
    for edge in [ALPHA_SEARCH_MIN, ALPHA_SEARCH_MAX] {
        let f = ll(edge)?;
        if f > best.1 {
            best = (edge, f);
        }
    }
    Ok(best.0)
}
