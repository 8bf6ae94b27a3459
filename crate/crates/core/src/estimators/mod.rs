//! Lower-bound estimators.
//!
//! Every estimator walks the candidate set (distinct observed values except
//! the largest), fits α at each candidate with the closed-form MLE and scores
//! the fit with a [`DistanceKind`]. [`scan_all`] scores every candidate;
//! [`fast_scan`] starts near a user guess and stops after `k` consecutive
//! increases of the distance.

mod bootstrap;
mod scan;

pub use bootstrap::{bootstrap_xmin, BootstrapSummary};
pub use scan::{fast_scan, get_xmin, get_xmin2, run_until_rising, scan_all, scan_all_par};

use serde::{Deserialize, Serialize};

use crate::distance::DistanceKind;
use crate::error::{Error, Result};
use crate::mle::{mle_alpha, AlphaFit, AlphaMode};
use crate::model::PowerLawModel;
use crate::sample::Sample;

/// Parameters of the guess-seeded early-stopping scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FastScanConfig {
    /// Guess `g` on the true lower bound.
    pub guess: f64,
    /// Confidence `c` in the guess, in percent (1..=100).
    pub confidence: u32,
    /// Number `k` of consecutive increases that ends the scan.
    pub window: usize,
    pub distance: DistanceKind,
}

impl FastScanConfig {
    pub fn new(guess: f64, confidence: u32, window: usize, distance: DistanceKind) -> Result<Self> {
        let config = FastScanConfig {
            guess,
            confidence,
            window,
            distance,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        validate_guess(self.guess, self.confidence)?;
        if self.window < 1 {
            return Err(Error::config("k", "stop window must be >= 1"));
        }
        Ok(())
    }
}

fn validate_guess(guess: f64, confidence: u32) -> Result<()> {
    if !(guess.is_finite() && guess > 0.0) {
        return Err(Error::config(
            "g",
            format!("guess must be > 0, got {guess}"),
        ));
    }
    if !(1..=100).contains(&confidence) {
        return Err(Error::config(
            "c",
            format!("confidence must lie in [1, 100], got {confidence}"),
        ));
    }
    Ok(())
}

/// One evaluated candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub xmin: u64,
    pub alpha: f64,
    pub distance: f64,
    /// Hurwitz zeta evaluations spent on this candidate's distance.
    pub zeta_calls: u64,
}

/// Candidates in the order they were evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTrace {
    pub points: Vec<TracePoint>,
    /// The stop rule fired before the candidates ran out.
    pub stopped_early: bool,
    /// Every candidate from the start onward was evaluated.
    pub exhausted: bool,
}

impl ScanTrace {
    /// Index of the smallest distance; ties go to the earliest (smallest) candidate.
    fn argmin(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, p) in self.points.iter().enumerate() {
            match best {
                Some(b) if p.distance.total_cmp(&self.points[b].distance).is_ge() => {}
                _ => best = Some(i),
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XminEstimate {
    pub xmin: u64,
    /// α fitted at `xmin` during the scan (closed-form MLE).
    pub alpha: f64,
    pub distance: f64,
    pub candidates_evaluated: usize,
    pub trace: ScanTrace,
}

impl XminEstimate {
    /// Picks the trace minimum; errors on an empty trace.
    pub fn from_trace(trace: ScanTrace) -> Result<Self> {
        let best = trace
            .argmin()
            .ok_or_else(|| Error::InsufficientData("no candidate was evaluated".into()))?;
        let p = trace.points[best];
        Ok(XminEstimate {
            xmin: p.xmin,
            alpha: p.alpha,
            distance: p.distance,
            candidates_evaluated: trace.points.len(),
            trace,
        })
    }

    pub fn model(&self) -> Result<PowerLawModel> {
        PowerLawModel::discrete(self.alpha, self.xmin)
    }

    pub fn stopped_early(&self) -> bool {
        self.trace.stopped_early
    }

    /// Total zeta evaluations across the scan.
    pub fn zeta_calls(&self) -> u64 {
        self.trace.points.iter().map(|p| p.zeta_calls).sum()
    }

    /// Re-fits α at the chosen `xmin` by exact likelihood maximization.
    pub fn refine_alpha(&self, sample: &Sample) -> Result<AlphaFit> {
        mle_alpha(sample, self.xmin, AlphaMode::Exact)
    }
}

/// A configured estimator, for callers that pick the method at run time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    ScanAll { distance: DistanceKind },
    FastScan(FastScanConfig),
}

impl Estimator {
    pub fn estimate(&self, sample: &Sample) -> Result<XminEstimate> {
        match self {
            Estimator::ScanAll { distance } => scan_all(sample, *distance),
            Estimator::FastScan(config) => fast_scan(sample, config),
        }
    }
}

/// Distinct observed values, ascending, without the maximum.
pub fn candidate_set(sample: &Sample) -> Result<Vec<u64>> {
    let mut values: Vec<u64> = sample.value_counts().into_iter().map(|(v, _)| v).collect();
    if values.len() < 2 {
        return Err(Error::InsufficientData(
            "need at least 2 distinct values to scan for xmin".into(),
        ));
    }
    values.pop();
    Ok(values)
}

/// Candidate closest to `g - g (100 - c) / 100`, clamped into `[min, max)`.
pub fn start_candidate(sample: &Sample, guess: f64, confidence: u32) -> Result<u64> {
    validate_guess(guess, confidence)?;
    let candidates = candidate_set(sample)?;
    Ok(candidates[start_index(&candidates, guess, confidence)])
}

pub(crate) fn start_index(candidates: &[u64], guess: f64, confidence: u32) -> usize {
    let offset = guess * (100 - confidence) as f64 / 100.0;
    let target = (guess - offset).max(candidates[0] as f64);
    // Candidates after the first one that is >= target cannot be closer.
    let upper = candidates.partition_point(|&c| (c as f64) < target);
    if upper == 0 {
        return 0;
    }
    if upper == candidates.len() {
        return candidates.len() - 1;
    }
    let below = target - candidates[upper - 1] as f64;
    let above = candidates[upper] as f64 - target;
    if below <= above {
        upper - 1
    } else {
        upper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(data: &[u64]) -> Sample {
        Sample::new(data.to_vec()).unwrap()
    }

    #[test]
    fn candidate_set_examples() {
        assert_eq!(
            candidate_set(&sample(&[1, 1, 2, 3, 3, 7])).unwrap(),
            vec![1, 2, 3]
        );
        assert_eq!(candidate_set(&sample(&[5, 5, 5, 9])).unwrap(), vec![5]);
        assert!(matches!(
            candidate_set(&sample(&[4, 4, 4])),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn start_candidate_examples() {
        let data: Vec<u64> = (400..=520).step_by(5).collect();
        let s = sample(&data);
        assert_eq!(start_candidate(&s, 500.0, 90).unwrap(), 450);
        assert_eq!(start_candidate(&s, 483.0, 100).unwrap(), 485);
        assert_eq!(start_candidate(&s, 3.0, 90).unwrap(), 400);
        // Far above the range: the last candidate (max itself is excluded).
        assert_eq!(start_candidate(&s, 1e6, 100).unwrap(), 515);
    }

    #[test]
    fn start_candidate_ties_go_down() {
        let s = sample(&[10, 20, 30]);
        assert_eq!(start_candidate(&s, 15.0, 100).unwrap(), 10);
        assert_eq!(start_candidate(&s, 15.5, 100).unwrap(), 20);
    }

    #[test]
    fn config_validation() {
        assert!(FastScanConfig::new(10.0, 90, 5, DistanceKind::Ks).is_ok());
        assert!(FastScanConfig::new(0.0, 90, 5, DistanceKind::Ks).is_err());
        assert!(FastScanConfig::new(10.0, 0, 5, DistanceKind::Ks).is_err());
        assert!(FastScanConfig::new(10.0, 101, 5, DistanceKind::Ks).is_err());
        assert!(FastScanConfig::new(10.0, 90, 0, DistanceKind::Pmf).is_err());
        let s = sample(&[1, 2, 3]);
        assert!(start_candidate(&s, -1.0, 50).is_err());
    }

    #[test]
    fn argmin_prefers_first_on_ties() {
        let pt = |xmin, distance| TracePoint {
            xmin,
            alpha: 2.0,
            distance,
            zeta_calls: 1,
        };
        let trace = ScanTrace {
            points: vec![pt(3, 0.2), pt(4, 0.1), pt(5, 0.1), pt(6, 0.3)],
            stopped_early: false,
            exhausted: true,
        };
        let est = XminEstimate::from_trace(trace).unwrap();
        assert_eq!((est.xmin, est.distance), (4, 0.1));
        assert_eq!(est.candidates_evaluated, 4);
    }
}
