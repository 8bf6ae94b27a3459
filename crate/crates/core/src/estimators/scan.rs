use rayon::prelude::*;

use super::{start_index, FastScanConfig, ScanTrace, TracePoint, XminEstimate};
use crate::distance::{tail_distance, DistanceKind};
use crate::error::{Error, Result};
use crate::mle::approximate_alpha;
use crate::sample::{Sample, TailTable};

/// Precomputed tail summaries shared by every candidate evaluation.
struct ScanContext {
    table: TailTable,
}

impl ScanContext {
    fn new(sample: &Sample) -> Result<Self> {
        let table = TailTable::new(sample);
        if table.values.len() < 2 {
            return Err(Error::InsufficientData(
                "need at least 2 distinct values to scan for xmin".into(),
            ));
        }
        Ok(ScanContext { table })
    }

    fn candidates(&self) -> &[u64] {
        &self.table.values[..self.table.values.len() - 1]
    }

    fn evaluate(&self, index: usize, kind: DistanceKind) -> Result<TracePoint> {
        let xmin = self.table.values[index];
        let tail = self.table.tail(index);
        let alpha = approximate_alpha(tail, xmin);
        let eval = tail_distance(kind, tail, alpha, xmin)?;
        Ok(TracePoint {
            xmin,
            alpha,
            distance: eval.value,
            zeta_calls: eval.zeta_calls,
        })
    }
}

/// Exhaustive scan: scores every candidate and keeps the smallest distance.
pub fn scan_all(sample: &Sample, distance: DistanceKind) -> Result<XminEstimate> {
    let ctx = ScanContext::new(sample)?;
    let points = (0..ctx.candidates().len())
        .map(|i| ctx.evaluate(i, distance))
        .collect::<Result<Vec<_>>>()?;
    XminEstimate::from_trace(ScanTrace {
        points,
        stopped_early: false,
        exhausted: true,
    })
}

/// [`scan_all`] with candidates evaluated on the rayon pool. The result is
/// identical to the sequential scan.
pub fn scan_all_par(sample: &Sample, distance: DistanceKind) -> Result<XminEstimate> {
    let ctx = ScanContext::new(sample)?;
    let points = (0..ctx.candidates().len())
        .into_par_iter()
        .map(|i| ctx.evaluate(i, distance))
        .collect::<Result<Vec<_>>>()?;
    XminEstimate::from_trace(ScanTrace {
        points,
        stopped_early: false,
        exhausted: true,
    })
}

/// Early-stopping scan from the candidate nearest `g - g (100 - c) / 100`.
///
/// Candidates are visited in increasing order and the scan ends once the last
/// `k` first differences of the distance are all strictly positive. The
/// returned estimate is the minimum over the visited candidates; candidates
/// below the start are never looked at.
pub fn fast_scan(sample: &Sample, config: &FastScanConfig) -> Result<XminEstimate> {
    config.validate()?;
    let ctx = ScanContext::new(sample)?;
    let candidates = ctx.candidates();
    let start = start_index(candidates, config.guess, config.confidence);
    let trace = run_until_rising(candidates.len() - start, config.window, |i| {
        ctx.evaluate(start + i, config.distance)
    })?;
    XminEstimate::from_trace(trace)
}

/// Early-stopping scan with the KS distance.
pub fn get_xmin(
    sample: &Sample,
    guess: f64,
    confidence: u32,
    window: usize,
) -> Result<XminEstimate> {
    fast_scan(
        sample,
        &FastScanConfig::new(guess, confidence, window, DistanceKind::Ks)?,
    )
}

/// Early-stopping scan with the PMF distance.
pub fn get_xmin2(
    sample: &Sample,
    guess: f64,
    confidence: u32,
    window: usize,
) -> Result<XminEstimate> {
    fast_scan(
        sample,
        &FastScanConfig::new(guess, confidence, window, DistanceKind::Pmf)?,
    )
}

/// The fast-scan stop rule over an arbitrary evaluator.
///
/// Evaluates up to `count` points in order until `window` consecutive
/// strictly positive differences are seen. A zero difference resets the run.
pub fn run_until_rising<F>(count: usize, window: usize, mut evaluate: F) -> Result<ScanTrace>
where
    F: FnMut(usize) -> Result<TracePoint>,
{
    let mut points: Vec<TracePoint> = Vec::new();
    let mut rising = 0usize;
    for i in 0..count {
        let point = evaluate(i)?;
        if let Some(prev) = points.last() {
            if point.distance > prev.distance {
                rising += 1;
            } else {
                rising = 0;
            }
        }
        points.push(point);
        if rising >= window && i + 1 < count {
            return Ok(ScanTrace {
                points,
                stopped_early: true,
                exhausted: false,
            });
        }
    }
    Ok(ScanTrace {
        points,
        stopped_early: false,
        exhausted: true,
    })
}
