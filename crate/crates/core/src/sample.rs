use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted collection of observed positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Sample {
    data: Vec<u64>,
}

impl Sample {
    /// Sorts `data` and checks that it holds at least two values, all ≥ 1.
    pub fn new(mut data: Vec<u64>) -> Result<Self> {
        if data.len() < 2 {
            return Err(Error::InvalidSample(format!(
                "need at least 2 observations, got {}",
                data.len()
            )));
        }
        if data.contains(&0) {
            return Err(Error::InvalidSample(
                "observations must be positive integers".into(),
            ));
        }
        data.sort_unstable();
        Ok(Sample { data })
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn min(&self) -> u64 {
        self.data[0]
    }

    pub fn max(&self) -> u64 {
        self.data[self.data.len() - 1]
    }

    /// Observations `>= xmin`, as a sorted slice.
    pub fn tail(&self, xmin: u64) -> &[u64] {
        let start = self.data.partition_point(|&x| x < xmin);
        &self.data[start..]
    }

    /// Distinct values with their multiplicities, ascending.
    pub fn value_counts(&self) -> Vec<(u64, u64)> {
        let mut runs: Vec<(u64, u64)> = Vec::new();
        for &x in &self.data {
            match runs.last_mut() {
                Some((v, c)) if *v == x => *c += 1,
                _ => runs.push((x, 1)),
            }
        }
        runs
    }

    /// Empirical complementary CDF `(x, Pr(X >= x))` at each distinct value.
    pub fn empirical_ccdf(&self) -> Vec<(u64, f64)> {
        let n = self.data.len() as f64;
        let mut remaining = self.data.len() as u64;
        self.value_counts()
            .into_iter()
            .map(|(v, c)| {
                let p = remaining as f64 / n;
                remaining -= c;
                (v, p)
            })
            .collect()
    }
}

impl TryFrom<Vec<u64>> for Sample {
    type Error = Error;

    fn try_from(data: Vec<u64>) -> Result<Self> {
        Sample::new(data)
    }
}

impl From<Sample> for Vec<u64> {
    fn from(sample: Sample) -> Self {
        sample.data
    }
}

/// Run-length view of a sample with suffix aggregates, so that the tail above
/// any distinct value can be summarized in O(1).
#[derive(Debug, Clone)]
pub(crate) struct TailTable {
    pub(crate) values: Vec<u64>,
    pub(crate) counts: Vec<u64>,
    /// Number of observations at or above `values[i]`.
    pub(crate) suffix_count: Vec<u64>,
    /// Σ ln x over observations at or above `values[i]`.
    pub(crate) suffix_log_sum: Vec<f64>,
}

impl TailTable {
    pub(crate) fn new(sample: &Sample) -> Self {
        let runs = sample.value_counts();
        let len = runs.len();
        let mut suffix_count = vec![0u64; len];
        let mut suffix_log_sum = vec![0.0f64; len];
        let mut count = 0u64;
        let mut log_sum = 0.0f64;
        for i in (0..len).rev() {
            let (v, c) = runs[i];
            count += c;
            log_sum += c as f64 * (v as f64).ln();
            suffix_count[i] = count;
            suffix_log_sum[i] = log_sum;
        }
        let (values, counts) = runs.into_iter().unzip();
        TailTable {
            values,
            counts,
            suffix_count,
            suffix_log_sum,
        }
    }

    /// Index of the first distinct value `>= xmin`, if any.
    pub(crate) fn first_at_or_above(&self, xmin: u64) -> Option<usize> {
        let i = self.values.partition_point(|&v| v < xmin);
        (i < self.values.len()).then_some(i)
    }

    pub(crate) fn tail(&self, start: usize) -> TailView<'_> {
        TailView {
            values: &self.values[start..],
            counts: &self.counts[start..],
            size: self.suffix_count[start],
            log_sum: self.suffix_log_sum[start],
        }
    }
}

/// Distinct values of a tail subsample with their counts.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailView<'a> {
    pub(crate) values: &'a [u64],
    pub(crate) counts: &'a [u64],
    pub(crate) size: u64,
    pub(crate) log_sum: f64,
}
