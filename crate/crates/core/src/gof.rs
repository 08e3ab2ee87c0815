//! Goodness-of-fit statistics used to check closed forms against draws.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Two-sided Kolmogorov–Smirnov statistic `sup |F_n − F|` of a sample
/// against a continuous CDF.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max))
}

/// Asymptotic 1%-level critical value `1.63/√n`.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

/// Outcome of a Pearson χ² test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub critical: f64,
}

impl ChiSquare {
    pub fn passes(&self) -> bool {
        self.statistic < self.critical
    }
}

/// Minimum expected count per bin; lighter bins are pooled with neighbours.
pub const MIN_EXPECTED: f64 = 5.0;

/// Pearson χ² test of `observed` counts against bin probabilities at
/// significance `alpha`. Bins are pooled in order until each has an
/// expected count of at least [`MIN_EXPECTED`]. The bins must cover the
/// support.
pub fn chi_square(observed: &[u64], expected: &[f64], alpha: f64) -> Result<ChiSquare> {
    if observed.len() != expected.len() || observed.is_empty() {
        return Err(Error::invalid(
            "bins",
            observed.len() as f64,
            "observed/expected length mismatch",
        ));
    }
    let n: u64 = observed.iter().sum();
    if n == 0 {
        return Err(Error::EmptySampleSet);
    }
    let cells: Vec<(f64, f64)> = observed
        .iter()
        .zip(expected)
        .map(|(&o, &p)| (o as f64, p * n as f64))
        .collect();
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for c in cells {
        acc.0 += c.0;
        acc.1 += c.1;
        if acc.1 >= MIN_EXPECTED {
            pooled.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.1 > 0.0 || acc.0 > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => pooled.push(acc),
        }
    }
    if pooled.len() < 2 {
        return Err(Error::invalid(
            "bins",
            pooled.len() as f64,
            "need at least two pooled bins",
        ));
    }
    let statistic = pooled.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = pooled.len() - 1;
    Ok(ChiSquare {
        statistic,
        dof,
        critical: chi_square_critical(dof, alpha)?,
    })
}

/// Upper-`alpha` quantile of the χ² distribution.
pub fn chi_square_critical(dof: usize, alpha: f64) -> Result<f64> {
    let dist = ChiSquared::new(dof as f64)
        .map_err(|_| Error::invalid("dof", dof as f64, "must be positive"))?;
    Ok(dist.inverse_cdf(1.0 - alpha))
}

/// Counts of `sample` in the bins `[edges[k], edges[k+1])`; the last bin is
/// closed. Values outside are dropped.
pub fn histogram(sample: &[f64], edges: &[f64]) -> Vec<u64> {
    let nb = edges.len().saturating_sub(1);
    let mut counts = vec![0u64; nb];
    if nb == 0 {
        return counts;
    }
    let last = edges[nb];
    for &x in sample {
        if x < edges[0] || x > last {
            continue;
        }
        let k = edges
            .partition_point(|&e| e <= x)
            .saturating_sub(1)
            .min(nb - 1);
        counts[k] += 1;
    }
    counts
}

/// Bin probabilities from a CDF.
pub fn bin_probabilities(edges: &[f64], cdf: impl Fn(f64) -> f64) -> Vec<f64> {
    edges.windows(2).map(|w| cdf(w[1]) - cdf(w[0])).collect()
}
