use num_complex::Complex64;

use super::sample::{sample_channel, ChannelMode, SampleSet, SampleValues};
use crate::error::{Error, Result};
use crate::model::optimal_pte;
use crate::special::q_function;
use crate::stats::curve::DistributionCurve;

/// Scalar extracted from each draw before building an ECDF.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// `|h|²`
    MagnitudeSquared,
    /// `|h|`
    Magnitude,
    /// The value itself; real sample sets only.
    Raw,
}

/// Empirical distribution function of a finite sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    /// Rejects empty input and NaN.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySampleSet);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::invalid("sample", f64::NAN, "NaN in sample"));
        }
        values.sort_by(f64::total_cmp);
        Ok(Ecdf { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of draws `≤ s`.
    pub fn query(&self, s: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= s) as f64 / self.sorted.len() as f64
    }

    /// `p`-quantile with linear interpolation between order statistics
    /// (position `p (n − 1)`).
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.sorted.len();
        let pos = p.clamp(0.0, 1.0) * (n - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = (lo + 1).min(n - 1);
        let frac = pos - lo as f64;
        self.sorted[lo] + frac * (self.sorted[hi] - self.sorted[lo])
    }

    /// ECDF sampled on `grid`.
    pub fn to_curve(&self, grid: Vec<f64>) -> Result<DistributionCurve> {
        let values = grid.iter().map(|&s| self.query(s)).collect();
        DistributionCurve::cdf1d(grid, values)
    }

    /// Least-squares slope of `log F(s)` against `log s` for the order
    /// statistics whose empirical probability lies in `[p_lo, p_hi]`.
    pub fn loglog_slope(&self, p_lo: f64, p_hi: f64) -> Result<f64> {
        let n = self.sorted.len() as f64;
        let pts: Vec<(f64, f64)> = self
            .sorted
            .iter()
            .enumerate()
            .filter_map(|(k, &s)| {
                let p = (k + 1) as f64 / n;
                (p >= p_lo && p <= p_hi && s > 0.0).then(|| (s.ln(), p.ln()))
            })
            .collect();
        if pts.len() < 5 {
            return Err(Error::InsufficientSpan(format!(
                "{} order statistics in [{p_lo}, {p_hi}]",
                pts.len()
            )));
        }
        Ok(least_squares_slope(&pts))
    }
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

pub fn ecdf(set: &SampleSet, transform: Transform) -> Result<Ecdf> {
    let values = match (&set.values, transform) {
        (SampleValues::Complex(v), Transform::MagnitudeSquared) => {
            v.iter().map(|h| h.norm_sqr()).collect()
        }
        (SampleValues::Complex(v), Transform::Magnitude) => v.iter().map(|h| h.norm()).collect(),
        (SampleValues::Complex(_), Transform::Raw) => {
            return Err(Error::invalid(
                "transform",
                f64::NAN,
                "complex draws need a magnitude transform",
            ))
        }
        (SampleValues::Real(v), Transform::MagnitudeSquared) => v.iter().map(|x| x * x).collect(),
        (SampleValues::Real(v), Transform::Magnitude) => v.iter().map(|x| x.abs()).collect(),
        (SampleValues::Real(v), Transform::Raw) => v.clone(),
    };
    Ecdf::new(values)
}

/// Misalignment loss `|h|²/η_opt` in dB (`10 log₁₀`) of `n` both-random draws.
pub fn misalignment_loss_ecdf(kr: f64, n: usize, seed: u64) -> Result<Ecdf> {
    let unit = Complex64::new(1.0, 0.0);
    let set = sample_channel(n, kr, unit, ChannelMode::BothRandom, seed)?;
    let opt = optimal_pte(kr, unit);
    let loss = set
        .complex()
        .expect("channel draws are complex")
        .iter()
        .map(|h| 10.0 * (h.norm_sqr() / opt).log10())
        .collect();
    Ecdf::new(loss)
}

/// CDF of the misalignment loss in dB on `db_grid`, one curve per `kr`.
pub fn misalignment_loss_cdf(
    kr_list: &[f64],
    n: usize,
    seed: u64,
    db_grid: &[f64],
) -> Result<Vec<DistributionCurve>> {
    kr_list
        .iter()
        .map(|&kr| misalignment_loss_ecdf(kr, n, seed)?.to_curve(db_grid.to_vec()))
        .collect()
}

/// Monte-Carlo BPSK error rate `E[Q(√(2 G SNR_opt))]` over draws of the
/// normalized power gain `G`, with its standard error.
pub fn empirical_ber(gains: &[f64], snr_opt: f64) -> Result<(f64, f64)> {
    if gains.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let n = gains.len() as f64;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for &g in gains {
        let e = q_function((2.0 * g * snr_opt).sqrt());
        sum += e;
        sum_sq += e * e;
    }
    let mean = sum / n;
    let var = ((sum_sq / n - mean * mean) * n / (n - 1.0).max(1.0)).max(0.0);
    Ok((mean, (var / n).sqrt()))
}
