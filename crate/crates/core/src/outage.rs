//! Outage PTE, outage capacity, BPSK error rates and diversity exponents.
//!
//! In the near- and far-field regions the PTE CDF behaves like
//! `2 f_{J*}(0) √(s/η_opt)` for small `s`, which fixes the outage
//! quantities in closed form. The transition region has no closed form and
//! is served from empirical quantiles.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};
use crate::montecarlo::Ecdf;
use crate::quad::{integrate_cosine_mapped, QuadratureOptions};
use crate::region::RegionKind;
use crate::special::q_function;

/// Above this fraction of `η_opt` the small-`s` law is flagged as inaccurate.
pub const ACCURACY_LIMIT: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageSpec {
    pub epsilon: f64,
    pub region: RegionKind,
    pub eta_opt: f64,
    /// `η_opt P_Tx / P_N`
    pub snr_opt: f64,
    pub p_tx: f64,
    pub p_n: f64,
}

impl OutageSpec {
    pub fn new(
        epsilon: f64,
        region: RegionKind,
        eta_opt: f64,
        p_tx: f64,
        p_n: f64,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::invalid("epsilon", epsilon, "must lie in (0, 1)"));
        }
        require_positive("eta_opt", eta_opt)?;
        require_positive("p_n", p_n)?;
        if !(p_tx >= 0.0 && p_tx.is_finite()) {
            return Err(Error::invalid(
                "p_tx",
                p_tx,
                "must be finite and nonnegative",
            ));
        }
        Ok(OutageSpec {
            epsilon,
            region,
            eta_opt,
            snr_opt: eta_opt * p_tx / p_n,
            p_tx,
            p_n,
        })
    }

    fn density_at_zero(&self) -> Result<f64> {
        self.region
            .alignment_density_at_zero()
            .ok_or(Error::RegionUnsupported(self.region))
    }
}

/// A small-`s` estimate with its validity flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub value: f64,
    /// Set when the PTE involved exceeds `ACCURACY_LIMIT · η_opt`.
    pub accuracy_warning: bool,
}

/// `ε ≈ 2 f_{J*}(0) √(η_ε/η_opt)`
pub fn outage_probability(eta_target: f64, spec: &OutageSpec) -> Result<OutageEstimate> {
    let f0 = spec.density_at_zero()?;
    if !(eta_target >= 0.0) {
        return Err(Error::invalid(
            "eta_target",
            eta_target,
            "must be nonnegative",
        ));
    }
    Ok(OutageEstimate {
        value: 2.0 * f0 * (eta_target / spec.eta_opt).sqrt(),
        accuracy_warning: eta_target > ACCURACY_LIMIT * spec.eta_opt,
    })
}

/// `η_ε ≈ ε² η_opt / (2 f_{J*}(0))²`
pub fn outage_pte(spec: &OutageSpec) -> Result<OutageEstimate> {
    let f0 = spec.density_at_zero()?;
    let ratio = (spec.epsilon / (2.0 * f0)).powi(2);
    Ok(OutageEstimate {
        value: ratio * spec.eta_opt,
        accuracy_warning: ratio > ACCURACY_LIMIT,
    })
}

/// Empirical counterpart of [`outage_probability`]: `P(|h|² ≤ η)`.
pub fn outage_probability_empirical(pte: &Ecdf, eta_target: f64) -> f64 {
    pte.query(eta_target)
}

/// Empirical counterpart of [`outage_pte`]: the `ε`-quantile of `|h|²`.
pub fn outage_pte_empirical(pte: &Ecdf, epsilon: f64) -> f64 {
    pte.quantile(epsilon)
}

/// Source of the PTE quantile `F⁻¹(ε)` used for the outage capacity.
#[derive(Debug, Clone, Copy)]
pub enum CdfInverse<'a> {
    /// Small-`s` law of `OutageSpec::region`.
    Analytic,
    /// Quantile of an empirical PTE distribution.
    Empirical(&'a Ecdf),
    /// A precomputed value.
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageCapacity {
    /// `C_ε = log₂(1 + F⁻¹(ε) P_Tx/P_N)` in bit/s/Hz.
    pub capacity: f64,
    /// `log₂(e) F⁻¹(ε) P_Tx/P_N`, never below `capacity`.
    pub linearized_bound: f64,
    pub pte_quantile: f64,
}

pub fn outage_capacity(spec: &OutageSpec, inverse: CdfInverse<'_>) -> Result<OutageCapacity> {
    let s = match inverse {
        CdfInverse::Analytic => outage_pte(spec)?.value,
        CdfInverse::Empirical(e) => e.quantile(spec.epsilon),
        CdfInverse::Value(v) => v,
    };
    if !(s >= 0.0) {
        return Err(Error::invalid("pte_quantile", s, "must be nonnegative"));
    }
    let snr = s * spec.p_tx / spec.p_n;
    Ok(OutageCapacity {
        capacity: snr.ln_1p() / std::f64::consts::LN_2,
        linearized_bound: std::f64::consts::LOG2_E * snr,
        pte_quantile: s,
    })
}

type Density = fn(f64) -> f64;

fn region_pdf(region: RegionKind) -> Result<(Density, f64)> {
    let pdf = region
        .alignment_pdf()
        .ok_or(Error::RegionUnsupported(region))?;
    let f0 = region
        .alignment_density_at_zero()
        .ok_or(Error::RegionUnsupported(region))?;
    Ok((pdf, f0))
}

/// `2 ∫₀¹ f_{J*}(j) Q(√(2 j^{2k} SNR_opt)) dj`, with breakpoints where the
/// Q-factor decays and where the density has a kink.
fn ber_integral(snr_opt: f64, region: RegionKind, power: i32) -> Result<f64> {
    if !(snr_opt >= 0.0 && snr_opt.is_finite()) {
        return Err(Error::invalid(
            "snr_opt",
            snr_opt,
            "must be finite and nonnegative",
        ));
    }
    let (pdf, _) = region_pdf(region)?;
    let mut pts = vec![0.0, 1.0];
    if region == RegionKind::NearField {
        pts.push(0.5);
    }
    if snr_opt > 0.0 {
        // Q(√(2 j^{2k} snr)) falls off at j ~ snr^{−1/(2k)}.
        let knee = snr_opt.powf(-0.5 / power as f64);
        for m in [0.1, 1.0, 10.0] {
            let b = m * knee;
            if b > 0.0 && b < 1.0 {
                pts.push(b);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let opts = QuadratureOptions::with_tolerance(1e-300, 1e-11);
    // Both densities have square-root kinks at breakpoints (0.5 and 1), so
    // each piece is mapped to remove them.
    let mut total = 0.0;
    for w in pts.windows(2) {
        total += integrate_cosine_mapped(
            |j| pdf(j) * q_function((2.0 * j.powi(2 * power) * snr_opt).sqrt()),
            w[0],
            w[1],
            &opts,
        )?
        .value;
    }
    Ok(2.0 * total)
}

/// Exact BPSK error rate averaged over the alignment factor,
/// `E[Q(√(2 J*² SNR_opt))]`.
pub fn ber_exact_region(snr_opt: f64, region: RegionKind) -> Result<f64> {
    ber_integral(snr_opt, region, 1)
}

/// Error rate when the channel applies twice, `E[Q(√(2 J*⁴ SNR_opt))]`.
pub fn ber_backscatter(snr_opt: f64, region: RegionKind) -> Result<f64> {
    ber_integral(snr_opt, region, 2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerBound {
    /// `f_{J*}(0) / √(π SNR_opt)`
    pub bound: f64,
    /// `2 f_{J*}(0) [(1 − e^{−SNR_opt})/√(4π SNR_opt) + Q(√(2 SNR_opt))]`,
    /// between the exact value and `bound`.
    pub tight: f64,
}

pub fn ber_bound(snr_opt: f64, region: RegionKind) -> Result<BerBound> {
    let (_, f0) = region_pdf(region)?;
    require_positive("snr_opt", snr_opt)?;
    Ok(BerBound {
        bound: f0 / (PI * snr_opt).sqrt(),
        tight: 2.0
            * f0
            * ((-(-snr_opt).exp_m1()) / (4.0 * PI * snr_opt).sqrt()
                + q_function((2.0 * snr_opt).sqrt())),
    })
}

/// Decades of SNR used for exponent fits of analytic curves.
pub const DEFAULT_SNR_WINDOW: (f64, f64) = (1e2, 1e4);

/// Diversity exponent `L` from `p ∝ snr^{−L}`: negated least-squares slope
/// of `log p` against `log snr` for points with `snr` inside `window`.
pub fn diversity_exponent_fit(curve: &[(f64, f64)], window: (f64, f64)) -> Result<f64> {
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .filter(|(s, p)| *s >= window.0 && *s <= window.1 && *s > 0.0 && *p > 0.0)
        .map(|(s, p)| (s.ln(), p.ln()))
        .collect();
    if pts.len() < 5 {
        return Err(Error::InsufficientSpan(format!(
            "{} points inside the window, need at least 5",
            pts.len()
        )));
    }
    let (lo, hi) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p.0), b.max(p.0))
        });
    let decades = (hi - lo) / std::f64::consts::LN_10;
    if decades < 2.0 - 1e-9 {
        return Err(Error::InsufficientSpan(format!(
            "points span {decades:.3} decades, need at least 2"
        )));
    }
    Ok(-crate::montecarlo::ecdf::least_squares_slope(&pts))
}

/// `1 − e^{−s/σ²}`
pub fn rayleigh_reference_cdf(s: f64, sigma2: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    -(-s / sigma2).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{empirical_ber, sample_alignment};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn spec(eps: f64, region: RegionKind) -> OutageSpec {
        OutageSpec::new(eps, region, 1e-4, 1.0, 1e-9).unwrap()
    }

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
            .collect()
    }

    #[test]
    fn spec_validation() {
        assert!(OutageSpec::new(0.0, RegionKind::FarField, 1.0, 1.0, 1.0).is_err());
        assert!(OutageSpec::new(1.0, RegionKind::FarField, 1.0, 1.0, 1.0).is_err());
        assert!(OutageSpec::new(0.1, RegionKind::FarField, 0.0, 1.0, 1.0).is_err());
        let s = OutageSpec::new(0.1, RegionKind::FarField, 2.0, 3.0, 0.5).unwrap();
        assert_eq!(s.snr_opt, 12.0);
    }

    #[test]
    fn outage_probability_examples() {
        let s = spec(0.1, RegionKind::FarField);
        assert_eq!(outage_probability(0.0, &s).unwrap().value, 0.0);
        let e = outage_probability(1e-4 * s.eta_opt, &s).unwrap();
        assert_relative_eq!(e.value, 0.015_708, epsilon = 1e-6);
        assert!(!e.accuracy_warning);
        assert!(
            outage_probability(0.1 * s.eta_opt, &s)
                .unwrap()
                .accuracy_warning
        );
        assert!(outage_probability(1e-6, &spec(0.1, RegionKind::Transition)).is_err());
    }

    #[test]
    fn outage_pte_examples() {
        let s = spec(0.1, RegionKind::FarField);
        let e = outage_pte(&s).unwrap();
        assert_relative_eq!(
            e.value / s.eta_opt,
            0.01 / (PI / 2.0).powi(2),
            max_relative = 1e-14
        );
        assert_relative_eq!(e.value / s.eta_opt, 4.053e-3, max_relative = 1e-3);
        let tenth = outage_pte(&spec(0.01, RegionKind::FarField)).unwrap();
        assert_relative_eq!(
            10.0 * (e.value / tenth.value).log10(),
            20.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn capacity_examples() {
        let s = spec(0.1, RegionKind::NearField);
        let zero = outage_capacity(&s, CdfInverse::Value(0.0)).unwrap();
        assert_eq!(zero.capacity, 0.0);
        let c = outage_capacity(&s, CdfInverse::Analytic).unwrap();
        assert!(c.capacity <= c.linearized_bound);
        // C_ε ∝ ε² for small ε.
        let pts: Vec<(f64, f64)> = log_grid(1e-3, 1e-1, 21)
            .into_iter()
            .map(|eps| {
                // SNR_opt = 1e-4 keeps log₂(1 + x) in its linear regime.
                let sp = OutageSpec::new(eps, RegionKind::NearField, 1e-4, 1.0, 1.0).unwrap();
                (
                    eps,
                    outage_capacity(&sp, CdfInverse::Analytic).unwrap().capacity,
                )
            })
            .collect();
        let slope = -diversity_exponent_fit(&pts, (1e-3, 1e-1)).unwrap();
        assert!((slope - 2.0).abs() < 0.05, "{slope}");
    }

    #[test]
    fn ber_at_zero_snr_is_half() {
        for region in [RegionKind::NearField, RegionKind::FarField] {
            assert_relative_eq!(ber_exact_region(0.0, region).unwrap(), 0.5, epsilon = 1e-9);
            assert_relative_eq!(ber_backscatter(0.0, region).unwrap(), 0.5, epsilon = 1e-9);
        }
        assert!(ber_bound(0.0, RegionKind::FarField).is_err());
    }

    #[test]
    fn ber_bound_examples() {
        let b = ber_bound(100.0, RegionKind::FarField).unwrap();
        assert_relative_eq!(b.bound, 0.044_31, epsilon = 1e-5);
        let b2 = ber_bound(400.0, RegionKind::FarField).unwrap();
        assert_relative_eq!(b.bound / b2.bound, 2.0, max_relative = 1e-14);
        for region in [RegionKind::NearField, RegionKind::FarField] {
            let exact = ber_exact_region(1e4, region).unwrap();
            let ratio = ber_bound(1e4, region).unwrap().bound / exact;
            assert!(ratio > 0.9 && ratio < 1.1, "{region}: {ratio}");
        }
    }

    #[test]
    fn ber_ordering_and_monotonicity() {
        for region in [RegionKind::NearField, RegionKind::FarField] {
            let mut prev = 0.5 + 1e-12;
            for snr in log_grid(1e-2, 1e6, 41) {
                let exact = ber_exact_region(snr, region).unwrap();
                let b = ber_bound(snr, region).unwrap();
                assert!(exact <= b.tight * (1.0 + 1e-9) && b.tight <= b.bound * (1.0 + 1e-12));
                assert!(exact <= b.bound * (1.0 + 1e-12));
                assert!(exact <= prev);
                assert!(ber_backscatter(snr, region).unwrap() >= exact);
                prev = exact;
            }
        }
    }

    #[test]
    fn analytic_exponents() {
        let grid = log_grid(1e2, 1e4, 21);
        for (region, want, tol) in [
            (RegionKind::NearField, 0.5, 0.05),
            (RegionKind::FarField, 0.5, 0.05),
        ] {
            let pts: Vec<_> = grid
                .iter()
                .map(|&s| (s, ber_exact_region(s, region).unwrap()))
                .collect();
            let l = diversity_exponent_fit(&pts, DEFAULT_SNR_WINDOW).unwrap();
            assert!((l - want).abs() < tol, "{region}: {l}");
            let pts: Vec<_> = grid
                .iter()
                .map(|&s| (s, ber_backscatter(s, region).unwrap()))
                .collect();
            let l = diversity_exponent_fit(&pts, DEFAULT_SNR_WINDOW).unwrap();
            assert!((l - 0.25).abs() < 0.05, "backscatter {region}: {l}");
        }
    }

    #[test]
    fn exact_ber_matches_sampling() {
        for region in [RegionKind::NearField, RegionKind::FarField] {
            let j = sample_alignment(1_000_000, region, 31).unwrap();
            let g: Vec<f64> = j.real().unwrap().iter().map(|x| x * x).collect();
            for snr in [10.0, 100.0] {
                let (m, se) = empirical_ber(&g, snr).unwrap();
                let exact = ber_exact_region(snr, region).unwrap();
                assert!(
                    (m - exact).abs() < 4.0 * se,
                    "{region} {snr}: {m} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn exponent_fit_examples() {
        let pts: Vec<_> = log_grid(1e2, 1e4, 9)
            .into_iter()
            .map(|s| (s, 3.0 * s.powf(-0.5)))
            .collect();
        assert!((diversity_exponent_fit(&pts, DEFAULT_SNR_WINDOW).unwrap() - 0.5).abs() < 1e-9);
        let few: Vec<_> = pts.iter().copied().take(4).collect();
        assert!(matches!(
            diversity_exponent_fit(&few, (0.0, f64::INFINITY)),
            Err(Error::InsufficientSpan(_))
        ));
        let narrow: Vec<_> = log_grid(1e2, 1e3, 9)
            .into_iter()
            .map(|s| (s, 1.0 / s))
            .collect();
        assert!(matches!(
            diversity_exponent_fit(&narrow, DEFAULT_SNR_WINDOW),
            Err(Error::InsufficientSpan(_))
        ));
    }

    #[test]
    fn rayleigh_examples() {
        assert_eq!(rayleigh_reference_cdf(0.0, 2.0), 0.0);
        assert_relative_eq!(
            rayleigh_reference_cdf(2.0, 2.0),
            1.0 - (-1f64).exp(),
            epsilon = 1e-15
        );
        let pts: Vec<_> = log_grid(1e-6, 1e-4, 11)
            .into_iter()
            .map(|s| (s, rayleigh_reference_cdf(s, 1.0)))
            .collect();
        let slope = -diversity_exponent_fit(&pts, (0.0, 1.0)).unwrap();
        assert!((slope - 1.0).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn round_trip_and_scaling(eps in 1e-6..0.999f64, eta_opt in 1e-12..1.0f64, far in any::<bool>()) {
            let region = if far { RegionKind::FarField } else { RegionKind::NearField };
            let s = OutageSpec::new(eps, region, eta_opt, 1.0, 1.0).unwrap();
            let eta = outage_pte(&s).unwrap().value;
            let back = outage_probability(eta, &s).unwrap().value;
            prop_assert!((back - eps).abs() <= 1e-12 * eps.max(1e-300) + 1e-15);
            // ε ∝ η_opt^{−1/2} at fixed η_ε.
            let s4 = OutageSpec::new(eps, region, 4.0 * eta_opt, 1.0, 1.0).unwrap();
            let e1 = outage_probability(eta, &s).unwrap().value;
            let e4 = outage_probability(eta, &s4).unwrap().value;
            prop_assert!((e1 / e4 - 2.0).abs() < 1e-12);
        }

        #[test]
        fn outage_probability_monotone(a in 0.0..1e-2f64, b in 0.0..1e-2f64) {
            let s = spec(0.1, RegionKind::NearField);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(outage_probability(lo, &s).unwrap().value <= outage_probability(hi, &s).unwrap().value);
        }
    }
}
