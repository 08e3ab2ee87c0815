//! Technical prefactor `ᾱ` for concrete antenna types, and the validity
//! condition of the weak-coupling channel model.

use num_complex::Complex64;

use super::channel::ChannelCoefficient;
use crate::error::{require_positive, Error, Result};

/// Magnetic constant in H/m.
pub const MU0: f64 = 4.0e-7 * std::f64::consts::PI;

/// Geometry of a pair of electrically small coils.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoilPair {
    pub mu0: f64,
    /// Coil area in m².
    pub area_tx: f64,
    pub turns_tx: f64,
    pub area_rx: f64,
    pub turns_rx: f64,
}

impl CoilPair {
    fn validate(&self) -> Result<()> {
        require_positive("mu0", self.mu0)?;
        require_positive("area_tx", self.area_tx)?;
        require_positive("turns_tx", self.turns_tx)?;
        require_positive("area_rx", self.area_rx)?;
        require_positive("turns_rx", self.turns_rx)?;
        Ok(())
    }

    fn moment_product(&self) -> f64 {
        self.area_tx * self.turns_tx * self.area_rx * self.turns_rx
    }
}

/// `ᾱ = j μ₀ A_Tx N_Tx A_Rx N_Rx f k³ / √(4 R_Tx R_Rx)` for coils, with
/// frequency `f` in Hz, wavenumber `k` in 1/m and resistances in Ω.
pub fn prefactor_loop(
    coils: &CoilPair,
    frequency: f64,
    wavenumber: f64,
    r_tx_ohm: f64,
    r_rx_ohm: f64,
) -> Result<Complex64> {
    coils.validate()?;
    require_positive("frequency", frequency)?;
    require_positive("wavenumber", wavenumber)?;
    require_positive("r_tx_ohm", r_tx_ohm)?;
    require_positive("r_rx_ohm", r_rx_ohm)?;
    let magnitude = coils.mu0 * coils.moment_product() * frequency * wavenumber.powi(3)
        / (4.0 * r_tx_ohm * r_rx_ohm).sqrt();
    Ok(Complex64::new(0.0, magnitude))
}

/// Mutual inductance `M = μ₀/(2π) A_Tx N_Tx A_Rx N_Rx r⁻³ J_nf` in H.
pub fn mutual_inductance(coils: &CoilPair, r: f64, j_nf: f64) -> Result<f64> {
    coils.validate()?;
    require_positive("r", r)?;
    Ok(coils.mu0 / (2.0 * std::f64::consts::PI) * coils.moment_product() * r.powi(-3) * j_nf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DipoleKind {
    /// Electrically small (Hertzian) dipole.
    Small,
    /// Half-wave dipole.
    HalfWave,
}

/// `ᾱ` of a lossless, matched dipole pair: its directivity.
pub fn prefactor_dipole(kind: DipoleKind) -> f64 {
    match kind {
        DipoleKind::Small => 1.5,
        DipoleKind::HalfWave => 1.64,
    }
}

/// Exact far-field pattern of a half-wave dipole, `cos(π/2 cos θ)/sin θ`,
/// for `θ ∈ (0, π)`. The small-dipole model approximates it by `sin θ`.
pub fn halfwave_pattern_exact(theta_tx: f64) -> Result<f64> {
    if !(theta_tx > 0.0 && theta_tx < std::f64::consts::PI) {
        return Err(Error::invalid(
            "theta_tx",
            theta_tx,
            "must lie in the open interval (0, pi)",
        ));
    }
    Ok((std::f64::consts::FRAC_PI_2 * theta_tx.cos()).cos() / theta_tx.sin())
}

/// Default PTE ceiling (−20 dB) below which coupling counts as weak.
pub const DEFAULT_WEAK_COUPLING_THRESHOLD: f64 = 1e-2;

/// Validity check of the weak-coupling model: `|h|² < threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakCoupling {
    pub threshold: f64,
}

impl Default for WeakCoupling {
    fn default() -> Self {
        WeakCoupling {
            threshold: DEFAULT_WEAK_COUPLING_THRESHOLD,
        }
    }
}

impl WeakCoupling {
    pub fn new(threshold: f64) -> Result<Self> {
        require_positive("threshold", threshold)?;
        Ok(WeakCoupling { threshold })
    }

    pub fn check(&self, h: &ChannelCoefficient) -> bool {
        self.check_pte(h.pte())
    }

    pub fn check_pte(&self, pte: f64) -> bool {
        pte < self.threshold
    }
}

/// [`WeakCoupling::check`] with the default threshold.
pub fn weak_coupling_check(h: &ChannelCoefficient) -> bool {
    WeakCoupling::default().check(h)
}
