use std::fmt;
use std::str::FromStr;

use crate::stats::marginal;

/// Which propagation regime governs the channel law.
///
/// In the near- and far-field regions the channel is (up to a constant) a
/// single real alignment factor, `J_nf` or `J_ff`. The transition region
/// needs the full complex model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    NearField,
    FarField,
    Transition,
}

impl RegionKind {
    /// Density of the governing alignment factor at zero, `f_{J*}(0)`.
    ///
    /// Returns `None` for the transition region, which has no single
    /// alignment factor.
    pub fn alignment_density_at_zero(self) -> Option<f64> {
        match self {
            RegionKind::NearField => Some(marginal::pdf_j_nf(0.0)),
            RegionKind::FarField => Some(marginal::pdf_j_ff(0.0)),
            RegionKind::Transition => None,
        }
    }

    /// Marginal PDF of the governing alignment factor.
    pub fn alignment_pdf(self) -> Option<fn(f64) -> f64> {
        match self {
            RegionKind::NearField => Some(marginal::pdf_j_nf),
            RegionKind::FarField => Some(marginal::pdf_j_ff),
            RegionKind::Transition => None,
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionKind::NearField => "near",
            RegionKind::FarField => "far",
            RegionKind::Transition => "transition",
        })
    }
}

impl FromStr for RegionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "near" | "near-field" | "nf" => Ok(RegionKind::NearField),
            "far" | "far-field" | "ff" => Ok(RegionKind::FarField),
            "transition" | "trans" => Ok(RegionKind::Transition),
            other => Err(format!(
                "unknown region `{other}` (expected near, far or transition)"
            )),
        }
    }
}
