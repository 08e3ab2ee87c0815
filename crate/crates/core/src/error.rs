use thiserror::Error;

use crate::quad::QuadratureError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vector norm {norm:e} is too small to normalize")]
    DegenerateVector { norm: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Real and imaginary parts of the field vector are (numerically)
    /// linearly dependent, so the conditional law lives on a line segment
    /// and has no density in the complex plane.
    #[error("field vector is degenerate (|rho| = {rho_abs}); conditional law has no 2D density")]
    DegenerateFieldVector { rho_abs: f64 },

    #[error("bound requires s < s0 (s = {s:e}, s0 = {s0:e})")]
    OutsideBoundDomain { s: f64, s0: f64 },

    #[error("operation requires the near- or far-field region, got {0}")]
    RegionUnsupported(crate::RegionKind),

    #[error("empty sample set")]
    EmptySampleSet,

    #[error("insufficient data for exponent fit: {0}")]
    InsufficientSpan(String),

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(name, value, "must be finite and positive"))
    }
}
