//! Fading statistics of links between randomly oriented dipoles.
//!
//! * [`model`]: deterministic channel `h` from geometry and orientations.
//! * [`stats`]: closed-form marginal, conditional and full laws of `h`.
//! * [`montecarlo`]: seedable sampling and empirical distributions.
//! * [`outage`]: outage PTE and capacity, BER and diversity exponents.

// `!(x >= 0.0)` style guards deliberately reject NaN along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gof;
pub mod model;
pub mod montecarlo;
pub mod outage;
pub mod quad;
pub mod region;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use region::RegionKind;

pub use num_complex::Complex64;
