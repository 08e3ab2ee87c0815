//! Seedable sampling of orientations and channels, and empirical
//! distributions built from the draws.

pub mod ecdf;
pub mod rng;
pub mod sample;

pub use ecdf::{
    ecdf, empirical_ber, misalignment_loss_cdf, misalignment_loss_ecdf, Ecdf, Transform,
};
pub use sample::{
    sample_alignment, sample_channel, sample_field_magnitude, sample_projection,
    sample_sphere_points, sample_unit_sphere, sphere_point, ChannelMode, SampleMeta, SampleSet,
    SampleValues,
};
