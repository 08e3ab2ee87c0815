//! Deterministic geometry-to-channel computations.

pub mod channel;
pub mod prefactor;
pub mod vector;

pub use channel::{
    alignment_factors, channel_coefficient, channel_matrix, field_vector, h_coax, h_copl,
    kr_threshold, optimal_pte, prefactor, scaled_far_field, scaled_near_field, simo_mrc_magnitude,
    ChannelCoefficient, ChannelMatrix, ComplexFieldVector, LinkGeometry, PropagationTerms,
};
pub use prefactor::{
    halfwave_pattern_exact, mutual_inductance, prefactor_dipole, prefactor_loop,
    weak_coupling_check, CoilPair, DipoleKind, WeakCoupling,
};
pub use vector::{UnitVector3, Vec3};
