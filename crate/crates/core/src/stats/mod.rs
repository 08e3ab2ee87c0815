//! Closed-form fading statistics.

pub mod conditional;
pub mod curve;
pub mod full;
pub mod marginal;

pub use conditional::{
    cdf_pte_conditional, cdf_pte_conditional_bounds, cdf_pte_region_approx, pdf_h_conditional, psi,
    support_ellipse, EllipseSupport,
};
pub use curve::{cosine_grid, linear_grid, CurveKind, DistributionCurve};
pub use full::{
    density_pq, pdf_h_full, pdf_h_full_at, pdf_h_full_with, ComplexGrid, FullPdfOptions,
    RhombusCoordinates, DEFAULT_GRID,
};
pub use marginal::{
    cdf_beta_ff, cdf_beta_nf, cdf_j_ff, cdf_j_nf, pdf_beta_ff, pdf_beta_nf, pdf_j_ff, pdf_j_nf,
};
