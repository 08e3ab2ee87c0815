//! Law of `h` when both orientations are uniformly random.
//!
//! Fix `d = e_z` and write `x = dᵀo_tx`. Given `x`, the channel is
//! `h = p·h_coax + q·h_copl` with `p = x·o_rx,z` and `q = √(1−x²)·o_rx,x`,
//! so `(p, q)` are rescaled orthonormal projections of `o_rx`. Mixing the
//! conditional law over `x ~ U(−1, 1)` gives the density in rhombus
//! coordinates
//!
//! ```text
//! g(p, q) = ∫₀¹ ψ(p²/x² + q²/(1−x²)) / (x √(1−x²)) dx,
//! ```
//!
//! supported on `|p| + |q| ≤ 1`. The density of `h` is `g / |det M|` where
//! `M` maps `(p, q)` to `(Re h, Im h)`. In `y = x²` the integrand is
//! nonzero between the roots `y₋ ≤ y₊` of `y² − (1 + p² − q²) y + p²`.
//! On the segment `p = 0` between `±h_copl` the density diverges
//! logarithmically.

use num_complex::Complex64;
use rayon::prelude::*;

use super::curve::{linear_grid, DistributionCurve};
use crate::error::{require_positive, Error, Result};
use crate::model::{h_coax, h_copl};
use crate::quad::{integrate, QuadratureOptions};

/// Affine frame spanned by `h_coax` and `h_copl`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhombusCoordinates {
    pub h_coax: Complex64,
    pub h_copl: Complex64,
    inv: [[f64; 2]; 2],
    det_abs: f64,
}

impl RhombusCoordinates {
    pub fn new(kr: f64, alpha_bar: Complex64) -> Result<Self> {
        require_positive("kr", kr)?;
        Self::from_vertices(h_coax(kr, alpha_bar), h_copl(kr, alpha_bar))
    }

    pub fn from_vertices(h_coax: Complex64, h_copl: Complex64) -> Result<Self> {
        let det = h_coax.re * h_copl.im - h_copl.re * h_coax.im;
        if !(det.is_finite() && det != 0.0) {
            return Err(Error::invalid("alpha_bar", det, "rhombus is degenerate"));
        }
        let inv = [
            [h_copl.im / det, -h_copl.re / det],
            [-h_coax.im / det, h_coax.re / det],
        ];
        Ok(RhombusCoordinates {
            h_coax,
            h_copl,
            inv,
            det_abs: det.abs(),
        })
    }

    /// `(p, q)` with `h = p·h_coax + q·h_copl`.
    pub fn to_pq(&self, h: Complex64) -> (f64, f64) {
        (
            self.inv[0][0] * h.re + self.inv[0][1] * h.im,
            self.inv[1][0] * h.re + self.inv[1][1] * h.im,
        )
    }

    pub fn from_pq(&self, p: f64, q: f64) -> Complex64 {
        self.h_coax * p + self.h_copl * q
    }

    pub fn contains(&self, h: Complex64) -> bool {
        let (p, q) = self.to_pq(h);
        p.abs() + q.abs() <= 1.0
    }

    /// `[h_coax, h_copl, −h_coax, −h_copl]`
    pub fn vertices(&self) -> [Complex64; 4] {
        [self.h_coax, self.h_copl, -self.h_coax, -self.h_copl]
    }

    /// `|det M|`, the area scale of the map `(p, q) ↦ h`.
    pub fn jacobian(&self) -> f64 {
        self.det_abs
    }

    /// `(re_min, re_max, im_min, im_max)` of the rhombus, each half-width
    /// enlarged by the factor `1 + pad`.
    pub fn bounding_box(&self, pad: f64) -> (f64, f64, f64, f64) {
        let rx = self.h_coax.re.abs().max(self.h_copl.re.abs()) * (1.0 + pad);
        let ry = self.h_coax.im.abs().max(self.h_copl.im.abs()) * (1.0 + pad);
        (-rx, rx, -ry, ry)
    }
}

/// Roots `(√y₋, √y₊)` of the support interval in `x`, or `None` outside.
fn x_interval(p: f64, q: f64) -> Option<(f64, f64)> {
    let (p, q) = (p.abs(), q.abs());
    if p + q > 1.0 {
        return None;
    }
    let b = 1.0 + p * p - q * q;
    // B² − 4p² = (B − 2p)(B + 2p) with B − 2p = (1−p)² − q².
    let disc = (((1.0 - p) * (1.0 - p) - q * q) * (b + 2.0 * p)).max(0.0);
    let y_hi = 0.5 * (b + disc.sqrt());
    let y_lo = if y_hi > 0.0 { p * p / y_hi } else { 0.0 };
    Some((y_lo.sqrt(), y_hi.sqrt().min(1.0)))
}

/// Options of the full-PDF quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullPdfOptions {
    /// Initial number of panels of the adaptive rule; at least 16.
    pub quad_nodes: usize,
    /// Absolute and relative tolerance on `g(p, q)`.
    pub tolerance: f64,
}

pub const MIN_QUAD_NODES: usize = 16;

impl Default for FullPdfOptions {
    fn default() -> Self {
        FullPdfOptions {
            quad_nodes: MIN_QUAD_NODES,
            tolerance: 1e-6,
        }
    }
}

impl FullPdfOptions {
    fn quadrature(&self) -> Result<QuadratureOptions> {
        if self.quad_nodes < MIN_QUAD_NODES {
            return Err(Error::invalid(
                "quad_nodes",
                self.quad_nodes as f64,
                "must be at least 16",
            ));
        }
        require_positive("tolerance", self.tolerance)?;
        Ok(QuadratureOptions {
            abs_tol: self.tolerance,
            rel_tol: self.tolerance,
            max_subdivisions: 2000,
            initial_panels: self.quad_nodes,
        })
    }
}

/// `g(p, q)`, the density in rhombus coordinates.
///
/// The substitution `x = x₋ + (x₊ − x₋) sin²(t/2)`, `t ∈ [0, π]`, absorbs
/// the inverse-square-root endpoint singularities of the conditional
/// density, leaving the smooth integrand `1/(2π √((x + x₋)(x + x₊)))`.
pub fn density_pq(p: f64, q: f64, opts: &FullPdfOptions) -> Result<f64> {
    let quad = opts.quadrature()?;
    density_pq_with(p, q, &quad)
}

fn density_pq_with(p: f64, q: f64, quad: &QuadratureOptions) -> Result<f64> {
    let Some((x_lo, x_hi)) = x_interval(p, q) else {
        return Ok(0.0);
    };
    if x_lo == 0.0 {
        return Ok(f64::INFINITY);
    }
    let width = x_hi - x_lo;
    let integrand = |t: f64| {
        let s = (0.5 * t).sin();
        let x = x_lo + width * s * s;
        1.0 / (2.0 * std::f64::consts::PI * ((x + x_lo) * (x + x_hi)).sqrt())
    };
    Ok(integrate(integrand, 0.0, std::f64::consts::PI, quad)?.value)
}

/// Density of `h` at a single point.
pub fn pdf_h_full_at(
    h: Complex64,
    coords: &RhombusCoordinates,
    opts: &FullPdfOptions,
) -> Result<f64> {
    let (p, q) = coords.to_pq(h);
    Ok(density_pq(p, q, opts)? / coords.jacobian())
}

/// Rectangular grid of the complex plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexGrid {
    pub fn new(re: Vec<f64>, im: Vec<f64>) -> Self {
        ComplexGrid { re, im }
    }

    /// Uniform `nx × ny` grid over the rhombus bounding box, padded by 5%.
    pub fn covering(coords: &RhombusCoordinates, nx: usize, ny: usize) -> Self {
        let (x0, x1, y0, y1) = coords.bounding_box(0.05);
        ComplexGrid {
            re: linear_grid(x0, x1, nx),
            im: linear_grid(y0, y1, ny),
        }
    }
}

/// Default grid resolution per axis.
pub const DEFAULT_GRID: usize = 201;

/// Full PDF of `h` on `grid`; points outside the rhombus are 0 and the
/// origin is `+inf`. Grid points are evaluated independently in parallel,
/// so the result does not depend on the thread count.
pub fn pdf_h_full(
    grid: &ComplexGrid,
    kr: f64,
    alpha_bar: Complex64,
    quad_nodes: usize,
) -> Result<DistributionCurve> {
    pdf_h_full_with(
        grid,
        kr,
        alpha_bar,
        &FullPdfOptions {
            quad_nodes,
            ..Default::default()
        },
    )
}

pub fn pdf_h_full_with(
    grid: &ComplexGrid,
    kr: f64,
    alpha_bar: Complex64,
    opts: &FullPdfOptions,
) -> Result<DistributionCurve> {
    let coords = RhombusCoordinates::new(kr, alpha_bar)?;
    let quad = opts.quadrature()?;
    let ny = grid.im.len();
    let values: Result<Vec<f64>> = (0..grid.re.len() * ny)
        .into_par_iter()
        .map(|k| {
            let (p, q) = coords.to_pq(Complex64::new(grid.re[k / ny], grid.im[k % ny]));
            Ok(density_pq_with(p, q, &quad)? / coords.jacobian())
        })
        .collect();
    DistributionCurve::pdf2d(grid.re.clone(), grid.im.clone(), values?)
}
