//! Law of `h` for a fixed field vector `v` and uniformly random `o_rx`.
//!
//! With the Gram–Schmidt factor
//!
//! ```text
//! E = [ v_Re        0          ]
//!     [ v_Im ρ   v_Im √(1−ρ²)  ]
//! ```
//!
//! the pair `(Re h, Im h)` equals `E (m, n)` where `(m, n)` are two
//! orthonormal projections of `o_rx`, whose joint density is `ψ(m² + n²)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ComplexFieldVector;
use crate::quad::{integrate, QuadratureOptions};
use crate::region::RegionKind;

/// Joint density of two orthonormal projections of a uniform point on the
/// unit sphere, as a function of `m² + n²`. `+inf` at `x = 1`.
pub fn psi(x: f64) -> f64 {
    if !(0.0..=1.0).contains(&x) {
        0.0
    } else if x == 1.0 {
        f64::INFINITY
    } else {
        1.0 / (2.0 * PI * (1.0 - x).sqrt())
    }
}

/// Lower-triangular factor of the real/imaginary decomposition of `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct GramSchmidt {
    v_re: f64,
    v_im: f64,
    rho: f64,
    /// `√(1−ρ²)`
    rho_c: f64,
}

impl GramSchmidt {
    fn new(v: &ComplexFieldVector) -> Result<Self> {
        if !v.is_linearly_independent() {
            return Err(Error::DegenerateFieldVector {
                rho_abs: v.rho().abs(),
            });
        }
        Ok(GramSchmidt {
            v_re: v.v_re_norm(),
            v_im: v.v_im_norm(),
            rho: v.rho(),
            rho_c: v.rho_complement(),
        })
    }

    /// `det E = v_Re v_Im √(1−ρ²)`
    fn det(&self) -> f64 {
        self.v_re * self.v_im * self.rho_c
    }

    /// `E⁻¹ (x, y)` by forward substitution.
    fn solve(&self, x: f64, y: f64) -> (f64, f64) {
        let m = x / self.v_re;
        let n = (y / self.v_im - self.rho * m) / self.rho_c;
        (m, n)
    }

    fn radius_sq(&self, x: f64, y: f64) -> f64 {
        let (m, n) = self.solve(x, y);
        m * m + n * n
    }
}

/// Conditional density `f(h | v) = ψ(‖E⁻¹h‖²) / det E` of `h` in the
/// complex plane.
pub fn pdf_h_conditional(h: Complex64, v: &ComplexFieldVector) -> Result<f64> {
    let e = GramSchmidt::new(v)?;
    Ok(psi(e.radius_sq(h.re, h.im)) / e.det())
}

/// Support ellipse of the conditional law and the quantities of its
/// small-`s` CDF bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSupport {
    pub v_re_norm: f64,
    pub v_im_norm: f64,
    pub rho: f64,
    /// `½(v_Re² + v_Im²)`
    pub a: f64,
    /// `v_Re v_Im √(1−ρ²)`
    pub b: f64,
    /// Squared semi-minor axis, `a − √(a² − b²)`.
    pub s0: f64,
    pub degenerate: bool,
}

impl EllipseSupport {
    /// Squared semi-major axis `a + √(a² − b²)`.
    pub fn s1(&self) -> f64 {
        self.a + (self.a * self.a - self.b * self.b).max(0.0).sqrt()
    }
}

/// Never fails: a degenerate `v` yields `s0 = 0` with the flag set.
pub fn support_ellipse(v: &ComplexFieldVector) -> EllipseSupport {
    let v_re = v.v_re_norm();
    let v_im = v.v_im_norm();
    let a = 0.5 * (v_re * v_re + v_im * v_im);
    let degenerate = !v.is_linearly_independent();
    let b = if degenerate { 0.0 } else { v.cross_norm() };
    // b² / (a + √(a²−b²)) avoids cancellation in a − √(a²−b²).
    let root = (a * a - b * b).max(0.0).sqrt();
    let s0 = if a + root > 0.0 {
        b * b / (a + root)
    } else {
        0.0
    };
    EllipseSupport {
        v_re_norm: v_re,
        v_im_norm: v_im,
        rho: v.rho(),
        a,
        b,
        s0,
        degenerate,
    }
}

/// Bounds `s/(2b) ≤ P(|h|² ≤ s | v) ≤ s/(2b) (1 − s/s0)^{−1/2}`, valid for
/// `0 ≤ s < s0`.
pub fn cdf_pte_conditional_bounds(s: f64, v: &ComplexFieldVector) -> Result<(f64, f64)> {
    let e = support_ellipse(v);
    if e.degenerate {
        return Err(Error::DegenerateFieldVector {
            rho_abs: e.rho.abs(),
        });
    }
    if !(s >= 0.0) {
        return Err(Error::invalid("s", s, "must be nonnegative"));
    }
    if s >= e.s0 {
        return Err(Error::OutsideBoundDomain { s, s0: e.s0 });
    }
    let lower = s / (2.0 * e.b);
    Ok((lower, lower / (1.0 - s / e.s0).sqrt()))
}

/// `P(|h|² ≤ s | v)` by integrating the conditional density over the disk
/// of radius `√s`.
///
/// The radial integral is done in closed form: along direction `θ` the
/// density is `ψ(r² q(θ))/det E` with `q(θ) = ‖E⁻¹(cos θ, sin θ)‖²`, so
/// only the angular integral is numerical.
pub fn cdf_pte_conditional(
    s: f64,
    v: &ComplexFieldVector,
    opts: &QuadratureOptions,
) -> Result<f64> {
    let e = GramSchmidt::new(v)?;
    if !(s >= 0.0) {
        return Err(Error::invalid("s", s, "must be nonnegative"));
    }
    // q(θ) has period π; integrate over one period and double.
    let angular = |theta: f64| {
        let q = e.radius_sq(theta.cos(), theta.sin());
        (1.0 - (1.0 - s * q).max(0.0).sqrt()) / q
    };
    let total = integrate(angular, 0.0, PI, opts)?.value;
    Ok((2.0 * total / (2.0 * PI * e.det())).clamp(0.0, 1.0))
}

/// Small-`s` approximation `2 f_{J*}(0) √(s/η_opt)` of the PTE CDF in the
/// near- or far-field region. It overestimates the CDF.
pub fn cdf_pte_region_approx(s: f64, region: RegionKind, eta_opt: f64) -> Result<f64> {
    let f0 = region
        .alignment_density_at_zero()
        .ok_or(Error::RegionUnsupported(region))?;
    if !(s >= 0.0) {
        return Err(Error::invalid("s", s, "must be nonnegative"));
    }
    crate::error::require_positive("eta_opt", eta_opt)?;
    Ok(2.0 * f0 * (s / eta_opt).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{field_vector, UnitVector3};
    use crate::quad::{integrate_cosine_mapped, integrate_with_breakpoints};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn fig5_vector() -> ComplexFieldVector {
        let z = UnitVector3::Z;
        let o = UnitVector3::with_projection(z, 0.3).unwrap();
        field_vector(2.0, Complex64::new(1e-2, 0.0), &z, &o)
    }

    fn opts() -> QuadratureOptions {
        QuadratureOptions::with_tolerance(1e-13, 1e-11)
    }

    #[test]
    fn psi_values() {
        assert_relative_eq!(psi(0.0), 1.0 / (2.0 * PI), epsilon = 1e-16);
        assert_eq!(psi(1.0), f64::INFINITY);
        assert_relative_eq!(psi(0.75), 1.0 / PI, epsilon = 1e-15);
        assert_eq!(psi(1.01), 0.0);
        assert_eq!(psi(-0.1), 0.0);
    }

    #[test]
    fn psi_is_a_density_on_the_disk() {
        // ∫ ψ(r²) 2πr dr over [0, 1].
        let r = integrate_cosine_mapped(|r| psi(r * r) * 2.0 * PI * r, 0.0, 1.0, &opts()).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn conditional_density_at_origin() {
        let v = fig5_vector();
        let b = v.v_re_norm() * v.v_im_norm() * (1.0 - v.rho().powi(2)).sqrt();
        let f0 = pdf_h_conditional(Complex64::new(0.0, 0.0), &v).unwrap();
        assert_relative_eq!(f0, 1.0 / (2.0 * PI * b), max_relative = 1e-12);
    }

    #[test]
    fn conditional_density_vanishes_outside() {
        let v = fig5_vector();
        let far = Complex64::new(2.0 * v.v_re_norm(), 0.0);
        assert_eq!(pdf_h_conditional(far, &v).unwrap(), 0.0);
        let far = Complex64::new(0.0, 1.5 * v.v_im_norm());
        assert_eq!(pdf_h_conditional(far, &v).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_vector_is_rejected() {
        let z = UnitVector3::Z;
        let v = field_vector(2.0, Complex64::new(1e-2, 0.0), &z, &z);
        assert!(matches!(
            pdf_h_conditional(Complex64::new(0.0, 0.0), &v),
            Err(Error::DegenerateFieldVector { .. })
        ));
        let e = support_ellipse(&v);
        assert!(e.degenerate);
        assert_eq!(e.s0, 0.0);
        assert!(cdf_pte_conditional_bounds(0.0, &v).is_err());
    }

    /// `(x, y)`-range of the support along a vertical line `Re h = x`.
    fn vertical_chord(v: &ComplexFieldVector, x: f64) -> (f64, f64) {
        let (re, im, rho) = (v.v_re_norm(), v.v_im_norm(), v.rho());
        let m = x / re;
        let w = (1.0 - m * m).max(0.0).sqrt();
        let rc = v.rho_complement();
        (im * (rho * m - rc * w), im * (rho * m + rc * w))
    }

    #[test]
    fn conditional_density_integrates_to_one() {
        let v = fig5_vector();
        let re = v.v_re_norm();
        let o = QuadratureOptions::with_tolerance(1e-10, 1e-9);
        let inner = |x: f64| {
            let (lo, hi) = vertical_chord(&v, x);
            integrate_cosine_mapped(
                |y| pdf_h_conditional(Complex64::new(x, y), &v).unwrap(),
                lo,
                hi,
                &o,
            )
            .unwrap()
            .value
        };
        let total = integrate(inner, -re, re, &o).unwrap().value;
        assert!((total - 1.0).abs() < 1e-3, "total = {total}");
    }

    #[test]
    fn real_part_marginal_is_uniform() {
        let v = fig5_vector();
        let re = v.v_re_norm();
        let o = QuadratureOptions::with_tolerance(1e-6, 1e-9);
        for i in 0..21 {
            let x = re * (-0.95 + 1.9 * i as f64 / 20.0);
            let (lo, hi) = vertical_chord(&v, x);
            let m = integrate_cosine_mapped(
                |y| pdf_h_conditional(Complex64::new(x, y), &v).unwrap(),
                lo,
                hi,
                &o,
            )
            .unwrap()
            .value;
            assert!((m * 2.0 * re - 1.0).abs() < 1e-4, "x = {x}: {m}");
        }
    }

    #[test]
    fn ellipse_examples() {
        let e = support_ellipse(&ComplexFieldVector::from_statistics(1.0, 1.0, 0.0));
        assert_relative_eq!(e.a, 1.0, epsilon = 1e-15);
        assert_relative_eq!(e.b, 1.0, epsilon = 1e-15);
        assert_relative_eq!(e.s0, 1.0, epsilon = 1e-15);
        let e = support_ellipse(&ComplexFieldVector::from_statistics(2.0, 1.0, 0.0));
        assert_relative_eq!(e.a, 2.5, epsilon = 1e-15);
        assert_relative_eq!(e.b, 2.0, epsilon = 1e-15);
        assert_relative_eq!(e.s0, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn fig5_ellipse_numbers() {
        let e = support_ellipse(&fig5_vector());
        assert_relative_eq!(e.v_re_norm, 1.9027e-3, max_relative = 1e-4);
        assert_relative_eq!(e.v_im_norm, 1.3053e-3, max_relative = 1e-4);
        assert_relative_eq!(e.rho.abs(), 0.69381, max_relative = 1e-4);
        assert_relative_eq!(e.s0 / (2.0 * e.b), 0.19300, max_relative = 1e-4);
    }

    #[test]
    fn bound_examples() {
        let v = fig5_vector();
        let e = support_ellipse(&v);
        let (l, u) = cdf_pte_conditional_bounds(e.s0 / 2.0, &v).unwrap();
        assert_relative_eq!(u, 2f64.sqrt() * l, max_relative = 1e-14);
        let (l, u) = cdf_pte_conditional_bounds(e.s0 * 1e-9, &v).unwrap();
        assert_relative_eq!(l / u, 1.0, epsilon = 1e-9);
        assert!(matches!(
            cdf_pte_conditional_bounds(e.s0, &v),
            Err(Error::OutsideBoundDomain { .. })
        ));
        assert!(cdf_pte_conditional_bounds(-1.0, &v).is_err());
    }

    #[test]
    fn exact_cdf_sandwiched_by_bounds() {
        let v = fig5_vector();
        let e = support_ellipse(&v);
        for frac in [1e-3, 1e-2, 0.1, 0.3, 0.5, 0.8, 0.95] {
            let s = frac * e.s0;
            let (l, u) = cdf_pte_conditional_bounds(s, &v).unwrap();
            let f = cdf_pte_conditional(s, &v, &opts()).unwrap();
            assert!(l <= f && f <= u, "s = {frac} s0: {l} {f} {u}");
        }
    }

    #[test]
    fn exact_cdf_limits() {
        let v = fig5_vector();
        let e = support_ellipse(&v);
        assert_eq!(cdf_pte_conditional(0.0, &v, &opts()).unwrap(), 0.0);
        let full = cdf_pte_conditional(e.s1() * 1.01, &v, &opts()).unwrap();
        assert_relative_eq!(full, 1.0, epsilon = 1e-9);
    }

    /// Polar 2D quadrature of the density over the disk as a second route.
    #[test]
    fn exact_cdf_matches_direct_disk_integral() {
        let v = fig5_vector();
        let e = support_ellipse(&v);
        let o = QuadratureOptions::with_tolerance(1e-12, 1e-10);
        for frac in [0.2, 0.9] {
            let s = frac * e.s0;
            let radial = |theta: f64| {
                let (c, sn) = (theta.cos(), theta.sin());
                integrate(
                    |r| r * pdf_h_conditional(Complex64::new(r * c, r * sn), &v).unwrap(),
                    0.0,
                    s.sqrt(),
                    &o,
                )
                .unwrap()
                .value
            };
            let direct = integrate_with_breakpoints(radial, &[0.0, PI, 2.0 * PI], &o)
                .unwrap()
                .value;
            let closed = cdf_pte_conditional(s, &v, &opts()).unwrap();
            assert_relative_eq!(direct, closed, max_relative = 1e-8);
        }
    }

    #[test]
    fn region_approx_examples() {
        let f = cdf_pte_region_approx(1e-4, RegionKind::FarField, 1.0).unwrap();
        assert_relative_eq!(f, 2.0 * (PI / 4.0) * 1e-2, epsilon = 1e-15);
        assert_relative_eq!(f, 0.015_708, epsilon = 1e-6);
        assert_eq!(
            cdf_pte_region_approx(0.0, RegionKind::NearField, 3.0).unwrap(),
            0.0
        );
        let n = cdf_pte_region_approx(1e-4 * 7.0, RegionKind::NearField, 7.0).unwrap();
        assert_relative_eq!(n, 0.015_207, epsilon = 1e-6);
        assert!(matches!(
            cdf_pte_region_approx(1e-4, RegionKind::Transition, 1.0),
            Err(Error::RegionUnsupported(RegionKind::Transition))
        ));
    }

    proptest! {
        #[test]
        fn ellipse_invariants(re in 1e-3..10.0f64, im in 1e-3..10.0f64, rho in -0.999..0.999f64) {
            let v = ComplexFieldVector::from_statistics(re, im, rho);
            let e = support_ellipse(&v);
            prop_assert!(!e.degenerate);
            prop_assert!(e.s0 >= 0.0 && e.s0 <= e.b * (1.0 + 1e-12) && e.b <= e.a * (1.0 + 1e-12));
            // Characteristic polynomial of EᵀE: λ² − 2aλ + b² = 0.
            let (t, d) = (re * re + im * im, (re * im) * (re * im) * (1.0 - rho * rho));
            let lam = 0.5 * (t - (t * t - 4.0 * d).max(0.0).sqrt());
            prop_assert!((e.s0 - lam).abs() <= 1e-9 * e.a);
            prop_assert!((e.s0 * e.s1() - e.b * e.b).abs() <= 1e-10 * e.b * e.b);
        }

        #[test]
        fn conditional_density_symmetric(t in 0.0..6.3f64, r in 0.0..1.2f64) {
            let v = fig5_vector();
            let h = Complex64::from_polar(r * v.v_re_norm(), t);
            let a = pdf_h_conditional(h, &v).unwrap();
            let b = pdf_h_conditional(-h, &v).unwrap();
            prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
        }
    }
}
