//! Deterministic dipole-to-dipole channel.
//!
//! The channel coefficient between a transmitting and a receiving dipole is
//!
//! ```text
//! h = α ( (1/(kr)³ + j/(kr)²) J_nf + 1/(2kr) J_ff ),   α = ᾱ e^{-jkr}
//! ```
//!
//! with the alignment factors `J_nf = o_rxᵀ b_nf`, `J_ff = o_rxᵀ b_ff` and the
//! scaled fields `b_nf = ½(3ddᵀ − I) o_tx`, `b_ff = (I − ddᵀ) o_tx`.

use num_complex::Complex64;

use super::vector::{cross, dot, norm, scale, sub, UnitVector3, Vec3};
use crate::error::{require_positive, Result};

/// `|ρ|` above `1 - RHO_DEGENERACY_MARGIN` counts as linearly dependent.
pub const RHO_DEGENERACY_MARGIN: f64 = 1e-9;

/// Component norms below this fraction of the reference scale count as zero.
pub const NORM_DEGENERACY_RATIO: f64 = 1e-15;

/// Radial dependence of the near- and far-field terms at a given `kr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationTerms {
    /// `1/(kr)³ + j/(kr)²`
    pub near: Complex64,
    /// `1/(2kr)`
    pub far: f64,
}

impl PropagationTerms {
    pub fn new(kr: f64) -> Self {
        debug_assert!(kr > 0.0, "kr must be positive");
        let inv = 1.0 / kr;
        PropagationTerms {
            near: Complex64::new(inv * inv * inv, inv * inv),
            far: 0.5 * inv,
        }
    }
}

/// Full prefactor `α = ᾱ e^{-jkr}`.
pub fn prefactor(kr: f64, alpha_bar: Complex64) -> Complex64 {
    alpha_bar * Complex64::from_polar(1.0, -kr)
}

/// Geometry and technical prefactor of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    kr: f64,
    pub o_tx: UnitVector3,
    pub o_rx: UnitVector3,
    /// TX-to-RX direction.
    pub d: UnitVector3,
    pub alpha_bar: Complex64,
}

impl LinkGeometry {
    pub fn new(
        kr: f64,
        o_tx: UnitVector3,
        o_rx: UnitVector3,
        d: UnitVector3,
        alpha_bar: Complex64,
    ) -> Result<Self> {
        require_positive("kr", kr)?;
        Ok(LinkGeometry {
            kr,
            o_tx,
            o_rx,
            d,
            alpha_bar,
        })
    }

    pub fn kr(&self) -> f64 {
        self.kr
    }

    pub fn prefactor(&self) -> Complex64 {
        prefactor(self.kr, self.alpha_bar)
    }
}

/// `b_nf = ½(3ddᵀ − I) o_tx`; magnitude in `[½, 1]`.
pub fn scaled_near_field(d: &UnitVector3, o_tx: &UnitVector3) -> Vec3 {
    let p = d.dot(o_tx);
    let dd = d.as_array();
    let o = o_tx.as_array();
    [
        0.5 * (3.0 * p * dd[0] - o[0]),
        0.5 * (3.0 * p * dd[1] - o[1]),
        0.5 * (3.0 * p * dd[2] - o[2]),
    ]
}

/// `b_ff = (I − ddᵀ) o_tx`; magnitude in `[0, 1]`.
pub fn scaled_far_field(d: &UnitVector3, o_tx: &UnitVector3) -> Vec3 {
    let p = d.dot(o_tx);
    sub(o_tx.as_array(), &scale(d.as_array(), p))
}

/// Near- and far-field alignment factors `(J_nf, J_ff)`.
pub fn alignment_factors(g: &LinkGeometry) -> (f64, f64) {
    let b_nf = scaled_near_field(&g.d, &g.o_tx);
    let b_ff = scaled_far_field(&g.d, &g.o_tx);
    (dot(g.o_rx.as_array(), &b_nf), dot(g.o_rx.as_array(), &b_ff))
}

/// Power transfer efficiency carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelCoefficient {
    pub value: Complex64,
}

impl ChannelCoefficient {
    pub fn new(value: Complex64) -> Self {
        ChannelCoefficient { value }
    }

    /// `η = |h|²`
    pub fn pte(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// Complex field vector `v` at the receiver, so that `h = o_rxᵀ v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFieldVector {
    components: [Complex64; 3],
    /// Scale used by the degeneracy test on the component norms.
    reference_scale: f64,
}

impl ComplexFieldVector {
    /// Wraps raw components; the degeneracy scale is the vector's own norm.
    pub fn from_components(components: [Complex64; 3]) -> Self {
        let reference_scale = components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        ComplexFieldVector {
            components,
            reference_scale,
        }
    }

    /// Builds a vector with prescribed `v_Re`, `v_Im` and correlation `ρ`
    /// (real part along x, imaginary part in the xy-plane).
    pub fn from_statistics(v_re: f64, v_im: f64, rho: f64) -> Self {
        let s = (1.0 - rho * rho).max(0.0).sqrt();
        Self::from_components([
            Complex64::new(v_re, v_im * rho),
            Complex64::new(0.0, v_im * s),
            Complex64::new(0.0, 0.0),
        ])
    }

    pub fn components(&self) -> &[Complex64; 3] {
        &self.components
    }

    pub fn re(&self) -> Vec3 {
        self.components.map(|c| c.re)
    }

    pub fn im(&self) -> Vec3 {
        self.components.map(|c| c.im)
    }

    /// `v_Re = ‖Re v‖`
    pub fn v_re_norm(&self) -> f64 {
        norm(&self.re())
    }

    /// `v_Im = ‖Im v‖`
    pub fn v_im_norm(&self) -> f64 {
        norm(&self.im())
    }

    /// `‖Re v × Im v‖ = v_Re v_Im √(1−ρ²)`, computed without cancellation.
    pub fn cross_norm(&self) -> f64 {
        norm(&cross(&self.re(), &self.im()))
    }

    /// Correlation coefficient `ρ` of real and imaginary part; 0 if either
    /// part vanishes.
    pub fn rho(&self) -> f64 {
        let denom = self.v_re_norm() * self.v_im_norm();
        if denom == 0.0 {
            return 0.0;
        }
        (dot(&self.re(), &self.im()) / denom).clamp(-1.0, 1.0)
    }

    /// `√(1−ρ²)`, from the cross product.
    pub fn rho_complement(&self) -> f64 {
        let denom = self.v_re_norm() * self.v_im_norm();
        if denom == 0.0 {
            return 0.0;
        }
        (self.cross_norm() / denom).min(1.0)
    }

    /// `true` if `Re v` and `Im v` are linearly independent, i.e. the
    /// conditional law of `h` has a density on an ellipse.
    pub fn is_linearly_independent(&self) -> bool {
        let floor = NORM_DEGENERACY_RATIO * self.reference_scale;
        if self.v_re_norm() <= floor || self.v_im_norm() <= floor {
            return false;
        }
        self.rho().abs() <= 1.0 - RHO_DEGENERACY_MARGIN
    }

    /// `o_rxᵀ v`
    pub fn project(&self, o_rx: &UnitVector3) -> Complex64 {
        let o = o_rx.as_array();
        self.components[0] * o[0] + self.components[1] * o[1] + self.components[2] * o[2]
    }

    /// Euclidean norm of the complex 3-vector.
    pub fn norm(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `v = α((1/(kr)³ + j/(kr)²) b_nf + 1/(2kr) b_ff)`.
pub fn field_vector(
    kr: f64,
    alpha_bar: Complex64,
    d: &UnitVector3,
    o_tx: &UnitVector3,
) -> ComplexFieldVector {
    let terms = PropagationTerms::new(kr);
    let alpha = prefactor(kr, alpha_bar);
    let b_nf = scaled_near_field(d, o_tx);
    let b_ff = scaled_far_field(d, o_tx);
    let near = alpha * terms.near;
    let far = alpha * terms.far;
    let components = [0, 1, 2].map(|i| near * b_nf[i] + far * b_ff[i]);
    ComplexFieldVector {
        components,
        reference_scale: alpha.norm(),
    }
}

pub fn channel_coefficient(g: &LinkGeometry) -> ChannelCoefficient {
    let terms = PropagationTerms::new(g.kr);
    let (j_nf, j_ff) = alignment_factors(g);
    ChannelCoefficient::new(g.prefactor() * (terms.near * j_nf + terms.far * j_ff))
}

/// Channel of the coaxial arrangement `o_tx = o_rx = d`.
pub fn h_coax(kr: f64, alpha_bar: Complex64) -> Complex64 {
    prefactor(kr, alpha_bar) * PropagationTerms::new(kr).near
}

/// Channel of the parallel arrangement `o_tx = o_rx ⊥ d`.
pub fn h_copl(kr: f64, alpha_bar: Complex64) -> Complex64 {
    let t = PropagationTerms::new(kr);
    prefactor(kr, alpha_bar) * 0.5 * (-t.near + 2.0 * t.far)
}

/// The `kr` at which the coaxial and parallel arrangements transfer equal
/// power: `√((√37 + 5)/2) ≈ 2.3540`.
pub fn kr_threshold() -> f64 {
    ((37f64.sqrt() + 5.0) / 2.0).sqrt()
}

/// Maximum PTE over all orientations at a given `kr`.
pub fn optimal_pte(kr: f64, alpha_bar: Complex64) -> f64 {
    if kr <= kr_threshold() {
        h_coax(kr, alpha_bar).norm_sqr()
    } else {
        h_copl(kr, alpha_bar).norm_sqr()
    }
}

/// The matrix `A` of the bilinear form `h = o_rxᵀ A o_tx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelMatrix(pub [[Complex64; 3]; 3]);

impl ChannelMatrix {
    pub fn apply(&self, x: &Vec3) -> [Complex64; 3] {
        self.0
            .map(|row| row[0] * x[0] + row[1] * x[1] + row[2] * x[2])
    }

    pub fn bilinear(&self, o_rx: &UnitVector3, o_tx: &UnitVector3) -> Complex64 {
        let ax = self.apply(o_tx.as_array());
        let r = o_rx.as_array();
        ax[0] * r[0] + ax[1] * r[1] + ax[2] * r[2]
    }
}

/// `A = α((1/(kr)³ + j/(kr)²)(3/2 ddᵀ − ½I) + 1/(2kr)(I − ddᵀ))`, assembled
/// from outer products.
pub fn channel_matrix(kr: f64, alpha_bar: Complex64, d: &UnitVector3) -> ChannelMatrix {
    let t = PropagationTerms::new(kr);
    let alpha = prefactor(kr, alpha_bar);
    let dd = d.as_array();
    let mut a = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let outer = dd[i] * dd[j];
            let eye = if i == j { 1.0 } else { 0.0 };
            *entry = alpha * (t.near * (1.5 * outer - 0.5 * eye) + t.far * (eye - outer));
        }
    }
    ChannelMatrix(a)
}

/// Effective `|h|` of a SIMO link into three orthogonal receive dipoles with
/// maximum-ratio combining: `‖v‖`.
pub fn simo_mrc_magnitude(v: &ComplexFieldVector) -> f64 {
    v.norm()
}
