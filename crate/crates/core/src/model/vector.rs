use std::ops::Neg;

use crate::error::{Error, Result};

/// Norms below this are rejected rather than normalized.
pub const MIN_NORMALIZABLE: f64 = 1e-9;

pub type Vec3 = [f64; 3];

#[inline]
pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// A direction in R³: antenna axis or TX-to-RX direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3([f64; 3]);

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3([1.0, 0.0, 0.0]);
    pub const Y: UnitVector3 = UnitVector3([0.0, 1.0, 0.0]);
    pub const Z: UnitVector3 = UnitVector3([0.0, 0.0, 1.0]);

    /// Normalizes `(x, y, z)`; rejects vectors shorter than
    /// [`MIN_NORMALIZABLE`] and non-finite input.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_array([x, y, z])
    }

    pub fn from_array(v: Vec3) -> Result<Self> {
        let n = norm(&v);
        if !n.is_finite() || n < MIN_NORMALIZABLE {
            return Err(Error::DegenerateVector { norm: n });
        }
        Ok(UnitVector3(scale(&v, 1.0 / n)))
    }

    /// Builds from spherical coordinates: polar angle from +z and azimuth.
    pub fn from_spherical(polar: f64, azimuth: f64) -> Self {
        let (st, ct) = polar.sin_cos();
        let (sp, cp) = azimuth.sin_cos();
        UnitVector3([st * cp, st * sp, ct])
    }

    /// Trusted constructor for callers that already produce unit vectors
    /// (e.g. the sphere sampler). Only checked in debug builds.
    pub(crate) fn from_unit_unchecked(v: Vec3) -> Self {
        debug_assert!((norm(&v) - 1.0).abs() < 1e-12, "not a unit vector: {v:?}");
        UnitVector3(v)
    }

    /// A unit vector whose projection onto `axis` equals `projection`.
    ///
    /// The perpendicular part points along a fixed helper direction so the
    /// result is deterministic.
    pub fn with_projection(axis: UnitVector3, projection: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&projection) {
            return Err(Error::invalid(
                "projection",
                projection,
                "must lie in [-1, 1]",
            ));
        }
        let perp = axis.any_perpendicular();
        let s = (1.0 - projection * projection).max(0.0).sqrt();
        let v = [
            projection * axis.0[0] + s * perp.0[0],
            projection * axis.0[1] + s * perp.0[1],
            projection * axis.0[2] + s * perp.0[2],
        ];
        Self::from_array(v)
    }

    /// Some unit vector orthogonal to `self`.
    pub fn any_perpendicular(&self) -> UnitVector3 {
        // Cross with the coordinate axis least aligned with self.
        let a = self.0.map(f64::abs);
        let helper = if a[0] <= a[1] && a[0] <= a[2] {
            [1.0, 0.0, 0.0]
        } else if a[1] <= a[2] {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let c = cross(&self.0, &helper);
        UnitVector3(scale(&c, 1.0 / norm(&c)))
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn as_array(&self) -> &Vec3 {
        &self.0
    }

    pub fn dot(&self, other: &UnitVector3) -> f64 {
        dot(&self.0, &other.0)
    }
}

impl Neg for UnitVector3 {
    type Output = UnitVector3;
    fn neg(self) -> UnitVector3 {
        UnitVector3(self.0.map(|c| -c))
    }
}
