use std::f64::consts::TAU;

use num_complex::Complex64;

use super::rng::generate;
use crate::error::{require_positive, Error, Result};
use crate::model::{
    alignment_factors, channel_coefficient, field_vector, scaled_far_field, scaled_near_field,
    vector::norm, LinkGeometry, UnitVector3,
};
use crate::region::RegionKind;

/// Maps two uniforms on `[0, 1)` to a uniform point on the unit sphere via
/// `z = 1 − 2u₁`, `φ = 2π u₂`.
pub fn sphere_point(u1: f64, u2: f64) -> UnitVector3 {
    let z = 1.0 - 2.0 * u1;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    UnitVector3::from_unit_unchecked([r * c, r * s, z])
}

/// One uniform draw from the unit sphere.
pub fn sample_unit_sphere<R: rand::Rng + ?Sized>(rng: &mut R) -> UnitVector3 {
    sphere_point(rng.random::<f64>(), rng.random::<f64>())
}

/// Which orientations are random in a channel draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelMode {
    /// `o_tx` and `o_rx` independent and uniform; `d = e_z`.
    BothRandom,
    /// Only `o_rx` is uniform.
    RxRandom { o_tx: UnitVector3, d: UnitVector3 },
}

impl ChannelMode {
    /// Fixed `o_tx` with `dᵀo_tx = dot` and `d = e_z`.
    pub fn rx_random_with_dot(dot: f64) -> Result<Self> {
        let d = UnitVector3::Z;
        Ok(ChannelMode::RxRandom {
            o_tx: UnitVector3::with_projection(d, dot)?,
            d,
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ChannelMode::BothRandom => "both-random",
            ChannelMode::RxRandom { .. } => "rx-random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleValues {
    Complex(Vec<Complex64>),
    Real(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub kr: Option<f64>,
    pub alpha_bar: Option<Complex64>,
    pub scenario: String,
}

/// Draws with their provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub values: SampleValues,
    pub seed: u64,
    pub meta: SampleMeta,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        match &self.values {
            SampleValues::Complex(v) => v.len(),
            SampleValues::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn complex(&self) -> Option<&[Complex64]> {
        match &self.values {
            SampleValues::Complex(v) => Some(v),
            SampleValues::Real(_) => None,
        }
    }

    pub fn real(&self) -> Option<&[f64]> {
        match &self.values {
            SampleValues::Real(v) => Some(v),
            SampleValues::Complex(_) => None,
        }
    }
}

fn require_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptySampleSet)
    } else {
        Ok(())
    }
}

/// `n` channel draws at the given `kr`.
pub fn sample_channel(
    n: usize,
    kr: f64,
    alpha_bar: Complex64,
    mode: ChannelMode,
    seed: u64,
) -> Result<SampleSet> {
    require_count(n)?;
    require_positive("kr", kr)?;
    let values = match mode {
        ChannelMode::BothRandom => generate(n, seed, 4, |u| {
            let o_tx = sphere_point(u[0], u[1]);
            let o_rx = sphere_point(u[2], u[3]);
            let g = LinkGeometry::new(kr, o_tx, o_rx, UnitVector3::Z, alpha_bar)
                .expect("kr validated above");
            channel_coefficient(&g).value
        }),
        ChannelMode::RxRandom { o_tx, d } => {
            let v = field_vector(kr, alpha_bar, &d, &o_tx);
            generate(n, seed, 2, |u| v.project(&sphere_point(u[0], u[1])))
        }
    };
    Ok(SampleSet {
        values: SampleValues::Complex(values),
        seed,
        meta: SampleMeta {
            kr: Some(kr),
            alpha_bar: Some(alpha_bar),
            scenario: mode.tag().to_string(),
        },
    })
}

fn real_set(values: Vec<f64>, seed: u64, scenario: String) -> SampleSet {
    SampleSet {
        values: SampleValues::Real(values),
        seed,
        meta: SampleMeta {
            kr: None,
            alpha_bar: None,
            scenario,
        },
    }
}

fn single_factor(region: RegionKind) -> Result<bool> {
    match region {
        RegionKind::NearField => Ok(true),
        RegionKind::FarField => Ok(false),
        RegionKind::Transition => Err(Error::RegionUnsupported(region)),
    }
}

/// `n` draws of `J_nf` or `J_ff` for independent uniform `o_tx`, `o_rx`.
pub fn sample_alignment(n: usize, region: RegionKind, seed: u64) -> Result<SampleSet> {
    require_count(n)?;
    let near = single_factor(region)?;
    let values = generate(n, seed, 4, |u| {
        let g = LinkGeometry::new(
            1.0,
            sphere_point(u[0], u[1]),
            sphere_point(u[2], u[3]),
            UnitVector3::Z,
            Complex64::new(1.0, 0.0),
        )
        .expect("kr = 1 is valid");
        let (j_nf, j_ff) = alignment_factors(&g);
        if near {
            j_nf
        } else {
            j_ff
        }
    });
    Ok(real_set(values, seed, format!("alignment-{region}")))
}

/// `n` draws of `β_nf = ‖b_nf‖` or `β_ff = ‖b_ff‖` for uniform `o_tx`.
pub fn sample_field_magnitude(n: usize, region: RegionKind, seed: u64) -> Result<SampleSet> {
    require_count(n)?;
    let near = single_factor(region)?;
    let d = UnitVector3::Z;
    let values = generate(n, seed, 2, |u| {
        let o = sphere_point(u[0], u[1]);
        if near {
            norm(&scaled_near_field(&d, &o))
        } else {
            norm(&scaled_far_field(&d, &o))
        }
    });
    Ok(real_set(values, seed, format!("field-magnitude-{region}")))
}

/// `n` draws of `dᵀo` for uniform `o` and a fixed direction `d`.
pub fn sample_projection(n: usize, d: UnitVector3, seed: u64) -> Result<SampleSet> {
    require_count(n)?;
    let values = generate(n, seed, 2, |u| d.dot(&sphere_point(u[0], u[1])));
    Ok(real_set(values, seed, "projection".to_string()))
}

/// `n` uniform sphere points.
pub fn sample_sphere_points(n: usize, seed: u64) -> Result<Vec<UnitVector3>> {
    require_count(n)?;
    let pts: Vec<[f64; 3]> = generate(n, seed, 2, |u| *sphere_point(u[0], u[1]).as_array());
    Ok(pts
        .into_iter()
        .map(UnitVector3::from_unit_unchecked)
        .collect())
}
