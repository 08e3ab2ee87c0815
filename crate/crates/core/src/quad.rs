//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The rule is open: integrand values at interval endpoints are never
//! requested, so integrable endpoint singularities (where the integrand
//! returns `+inf` or overflows) are tolerated as long as they sit on a
//! panel boundary.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error(
        "adaptive quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, error {error:e}, requested {requested:e})"
    )]
    NotConverged {
        estimate: f64,
        error: f64,
        requested: f64,
        subdivisions: usize,
    },
    #[error("integrand returned a non-finite value at x = {x:e}")]
    NonFinite { x: f64 },
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
}

/// Result of a converged integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Equal-width panels the interval is split into before adaptation.
    pub initial_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
            initial_panels: 1,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tolerance(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureOptions {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    pub fn panels(mut self, n: usize) -> Self {
        self.initial_panels = n.max(1);
        self
    }
}

// Kronrod abscissae (positive half, descending) and weights; every odd index
// is also a Gauss node.
#[allow(clippy::excessive_precision)]
const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel, QuadratureError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(QuadratureError::NonFinite { x: c });
    }
    let mut kronrod = WK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XK[i];
        let (x1, x2) = (c - dx, c + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(QuadratureError::NonFinite { x: x1 });
        }
        if !f2.is_finite() {
            return Err(QuadratureError::NonFinite { x: x2 });
        }
        kronrod += WK[i] * (f1 + f2);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    let value = kronrod * h;
    let diff = ((kronrod - gauss) * h).abs();
    // Standard QUADPACK-style pessimistic rescaling of the Gauss/Kronrod gap.
    let error = if diff == 0.0 {
        0.0
    } else {
        diff * (200.0 * diff / value.abs().max(f64::MIN_POSITIVE))
            .powf(1.5)
            .min(1.0)
    };
    let error = error.max(50.0 * f64::EPSILON * value.abs());
    Ok(Panel { a, b, value, error })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    opts: &QuadratureOptions,
) -> Result<Integral, QuadratureError> {
    integrate_with_breakpoints(f, &[a, b], opts)
}

/// Integrates `f` over `[p₀, p_last]` with panel boundaries at every given
/// point. Points must be strictly increasing; singularities belong there.
pub fn integrate_with_breakpoints<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    opts: &QuadratureOptions,
) -> Result<Integral, QuadratureError> {
    if points.len() < 2 {
        return Err(QuadratureError::InvalidInterval {
            a: f64::NAN,
            b: f64::NAN,
        });
    }
    for w in points.windows(2) {
        if !(w[0].is_finite() && w[1].is_finite() && w[0] <= w[1]) {
            return Err(QuadratureError::InvalidInterval { a: w[0], b: w[1] });
        }
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    let panels = opts.initial_panels.max(1);
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let width = (w[1] - w[0]) / panels as f64;
        for i in 0..panels {
            let a = w[0] + width * i as f64;
            let b = if i + 1 == panels { w[1] } else { a + width };
            heap.push(gk15(&mut f, a, b)?);
            evaluations += 15;
        }
    }
    let mut subdivisions = 0;
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        let requested = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= requested {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => {
                return Ok(Integral {
                    value: 0.0,
                    error: 0.0,
                    evaluations,
                })
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if subdivisions >= opts.max_subdivisions || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            return Err(QuadratureError::NotConverged {
                estimate: value,
                error,
                requested,
                subdivisions,
            });
        }
        heap.push(gk15(&mut f, worst.a, mid)?);
        heap.push(gk15(&mut f, mid, worst.b)?);
        evaluations += 30;
        subdivisions += 1;
    }
}

/// Integrates `f` over `[a, b]` after the map `x = a + (b−a) sin²(t/2)`,
/// `t ∈ [0, π]`, which turns inverse-square-root endpoint singularities
/// into bounded integrands. Distances to the nearer endpoint are formed
/// without cancellation.
pub fn integrate_cosine_mapped<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadratureOptions,
) -> Result<Integral, QuadratureError> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(QuadratureError::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let w = b - a;
    let mapped = |t: f64| {
        let (s, c) = (0.5 * t).sin_cos();
        let x = if t <= std::f64::consts::FRAC_PI_2 {
            a + w * s * s
        } else {
            b - w * c * c
        };
        f(x) * w * s * c
    };
    integrate(mapped, 0.0, std::f64::consts::PI, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cosine_map_removes_sqrt_endpoints() {
        let opts = QuadratureOptions::with_tolerance(1e-14, 1e-13);
        let r = integrate_cosine_mapped(|x| 1.0 / (1.0 - x * x).sqrt(), -1.0, 1.0, &opts).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::PI, epsilon = 1e-12);
        let r =
            integrate_cosine_mapped(|x| x / (4.0 * x * x - 1.0).sqrt(), 0.5, 1.0, &opts).unwrap();
        assert_relative_eq!(r.value, 3f64.sqrt() / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &Default::default()).unwrap();
        assert_relative_eq!(r.value, 64.0 / 6.0 - 1.0 / 6.0 - 9.0, epsilon = 1e-13);
    }

    #[test]
    fn endpoint_singularities() {
        let opts = QuadratureOptions::with_tolerance(1e-11, 1e-11);
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, &opts).unwrap();
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-9);
        let r = integrate(
            |x| 1.0 / (1.0 - x * x).sqrt(),
            -1.0,
            1.0,
            &QuadratureOptions::with_tolerance(1e-6, 1e-6),
        )
        .unwrap();
        assert_relative_eq!(r.value, std::f64::consts::PI, epsilon = 1e-5);
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &opts).unwrap();
        assert_relative_eq!(r.value, -1.0, epsilon = 1e-9);
    }

    #[test]
    fn breakpoints_handle_interior_kink() {
        let r = integrate_with_breakpoints(
            |x: f64| 1.0 / x.abs().sqrt(),
            &[-1.0, 0.0, 1.0],
            &QuadratureOptions::with_tolerance(1e-11, 1e-11),
        )
        .unwrap();
        assert_relative_eq!(r.value, 4.0, epsilon = 1e-9);
    }

    #[test]
    fn reports_nonconvergence() {
        let opts = QuadratureOptions {
            max_subdivisions: 3,
            ..QuadratureOptions::with_tolerance(1e-14, 1e-14)
        };
        let e = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &opts).unwrap_err();
        assert!(matches!(
            e,
            QuadratureError::NotConverged {
                subdivisions: 3,
                ..
            }
        ));
    }

    #[test]
    fn reports_nonfinite() {
        let e = integrate(
            |x| if x > 0.5 { f64::NAN } else { x },
            0.0,
            1.0,
            &Default::default(),
        )
        .unwrap_err();
        assert!(matches!(e, QuadratureError::NonFinite { .. }));
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate(|x| x, 1.0, 1.0, &Default::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }
}
