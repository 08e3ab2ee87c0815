use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Pdf1d,
    Cdf1d,
    Pdf2d,
}

/// Tabulated density or distribution function.
///
/// 1D curves hold `values[i]` at `x[i]`. 2D curves hold `values[i * ny + j]`
/// at `(x[i], y[j])`, with `x` the real and `y` the imaginary axis.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionCurve {
    pub kind: CurveKind,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub values: Vec<f64>,
}

fn check_axis(name: &'static str, axis: &[f64]) -> Result<()> {
    if axis.len() < 2 {
        return Err(Error::invalid(
            name,
            axis.len() as f64,
            "grid needs at least 2 points",
        ));
    }
    if axis.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid(
            name,
            f64::NAN,
            "grid must be strictly increasing",
        ));
    }
    Ok(())
}

/// Replaces non-finite entries by the mean of their finite neighbours
/// along each axis (0 if there are none). Used for integrable point
/// singularities that fall exactly on a grid node.
fn regularized(values: &[f64], nx: usize, ny: usize) -> Vec<f64> {
    let mut out = values.to_vec();
    for i in 0..nx {
        for j in 0..ny {
            if values[i * ny + j].is_finite() {
                continue;
            }
            let mut sum = 0.0;
            let mut count = 0;
            let mut visit = |ii: usize, jj: usize| {
                let v = values[ii * ny + jj];
                if v.is_finite() {
                    sum += v;
                    count += 1;
                }
            };
            if i > 0 {
                visit(i - 1, j);
            }
            if i + 1 < nx {
                visit(i + 1, j);
            }
            if j > 0 {
                visit(i, j - 1);
            }
            if j + 1 < ny {
                visit(i, j + 1);
            }
            out[i * ny + j] = if count > 0 { sum / count as f64 } else { 0.0 };
        }
    }
    out
}

fn trapezoid_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    let mut w = vec![0.0; n];
    for k in 0..n - 1 {
        let h = 0.5 * (axis[k + 1] - axis[k]);
        w[k] += h;
        w[k + 1] += h;
    }
    w
}

impl DistributionCurve {
    pub fn pdf1d(x: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new_1d(CurveKind::Pdf1d, x, values)
    }

    pub fn cdf1d(x: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let c = Self::new_1d(CurveKind::Cdf1d, x, values)?;
        if c.values.iter().any(|v| !(0.0..=1.0).contains(v))
            || c.values.windows(2).any(|w| w[1] < w[0])
        {
            return Err(Error::invalid(
                "cdf",
                f64::NAN,
                "must be nondecreasing within [0, 1]",
            ));
        }
        Ok(c)
    }

    pub fn from_fn_1d(kind: CurveKind, x: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = x.iter().map(|&t| f(t)).collect();
        match kind {
            CurveKind::Cdf1d => Self::cdf1d(x, values),
            _ => Self::pdf1d(x, values),
        }
    }

    fn new_1d(kind: CurveKind, x: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_axis("x", &x)?;
        if values.len() != x.len() {
            return Err(Error::invalid(
                "values",
                values.len() as f64,
                "length must match grid",
            ));
        }
        if values.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::invalid("values", f64::NAN, "must be nonnegative"));
        }
        Ok(DistributionCurve {
            kind,
            x,
            y: Vec::new(),
            values,
        })
    }

    pub fn pdf2d(x: Vec<f64>, y: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_axis("x", &x)?;
        check_axis("y", &y)?;
        if values.len() != x.len() * y.len() {
            return Err(Error::invalid(
                "values",
                values.len() as f64,
                "length must be nx * ny",
            ));
        }
        if values.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::invalid("values", f64::NAN, "must be nonnegative"));
        }
        Ok(DistributionCurve {
            kind: CurveKind::Pdf2d,
            x,
            y,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at grid node `(i, j)` of a 2D curve.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.y.len() + j]
    }

    /// Trapezoidal integral of a 1D density or mass of a 2D density.
    /// Non-finite nodes are regularized first.
    pub fn integral(&self) -> f64 {
        match self.kind {
            CurveKind::Pdf2d => {
                let (nx, ny) = (self.x.len(), self.y.len());
                let vals = regularized(&self.values, nx, ny);
                let wx = trapezoid_weights(&self.x);
                let wy = trapezoid_weights(&self.y);
                let mut total = 0.0;
                for i in 0..nx {
                    let row: f64 = (0..ny).map(|j| wy[j] * vals[i * ny + j]).sum();
                    total += wx[i] * row;
                }
                total
            }
            _ => {
                let vals = regularized(&self.values, 1, self.values.len());
                trapezoid_weights(&self.x)
                    .iter()
                    .zip(&vals)
                    .map(|(w, v)| w * v)
                    .sum()
            }
        }
    }

    /// Cumulative trapezoidal integral of a 1D density, starting at 0.
    /// Second-order accurate in the grid spacing for smooth densities.
    pub fn cumulative(&self) -> Result<DistributionCurve> {
        if self.kind != CurveKind::Pdf1d {
            return Err(Error::invalid(
                "kind",
                f64::NAN,
                "cumulative needs a 1D density",
            ));
        }
        let vals = regularized(&self.values, 1, self.values.len());
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(vals.len());
        out.push(0.0);
        for k in 1..vals.len() {
            acc += 0.5 * (vals[k] + vals[k - 1]) * (self.x[k] - self.x[k - 1]);
            out.push(acc.min(1.0));
        }
        Self::cdf1d(self.x.clone(), out)
    }
}

/// `n` points on `[a, b]` clustered at both ends, `a + (b−a)(1 − cos(πk/(n−1)))/2`.
pub fn cosine_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|k| {
            if k == 0 {
                a
            } else if k == n - 1 {
                b
            } else {
                let t = std::f64::consts::PI * k as f64 / (n - 1) as f64;
                a + (b - a) * 0.5 * (1.0 - t.cos())
            }
        })
        .collect()
}

/// `n` equally spaced points on `[a, b]` with exact endpoints.
pub fn linear_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let h = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|k| if k == n - 1 { b } else { a + h * k as f64 })
        .collect()
}
