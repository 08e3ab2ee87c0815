//! Marginal laws of the alignment factors `J_nf`, `J_ff` and the field
//! magnitudes `β_nf`, `β_ff` under uniformly random orientations.
//!
//! Densities return `+inf` at their integrable singular points.

use std::f64::consts::{FRAC_PI_2, PI};

/// `arcosh 2 = ln(2 + √3)`
pub const ARCOSH_2: f64 = 1.316_957_896_924_816_6;

/// `E[β_nf] = √3 / (2 arcosh 2)`
pub fn mean_beta_nf() -> f64 {
    3f64.sqrt() / (2.0 * ARCOSH_2)
}

pub fn pdf_j_nf(j: f64) -> f64 {
    let a = j.abs();
    let c = 1.0 / (2.0 * mean_beta_nf());
    if a <= 0.5 {
        c
    } else if a < 1.0 {
        c * (1.0 - (2.0 * a).acosh() / ARCOSH_2)
    } else {
        0.0
    }
}

pub fn pdf_j_ff(j: f64) -> f64 {
    let a = j.abs();
    if a <= 1.0 {
        0.5 * (FRAC_PI_2 - a.asin())
    } else {
        0.0
    }
}

/// `(4/√3) β / √(4β² − 1)` on `[½, 1]`.
pub fn pdf_beta_nf(beta: f64) -> f64 {
    if !(0.5..=1.0).contains(&beta) {
        return 0.0;
    }
    let d = 4.0 * beta * beta - 1.0;
    if d <= 0.0 {
        return f64::INFINITY;
    }
    4.0 / 3f64.sqrt() * beta / d.sqrt()
}

/// `β / √(1 − β²)` on `[0, 1]`.
pub fn pdf_beta_ff(beta: f64) -> f64 {
    if !(0.0..=1.0).contains(&beta) {
        return 0.0;
    }
    let d = 1.0 - beta * beta;
    if d <= 0.0 {
        return f64::INFINITY;
    }
    beta / d.sqrt()
}

pub fn cdf_j_nf(j: f64) -> f64 {
    let a = j.abs().min(1.0);
    let c = 1.0 / (2.0 * mean_beta_nf());
    let half_mass = if a <= 0.5 {
        c * a
    } else {
        let tail = a * (2.0 * a).acosh() - 0.5 * (4.0 * a * a - 1.0).sqrt();
        c * (a - tail / ARCOSH_2)
    };
    0.5 + half_mass.copysign(j)
}

pub fn cdf_j_ff(j: f64) -> f64 {
    let a = j.abs().min(1.0);
    let half_mass = 0.5 * (FRAC_PI_2 * a - (a * a.asin() + (1.0 - a * a).sqrt() - 1.0));
    0.5 + half_mass.copysign(j)
}

pub fn cdf_beta_nf(beta: f64) -> f64 {
    if beta <= 0.5 {
        0.0
    } else if beta >= 1.0 {
        1.0
    } else {
        ((4.0 * beta * beta - 1.0) / 3.0).sqrt()
    }
}

pub fn cdf_beta_ff(beta: f64) -> f64 {
    if beta <= 0.0 {
        0.0
    } else if beta >= 1.0 {
        1.0
    } else {
        1.0 - (1.0 - beta * beta).sqrt()
    }
}

/// `f_{J*}(0)` for the two single-factor regions, `1/(2E[β_nf])` and `π/4`.
pub fn density_at_zero_nf() -> f64 {
    pdf_j_nf(0.0)
}

pub fn density_at_zero_ff() -> f64 {
    PI / 4.0
}
