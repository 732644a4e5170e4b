//! Density curves, angular spread, and divergence from a matched Gaussian.

use std::f64::consts::{FRAC_PI_2, TAU};

use super::quad::simpson;
use crate::bingham::{normalization_constant, pdf, BinghamParams, UnitVec2};
use crate::error::{BinghamError, Result};

const QUAD_INTERVALS: usize = 8000;

/// Half-width around the mode that carries all but a negligible part of the
/// mass, capped at the half period.
fn mode_window(z1: f64) -> f64 {
    if z1 >= -1.0 {
        return FRAC_PI_2;
    }
    // Gaussian approximation sigma ~ 1/sqrt(2|z1|); 14 sigma leaves e^-98
    (14.0 / (2.0 * z1.abs()).sqrt()).min(FRAC_PI_2)
}

/// Second moment of the offset from the mode over the half period centred on
/// the mode, in radians squared.
pub fn angular_variance(z1: f64) -> Result<f64> {
    if !(z1.is_finite() && z1 <= 0.0) {
        return Err(BinghamError::domain(
            "angular_variance",
            format!("concentration {z1} must be finite and <= 0"),
        ));
    }
    // the density at offset t from the mode is proportional to exp(z1 sin^2 t)
    let w = mode_window(z1);
    let weight = |t: f64| (z1 * t.sin().powi(2)).exp();
    let mass = simpson(weight, -w, w, QUAD_INTERVALS);
    let second = simpson(|t| t * t * weight(t), -w, w, QUAD_INTERVALS);
    Ok(second / mass)
}

/// Angular standard deviation in radians; see [`angular_variance`].
pub fn angular_std(z1: f64) -> Result<f64> {
    Ok(angular_variance(z1)?.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdfRow {
    pub theta: f64,
    pub z1: f64,
    pub pdf: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KldRow {
    pub z1: f64,
    pub kld: f64,
}

/// Density of `M = I, Z = diag(z1, 0)` at `resolution` equally spaced angles
/// covering `[0, 2 pi)`, one curve per `z1`.
pub fn figure_pdf_data(z1_list: &[f64], resolution: usize) -> Result<Vec<PdfRow>> {
    if resolution == 0 {
        return Err(BinghamError::domain(
            "figure_pdf_data",
            "resolution must be positive",
        ));
    }
    let mut rows = Vec::with_capacity(z1_list.len() * resolution);
    for &z1 in z1_list {
        let p = BinghamParams::new([[1.0, 0.0], [0.0, 1.0]], z1)?;
        for j in 0..resolution {
            let theta = TAU * j as f64 / resolution as f64;
            rows.push(PdfRow {
                theta,
                z1,
                pdf: pdf(&p, &UnitVec2::from_angle(theta)),
            });
        }
    }
    Ok(rows)
}

/// Kullback-Leibler divergence `KL(p || g)` on `[0, pi]` between the angle
/// density `p` of `M = I, Z = diag(z1, 0)` and the Gaussian density `g` with
/// the same mode (`pi/2`) and standard deviation ([`angular_std`]).
///
/// `g` is used as-is, without renormalizing it to the interval.
pub fn kld_to_gaussian(z1: f64) -> Result<f64> {
    if !(z1.is_finite() && z1 < 0.0) {
        return Err(BinghamError::domain(
            "kld_to_gaussian",
            format!("concentration {z1} must be negative"),
        ));
    }
    let sigma = angular_std(z1)?;
    // p integrates to one on the half period
    let log_norm = (normalization_constant(z1)? / 2.0).ln();
    let log_g_norm = (sigma * TAU.sqrt()).ln();
    let integrand = |theta: f64| {
        let log_p = z1 * theta.cos().powi(2) - log_norm;
        let d = theta - FRAC_PI_2;
        let log_g = -d * d / (2.0 * sigma * sigma) - log_g_norm;
        log_p.exp() * (log_p - log_g)
    };
    let w = mode_window(z1);
    Ok(simpson(
        integrand,
        FRAC_PI_2 - w,
        FRAC_PI_2 + w,
        4 * QUAD_INTERVALS,
    ))
}

pub fn figure_kld_data(z1_list: &[f64]) -> Result<Vec<KldRow>> {
    z1_list
        .iter()
        .map(|&z1| {
            Ok(KldRow {
                z1,
                kld: kld_to_gaussian(z1)?,
            })
        })
        .collect()
}

/// `(theta, pdf)` covers `[0, 2 pi)` with this many points per curve unless
/// asked otherwise.
pub const DEFAULT_RESOLUTION: usize = 720;

/// Concentrations whose angular spreads are roughly 36, 16 and 6 degrees.
pub const DEFAULT_Z1: [f64; 3] = [-2.0, -8.0, -50.0];
