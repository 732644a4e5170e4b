//! Scalar confluent hypergeometric functions needed by the 2D Bingham
//! normalization constant and its derivative.
//!
//! Both functions are evaluated through modified Bessel functions:
//!
//! ```text
//! 1F1(1/2, 1, z) = e^{z/2} I0(z/2)
//! 1F1(3/2, 2, z) = e^{z/2} (I0(z/2) + I1(z/2))
//! ```
//!
//! For `z <= 0` the exponential prefactor cancels exactly against the growth
//! of `I0`, so everything is computed in the exponentially scaled form
//! `e^{-x} I_n(x)` and never overflows.

use crate::error::{BinghamError, Result};

/// Largest positive argument accepted. Positive arguments only exist so that
/// centered finite differences around zero are defined.
pub const MAX_POSITIVE_ARG: f64 = 1.0;

/// Boundary between the power series and the asymptotic expansion, in `x = |z|/2`.
const SERIES_LIMIT: f64 = 20.0;

const MAX_TERMS: usize = 500;

/// `e^{-x} I0(x)`, `e^{-x} I1(x)` and their difference, for `x >= 0`.
#[derive(Debug, Clone, Copy)]
struct ScaledBessel {
    i0e: f64,
    i1e: f64,
    /// `i0e - i1e`, computed without cancellation in the asymptotic region.
    diff: f64,
}

fn scaled_bessel(x: f64) -> ScaledBessel {
    debug_assert!(x >= 0.0);
    if x <= SERIES_LIMIT {
        scaled_bessel_series(x)
    } else {
        scaled_bessel_asymptotic(x)
    }
}

fn scaled_bessel_series(x: f64) -> ScaledBessel {
    // I0(x) = sum t^k / (k!)^2, I1(x) = (x/2) sum t^k / (k! (k+1)!), t = x^2/4
    let t = 0.25 * x * x;
    let mut term0 = 1.0;
    let mut term1 = 1.0;
    let mut sum0 = 1.0;
    let mut sum1 = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term0 *= t / (kf * kf);
        term1 *= t / (kf * (kf + 1.0));
        sum0 += term0;
        sum1 += term1;
        if term0 <= f64::EPSILON * 1e-2 * sum0 && term1 <= f64::EPSILON * 1e-2 * sum1 {
            break;
        }
    }
    let scale = (-x).exp();
    let i0e = scale * sum0;
    let i1e = scale * 0.5 * x * sum1;
    ScaledBessel {
        i0e,
        i1e,
        diff: i0e - i1e,
    }
}

fn scaled_bessel_asymptotic(x: f64) -> ScaledBessel {
    // e^{-x} I_n(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(n) / x^k,
    // a_k(n) = prod_{j<=k} (4n^2 - (2j-1)^2) / (k! 8^k).
    // The I0 terms are all positive and the I1 terms past k = 0 are all
    // negative, so the difference is a sum of positive terms.
    let mut t0 = 1.0;
    let mut t1 = 1.0;
    let mut sum0 = 1.0;
    let mut sum1 = 1.0;
    let mut diff = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        let odd = (2.0 * kf - 1.0) * (2.0 * kf - 1.0);
        t0 *= odd / (8.0 * kf * x);
        t1 *= -(4.0 - odd) / (8.0 * kf * x);
        let size = t0.abs().max(t1.abs());
        if size > last {
            // divergent tail of the asymptotic series
            break;
        }
        last = size;
        sum0 += t0;
        sum1 += t1;
        diff += t0 - t1;
        if size <= f64::EPSILON * 1e-2 * diff {
            break;
        }
    }
    let pre = 1.0 / (2.0 * std::f64::consts::PI * x).sqrt();
    ScaledBessel {
        i0e: pre * sum0,
        i1e: pre * sum1,
        diff: pre * diff,
    }
}

fn check_arg(op: &'static str, z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(BinghamError::domain(op, format!("non-finite argument {z}")));
    }
    if z > MAX_POSITIVE_ARG {
        return Err(BinghamError::domain(
            op,
            format!("argument {z} exceeds {MAX_POSITIVE_ARG}"),
        ));
    }
    Ok(())
}

/// `1F1(1/2, 1, z)` for `z <= 0` (and `z <= 1`).
pub fn kummer_half_one(z: f64) -> Result<f64> {
    check_arg("kummer_half_one", z)?;
    Ok(kummer_pair_unchecked(z).0)
}

/// `1F1(3/2, 2, z)` for `z <= 0` (and `z <= 1`).
pub fn kummer_threehalves_two(z: f64) -> Result<f64> {
    check_arg("kummer_threehalves_two", z)?;
    Ok(kummer_pair_unchecked(z).1)
}

/// Both functions at once, sharing one Bessel evaluation.
pub fn kummer_pair(z: f64) -> Result<(f64, f64)> {
    check_arg("kummer_pair", z)?;
    Ok(kummer_pair_unchecked(z))
}

fn kummer_pair_unchecked(z: f64) -> (f64, f64) {
    let x = 0.5 * z.abs();
    let b = scaled_bessel(x);
    if z <= 0.0 {
        (b.i0e, b.diff)
    } else {
        let scale = z.exp();
        (scale * b.i0e, scale * (b.i0e + b.i1e))
    }
}

/// Smaller second moment `omega_1 = E[(m_1 . x)^2]` of a 2D Bingham
/// distribution with concentration `z1 <= 0`:
/// `(1/2) 1F1(3/2, 2, z1) / 1F1(1/2, 1, z1)`.
///
/// Strictly increasing in `z1`, equal to 1/2 at zero and ~`1/(2|z1|)` for
/// large `|z1|`.
pub fn minor_moment(z1: f64) -> Result<f64> {
    check_arg("minor_moment", z1)?;
    let (k, k3) = kummer_pair_unchecked(z1);
    Ok(0.5 * k3 / k)
}

/// Exponentially scaled modified Bessel function `e^{-|x|} I0(x)`.
pub fn bessel_i0e(x: f64) -> f64 {
    scaled_bessel(x.abs()).i0e
}

/// Exponentially scaled modified Bessel function `e^{-|x|} I1(x)`.
pub fn bessel_i1e(x: f64) -> f64 {
    let v = scaled_bessel(x.abs()).i1e;
    if x < 0.0 {
        -v
    } else {
        v
    }
}
