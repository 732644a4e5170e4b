//! Scalar Kalman filter on the axial angle, the baseline the Bingham filter
//! is compared against.
//!
//! The state is an angle modulo `pi`; innovations are wrapped to
//! `[-pi/2, pi/2)` before the usual gain update.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{BinghamError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KalmanState {
    angle_mean: f64,
    variance: f64,
}

impl KalmanState {
    pub fn new(angle_mean: f64, variance: f64) -> Result<Self> {
        if !angle_mean.is_finite() {
            return Err(BinghamError::domain("KalmanState::new", "non-finite angle"));
        }
        if !(variance.is_finite() && variance > 0.0) {
            return Err(BinghamError::domain(
                "KalmanState::new",
                format!("variance {variance} must be positive"),
            ));
        }
        Ok(Self {
            angle_mean: reduce_axial(angle_mean),
            variance,
        })
    }

    /// Mean angle in `[0, pi)`.
    pub fn angle_mean(&self) -> f64 {
        self.angle_mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }
}

/// Reduces an angle to `[0, pi)`.
pub fn reduce_axial(a: f64) -> f64 {
    let r = a.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Wraps an angle difference to `[-pi/2, pi/2)`.
pub fn wrap_half_pi(a: f64) -> f64 {
    reduce_axial(a + FRAC_PI_2) - FRAC_PI_2
}

/// Rotates the mean by `offset` and adds process variance `q`.
pub fn kalman_predict(s: &KalmanState, q: f64, offset: f64) -> KalmanState {
    KalmanState {
        angle_mean: reduce_axial(s.angle_mean + offset),
        variance: s.variance + q,
    }
}

/// Standard scalar update against an axial angle measurement with variance `r`.
pub fn kalman_update(s: &KalmanState, r: f64, meas_angle: f64) -> KalmanState {
    let innovation = wrap_half_pi(meas_angle - s.angle_mean);
    let gain = s.variance / (s.variance + r);
    KalmanState {
        angle_mean: reduce_axial(s.angle_mean + gain * innovation),
        variance: (1.0 - gain) * s.variance,
    }
}
