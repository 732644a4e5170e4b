//! Recursive Bingham filter for 180-degree symmetric orientations.
//!
//! System model `x_{k+1} = x_k ⊕ w_k`, measurement model `z_k = x_k ⊕ v_k`,
//! with Bingham distributed `w_k` and `v_k`. Prediction composes the estimate
//! with the system noise; the update multiplies the prediction with the
//! measurement noise density moved onto the measurement.
//!
//! Noise parameters are supplied on every call, so they may vary over time or
//! carry a known offset (a noise mode other than `±(1, 0)`).

use crate::bingham::{multiply, BinghamParams, UnitVec2};
use crate::error::{BinghamError, Result, Stage};
use crate::s1group::{compose, compose_dist, conjugate};

/// How the measurement noise axes are moved onto a measurement `ẑ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RotationConvention {
    /// Axes `ẑ ⊕ conj(m_i)`. The resulting density in `x` is exactly the
    /// likelihood `f_v(conj(x) ⊕ ẑ)` of the measurement model.
    #[default]
    Likelihood,
    /// Axes `conj(ẑ) ⊕ m_i`. This is the mirror image of the likelihood
    /// and agrees with it only when `ẑ` lies on a coordinate axis (for noise
    /// axes on the coordinate axes). Kept for comparison.
    ConjugateMeasurement,
}

/// Distribution of the state together with its position in the
/// predict/update cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterState {
    pub params: BinghamParams,
    pub stage: Stage,
    pub step: u64,
}

impl FilterState {
    /// A prior for step 0, ready for the first measurement update.
    pub fn prior(params: BinghamParams) -> Self {
        Self {
            params,
            stage: Stage::Predicted,
            step: 0,
        }
    }

    /// An estimate for step 0, ready for the first prediction.
    pub fn estimate(params: BinghamParams) -> Self {
        Self {
            params,
            stage: Stage::Estimated,
            step: 0,
        }
    }

    pub fn mode(&self) -> UnitVec2 {
        crate::bingham::mode(&self.params)
    }
}

fn expect_stage(op: &'static str, state: &FilterState, expected: Stage) -> Result<()> {
    if state.stage != expected {
        return Err(BinghamError::StageMismatch {
            op,
            expected,
            found: state.stage,
        });
    }
    Ok(())
}

/// Time update: `x_{k+1} = x_k ⊕ w_k`.
pub fn predict(estimate: &FilterState, system_noise: &BinghamParams) -> Result<FilterState> {
    expect_stage("predict", estimate, Stage::Estimated)?;
    let params = compose_dist(&estimate.params, system_noise)?;
    Ok(FilterState {
        params,
        stage: Stage::Predicted,
        step: estimate.step + 1,
    })
}

/// Measurement update with the default [`RotationConvention::Likelihood`].
pub fn update(
    prediction: &FilterState,
    meas_noise: &BinghamParams,
    z_hat: &UnitVec2,
) -> Result<FilterState> {
    update_with(prediction, meas_noise, z_hat, RotationConvention::default())
}

pub fn update_with(
    prediction: &FilterState,
    meas_noise: &BinghamParams,
    z_hat: &UnitVec2,
    convention: RotationConvention,
) -> Result<FilterState> {
    expect_stage("update", prediction, Stage::Predicted)?;
    let rotated = rotated_noise(meas_noise, z_hat, convention);
    let params = multiply(&rotated, &prediction.params)?;
    Ok(FilterState {
        params,
        stage: Stage::Estimated,
        step: prediction.step,
    })
}

/// Measurement noise density moved onto the measurement, as a density in
/// the state.
pub fn rotated_noise(
    meas_noise: &BinghamParams,
    z_hat: &UnitVec2,
    convention: RotationConvention,
) -> BinghamParams {
    let rotate = |axis: UnitVec2| match convention {
        RotationConvention::Likelihood => compose(z_hat, &conjugate(&axis)),
        RotationConvention::ConjugateMeasurement => compose(&conjugate(z_hat), &axis),
    };
    let minor = rotate(meas_noise.axis(0));
    let major = rotate(meas_noise.axis(1));
    // re-orthonormalize against drift, keeping the rotated major axis' side
    let perp = minor.perp();
    let major = if perp.dot(&major) >= 0.0 { perp } else { -perp };
    BinghamParams::from_axes_unchecked(minor, major, meas_noise.z1())
}

/// A filter chain bundling the current state with its update convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinghamFilter {
    state: FilterState,
    convention: RotationConvention,
}

impl BinghamFilter {
    /// Starts from a prior awaiting its first measurement.
    pub fn new(prior: BinghamParams) -> Self {
        Self::with_convention(prior, RotationConvention::default())
    }

    pub fn with_convention(prior: BinghamParams, convention: RotationConvention) -> Self {
        Self {
            state: FilterState::prior(prior),
            convention,
        }
    }

    pub fn state(&self) -> &FilterState {
        &self.state
    }

    pub fn convention(&self) -> RotationConvention {
        self.convention
    }

    pub fn predict(&mut self, system_noise: &BinghamParams) -> Result<()> {
        self.state = predict(&self.state, system_noise)?;
        Ok(())
    }

    pub fn update(&mut self, meas_noise: &BinghamParams, z_hat: &UnitVec2) -> Result<()> {
        self.state = update_with(&self.state, meas_noise, z_hat, self.convention)?;
        Ok(())
    }
}
