//! Evaluation harness: the Kalman baseline, the Monte-Carlo comparison and
//! the data behind the density and divergence plots.

pub mod csv;
pub mod figures;
pub mod kalman;
pub mod quad;
pub mod scenario;

pub use figures::{
    angular_std, angular_variance, figure_kld_data, figure_pdf_data, kld_to_gaussian,
};
pub use kalman::{kalman_predict, kalman_update, KalmanState};
pub use scenario::{
    angular_error, simulate, simulate_with_threads, RunMetrics, ScenarioConfig, StepError,
};
