//! Monte-Carlo comparison of the Bingham filter against the Kalman baseline.
//!
//! Each run draws a true trajectory `x_{k+1} = x_k ⊕ w_k` and measurements
//! `z_k = x_k ⊕ v_k`, feeds both filters, and records the axial angular error
//! of their point estimates at every step. Run `r` draws from ChaCha8 stream
//! `r` of the configured seed, so results do not depend on scheduling.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::figures::angular_variance;
use super::kalman::{kalman_predict, kalman_update, KalmanState};
use crate::bingham::{mode, mode_angle, BinghamParams, BinghamSampler, UnitVec2};
use crate::error::{BinghamError, Result};
use crate::filter::BinghamFilter;
use crate::s1group::compose;

/// `arccos(|a . b|)`, in `[0, pi/2]`.
pub fn angular_error(a: &UnitVec2, b: &UnitVec2) -> f64 {
    a.dot(b).abs().min(1.0).acos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub steps: usize,
    pub runs: usize,
    pub seed: u64,
    pub system_noise: BinghamParams,
    pub meas_noise: BinghamParams,
    pub initial_state: UnitVec2,
    pub initial_estimate: BinghamParams,
    /// Process variance of the baseline, radians squared.
    pub kalman_q: f64,
    /// Measurement variance of the baseline, radians squared.
    pub kalman_r: f64,
}

impl ScenarioConfig {
    /// Scenario starting at `(1, 0)` with a uniform prior and the baseline
    /// calibrated to the angular variances of the two noises.
    pub fn new(
        steps: usize,
        runs: usize,
        seed: u64,
        system_noise: BinghamParams,
        meas_noise: BinghamParams,
    ) -> Result<Self> {
        let cfg = Self {
            steps,
            runs,
            seed,
            system_noise,
            meas_noise,
            initial_state: UnitVec2::E1,
            initial_estimate: BinghamParams::uniform(),
            kalman_q: angular_variance(system_noise.z1())?,
            kalman_r: angular_variance(meas_noise.z1())?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |detail: String| Err(BinghamError::domain("ScenarioConfig", detail));
        if self.steps == 0 || self.runs == 0 {
            return bad(format!(
                "steps ({}) and runs ({}) must be positive",
                self.steps, self.runs
            ));
        }
        for (name, v) in [("kalman_q", self.kalman_q), ("kalman_r", self.kalman_r)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} = {v} must be positive"));
            }
        }
        Ok(())
    }

    /// Serializes to the `key = value` format read by [`FromStr`].
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "steps = {}", self.steps);
        let _ = writeln!(s, "runs = {}", self.runs);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "system_noise = {}", self.system_noise);
        let _ = writeln!(s, "meas_noise = {}", self.meas_noise);
        let _ = writeln!(
            s,
            "initial_state = {:.16e} {:.16e}",
            self.initial_state.c1(),
            self.initial_state.c2()
        );
        let _ = writeln!(s, "initial_estimate = {}", self.initial_estimate);
        let _ = writeln!(s, "kalman_q = {:.16e}", self.kalman_q);
        let _ = writeln!(s, "kalman_r = {:.16e}", self.kalman_r);
        s
    }
}

/// Flat `key = value` text; `#` starts a comment. `steps`, `runs`,
/// `system_noise` and `meas_noise` are required. `kalman_q`/`kalman_r` may be
/// `auto` (the default) to use the angular variance of the matching noise.
impl FromStr for ScenarioConfig {
    type Err = BinghamError;

    fn from_str(text: &str) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut steps = None;
        let mut runs = None;
        let mut seed = 0u64;
        let mut system_noise = None;
        let mut meas_noise = None;
        let mut initial_state = UnitVec2::E1;
        let mut initial_estimate = BinghamParams::uniform();
        let mut kalman_q = None;
        let mut kalman_r = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |detail: String| BinghamError::Config {
                line: line_no,
                detail,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(err(format!("duplicate key '{key}'")));
            }
            let int = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| err(format!("{key}: '{v}' is not a non-negative integer")))
            };
            let params = |v: &str| {
                v.parse::<BinghamParams>()
                    .map_err(|e| err(format!("{key}: {e}")))
            };
            let variance = |v: &str| -> Result<Option<f64>> {
                if v == "auto" {
                    return Ok(None);
                }
                v.parse::<f64>()
                    .map(Some)
                    .map_err(|_| err(format!("{key}: '{v}' is not a number")))
            };
            match key {
                "steps" => steps = Some(int(value)? as usize),
                "runs" => runs = Some(int(value)? as usize),
                "seed" => seed = int(value)?,
                "system_noise" => system_noise = Some(params(value)?),
                "meas_noise" => meas_noise = Some(params(value)?),
                "initial_estimate" => initial_estimate = params(value)?,
                "initial_state" => {
                    let nums: Vec<f64> = value
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<f64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| err(format!("{key}: bad number in '{value}'")))?;
                    let [c1, c2] = nums[..] else {
                        return Err(err(format!("{key}: expected 2 numbers")));
                    };
                    initial_state = UnitVec2::new(c1, c2).map_err(|e| err(e.to_string()))?;
                }
                "kalman_q" => kalman_q = variance(value)?,
                "kalman_r" => kalman_r = variance(value)?,
                other => return Err(err(format!("unknown key '{other}'"))),
            }
        }

        let missing = |key: &str| BinghamError::Config {
            line: 0,
            detail: format!("missing required key '{key}'"),
        };
        let system_noise = system_noise.ok_or_else(|| missing("system_noise"))?;
        let meas_noise = meas_noise.ok_or_else(|| missing("meas_noise"))?;
        let cfg = ScenarioConfig {
            steps: steps.ok_or_else(|| missing("steps"))?,
            runs: runs.ok_or_else(|| missing("runs"))?,
            seed,
            system_noise,
            meas_noise,
            initial_state,
            initial_estimate,
            kalman_q: match kalman_q {
                Some(q) => q,
                None => angular_variance(system_noise.z1())?,
            },
            kalman_r: match kalman_r {
                Some(r) => r,
                None => angular_variance(meas_noise.z1())?,
            },
        };
        cfg.validate().map_err(|e| BinghamError::Config {
            line: 0,
            detail: e.to_string(),
        })?;
        Ok(cfg)
    }
}

/// Errors of both filters at one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepError {
    pub bingham: f64,
    pub kalman: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    /// Mean over all runs and steps, radians.
    pub mean_err_bingham: f64,
    pub mean_err_kalman: f64,
    /// Mean over runs, one entry per step.
    pub per_step_err: Vec<StepError>,
    /// Errors of every run, `run_errors[run][step]`.
    pub run_errors: Vec<Vec<StepError>>,
    pub wallclock: f64,
}

/// Runs the scenario on the global thread pool.
pub fn simulate(cfg: &ScenarioConfig) -> Result<RunMetrics> {
    simulate_with_threads(cfg, None)
}

/// Runs the scenario on at most `threads` worker threads.
pub fn simulate_with_threads(cfg: &ScenarioConfig, threads: Option<usize>) -> Result<RunMetrics> {
    cfg.validate()?;
    let start = Instant::now();
    let sys_sampler = BinghamSampler::new(&cfg.system_noise);
    let meas_sampler = BinghamSampler::new(&cfg.meas_noise);
    let one_run = |run: usize| simulate_run(cfg, run, &sys_sampler, &meas_sampler);

    let run_errors: Vec<Vec<StepError>> = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| BinghamError::domain("simulate", e.to_string()))?
            .install(|| {
                (0..cfg.runs)
                    .into_par_iter()
                    .map(one_run)
                    .collect::<Result<_>>()
            })?,
        None => (0..cfg.runs)
            .into_par_iter()
            .map(one_run)
            .collect::<Result<_>>()?,
    };

    let mut per_step = vec![
        StepError {
            bingham: 0.0,
            kalman: 0.0
        };
        cfg.steps
    ];
    for run in &run_errors {
        for (acc, e) in per_step.iter_mut().zip(run) {
            acc.bingham += e.bingham;
            acc.kalman += e.kalman;
        }
    }
    let n_runs = cfg.runs as f64;
    for acc in &mut per_step {
        acc.bingham /= n_runs;
        acc.kalman /= n_runs;
    }
    let n_steps = cfg.steps as f64;
    let mean_err_bingham = per_step.iter().map(|e| e.bingham).sum::<f64>() / n_steps;
    let mean_err_kalman = per_step.iter().map(|e| e.kalman).sum::<f64>() / n_steps;

    Ok(RunMetrics {
        mean_err_bingham,
        mean_err_kalman,
        per_step_err: per_step,
        run_errors,
        wallclock: start.elapsed().as_secs_f64(),
    })
}

fn simulate_run(
    cfg: &ScenarioConfig,
    run: usize,
    sys_sampler: &BinghamSampler,
    meas_sampler: &BinghamSampler,
) -> Result<Vec<StepError>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(run as u64);

    // known offsets carried by the noise modes
    let sys_offset = mode_angle(&cfg.system_noise);
    let meas_offset = mode_angle(&cfg.meas_noise);

    let mut truth = cfg.initial_state;
    let mut bingham = BinghamFilter::new(cfg.initial_estimate);
    let mut kalman = KalmanState::new(
        mode_angle(&cfg.initial_estimate),
        angular_variance(cfg.initial_estimate.z1())?,
    )?;

    let mut errors = Vec::with_capacity(cfg.steps);
    for step in 0..cfg.steps {
        let z = compose(&truth, &meas_sampler.sample(&mut rng));
        bingham.update(&cfg.meas_noise, &z)?;
        kalman = kalman_update(&kalman, cfg.kalman_r, z.angle() - meas_offset);

        errors.push(StepError {
            bingham: angular_error(&mode(&bingham.state().params), &truth),
            kalman: angular_error(&UnitVec2::from_angle(kalman.angle_mean()), &truth),
        });

        if step + 1 < cfg.steps {
            bingham.predict(&cfg.system_noise)?;
            kalman = kalman_predict(&kalman, cfg.kalman_q, sys_offset);
            truth = compose(&truth, &sys_sampler.sample(&mut rng));
        }
    }
    Ok(errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn noise(z1: f64) -> BinghamParams {
        BinghamParams::with_mode(UnitVec2::E1, z1).unwrap()
    }

    #[test]
    fn angular_error_examples() {
        let a = UnitVec2::from_angle(0.7);
        assert_eq!(angular_error(&a, &a), 0.0);
        assert_eq!(angular_error(&a, &-a), 0.0);
        assert!((angular_error(&UnitVec2::E1, &UnitVec2::E2) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn config_round_trip() {
        let mut cfg = ScenarioConfig::new(10, 3, 17, noise(-8.0), noise(-1.0)).unwrap();
        cfg.initial_state = UnitVec2::from_angle(0.4);
        let back: ScenarioConfig = cfg.to_config_string().parse().unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn config_defaults_and_auto_variances() {
        let cfg: ScenarioConfig = "steps = 5\nruns = 2 # two\nsystem_noise = 0 1 1 0 -8\nmeas_noise = 0 1 1 0 -2\nkalman_r = auto\n"
            .parse()
            .unwrap();
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.initial_estimate, BinghamParams::uniform());
        assert!((cfg.kalman_q - 0.074_557_094_42).abs() < 1e-9);
        assert!((cfg.kalman_r - 0.401_063_574_7).abs() < 1e-9);
    }

    #[test]
    fn config_errors_name_the_line() {
        let e = "steps = 5\nbogus = 1\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(matches!(e, BinghamError::Config { line: 2, .. }));
        let e = "steps = 5\nsteps = 6\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(matches!(e, BinghamError::Config { line: 2, .. }));
        let e = "steps = 5\nruns = 1\nsystem_noise = 1 0 0 1\nmeas_noise = 1 0 0 1 -1"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(matches!(e, BinghamError::Config { line: 3, .. }));
        let e = "steps = 0\nruns = 1\nsystem_noise = 1 0 0 1 -1\nmeas_noise = 1 0 0 1 -1"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(matches!(e, BinghamError::Config { .. }));
        assert!("runs = 1".parse::<ScenarioConfig>().is_err());
    }

    #[test]
    fn simulation_is_deterministic_across_thread_counts() {
        let cfg = ScenarioConfig::new(20, 6, 5, noise(-8.0), noise(-2.0)).unwrap();
        let a = simulate_with_threads(&cfg, Some(1)).unwrap();
        let b = simulate_with_threads(&cfg, Some(4)).unwrap();
        assert_eq!(a.run_errors, b.run_errors);
        assert_eq!(a.mean_err_bingham.to_bits(), b.mean_err_bingham.to_bits());
        assert_eq!(a.per_step_err.len(), 20);
        for e in a.run_errors.iter().flatten() {
            assert!((0.0..=FRAC_PI_2).contains(&e.bingham));
            assert!((0.0..=FRAC_PI_2).contains(&e.kalman));
        }
    }

    #[test]
    fn near_noiseless_scenario_converges() {
        let cfg = ScenarioConfig::new(20, 4, 1, noise(-1e5), noise(-1e5)).unwrap();
        let m = simulate(&cfg).unwrap();
        for e in &m.per_step_err[5..] {
            assert!(e.bingham < 0.01 && e.kalman < 0.01, "{e:?}");
        }
    }

    #[test]
    fn offsets_are_tracked() {
        // a constant 0.3 rad rotation folded into the system noise
        let mut cfg = ScenarioConfig::new(
            40,
            8,
            9,
            BinghamParams::with_mode(UnitVec2::from_angle(0.3), -400.0).unwrap(),
            BinghamParams::with_mode(UnitVec2::from_angle(-0.2), -100.0).unwrap(),
        )
        .unwrap();
        cfg.initial_estimate = BinghamParams::with_mode(UnitVec2::E1, -50.0).unwrap();
        let m = simulate(&cfg).unwrap();
        assert!(m.mean_err_bingham < 0.1, "{}", m.mean_err_bingham);
        assert!(m.mean_err_kalman < 0.1, "{}", m.mean_err_kalman);
    }
}
