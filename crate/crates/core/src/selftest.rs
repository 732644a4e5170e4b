//! Numeric self-check battery run by `bingham selftest`.
//!
//! Every check compares the library against an independent computation
//! (direct series, quadrature, grid Bayes, Monte Carlo). Output depends only
//! on the seed.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bingham::{
    covariance, mle_from_covariance, multiply, pdf, BinghamParams, BinghamSampler, CovMat2,
    UnitVec2,
};
use crate::eval::figures::{angular_std, kld_to_gaussian};
use crate::eval::kalman::{kalman_update, wrap_half_pi, KalmanState};
use crate::eval::quad::simpson;
use crate::filter::{update, FilterState};
use crate::s1group::{compose, compose_cov};
use crate::specfun::{kummer_half_one, kummer_threehalves_two};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub value: f64,
    pub limit: f64,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} value={:.6e} limit={:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.limit
        )
    }
}

fn check(name: &'static str, value: f64, limit: f64) -> CheckResult {
    CheckResult {
        name,
        passed: value <= limit,
        value,
        limit,
    }
}

/// Default sample count of the composition covariance check.
pub const LEMMA_SAMPLES: usize = 100_000;

/// Runs every check with the given seed.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        kummer_series(),
        normalization(),
        spread_at_minus_eight(),
        kld_monotone(),
        multiply_closure(&mut rng),
        mle_round_trip(),
        sampler_moments(&mut rng),
        compose_cov_monte_carlo(&mut rng, 5, LEMMA_SAMPLES),
        update_matches_grid_bayes(&mut rng),
        kalman_wrapping(&mut rng),
    ]
}

/// `1F1(a, b, z) = e^z 1F1(b - a, b, -z)`; for `z < 0` the right-hand series
/// has only positive terms.
pub fn kummer_series_oracle(a: f64, b: f64, z: f64) -> f64 {
    let (a2, x) = (b - a, -z);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for k in 0..5000 {
        let kf = k as f64;
        term *= (a2 + kf) / (b + kf) * x / (kf + 1.0);
        // Kahan summation
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term < 1e-18 * sum {
            break;
        }
    }
    (z + sum.ln()).exp()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn kummer_series() -> CheckResult {
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let z = -200.0 * i as f64 / 100.0;
        worst = worst
            .max(rel(
                kummer_half_one(z).unwrap(),
                kummer_series_oracle(0.5, 1.0, z),
            ))
            .max(rel(
                kummer_threehalves_two(z).unwrap(),
                kummer_series_oracle(1.5, 2.0, z),
            ));
    }
    check("kummer_vs_series", worst, 1e-10)
}

fn normalization() -> CheckResult {
    let mut worst = 0.0f64;
    for z1 in [0.0, -1.0, -8.0, -50.0, -200.0] {
        let p = BinghamParams::with_mode(UnitVec2::from_angle(0.3), z1).unwrap();
        let total = simpson(|t| pdf(&p, &UnitVec2::from_angle(t)), 0.0, TAU, 20_000);
        worst = worst.max((total - 1.0).abs());
    }
    check("pdf_normalization", worst, 1e-8)
}

fn spread_at_minus_eight() -> CheckResult {
    let deg = angular_std(-8.0).unwrap().to_degrees();
    check("angular_std_minus8_vs_16deg", (deg - 16.0).abs(), 1.5)
}

fn kld_monotone() -> CheckResult {
    let values: Vec<f64> = [-1.0, -2.0, -5.0, -15.0, -50.0]
        .iter()
        .map(|&z| kld_to_gaussian(z).unwrap())
        .collect();
    // largest ratio of consecutive values; < 1 means strictly decreasing
    let worst = values
        .windows(2)
        .map(|w| w[1] / w[0])
        .fold(0.0f64, f64::max);
    let decreasing = worst < 1.0 && values[3] < values[0] / 10.0;
    CheckResult {
        name: "kld_monotone",
        passed: decreasing,
        value: worst,
        limit: 1.0,
    }
}

fn random_params(rng: &mut ChaCha8Rng, zmin: f64) -> BinghamParams {
    let mode = UnitVec2::from_angle(rng.gen_range(0.0..PI));
    BinghamParams::with_mode(mode, rng.gen_range(zmin..0.0)).unwrap()
}

fn ratio_spread(ratios: impl Iterator<Item = f64>) -> f64 {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for r in ratios {
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (hi - lo) / lo
}

fn multiply_closure(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = random_params(rng, -20.0);
        let b = random_params(rng, -20.0);
        let c = multiply(&a, &b).unwrap();
        let grid = (0..360).map(|j| UnitVec2::from_angle(TAU * j as f64 / 360.0));
        // log domain keeps the ratio well conditioned
        let spread = ratio_spread(grid.map(|x| {
            let lr = (pdf(&a, &x).ln() + pdf(&b, &x).ln()) - pdf(&c, &x).ln();
            lr.exp()
        }));
        worst = worst.max(spread);
    }
    check("multiply_closure", worst, 1e-9)
}

fn mle_round_trip() -> CheckResult {
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let z1 = -0.1 - (100.0 - 0.1) * i as f64 / 40.0;
        let p = BinghamParams::with_mode(UnitVec2::from_angle(0.1 * i as f64), z1).unwrap();
        let q = mle_from_covariance(&covariance(&p)).unwrap();
        worst = worst.max((q.z1() - z1).abs() / z1.abs().max(1.0));
    }
    check("mle_round_trip", worst, 1e-6)
}

fn sampler_moments(rng: &mut ChaCha8Rng) -> CheckResult {
    let p = BinghamParams::with_mode(UnitVec2::from_angle(1.1), -5.0).unwrap();
    let s = BinghamSampler::new(&p);
    let draws: Vec<UnitVec2> = (0..LEMMA_SAMPLES).map(|_| s.sample(rng)).collect();
    let emp = CovMat2::from_samples(&draws).unwrap();
    let cov = covariance(&p);
    let worst = (emp.s11() - cov.s11())
        .abs()
        .max((emp.s12() - cov.s12()).abs())
        .max((emp.s22() - cov.s22()).abs());
    check("sampler_second_moments", worst, 0.01)
}

/// Composition covariance against the empirical covariance of composed draws.
pub fn compose_cov_monte_carlo(rng: &mut ChaCha8Rng, pairs: usize, samples: usize) -> CheckResult {
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let a = random_params(rng, -30.0);
        let b = random_params(rng, -30.0);
        let (sa, sb) = (BinghamSampler::new(&a), BinghamSampler::new(&b));
        let draws: Vec<UnitVec2> = (0..samples)
            .map(|_| compose(&sa.sample(rng), &sb.sample(rng)))
            .collect();
        let emp = CovMat2::from_samples(&draws).unwrap();
        let ana = compose_cov(&covariance(&a), &covariance(&b)).unwrap();
        worst = worst
            .max((emp.s11() - ana.s11()).abs())
            .max((emp.s12() - ana.s12()).abs())
            .max((emp.s22() - ana.s22()).abs());
    }
    check("compose_cov_monte_carlo", worst, 0.01)
}

fn update_matches_grid_bayes(rng: &mut ChaCha8Rng) -> CheckResult {
    let noise = BinghamParams::new([[1.0, 0.0], [0.0, 1.0]], -3.0).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let prior = random_params(rng, -20.0);
        let z = UnitVec2::from_angle(rng.gen_range(0.0..TAU));
        let post = update(&FilterState::prior(prior), &noise, &z)
            .unwrap()
            .params;
        let grid = (0..720).map(|j| UnitVec2::from_angle(TAU * j as f64 / 720.0));
        // likelihood of z given x is the noise density at conj(x) z
        let spread = ratio_spread(grid.map(|x| {
            let v = UnitVec2::new(
                x.c1() * z.c1() + x.c2() * z.c2(),
                x.c1() * z.c2() - x.c2() * z.c1(),
            )
            .unwrap();
            (pdf(&prior, &x).ln() + pdf(&noise, &v).ln() - pdf(&post, &x).ln()).exp()
        }));
        worst = worst.max(spread);
    }
    check("update_vs_grid_bayes", worst, 1e-6)
}

fn kalman_wrapping(rng: &mut ChaCha8Rng) -> CheckResult {
    // after an update with r -> 0 the mean sits on the measurement axis, so
    // the wrapped innovation must have been within a quarter turn
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mean = rng.gen_range(0.0..PI);
        let meas = rng.gen_range(-10.0..10.0);
        let w = wrap_half_pi(meas - mean);
        if !(-PI / 2.0..PI / 2.0).contains(&w) {
            worst = f64::INFINITY;
        }
        let s = KalmanState::new(mean, 1.0).unwrap();
        let u = kalman_update(&s, 1e-12, meas);
        let d = wrap_half_pi(u.angle_mean() - meas).abs();
        worst = worst.max(d);
    }
    check("kalman_wrapping", worst, 1e-9)
}
