//! The Bingham distribution on the unit circle.
//!
//! A distribution is stored canonically as an orthogonal matrix `M` whose
//! columns are the principal axes and a single concentration `z1 <= 0`; the
//! second concentration is fixed at zero, so the density is
//!
//! ```text
//! f(x) = exp(z1 (m1 . x)^2) / F,    F = 2 pi 1F1(1/2, 1, z1)
//! ```
//!
//! and the mode is the second column `m2`. The second-moment matrix
//! `S = E[x x^T]` is an equivalent parameterization ([`covariance`] and
//! [`mle_from_covariance`] are mutually inverse).

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{BinghamError, Result};
use crate::linalg::sym_eigen2;
use crate::specfun;

/// Most negative concentration that is representable.
pub const MIN_CONCENTRATION: f64 = -1e6;

/// Tolerance on `M^T M = I`.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Tolerance on the unit trace of a second-moment matrix.
pub const TRACE_TOL: f64 = 1e-6;

/// Number of intervals in the inverse-CDF table used by [`BinghamSampler`].
pub const SAMPLER_TABLE_SIZE: usize = 4096;

/// A unit vector in the plane, read as a unit complex number `c1 + i c2`.
///
/// `v` and `-v` describe the same orientation; [`UnitVec2::canonical`] picks
/// a representative for display.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec2 {
    c1: f64,
    c2: f64,
}

impl UnitVec2 {
    pub const E1: UnitVec2 = UnitVec2 { c1: 1.0, c2: 0.0 };
    pub const E2: UnitVec2 = UnitVec2 { c1: 0.0, c2: 1.0 };

    /// Normalizes `(c1, c2)`; fails on the zero vector or non-finite input.
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        let norm = c1.hypot(c2);
        if !norm.is_finite() || norm == 0.0 {
            return Err(BinghamError::domain(
                "UnitVec2::new",
                format!("cannot normalize ({c1}, {c2})"),
            ));
        }
        Ok(Self {
            c1: c1 / norm,
            c2: c2 / norm,
        })
    }

    pub(crate) fn new_unchecked(c1: f64, c2: f64) -> Self {
        Self { c1, c2 }
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { c1: c, c2: s }
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn angle(&self) -> f64 {
        self.c2.atan2(self.c1)
    }

    /// Polar angle of the orientation, reduced to `[0, pi)`.
    pub fn axial_angle(&self) -> f64 {
        let a = self.angle().rem_euclid(PI);
        if a >= PI {
            0.0
        } else {
            a
        }
    }

    pub fn dot(&self, other: &UnitVec2) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2
    }

    /// The vector rotated by +90 degrees.
    pub fn perp(&self) -> UnitVec2 {
        Self {
            c1: -self.c2,
            c2: self.c1,
        }
    }

    /// Representative with `c2 > 0`, or `c2 == 0` and `c1 > 0`.
    pub fn canonical(&self) -> UnitVec2 {
        if self.c2 > 0.0 || (self.c2 == 0.0 && self.c1 > 0.0) {
            *self
        } else {
            -*self
        }
    }

    /// True when `self` and `other` are the same orientation within `tol`.
    pub fn same_axis(&self, other: &UnitVec2, tol: f64) -> bool {
        1.0 - self.dot(other).abs() <= tol
    }
}

impl std::ops::Neg for UnitVec2 {
    type Output = UnitVec2;

    fn neg(self) -> UnitVec2 {
        UnitVec2 {
            c1: -self.c1,
            c2: -self.c2,
        }
    }
}

/// Canonical parameters of a 2D Bingham distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinghamParams {
    /// Row-major orientation matrix; columns are the principal axes.
    m: [[f64; 2]; 2],
    z1: f64,
}

impl BinghamParams {
    /// Validates orthogonality of `m` and `MIN_CONCENTRATION <= z1 <= 0`.
    pub fn new(m: [[f64; 2]; 2], z1: f64) -> Result<Self> {
        check_concentration("BinghamParams::new", z1)?;
        if m.iter().flatten().any(|v| !v.is_finite()) {
            return Err(BinghamError::domain(
                "BinghamParams::new",
                "non-finite orientation entry",
            ));
        }
        let dot = m[0][0] * m[0][1] + m[1][0] * m[1][1];
        let n1 = m[0][0] * m[0][0] + m[1][0] * m[1][0];
        let n2 = m[0][1] * m[0][1] + m[1][1] * m[1][1];
        if dot.abs() > ORTHOGONALITY_TOL
            || (n1 - 1.0).abs() > ORTHOGONALITY_TOL
            || (n2 - 1.0).abs() > ORTHOGONALITY_TOL
        {
            return Err(BinghamError::domain(
                "BinghamParams::new",
                format!("orientation matrix {m:?} is not orthogonal"),
            ));
        }
        Ok(Self { m, z1 })
    }

    /// Distribution with minor axis `minor` and mode `minor.perp()`.
    pub fn from_minor_axis(minor: UnitVec2, z1: f64) -> Result<Self> {
        check_concentration("BinghamParams::from_minor_axis", z1)?;
        Ok(Self::from_axes_unchecked(minor, minor.perp(), z1))
    }

    /// Distribution concentrated around `mode` (the second column).
    pub fn with_mode(mode: UnitVec2, z1: f64) -> Result<Self> {
        check_concentration("BinghamParams::with_mode", z1)?;
        Ok(Self::from_axes_unchecked(-mode.perp(), mode, z1))
    }

    pub fn uniform() -> Self {
        Self {
            m: [[1.0, 0.0], [0.0, 1.0]],
            z1: 0.0,
        }
    }

    pub(crate) fn from_axes_unchecked(minor: UnitVec2, major: UnitVec2, z1: f64) -> Self {
        Self {
            m: [[minor.c1, major.c1], [minor.c2, major.c2]],
            z1,
        }
    }

    /// Row-major orientation matrix.
    pub fn m(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    /// Column `i` (0 or 1) of the orientation matrix.
    pub fn axis(&self, i: usize) -> UnitVec2 {
        UnitVec2::new_unchecked(self.m[0][i], self.m[1][i])
    }

    pub fn is_uniform(&self) -> bool {
        self.z1 == 0.0
    }

    /// Five numbers: `m` row-major, then `z1`.
    pub fn to_array(&self) -> [f64; 5] {
        [
            self.m[0][0],
            self.m[0][1],
            self.m[1][0],
            self.m[1][1],
            self.z1,
        ]
    }

    pub fn from_array(v: [f64; 5]) -> Result<Self> {
        Self::new([[v[0], v[1]], [v[2], v[3]]], v[4])
    }
}

/// Five whitespace-separated numbers with 17 significant digits, so the text
/// round-trips exactly.
impl fmt::Display for BinghamParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_array();
        write!(
            f,
            "{:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
            v[0], v[1], v[2], v[3], v[4]
        )
    }
}

impl FromStr for BinghamParams {
    type Err = BinghamError;

    fn from_str(s: &str) -> Result<Self> {
        let nums = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>().map_err(|_| {
                    BinghamError::domain("BinghamParams::from_str", format!("bad number '{t}'"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let arr: [f64; 5] = nums.try_into().map_err(|v: Vec<f64>| {
            BinghamError::domain(
                "BinghamParams::from_str",
                format!("expected 5 numbers, got {}", v.len()),
            )
        })?;
        Self::from_array(arr)
    }
}

fn check_concentration(op: &'static str, z1: f64) -> Result<()> {
    if z1.is_nan() || z1 > 0.0 || z1 == f64::INFINITY {
        return Err(BinghamError::domain(
            op,
            format!("concentration {z1} must be finite and <= 0"),
        ));
    }
    if z1 < MIN_CONCENTRATION {
        return Err(BinghamError::overflow(
            op,
            format!("concentration {z1} is below {MIN_CONCENTRATION:e}"),
        ));
    }
    Ok(())
}

/// Symmetric second-moment matrix `E[x x^T]` of a random unit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat2 {
    s11: f64,
    s12: f64,
    s22: f64,
}

impl CovMat2 {
    /// Requires finite entries with unit trace (within [`TRACE_TOL`]).
    pub fn new(s11: f64, s12: f64, s22: f64) -> Result<Self> {
        if ![s11, s12, s22].iter().all(|v| v.is_finite()) {
            return Err(BinghamError::domain("CovMat2::new", "non-finite entry"));
        }
        let trace = s11 + s22;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(BinghamError::domain(
                "CovMat2::new",
                format!("trace {trace} is not 1"),
            ));
        }
        Ok(Self { s11, s12, s22 })
    }

    /// Empirical second moment of a set of unit vectors.
    pub fn from_samples(samples: &[UnitVec2]) -> Result<Self> {
        if samples.is_empty() {
            return Err(BinghamError::domain("CovMat2::from_samples", "no samples"));
        }
        let n = samples.len() as f64;
        let (mut s11, mut s12, mut s22) = (0.0, 0.0, 0.0);
        for x in samples {
            s11 += x.c1 * x.c1;
            s12 += x.c1 * x.c2;
            s22 += x.c2 * x.c2;
        }
        Self::new(s11 / n, s12 / n, s22 / n)
    }

    pub fn s11(&self) -> f64 {
        self.s11
    }

    pub fn s12(&self) -> f64 {
        self.s12
    }

    pub fn s22(&self) -> f64 {
        self.s22
    }

    pub fn trace(&self) -> f64 {
        self.s11 + self.s22
    }

    /// Eigenvalues `(omega1, omega2)`, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        sym_eigen2(self.s11, self.s12, self.s22).values
    }

    pub fn as_rows(&self) -> [[f64; 2]; 2] {
        [[self.s11, self.s12], [self.s12, self.s22]]
    }

    pub(crate) fn new_unchecked(s11: f64, s12: f64, s22: f64) -> Self {
        Self { s11, s12, s22 }
    }
}

/// `F = 2 pi 1F1(1/2, 1, z1)`.
pub fn normalization_constant(z1: f64) -> Result<f64> {
    check_concentration("normalization_constant", z1)?;
    Ok(TAU * specfun::kummer_half_one(z1)?)
}

/// Density with respect to arc length on the circle.
pub fn pdf(p: &BinghamParams, x: &UnitVec2) -> f64 {
    let norm = TAU * specfun::kummer_half_one(p.z1).expect("validated concentration");
    (p.z1 * sq(p.axis(0).dot(x))).exp() / norm
}

/// Natural log of [`pdf`].
pub fn log_pdf(p: &BinghamParams, x: &UnitVec2) -> f64 {
    let norm = TAU * specfun::kummer_half_one(p.z1).expect("validated concentration");
    p.z1 * sq(p.axis(0).dot(x)) - norm.ln()
}

/// The mode: second column of `M`. For the uniform distribution every
/// direction is modal and this still returns the second column.
pub fn mode(p: &BinghamParams) -> UnitVec2 {
    p.axis(1)
}

/// Renormalized pointwise product of two densities.
///
/// The exponent matrices add; the result is rediagonalized with the
/// eigenvectors ordered by ascending eigenvalue and shifted so the largest
/// eigenvalue becomes zero.
pub fn multiply(p1: &BinghamParams, p2: &BinghamParams) -> Result<BinghamParams> {
    let (u, v) = (p1.axis(0), p2.axis(0));
    let a = p1.z1 * u.c1 * u.c1 + p2.z1 * v.c1 * v.c1;
    let b = p1.z1 * u.c1 * u.c2 + p2.z1 * v.c1 * v.c2;
    let c = p1.z1 * u.c2 * u.c2 + p2.z1 * v.c2 * v.c2;
    let eig = sym_eigen2(a, b, c);
    let z1 = -2.0 * eig.half_gap;
    check_concentration("multiply", z1)?;
    let [minor, major] = eig.vectors;
    Ok(BinghamParams::from_axes_unchecked(
        UnitVec2::new_unchecked(minor[0], minor[1]),
        UnitVec2::new_unchecked(major[0], major[1]),
        z1,
    ))
}

/// Second-moment matrix `M diag(omega1, 1 - omega1) M^T`.
pub fn covariance(p: &BinghamParams) -> CovMat2 {
    let w1 = specfun::minor_moment(p.z1).expect("validated concentration");
    let w2 = 1.0 - w1;
    let (u, v) = (p.axis(0), p.axis(1));
    CovMat2::new_unchecked(
        w1 * u.c1 * u.c1 + w2 * v.c1 * v.c1,
        w1 * u.c1 * u.c2 + w2 * v.c1 * v.c2,
        w1 * u.c2 * u.c2 + w2 * v.c2 * v.c2,
    )
}

/// Solves `minor_moment(z1) = omega1` by bisection on `[MIN_CONCENTRATION, 0]`.
pub fn concentration_for_moment(omega1: f64) -> Result<f64> {
    const OP: &str = "concentration_for_moment";
    if !(omega1.is_finite() && omega1 <= 0.5) {
        return Err(BinghamError::domain(
            OP,
            format!("moment {omega1} outside (0, 1/2]"),
        ));
    }
    if omega1 == 0.5 {
        return Ok(0.0);
    }
    let floor = specfun::minor_moment(MIN_CONCENTRATION)?;
    if omega1 < floor {
        return Err(BinghamError::overflow(
            OP,
            format!("moment {omega1:e} needs a concentration below {MIN_CONCENTRATION:e}"),
        ));
    }
    let (mut lo, mut hi) = (MIN_CONCENTRATION, 0.0_f64);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < 1e-10 * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if specfun::minor_moment(mid)? < omega1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Maximum-likelihood parameters matching a second-moment matrix.
///
/// `M` holds the eigenvectors of `s` (minor eigenvalue first) and `z1` is the
/// unique root of `minor_moment(z1) = omega1`. Equal eigenvalues yield the
/// uniform distribution with `M = I`.
pub fn mle_from_covariance(s: &CovMat2) -> Result<BinghamParams> {
    const OP: &str = "mle_from_covariance";
    let trace = s.trace();
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(BinghamError::domain(OP, format!("trace {trace} is not 1")));
    }
    let eig = sym_eigen2(s.s11, s.s12, s.s22);
    if eig.values[0] == eig.values[1] {
        return Ok(BinghamParams::uniform());
    }
    let omega1 = (eig.values[0] / trace).min(0.5);
    if omega1 <= 0.0 {
        return Err(BinghamError::overflow(
            OP,
            format!("degenerate second moment (omega1 = {omega1:e})"),
        ));
    }
    let z1 = concentration_for_moment(omega1).map_err(|e| match e {
        BinghamError::ConcentrationOverflow { detail, .. } => BinghamError::overflow(OP, detail),
        other => other,
    })?;
    let [minor, major] = eig.vectors;
    Ok(BinghamParams::from_axes_unchecked(
        UnitVec2::new_unchecked(minor[0], minor[1]),
        UnitVec2::new_unchecked(major[0], major[1]),
        z1,
    ))
}

/// Inverse-CDF sampler over the angle from the minor axis.
///
/// The table covers a half period `[0, pi)`, where the mode sits in the
/// middle; a fair coin then picks between the antipodes.
#[derive(Debug, Clone)]
pub struct BinghamSampler {
    minor: UnitVec2,
    major: UnitVec2,
    /// Unnormalized density at the table nodes.
    density: Vec<f64>,
    /// Cumulative trapezoid mass at the table nodes.
    cumulative: Vec<f64>,
}

impl BinghamSampler {
    pub fn new(p: &BinghamParams) -> Self {
        let n = SAMPLER_TABLE_SIZE;
        let h = PI / n as f64;
        let density: Vec<f64> = (0..=n)
            .map(|j| (p.z1 * sq((j as f64 * h).cos())).exp())
            .collect();
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cumulative.push(acc);
        for w in density.windows(2) {
            acc += 0.5 * h * (w[0] + w[1]);
            cumulative.push(acc);
        }
        Self {
            minor: p.axis(0),
            major: p.axis(1),
            density,
            cumulative,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> UnitVec2 {
        let total = *self.cumulative.last().expect("non-empty table");
        let target = rng.gen::<f64>() * total;
        // first node with cumulative mass > target
        let j = self
            .cumulative
            .partition_point(|&c| c <= target)
            .clamp(1, SAMPLER_TABLE_SIZE);
        let h = PI / SAMPLER_TABLE_SIZE as f64;
        let (f0, f1) = (self.density[j - 1], self.density[j]);
        let t = target - self.cumulative[j - 1];
        // exact inverse of the linear density within the cell
        let disc = (f0 * f0 + 2.0 * (f1 - f0) * t / h).max(0.0);
        let denom = f0 + disc.sqrt();
        let offset = if denom > 0.0 {
            (2.0 * t / denom).clamp(0.0, h)
        } else {
            0.5 * h
        };
        let phi = (j - 1) as f64 * h + offset;
        let (s, c) = phi.sin_cos();
        let x = UnitVec2::new_unchecked(
            c * self.minor.c1 + s * self.major.c1,
            c * self.minor.c2 + s * self.major.c2,
        );
        if rng.gen::<bool>() {
            -x
        } else {
            x
        }
    }
}

/// `n` samples drawn with a ChaCha8 generator seeded from `seed`.
pub fn sample(p: &BinghamParams, seed: u64, n: usize) -> Vec<UnitVec2> {
    let sampler = BinghamSampler::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sampler.sample(&mut rng)).collect()
}

/// Angle of the mode measured from the first coordinate axis, in `[0, pi)`.
pub fn mode_angle(p: &BinghamParams) -> f64 {
    mode(p).axial_angle()
}

/// Offset of `x` from the minor axis, in `[0, pi)`; the mode sits at `pi/2`.
pub fn angle_from_minor_axis(p: &BinghamParams, x: &UnitVec2) -> f64 {
    let u = p.axis(0);
    let v = p.axis(1);
    x.dot(&v)
        .atan2(x.dot(&u))
        .rem_euclid(PI)
        .min(PI - f64::EPSILON)
}

/// Half-period offset from the mode, in `[-pi/2, pi/2)`.
pub fn offset_from_mode(p: &BinghamParams, x: &UnitVec2) -> f64 {
    angle_from_minor_axis(p, x) - FRAC_PI_2
}

#[inline]
fn sq(v: f64) -> f64 {
    v * v
}
