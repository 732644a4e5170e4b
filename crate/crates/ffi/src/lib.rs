//! C ABI for the `bingham` crate.
//!
//! Every function returns a [`BhStatus`] and writes its result through an out
//! pointer. On failure the out pointer is left untouched and a description
//! of the error is available from [`bh_last_error_message`] on the same
//! thread. Filters and samplers are opaque heap handles released with their
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bingham::bingham as dist;
use bingham::{s1group, specfun, BinghamError, BinghamParams, CovMat2, Stage, UnitVec2};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    ConcentrationOverflow = 3,
    StageMismatch = 4,
    Panic = 5,
}

/// Bingham parameters: orientation matrix `m` row-major, then `z1 <= 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BhParams {
    pub m: [f64; 4],
    pub z1: f64,
}

/// A unit vector (or any point in the plane when used as input; inputs are
/// normalized).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BhVec2 {
    pub c1: f64,
    pub c2: f64,
}

/// Symmetric second-moment matrix `[[s11, s12], [s12, s22]]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BhCov {
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhStage {
    Predicted = 0,
    Estimated = 1,
}

/// Opaque filter handle.
pub struct BhFilter {
    inner: bingham::BinghamFilter,
}

/// Opaque sampler handle with its own random stream.
pub struct BhSampler {
    sampler: dist::BinghamSampler,
    rng: ChaCha8Rng,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &BinghamError) -> BhStatus {
    match e {
        BinghamError::Domain { .. } | BinghamError::Config { .. } => BhStatus::Domain,
        BinghamError::ConcentrationOverflow { .. } => BhStatus::ConcentrationOverflow,
        BinghamError::StageMismatch { .. } => BhStatus::StageMismatch,
    }
}

enum Fail {
    Null(&'static str),
    Lib(BinghamError),
}

impl From<BinghamError> for Fail {
    fn from(e: BinghamError) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BhStatus::Ok,
        Ok(Err(Fail::Null(arg))) => {
            set_last_error(&format!("null pointer: {arg}"));
            BhStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            BhStatus::Panic
        }
    }
}

unsafe fn read<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

unsafe fn write<T>(p: *mut T, name: &'static str, v: T) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    p.write(v);
    Ok(())
}

unsafe fn check_out<T>(p: *mut T, name: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail::Null(name))
    } else {
        Ok(())
    }
}

impl BhParams {
    fn to_core(self) -> Result<BinghamParams, BinghamError> {
        let [a, b, c, d] = self.m;
        BinghamParams::from_array([a, b, c, d, self.z1])
    }

    fn from_core(p: &BinghamParams) -> Self {
        let [a, b, c, d, z1] = p.to_array();
        Self {
            m: [a, b, c, d],
            z1,
        }
    }
}

impl BhVec2 {
    fn to_core(self) -> Result<UnitVec2, BinghamError> {
        UnitVec2::new(self.c1, self.c2)
    }

    fn from_core(v: &UnitVec2) -> Self {
        Self {
            c1: v.c1(),
            c2: v.c2(),
        }
    }
}

impl BhCov {
    fn to_core(self) -> Result<CovMat2, BinghamError> {
        CovMat2::new(self.s11, self.s12, self.s22)
    }

    fn from_core(s: &CovMat2) -> Self {
        Self {
            s11: s.s11(),
            s12: s.s12(),
            s22: s.s22(),
        }
    }
}

/// Static description of a status code; unknown codes get a generic text.
/// Never null.
#[no_mangle]
pub extern "C" fn bh_status_message(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer argument\0",
        2 => b"argument outside the domain\0",
        3 => b"concentration overflow\0",
        4 => b"filter called in the wrong stage\0",
        5 => b"internal panic\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Detail of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `1F1(1/2, 1, z)` for `z <= 1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_kummer_half_one(z: f64, out: *mut f64) -> BhStatus {
    guard(|| {
        check_out(out, "out")?;
        write(out, "out", specfun::kummer_half_one(z)?)
    })
}

/// `1F1(3/2, 2, z)` for `z <= 1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_kummer_threehalves_two(z: f64, out: *mut f64) -> BhStatus {
    guard(|| {
        check_out(out, "out")?;
        write(out, "out", specfun::kummer_threehalves_two(z)?)
    })
}

/// Normalization constant of a distribution with concentration `z1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_normalization_constant(z1: f64, out: *mut f64) -> BhStatus {
    guard(|| {
        check_out(out, "out")?;
        write(out, "out", dist::normalization_constant(z1)?)
    })
}

/// Density at the unit vector along `x`.
///
/// # Safety
/// `p` must be null or point to a valid `BhParams`; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_pdf(p: *const BhParams, x: BhVec2, out: *mut f64) -> BhStatus {
    guard(|| {
        let p = read(p, "p")?.to_core()?;
        check_out(out, "out")?;
        write(out, "out", dist::pdf(&p, &x.to_core()?))
    })
}

/// Mode (second column of `m`).
///
/// # Safety
/// `p` must be null or point to a valid `BhParams`; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_mode(p: *const BhParams, out: *mut BhVec2) -> BhStatus {
    guard(|| {
        let p = read(p, "p")?.to_core()?;
        write(out, "out", BhVec2::from_core(&dist::mode(&p)))
    })
}

/// Renormalized product of two densities.
///
/// # Safety
/// `a` and `b` must be null or point to valid `BhParams`; `out` must be null
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_multiply(
    a: *const BhParams,
    b: *const BhParams,
    out: *mut BhParams,
) -> BhStatus {
    guard(|| {
        let a = read(a, "a")?.to_core()?;
        let b = read(b, "b")?.to_core()?;
        check_out(out, "out")?;
        let c = dist::multiply(&a, &b)?;
        write(out, "out", BhParams::from_core(&c))
    })
}

/// Second-moment matrix of a distribution.
///
/// # Safety
/// `p` must be null or point to a valid `BhParams`; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_covariance(p: *const BhParams, out: *mut BhCov) -> BhStatus {
    guard(|| {
        let p = read(p, "p")?.to_core()?;
        write(out, "out", BhCov::from_core(&dist::covariance(&p)))
    })
}

/// Parameters whose second-moment matrix is `s`.
///
/// # Safety
/// `s` must be null or point to a valid `BhCov`; `out` must be null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_mle_from_covariance(s: *const BhCov, out: *mut BhParams) -> BhStatus {
    guard(|| {
        let s = read(s, "s")?.to_core()?;
        check_out(out, "out")?;
        let p = dist::mle_from_covariance(&s)?;
        write(out, "out", BhParams::from_core(&p))
    })
}

/// Group composition (complex multiplication) of two unit vectors.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_compose(x: BhVec2, y: BhVec2, out: *mut BhVec2) -> BhStatus {
    guard(|| {
        let (x, y) = (x.to_core()?, y.to_core()?);
        write(out, "out", BhVec2::from_core(&s1group::compose(&x, &y)))
    })
}

/// Second-moment matrix of the composition of independent variables.
///
/// # Safety
/// `a` and `b` must be null or point to valid `BhCov`; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_compose_cov(
    a: *const BhCov,
    b: *const BhCov,
    out: *mut BhCov,
) -> BhStatus {
    guard(|| {
        let a = read(a, "a")?.to_core()?;
        let b = read(b, "b")?.to_core()?;
        check_out(out, "out")?;
        let c = s1group::compose_cov(&a, &b)?;
        write(out, "out", BhCov::from_core(&c))
    })
}

/// Moment-matched distribution of the composition of independent variables.
///
/// # Safety
/// `a` and `b` must be null or point to valid `BhParams`; `out` must be null
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bh_compose_dist(
    a: *const BhParams,
    b: *const BhParams,
    out: *mut BhParams,
) -> BhStatus {
    guard(|| {
        let a = read(a, "a")?.to_core()?;
        let b = read(b, "b")?.to_core()?;
        check_out(out, "out")?;
        let c = s1group::compose_dist(&a, &b)?;
        write(out, "out", BhParams::from_core(&c))
    })
}

/// Creates a filter from a prior awaiting its first measurement update.
///
/// # Safety
/// `prior` must be null or point to a valid `BhParams`; `out` must be null or
/// valid for writes. The handle written to `out` must be released with
/// [`bh_filter_free`].
#[no_mangle]
pub unsafe extern "C" fn bh_filter_new(
    prior: *const BhParams,
    out: *mut *mut BhFilter,
) -> BhStatus {
    guard(|| {
        let prior = read(prior, "prior")?.to_core()?;
        check_out(out, "out")?;
        let handle = Box::new(BhFilter {
            inner: bingham::BinghamFilter::new(prior),
        });
        write(out, "out", Box::into_raw(handle))
    })
}

/// Releases a filter. Null is ignored.
///
/// # Safety
/// `f` must be null or a handle from [`bh_filter_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bh_filter_free(f: *mut BhFilter) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Prediction step; the filter must hold an estimate.
///
/// # Safety
/// `f` must be null or a live filter handle; `system_noise` must be null or
/// point to a valid `BhParams`.
#[no_mangle]
pub unsafe extern "C" fn bh_filter_predict(
    f: *mut BhFilter,
    system_noise: *const BhParams,
) -> BhStatus {
    guard(|| {
        let f = f.as_mut().ok_or(Fail::Null("f"))?;
        let w = read(system_noise, "system_noise")?.to_core()?;
        f.inner.predict(&w)?;
        Ok(())
    })
}

/// Measurement update with measurement `z`; the filter must hold a
/// prediction.
///
/// # Safety
/// `f` must be null or a live filter handle; `meas_noise` must be null or
/// point to a valid `BhParams`.
#[no_mangle]
pub unsafe extern "C" fn bh_filter_update(
    f: *mut BhFilter,
    meas_noise: *const BhParams,
    z: BhVec2,
) -> BhStatus {
    guard(|| {
        let f = f.as_mut().ok_or(Fail::Null("f"))?;
        let v = read(meas_noise, "meas_noise")?.to_core()?;
        f.inner.update(&v, &z.to_core()?)?;
        Ok(())
    })
}

/// Current distribution of the filter.
///
/// # Safety
/// `f` must be null or a live filter handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bh_filter_params(f: *const BhFilter, out: *mut BhParams) -> BhStatus {
    guard(|| {
        let f = read(f, "f")?;
        write(out, "out", BhParams::from_core(&f.inner.state().params))
    })
}

/// Current stage of the filter.
///
/// # Safety
/// `f` must be null or a live filter handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bh_filter_stage(f: *const BhFilter, out: *mut BhStage) -> BhStatus {
    guard(|| {
        let f = read(f, "f")?;
        let stage = match f.inner.state().stage {
            Stage::Predicted => BhStage::Predicted,
            Stage::Estimated => BhStage::Estimated,
        };
        write(out, "out", stage)
    })
}

/// Creates a sampler for `p` seeded with `seed`.
///
/// # Safety
/// `p` must be null or point to a valid `BhParams`; `out` must be null or
/// valid for writes. The handle must be released with [`bh_sampler_free`].
#[no_mangle]
pub unsafe extern "C" fn bh_sampler_new(
    p: *const BhParams,
    seed: u64,
    out: *mut *mut BhSampler,
) -> BhStatus {
    guard(|| {
        let p = read(p, "p")?.to_core()?;
        check_out(out, "out")?;
        let handle = Box::new(BhSampler {
            sampler: dist::BinghamSampler::new(&p),
            rng: ChaCha8Rng::seed_from_u64(seed),
        });
        write(out, "out", Box::into_raw(handle))
    })
}

/// Releases a sampler. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle from [`bh_sampler_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bh_sampler_free(s: *mut BhSampler) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Draws `n` samples into `out[0..n]`.
///
/// # Safety
/// `s` must be null or a live sampler handle; `out` must be null or valid for
/// `n` writes.
#[no_mangle]
pub unsafe extern "C" fn bh_sampler_draw(
    s: *mut BhSampler,
    out: *mut BhVec2,
    n: usize,
) -> BhStatus {
    guard(|| {
        let s = s.as_mut().ok_or(Fail::Null("s"))?;
        if n == 0 {
            return Ok(());
        }
        check_out(out, "out")?;
        for i in 0..n {
            let x = s.sampler.sample(&mut s.rng);
            ptr::write(out.add(i), BhVec2::from_core(&x));
        }
        Ok(())
    })
}
