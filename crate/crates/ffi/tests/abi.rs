use std::ffi::CStr;
use std::ptr;

use bingham_ffi::*;

const IDENTITY: [f64; 4] = [1.0, 0.0, 0.0, 1.0];

fn params(z1: f64) -> BhParams {
    BhParams { m: IDENTITY, z1 }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bh_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn scalar_functions() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(bh_kummer_half_one(-8.0, &mut v), BhStatus::Ok);
        assert!((v - 0.207_001_921_223_986_7).abs() < 1e-14);
        assert_eq!(bh_kummer_threehalves_two(0.0, &mut v), BhStatus::Ok);
        assert_eq!(v, 1.0);
        assert_eq!(bh_normalization_constant(-8.0, &mut v), BhStatus::Ok);
        assert!((v - 1.300_631_429_992_499_4).abs() < 1e-13);
    }
}

#[test]
fn errors_leave_output_untouched() {
    let mut v = 42.0;
    unsafe {
        assert_eq!(bh_kummer_half_one(f64::NAN, &mut v), BhStatus::Domain);
        assert_eq!(v, 42.0);
        assert!(last_error().contains("kummer_half_one"));
        assert_eq!(
            bh_kummer_half_one(-1.0, ptr::null_mut()),
            BhStatus::NullPointer
        );
        assert_eq!(
            bh_pdf(ptr::null(), BhVec2 { c1: 1.0, c2: 0.0 }, &mut v),
            BhStatus::NullPointer
        );
        assert_eq!(v, 42.0);

        let bad = BhParams {
            m: [1.0, 1.0, 0.0, 1.0],
            z1: -1.0,
        };
        let mut out = params(0.0);
        assert_eq!(
            bh_covariance(
                &bad,
                &mut BhCov {
                    s11: 0.0,
                    s12: 0.0,
                    s22: 0.0
                }
            ),
            BhStatus::Domain
        );
        let point = BhCov {
            s11: 0.0,
            s12: 0.0,
            s22: 1.0,
        };
        assert_eq!(
            bh_mle_from_covariance(&point, &mut out),
            BhStatus::ConcentrationOverflow
        );
        assert_eq!(out, params(0.0));
    }
}

#[test]
fn status_messages() {
    for code in 0..7 {
        let s = unsafe { CStr::from_ptr(bh_status_message(code)) };
        assert!(!s.to_bytes().is_empty());
    }
    let s = unsafe { CStr::from_ptr(bh_status_message(BhStatus::StageMismatch as i32)) };
    assert_eq!(s.to_str().unwrap(), "filter called in the wrong stage");
}

#[test]
fn distribution_round_trip() {
    let p = BhParams {
        m: [0.6, 0.8, -0.8, 0.6],
        z1: -8.0,
    };
    let mut cov = BhCov {
        s11: 0.0,
        s12: 0.0,
        s22: 0.0,
    };
    let mut back = params(0.0);
    let mut mode = BhVec2 { c1: 0.0, c2: 0.0 };
    unsafe {
        assert_eq!(bh_covariance(&p, &mut cov), BhStatus::Ok);
        assert!((cov.s11 + cov.s22 - 1.0).abs() < 1e-12);
        assert_eq!(bh_mle_from_covariance(&cov, &mut back), BhStatus::Ok);
        assert_eq!(bh_mode(&p, &mut mode), BhStatus::Ok);
    }
    assert!((back.z1 + 8.0).abs() < 1e-8);
    assert!((mode.c1 - 0.8).abs() < 1e-15 && (mode.c2 - 0.6).abs() < 1e-15);
}

#[test]
fn product_and_composition() {
    let a = params(-2.0);
    let b = params(-3.0);
    let mut c = params(0.0);
    let mut x = BhVec2 { c1: 0.0, c2: 0.0 };
    unsafe {
        assert_eq!(bh_multiply(&a, &b, &mut c), BhStatus::Ok);
        assert!((c.z1 + 5.0).abs() < 1e-12);
        assert_eq!(bh_compose_dist(&a, &b, &mut c), BhStatus::Ok);
        assert!(c.z1 < 0.0 && c.z1 > -2.0);
        let r = BhVec2 { c1: 0.0, c2: 2.0 };
        assert_eq!(bh_compose(r, r, &mut x), BhStatus::Ok);
    }
    assert!((x.c1 + 1.0).abs() < 1e-15 && x.c2.abs() < 1e-15);
}

#[test]
fn filter_handle_lifecycle() {
    let noise = BhParams {
        m: [0.0, 1.0, 1.0, 0.0],
        z1: -10.0,
    };
    let mut f: *mut BhFilter = ptr::null_mut();
    let mut stage = BhStage::Estimated;
    let mut p = params(0.0);
    unsafe {
        assert_eq!(bh_filter_new(&params(0.0), &mut f), BhStatus::Ok);
        assert!(!f.is_null());
        assert_eq!(bh_filter_stage(f, &mut stage), BhStatus::Ok);
        assert_eq!(stage, BhStage::Predicted);
        assert_eq!(bh_filter_predict(f, &noise), BhStatus::StageMismatch);
        assert!(last_error().contains("predict"));

        let z = BhVec2 { c1: 0.6, c2: 0.8 };
        assert_eq!(bh_filter_update(f, &noise, z), BhStatus::Ok);
        assert_eq!(bh_filter_stage(f, &mut stage), BhStatus::Ok);
        assert_eq!(stage, BhStage::Estimated);
        assert_eq!(bh_filter_params(f, &mut p), BhStatus::Ok);
        let mut mode = BhVec2 { c1: 0.0, c2: 0.0 };
        assert_eq!(bh_mode(&p, &mut mode), BhStatus::Ok);
        assert!((mode.c1 * 0.6 + mode.c2 * 0.8).abs() > 1.0 - 1e-12);

        assert_eq!(bh_filter_predict(f, &noise), BhStatus::Ok);
        assert_eq!(
            bh_filter_predict(ptr::null_mut(), &noise),
            BhStatus::NullPointer
        );
        bh_filter_free(f);
        bh_filter_free(ptr::null_mut());
    }
}

#[test]
fn sampler_is_seeded() {
    let p = params(-5.0);
    let draw = |seed| {
        let mut s: *mut BhSampler = ptr::null_mut();
        let mut out = [BhVec2 { c1: 0.0, c2: 0.0 }; 64];
        unsafe {
            assert_eq!(bh_sampler_new(&p, seed, &mut s), BhStatus::Ok);
            assert_eq!(
                bh_sampler_draw(s, out.as_mut_ptr(), out.len()),
                BhStatus::Ok
            );
            assert_eq!(bh_sampler_draw(s, ptr::null_mut(), 0), BhStatus::Ok);
            bh_sampler_free(s);
        }
        out
    };
    let a = draw(3);
    assert_eq!(a, draw(3));
    assert_ne!(a, draw(4));
    for x in a {
        assert!((x.c1.hypot(x.c2) - 1.0).abs() < 1e-12);
    }
}
