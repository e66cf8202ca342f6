//! End-to-end checks through the exported C ABI, as a foreign binding
//! would use it.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;

use strata_capi::*;

#[test]
fn curve_cross_ratio_through_handles() {
    let json = CString::new(
        r#"{
        "k": 4, "vertices": [0], "edges": [],
        "labels": {"1": 0, "2": 0, "3": 0, "4": 0},
        "marked_points": {"1": [0.0,0.0], "2": [1.0,0.0], "3": [2.0,0.0], "4": [3.0,0.0]}
    }"#,
    )
    .unwrap();
    let mut curve: *mut StrataCurve = std::ptr::null_mut();
    unsafe {
        assert_eq!(
            strata_curve_parse(json.as_ptr(), 1e-12, &mut curve),
            StrataStatus::Ok
        );
        let mut out = [0.0f64; 4];
        assert_eq!(
            strata_curve_cross_ratio(curve, 1, 2, 3, 4, out.as_mut_ptr()),
            StrataStatus::Ok
        );
        // w(0,1,2,3) = -3
        let w_re = out[0] / out[2];
        assert!((w_re + 3.0).abs() < 1e-12);
        strata_curve_free(curve);
    }
}

#[test]
fn kahler_angle_of_complex_line() {
    // span{e1, e2} in R^4, complex orientation
    let basis = [1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0];
    let mut theta = f64::NAN;
    unsafe {
        assert_eq!(
            strata_kahler_angle(4, 2, basis.as_ptr(), &mut theta),
            StrataStatus::Ok
        );
    }
    assert!(theta.abs() < 1e-12);
}

#[test]
fn subspace_angles() {
    let x = [1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]; // span{e1,e2}
    let y = [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]; // span{e3,e4}
    let mut out = f64::NAN;
    unsafe {
        assert_eq!(
            strata_subspace_angle(0, 4, 2, x.as_ptr(), 2, y.as_ptr(), &mut out),
            StrataStatus::Ok
        );
        assert!((out - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert_eq!(
            strata_subspace_angle(1, 4, 2, x.as_ptr(), 2, y.as_ptr(), &mut out),
            StrataStatus::Ok
        );
        assert!((out - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}

#[test]
fn construct_k_for_tilted_plane() {
    // n = 2: W = span{e1, cos t e2 + sin t e3}
    let t: f64 = 0.3;
    let basis = [
        1.0, 0.0, //
        0.0, t.cos(), //
        0.0, t.sin(), //
        0.0, 0.0,
    ];
    let mut k = [0.0f64; 16];
    let mut norm = f64::NAN;
    unsafe {
        assert_eq!(
            strata_construct_k_codim2(2, basis.as_ptr(), k.as_mut_ptr(), &mut norm),
            StrataStatus::Ok
        );
    }
    // K^2 = -1 entrywise
    let mut ksq = [0.0f64; 16];
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                ksq[i * 4 + j] += k[i * 4 + l] * k[l * 4 + j];
            }
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { -1.0 } else { 0.0 };
            assert!((ksq[i * 4 + j] - expect).abs() < 1e-9);
        }
    }
    assert!((norm - 2.0 * (t / 2.0).sin()).abs() < 1e-9);
}

#[test]
fn gw_normalization_values() {
    let (mut num, mut den, mut cover) = (0i64, 0i64, 0u64);
    unsafe {
        assert_eq!(
            strata_gw_normalization(3, 2, &mut num, &mut den, &mut cover),
            StrataStatus::Ok
        );
    }
    assert_eq!((num, den), (1, 12));
    assert_eq!(cover, 2);
}

#[test]
fn error_message_round_trip() {
    let mut out: *mut StrataTree = std::ptr::null_mut();
    unsafe {
        let bad = CString::new("[]").unwrap();
        assert_eq!(
            strata_tree_parse(bad.as_ptr(), &mut out),
            StrataStatus::ParseError
        );
        let msg: *const c_char = strata_last_error_message();
        assert!(!msg.is_null());
        let text = CStr::from_ptr(msg).to_str().unwrap();
        assert!(!text.is_empty());
    }
}
