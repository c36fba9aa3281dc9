use std::ffi::{CStr, CString};
use std::ptr;

use walg_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { walg_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(walg_last_error()) }.to_str().unwrap().to_string()
}

fn generators(n: usize, l: usize) -> *mut WalgGenerators {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { walg_generators_new(n, l, &mut h) }, WalgStatus::Ok);
    h
}

#[test]
fn generator_rendering() {
    let h = generators(2, 2);
    let mut count = 0;
    assert_eq!(unsafe { walg_generators_count(h, &mut count) }, WalgStatus::Ok);
    assert_eq!(count, 8);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { walg_generator_render(h, 1, 1, 1, false, WalgFormat::Text, &mut out) }, WalgStatus::Ok);
    assert_eq!(take_string(out), "e_11[-1] + e_33[-1]");
    assert_eq!(unsafe { walg_generator_render(h, 1, 1, 2, true, WalgFormat::Json, &mut out) }, WalgStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["terms"].as_array().unwrap().len(), 3);
    unsafe { walg_generators_free(h) };
}

#[test]
fn verification_suites() {
    let h = generators(1, 3);
    for suite in [WalgSuite::Reconstruction, WalgSuite::Closure, WalgSuite::Miura, WalgSuite::Leading] {
        let mut passed = false;
        assert_eq!(unsafe { walg_generators_verify(h, suite, &mut passed) }, WalgStatus::Ok);
        assert!(passed, "{suite:?}");
    }
    unsafe { walg_generators_free(h) };
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { walg_generators_new(0, 2, &mut h) }, WalgStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { walg_generators_new(1, 7, &mut h) }, WalgStatus::TooLarge);
    assert_eq!(unsafe { walg_generators_new(1, 2, ptr::null_mut()) }, WalgStatus::NullPointer);
    let mut count = 0;
    assert_eq!(unsafe { walg_generators_count(ptr::null(), &mut count) }, WalgStatus::NullPointer);

    let g = generators(1, 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { walg_generator_render(g, 1, 1, 3, false, WalgFormat::Text, &mut out) }, WalgStatus::InvalidArgument);
    assert!(last_error().contains("W_11^(3)"));
    assert_eq!(unsafe { walg_generators_count(g, &mut count) }, WalgStatus::Ok);
    assert!(last_error().is_empty());
    unsafe { walg_generators_free(g) };

    let bad = CString::new("{\"terms\": 3}").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { walg_state_from_json(1, 2, bad.as_ptr(), &mut s) }, WalgStatus::Parse);
    let garbage = CString::new("not json").unwrap();
    assert_eq!(unsafe { walg_state_from_json(1, 2, garbage.as_ptr(), &mut s) }, WalgStatus::Parse);
    assert_eq!(unsafe { walg_state_from_json(1, 2, ptr::null(), &mut s) }, WalgStatus::NullPointer);
}

#[test]
fn state_products() {
    let h = generators(1, 2);
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { walg_generator_state(h, 1, 1, 1, &mut w) }, WalgStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { walg_state_render(w, WalgFormat::Json, &mut json) }, WalgStatus::Ok);
    let text = CString::new(take_string(json)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { walg_state_from_json(1, 2, text.as_ptr(), &mut back) }, WalgStatus::Ok);
    let mut same = false;
    assert_eq!(unsafe { walg_state_equal(w, back, &mut same) }, WalgStatus::Ok);
    assert!(same);

    // the trace is null for kappa_b
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { walg_state_product(w, 1, w, &mut p) }, WalgStatus::Ok);
    let mut zero = false;
    assert_eq!(unsafe { walg_state_is_zero(p, &mut zero) }, WalgStatus::Ok);
    assert!(zero);
    unsafe { walg_state_free(p) };

    let mut w2 = ptr::null_mut();
    assert_eq!(unsafe { walg_generator_state(h, 1, 1, 2, &mut w2) }, WalgStatus::Ok);
    assert_eq!(unsafe { walg_state_product(w2, 3, w2, &mut p) }, WalgStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { walg_state_render(p, WalgFormat::Text, &mut out) }, WalgStatus::Ok);
    let rendered = take_string(out);
    assert!(rendered.ends_with("|0>"), "{rendered}");
    assert_eq!(unsafe { walg_state_is_zero(p, &mut zero) }, WalgStatus::Ok);
    assert!(!zero);
    unsafe { walg_state_free(w2) };

    let mut d = ptr::null_mut();
    assert_eq!(unsafe { walg_state_translate(w, &mut d) }, WalgStatus::Ok);
    let mut dp = ptr::null_mut();
    assert_eq!(unsafe { walg_state_product(d, 0, w, &mut dp) }, WalgStatus::Ok);
    assert_eq!(unsafe { walg_state_is_zero(dp, &mut zero) }, WalgStatus::Ok);
    assert!(zero);

    let other = generators(2, 2);
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { walg_generator_state(other, 1, 1, 1, &mut v) }, WalgStatus::Ok);
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { walg_state_product(w, 0, v, &mut bad) }, WalgStatus::InvalidArgument);

    for s in [w, back, p, d, dp, v] {
        unsafe { walg_state_free(s) };
    }
    unsafe {
        walg_generators_free(h);
        walg_generators_free(other);
    }
}

#[test]
fn conformal_vector_and_kappa() {
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { walg_conformal_vector(&mut l) }, WalgStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { walg_state_product(l, 2, l, &mut p) }, WalgStatus::Ok);
    let mut zero = false;
    assert_eq!(unsafe { walg_state_is_zero(p, &mut zero) }, WalgStatus::Ok);
    assert!(zero);
    unsafe {
        walg_state_free(l);
        walg_state_free(p);
    }

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { walg_kappa_table_json(2, 2, false, &mut out) }, WalgStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["basis"].as_array().unwrap().len(), 8);
    assert_eq!(unsafe { walg_kappa_table_json(0, 2, false, &mut out) }, WalgStatus::InvalidArgument);
}

#[test]
fn header_is_generated() {
    let header = include_str!("../include/walg.h");
    for name in ["walg_generators_new", "walg_state_product", "walg_last_error", "WALG_STATUS_TOO_LARGE", "typedef struct WalgState WalgState"] {
        assert!(header.contains(name), "{name}");
    }
}
