//! Exercises the C ABI end to end from the Rust side: status codes, handle
//! lifecycles, string ownership, and the last-error channel.

use std::ffi::{c_int, CStr, CString};
use std::ptr;

use weilcat_ffi::*;

fn cstr(text: &str) -> CString {
    CString::new(text).expect("test inputs have no NUL")
}

/// Takes ownership of an ABI string and frees it.
unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null(), "string out-pointer was written");
    let owned = CStr::from_ptr(ptr).to_str().expect("ABI strings are UTF-8").to_string();
    wc_string_free(ptr);
    owned
}

unsafe fn last_error() -> String {
    take_string(wc_last_error_message())
}

#[test]
fn algebra_handles_round_trip() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(
            wc_algebra_parse(cstr("W^2 @ W").as_ptr(), &mut a),
            WcStatus::WC_STATUS_OK
        );

        let mut rendered = ptr::null_mut();
        assert_eq!(wc_algebra_to_string(a, &mut rendered), WcStatus::WC_STATUS_OK);
        assert_eq!(take_string(rendered), "W^2@W");

        let mut count = 0u32;
        assert_eq!(wc_algebra_generator_count(a, &mut count), WcStatus::WC_STATUS_OK);
        assert_eq!(count, 3);

        let mut size = 0u64;
        assert_eq!(wc_algebra_basis_size(a, &mut size), WcStatus::WC_STATUS_OK);
        assert_eq!(size, 6);

        let mut b = ptr::null_mut();
        assert_eq!(wc_algebra_parse(cstr("N").as_ptr(), &mut b), WcStatus::WC_STATUS_OK);
        let mut product = ptr::null_mut();
        assert_eq!(wc_algebra_tensor(a, b, &mut product), WcStatus::WC_STATUS_OK);
        let mut equal: c_int = 0;
        assert_eq!(wc_algebra_equal(a, product, &mut equal), WcStatus::WC_STATUS_OK);
        assert_eq!(equal, 1, "tensoring with N is the identity");

        wc_algebra_free(a);
        wc_algebra_free(b);
        wc_algebra_free(product);
        wc_algebra_free(ptr::null_mut());
    }
}

#[test]
fn parse_failures_set_the_error_channel() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(
            wc_algebra_parse(cstr("W @@ W").as_ptr(), &mut a),
            WcStatus::WC_STATUS_PARSE_ERROR
        );
        let message = last_error();
        assert!(message.contains("1:4"), "positioned: {message}");

        assert_eq!(
            wc_algebra_parse(ptr::null(), &mut a),
            WcStatus::WC_STATUS_NULL_ARGUMENT
        );
        assert_eq!(
            wc_algebra_parse(c"W\xFF".as_ptr(), &mut a),
            WcStatus::WC_STATUS_INVALID_UTF8
        );

        // A successful call clears the channel.
        assert_eq!(wc_algebra_parse(cstr("W").as_ptr(), &mut a), WcStatus::WC_STATUS_OK);
        assert!(wc_last_error_message().is_null());
        wc_algebra_free(a);
    }
}

#[test]
fn morphism_handles_compose_and_tensor() {
    unsafe {
        let mut delta = ptr::null_mut();
        assert_eq!(
            wc_morphism_parse(cstr("[W -> W@W]{ x1 -> x1*x2 }").as_ptr(), &mut delta),
            WcStatus::WC_STATUS_OK
        );
        let mut fold = ptr::null_mut();
        assert_eq!(
            wc_morphism_parse(
                cstr("[W^2 -> W]{ x1 -> x1 ; x2 -> x1 }").as_ptr(),
                &mut fold
            ),
            WcStatus::WC_STATUS_OK
        );

        let mut composite = ptr::null_mut();
        assert_eq!(
            wc_morphism_compose(delta, fold, &mut composite),
            WcStatus::WC_STATUS_OK
        );
        let mut rendered = ptr::null_mut();
        assert_eq!(
            wc_morphism_to_string(composite, &mut rendered),
            WcStatus::WC_STATUS_OK
        );
        assert_eq!(
            take_string(rendered),
            "[W^2 -> W@W]{ x1 -> x1*x2 ; x2 -> x1*x2 }"
        );

        // Endpoints that do not match are a domain error, not a crash.
        let mut bad = ptr::null_mut();
        assert_eq!(
            wc_morphism_compose(fold, delta, &mut bad),
            WcStatus::WC_STATUS_DOMAIN_ERROR
        );
        assert!(!last_error().is_empty());

        let mut source = ptr::null_mut();
        assert_eq!(wc_morphism_source(composite, &mut source), WcStatus::WC_STATUS_OK);
        let mut rendered = ptr::null_mut();
        assert_eq!(wc_algebra_to_string(source, &mut rendered), WcStatus::WC_STATUS_OK);
        assert_eq!(take_string(rendered), "W^2");

        let mut tensored = ptr::null_mut();
        assert_eq!(
            wc_morphism_tensor(delta, delta, &mut tensored),
            WcStatus::WC_STATUS_OK
        );
        let mut rendered = ptr::null_mut();
        assert_eq!(
            wc_morphism_to_string(tensored, &mut rendered),
            WcStatus::WC_STATUS_OK
        );
        assert_eq!(
            take_string(rendered),
            "[W@W -> W@W@W@W]{ x1 -> x1*x2 ; x2 -> x3*x4 }"
        );

        wc_morphism_free(delta);
        wc_morphism_free(fold);
        wc_morphism_free(composite);
        wc_morphism_free(tensored);
        wc_algebra_free(source);
        wc_morphism_free(ptr::null_mut());
    }
}

#[test]
fn check_hom_reports_the_witness() {
    unsafe {
        assert_eq!(
            wc_check_hom(cstr("[W -> W@W]{ x1 -> x1*x2 }").as_ptr(), ptr::null_mut()),
            WcStatus::WC_STATUS_OK
        );

        let mut witness = ptr::null_mut();
        assert_eq!(
            wc_check_hom(
                cstr("[W^2 -> W@W]{ x1 -> x1 ; x2 -> x2 }").as_ptr(),
                &mut witness
            ),
            WcStatus::WC_STATUS_NOT_HOM
        );
        let witness = take_string(witness);
        assert!(witness.contains("x1, x2"), "{witness}");
        assert!(witness.contains("x1*x2"), "{witness}");

        assert_eq!(
            wc_check_hom(cstr("[W -> W]{").as_ptr(), ptr::null_mut()),
            WcStatus::WC_STATUS_PARSE_ERROR
        );
    }
}

#[test]
fn normalize_matches_the_library() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            wc_normalize(cstr("W@W").as_ptr(), cstr("x2*x1 + x1*x2").as_ptr(), &mut out),
            WcStatus::WC_STATUS_OK
        );
        assert_eq!(take_string(out), "2*x1*x2");

        assert_eq!(
            wc_normalize(cstr("W^2").as_ptr(), cstr("x1*x2").as_ptr(), &mut out),
            WcStatus::WC_STATUS_OK
        );
        assert_eq!(take_string(out), "0");
    }
}

#[test]
fn pullback_verifiers_report_and_pass() {
    unsafe {
        let mut passed: c_int = 0;
        let mut report = ptr::null_mut();
        assert_eq!(
            wc_verify_vertical(11, 40, &mut passed, &mut report),
            WcStatus::WC_STATUS_OK
        );
        assert_eq!(passed, 1);
        let report = take_string(report);
        assert!(report.contains("\"seed\":11"), "{report}");

        let mut passed: c_int = 0;
        assert_eq!(
            wc_verify_foundational(
                cstr("W").as_ptr(),
                1,
                2,
                7,
                40,
                &mut passed,
                ptr::null_mut()
            ),
            WcStatus::WC_STATUS_OK
        );
        assert_eq!(passed, 1);

        assert_eq!(
            wc_verify_foundational(
                cstr("W").as_ptr(),
                0,
                1,
                0,
                10,
                &mut passed,
                ptr::null_mut()
            ),
            WcStatus::WC_STATUS_DOMAIN_ERROR
        );
    }
}

#[test]
fn status_names_are_static_strings() {
    let name = wc_status_name(WcStatus::WC_STATUS_NOT_HOM);
    let text = unsafe { CStr::from_ptr(name) }.to_str().unwrap();
    assert_eq!(text, "not a morphism");
}
