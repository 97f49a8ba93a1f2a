use std::ffi::{CStr, CString};
use std::ptr;

use ctlucas_ffi::*;

fn parse(text: &str, vars: &str) -> *mut CtlPoly {
    let (t, v) = (CString::new(text).unwrap(), CString::new(vars).unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ctl_poly_parse(t.as_ptr(), v.as_ptr(), &mut out) }, CtlStatus::Ok);
    out
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ctl_string_free(s) };
    text
}

#[test]
fn poly_round_trip() {
    let p = parse("(1 + x)^2 / x", "x");
    assert_eq!(take_string(unsafe { ctl_poly_to_string(p) }), "x^-1 + 2 + x");
    let mut inner = false;
    assert_eq!(unsafe { ctl_poly_origin_only_interior(p, &mut inner) }, CtlStatus::Ok);
    assert!(inner);
    unsafe { ctl_poly_free(p) };
}

#[test]
fn parse_errors_set_message() {
    let (t, v) = (CString::new("x +* y").unwrap(), CString::new("x,y").unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ctl_poly_parse(t.as_ptr(), v.as_ptr(), &mut out) }, CtlStatus::Parse);
    assert!(out.is_null());
    assert!(!ctl_last_error_message().is_null());
    assert_eq!(unsafe { ctl_poly_parse(ptr::null(), v.as_ptr(), &mut out) }, CtlStatus::NullPointer);
}

#[test]
fn sequence_and_checks() {
    let p = parse("1/x + 2 + x", "x");
    let q = parse("1 - x", "x");
    let mut buf = [0u64; 6];
    assert_eq!(unsafe { ctl_ct_sequence_mod(p, q, 7, 2, buf.as_mut_ptr(), buf.len()) }, CtlStatus::Ok);
    assert_eq!(buf, [1, 1, 2, 5, 14, 42]);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ctl_lucas_verify(p, ptr::null(), 5, 300, &mut json) }, CtlStatus::Ok);
    assert!(take_string(json).contains("\"verdict\":\"pass\""));
    assert_eq!(unsafe { ctl_lucas_verify(p, q, 5, 300, &mut json) }, CtlStatus::Counterexample);
    assert!(take_string(json).contains("\"counterexample\""));
    assert_eq!(unsafe { ctl_glc_verify(p, q, 5, 100, &mut json) }, CtlStatus::Ok);
    take_string(json);
    assert_eq!(unsafe { ctl_lucas_verify(p, q, 4, 10, &mut json) }, CtlStatus::InvalidArgument);
    unsafe {
        ctl_poly_free(p);
        ctl_poly_free(q);
    }
}

#[test]
fn scheme_handles() {
    let p = parse("1/x + 2 + x", "x");
    let q = parse("1 - x", "x");
    let mut sch = ptr::null_mut();
    assert_eq!(unsafe { ctl_scheme_synthesize(p, q, 3, 1, 0, &mut sch) }, CtlStatus::Ok);
    assert!(unsafe { ctl_scheme_states(sch) } >= 1);
    let json = CString::new(take_string(unsafe { ctl_scheme_to_json(sch) })).unwrap();
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { ctl_scheme_from_json(json.as_ptr(), &mut again) }, CtlStatus::Ok);
    let mut expect = [0u64; 40];
    assert_eq!(unsafe { ctl_ct_sequence_mod(p, q, 3, 1, expect.as_mut_ptr(), 40) }, CtlStatus::Ok);
    for (n, &want) in expect.iter().enumerate() {
        let (mut a, mut b) = (0, 0);
        assert_eq!(unsafe { ctl_scheme_evaluate(sch, n as u64, &mut a) }, CtlStatus::Ok);
        assert_eq!(unsafe { ctl_scheme_evaluate(again, n as u64, &mut b) }, CtlStatus::Ok);
        assert_eq!((a, b), (want, want));
    }
    let bad = CString::new("{\"p\":4}").unwrap();
    let mut none = ptr::null_mut();
    assert_ne!(unsafe { ctl_scheme_from_json(bad.as_ptr(), &mut none) }, CtlStatus::Ok);
    unsafe {
        ctl_scheme_free(sch);
        ctl_scheme_free(again);
        ctl_poly_free(p);
        ctl_poly_free(q);
    }
}
