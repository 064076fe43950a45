use std::ffi::{c_char, CStr, CString};
use std::ptr;

use toroidal_ffi::*;

const E: &str = include_str!("../../core/tests/golden/inputs/e_t10.json");
const F: &str = include_str!("../../core/tests/golden/inputs/f_tm10.json");
const TILDE: &str = include_str!("../../core/tests/golden/inputs/tilde_e_25.json");

fn parse(json: &str) -> *mut TorElement {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tor_element_parse(c.as_ptr(), &mut out) }, TorStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { tor_string_free(p) };
    s
}

fn to_json(x: *const TorElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tor_element_to_json(x, &mut s) }, TorStatus::Ok);
    take_string(s)
}

fn last_error() -> String {
    let p = tor_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn bracket_e_f_matches_cli_output() {
    let (e, f) = (parse(E), parse(F));
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { tor_bracket(e, f, &mut z) }, TorStatus::Ok);
    let expected = include_str!("../../core/tests/golden/expected/bracket_e_f.out");
    assert_eq!(to_json(z), expected.strip_prefix("exit 0\n").unwrap());
    unsafe {
        tor_element_free(e);
        tor_element_free(f);
        tor_element_free(z);
    }
}

#[test]
fn self_bracket_vanishes() {
    let e = parse(E);
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { tor_bracket(e, e, &mut z) }, TorStatus::Ok);
    assert_eq!(unsafe { tor_element_is_zero(z) }, 1);
    assert_eq!(unsafe { tor_element_is_zero(e) }, 0);
    assert_eq!(unsafe { tor_element_is_zero(ptr::null()) }, -1);
    unsafe {
        tor_element_free(e);
        tor_element_free(z);
    }
}

#[test]
fn twist_swap_and_back() {
    let e = parse(E);
    let swap = [0i64, 1, 1, 0];
    let mut y = ptr::null_mut();
    assert_eq!(unsafe { tor_twist(e, swap.as_ptr(), 2, &mut y) }, TorStatus::Ok);
    let expected = include_str!("../../core/tests/golden/expected/twist_swap.out");
    assert_eq!(to_json(y), expected.strip_prefix("exit 0\n").unwrap());
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { tor_twist(y, swap.as_ptr(), 2, &mut back) }, TorStatus::Ok);
    assert_eq!(to_json(back), E.to_owned() + "\n");
    unsafe {
        tor_element_free(e);
        tor_element_free(y);
        tor_element_free(back);
    }
}

#[test]
fn non_unimodular_twist_is_domain_error() {
    let e = parse(E);
    let m = [2i64, 0, 0, 1];
    let mut y = ptr::null_mut();
    assert_eq!(unsafe { tor_twist(e, m.as_ptr(), 2, &mut y) }, TorStatus::Domain);
    assert!(y.is_null());
    assert!(!last_error().is_empty());
    unsafe { tor_element_free(e) };
}

#[test]
fn mixed_algebras_are_rejected() {
    let (e, t) = (parse(E), parse(TILDE));
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { tor_bracket(e, t, &mut z) }, TorStatus::FlavorMismatch);
    assert!(z.is_null());
    unsafe {
        tor_element_free(e);
        tor_element_free(t);
    }
}

#[test]
fn parse_errors_carry_position() {
    let bad = include_str!("../../core/tests/golden/inputs/bad_fraction.json");
    let c = CString::new(bad).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tor_element_parse(c.as_ptr(), &mut out) }, TorStatus::Parse);
    assert!(last_error().contains("line 2"));
    assert!(out.is_null());
}

#[test]
fn null_arguments_are_reported() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tor_element_parse(ptr::null(), &mut out) }, TorStatus::NullPointer);
    assert_eq!(unsafe { tor_bracket(ptr::null(), ptr::null(), &mut out) }, TorStatus::NullPointer);
    let e = parse(E);
    assert_eq!(unsafe { tor_element_to_json(e, ptr::null_mut()) }, TorStatus::NullPointer);
    unsafe {
        tor_element_free(e);
        tor_element_free(ptr::null_mut());
        tor_string_free(ptr::null_mut());
        tor_algebra_free(ptr::null_mut());
    }
}

#[test]
fn algebra_handles() {
    for (flavor, n) in [("tau", 2u32), ("tau_tilde", 3), ("tau_hat", 1), ("dera_hat", 2)] {
        let name = CString::new(flavor).unwrap();
        let mut a = ptr::null_mut();
        assert_eq!(unsafe { tor_algebra_new(name.as_ptr(), 1, n, &mut a) }, TorStatus::Ok);
        assert_eq!(unsafe { tor_algebra_variables(a) }, n);
        let mut z = ptr::null_mut();
        assert_eq!(unsafe { tor_algebra_zero(a, &mut z) }, TorStatus::Ok);
        assert_eq!(unsafe { tor_element_is_zero(z) }, 1);
        let json = to_json(z);
        assert!(json.contains(flavor));
        unsafe {
            tor_element_free(z);
            tor_algebra_free(a);
        }
    }
    let bogus = CString::new("tau_bar").unwrap();
    let mut a = ptr::null_mut();
    assert_ne!(unsafe { tor_algebra_new(bogus.as_ptr(), 1, 2, &mut a) }, TorStatus::Ok);
    let tau = CString::new("tau").unwrap();
    assert_eq!(unsafe { tor_algebra_new(tau.as_ptr(), 1, 0, &mut a) }, TorStatus::Domain);
}

#[test]
fn verify_reports_json() {
    let suite = CString::new("jacobi").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tor_verify(suite.as_ptr(), 7, 20, 1, 3, &mut out) }, TorStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(report["suite"], "jacobi");
    assert_eq!(report["passed"], true);

    let unknown = CString::new("nope").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tor_verify(unknown.as_ptr(), 0, 1, 1, 3, &mut out) }, TorStatus::Unsupported);
    assert!(out.is_null());
}

#[test]
fn header_is_current_and_compiles() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/toroidal.h")).unwrap();
    for name in ["tor_bracket", "tor_twist", "tor_verify", "tor_string_free", "TOR_STATUS_VIOLATION"] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", &format!("{dir}/include/toroidal.h")])
        .status()
    else {
        return;
    };
    assert!(status.success());
}
