use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qloop::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    qloop_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(qloop_last_error()).to_str().unwrap().to_string()
}

struct Ctx(*mut QloopContext);

impl Ctx {
    fn sl2(dmin: i64, dmax: i64) -> Ctx {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { qloop_context_new_type_a(1, dmin, dmax, &mut h) }, QloopStatus::Ok);
        Ctx(h)
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { qloop_context_free(self.0) };
    }
}

#[test]
fn pairing_through_the_abi() {
    use qloop_core::Scalar;
    let c = Ctx::sl2(-2, 3);
    let mut out = ptr::null_mut();
    let x = cs("E(1,0)");
    let want = (&Scalar::v_pow(-2) - &Scalar::one()).inv().unwrap().to_string();
    unsafe {
        assert_eq!(qloop_pair(c.0, x.as_ptr(), x.as_ptr(), &mut out), QloopStatus::Ok);
        assert_eq!(take(out), want);
    }
}

#[test]
fn context_from_config_text() {
    let cfg = cs("rank 2\nrow 2 -1\nrow -1 2\nsym 1 1\n");
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(qloop_context_new(cfg.as_ptr(), -1, 1, &mut h), QloopStatus::Ok);
        let mut out = ptr::null_mut();
        let x = cs("E(2,1)");
        assert_eq!(qloop_fprime(h, 2, 1, x.as_ptr(), &mut out), QloopStatus::Ok);
        assert_eq!(take(out), "1");
        qloop_context_free(h);
    }
}

#[test]
fn error_codes() {
    let c = Ctx::sl2(0, 1);
    let mut out = ptr::null_mut();
    unsafe {
        let bad = cs("E(1,0");
        assert_eq!(qloop_normal_order(c.0, bad.as_ptr(), &mut out), QloopStatus::Parse);
        assert!(last_error().contains("byte"));
        let far = cs("E(2,0)");
        assert_eq!(qloop_normal_order(c.0, far.as_ptr(), &mut out), QloopStatus::UnknownNode);
        assert_eq!(qloop_fprime(c.0, 3, 0, far.as_ptr(), &mut out), QloopStatus::UnknownNode);
        assert_eq!(qloop_pair(ptr::null(), far.as_ptr(), far.as_ptr(), &mut out), QloopStatus::NullArgument);
        let mut h = ptr::null_mut();
        assert_eq!(qloop_context_new_type_a(1, 2, 1, &mut h), QloopStatus::InvalidWindow);
        let cfg = cs("rank 2\nrow 2 -1\nsym 1 1\n");
        assert_eq!(qloop_context_new(cfg.as_ptr(), 0, 1, &mut h), QloopStatus::InvalidCartan);
        let mixed = cs("E(1,0)H(1,1)");
        assert_eq!(qloop_fprime(c.0, 1, 0, mixed.as_ptr(), &mut out), QloopStatus::Computation);
        let suite = cs("nonsense");
        assert_eq!(qloop_verify(c.0, suite.as_ptr(), &mut out), QloopStatus::Computation);
    }
}

#[test]
fn operators_and_reports() {
    let c = Ctx::sl2(-1, 2);
    let mut out = ptr::null_mut();
    unsafe {
        let one = cs("1");
        assert_eq!(qloop_kashiwara(c.0, 1, 1, 0, one.as_ptr(), &mut out), QloopStatus::Ok);
        assert_eq!(take(out), "E(1,0)");
        let e = cs("E(1,0)");
        assert_eq!(qloop_kashiwara(c.0, 0, 1, 0, e.as_ptr(), &mut out), QloopStatus::Ok);
        assert_eq!(take(out), "1");
        let w = cs("E(1,0)E(1,1)");
        assert_eq!(qloop_straighten(c.0, 1, w.as_ptr(), &mut out), QloopStatus::Ok);
        assert_eq!(take(out), "(v^2) * E(1,1)E(1,0)");
        let v = cs("v");
        assert_eq!(qloop_bar(c.0, v.as_ptr(), &mut out), QloopStatus::Ok);
        assert_eq!(take(out), "(v^-1)");
        assert_eq!(qloop_jet(c.0, 0, 1, e.as_ptr(), &mut out), QloopStatus::Ok);
        assert!(take(out).starts_with("weight=<1;0> level=0 window=[-1,2]"));
        let rel = cs("v^2 E(1,1)E(1,0) - E(1,0)E(1,1)");
        let mut z = -1;
        assert_eq!(qloop_is_zero(c.0, rel.as_ptr(), &mut z), QloopStatus::Ok);
        assert_eq!(z, 1);
        let suite = cs("scalars");
        assert_eq!(qloop_verify(c.0, suite.as_ptr(), &mut out), QloopStatus::Ok);
        assert!(take(out).starts_with("CHECK scalars."));
        let suite = cs("pairing");
        assert_eq!(qloop_verify(c.0, suite.as_ptr(), &mut out), QloopStatus::VerifyFailed);
        assert!(take(out).contains("CHECK pairing.admissibility-quoted-sign FAIL"));
    }
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qloop.h")).unwrap();
    for f in [
        "qloop_context_new(",
        "qloop_context_new_type_a(",
        "qloop_context_free(",
        "qloop_string_free(",
        "qloop_last_error(",
        "qloop_pair(",
        "qloop_fprime(",
        "qloop_normal_order(",
        "qloop_straighten(",
        "qloop_kashiwara(",
        "qloop_bar(",
        "qloop_jet(",
        "qloop_is_zero(",
        "qloop_verify(",
        "QLOOP_STATUS_VERIFY_FAILED = 8",
        "typedef struct QloopContext QloopContext;",
    ] {
        assert!(h.contains(f), "{}", f);
    }
}
