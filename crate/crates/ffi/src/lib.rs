//! C ABI over `qloop-core`.
//!
//! A context is an opaque handle bundling a Cartan datum and a degree window.
//! Functions return a [`QloopStatus`]; results come back through out-pointers
//! as NUL-terminated strings owned by the caller, which must release them with
//! [`qloop_string_free`]. The message of the most recent failure on the
//! calling thread is available from [`qloop_last_error`]. Node indices are
//! 1-based, as in the element syntax.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_rational::Rational64;
use qloop_core::barcomp::{bar_element, jet};
use qloop_core::crystal::{kashiwara_e, kashiwara_f};
use qloop_core::loopalg::{normal_order_h, straighten_rank1};
use qloop_core::parse::{parse_cartan, parse_element};
use qloop_core::{verify, CartanData, Element, Error, PairingContext, Window, ZeroVerdict};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QloopStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownNode = 4,
    InvalidCartan = 5,
    InvalidWindow = 6,
    /// A computation could not complete (window too small, wrong input shape, ...).
    Computation = 7,
    /// A verification suite ran and reported at least one failing check.
    VerifyFailed = 8,
    /// An internal panic was caught at the boundary.
    Internal = 9,
}

/// Opaque handle; create with `qloop_context_new*`, release with `qloop_context_free`.
pub struct QloopContext {
    ctx: PairingContext,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QloopStatus {
    match e {
        Error::Parse { .. } => QloopStatus::Parse,
        Error::UnknownNode { .. } => QloopStatus::UnknownNode,
        Error::Cartan(_) => QloopStatus::InvalidCartan,
        Error::Window(..) => QloopStatus::InvalidWindow,
        _ => QloopStatus::Computation,
    }
}

struct Fail(QloopStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<QloopStatus, Fail>>(f: F) -> QloopStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            QloopStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(QloopStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(QloopStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a>(p: *const QloopContext) -> Result<&'a QloopContext, Fail> {
    p.as_ref().ok_or_else(|| Fail(QloopStatus::NullArgument, "null context".into()))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(QloopStatus::NullArgument, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(|_| Fail(QloopStatus::Internal, "output contains NUL".into()))?.into_raw();
    Ok(())
}

fn node(ctx: &QloopContext, i: usize) -> Result<usize, Fail> {
    let rank = ctx.ctx.rank();
    if i == 0 || i > rank {
        return Err(Error::UnknownNode { node: i, rank }.into());
    }
    Ok(i - 1)
}

fn elem(ctx: &QloopContext, s: &str) -> Result<Element, Fail> {
    Ok(parse_element(s, ctx.ctx.rank())?)
}

fn boxed(cartan: CartanData, dmin: i64, dmax: i64, out: *mut *mut QloopContext) -> Result<QloopStatus, Fail> {
    if out.is_null() {
        return Err(Fail(QloopStatus::NullArgument, "null output pointer".into()));
    }
    let w = Window::new(dmin, dmax)?;
    let h = Box::new(QloopContext { ctx: PairingContext::new(cartan, w) });
    unsafe { *out = Box::into_raw(h) };
    Ok(QloopStatus::Ok)
}

/// Builds a context from Cartan configuration text (`rank`, `row`, `sym` lines).
///
/// # Safety
/// `config` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qloop_context_new(config: *const c_char, dmin: i64, dmax: i64, out: *mut *mut QloopContext) -> QloopStatus {
    guard(|| {
        let cartan = parse_cartan(text(config)?)?;
        boxed(cartan, dmin, dmax, out)
    })
}

/// Builds a context for type `A_rank`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qloop_context_new_type_a(rank: usize, dmin: i64, dmax: i64, out: *mut *mut QloopContext) -> QloopStatus {
    guard(|| {
        if rank == 0 {
            return Err(Error::Cartan("rank must be positive".into()).into());
        }
        boxed(CartanData::type_a(rank), dmin, dmax, out)
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must come from `qloop_context_new*` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qloop_context_free(ctx: *mut QloopContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qloop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn qloop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Hopf pairing of two elements.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_pair(ctx: *const QloopContext, x: *const c_char, y: *const c_char, out: *mut *mut c_char) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        let v = c.ctx.hopf_pair(&elem(c, text(x)?)?, &elem(c, text(y)?)?)?;
        emit(out, v.to_string())?;
        Ok(QloopStatus::Ok)
    })
}

/// `F'(i,n) x`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_fprime(ctx: *const QloopContext, i: usize, n: i64, x: *const c_char, out: *mut *mut c_char) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        let y = c.ctx.fprime(node(c, i)?, n, &elem(c, text(x)?)?)?;
        emit(out, y.to_string())?;
        Ok(QloopStatus::Ok)
    })
}

/// Normal order: E-letters first, H-letters sorted after them.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_normal_order(ctx: *const QloopContext, x: *const c_char, out: *mut *mut c_char) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        emit(out, normal_order_h(&elem(c, text(x)?)?, &c.ctx.cartan)?.to_string())?;
        Ok(QloopStatus::Ok)
    })
}

/// Straightening of a single-node element at node `i`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_straighten(ctx: *const QloopContext, i: usize, x: *const c_char, out: *mut *mut c_char) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        emit(out, straighten_rank1(&elem(c, text(x)?)?, node(c, i)?, &c.ctx.cartan)?.to_string())?;
        Ok(QloopStatus::Ok)
    })
}

/// Kashiwara operator: `raise != 0` applies E~(i,n), otherwise F~(i,n).
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_kashiwara(
    ctx: *const QloopContext,
    raise: i32,
    i: usize,
    n: i64,
    x: *const c_char,
    out: *mut *mut c_char,
) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        let (i, x) = (node(c, i)?, elem(c, text(x)?)?);
        let y = if raise != 0 { kashiwara_e(&c.ctx, i, n, &x)? } else { kashiwara_f(&c.ctx, i, n, &x)? };
        emit(out, y.to_string())?;
        Ok(QloopStatus::Ok)
    })
}

/// Bar-involution truncated at the window's lower end.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_bar(ctx: *const QloopContext, x: *const c_char, out: *mut *mut c_char) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        emit(out, bar_element(&c.ctx, &elem(c, text(x)?)?)?.to_string())?;
        Ok(QloopStatus::Ok)
    })
}

/// Jet at level `num/den`, rendered with its header line.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_jet(ctx: *const QloopContext, num: i64, den: i64, x: *const c_char, out: *mut *mut c_char) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()).into());
        }
        emit(out, jet(&c.ctx, &elem(c, text(x)?)?, Rational64::new(num, den))?.to_string())?;
        Ok(QloopStatus::Ok)
    })
}

/// Windowed zero test: `*out` is 1 when `x` pairs to zero with every window word.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_is_zero(ctx: *const QloopContext, x: *const c_char, out: *mut i32) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        if out.is_null() {
            return Err(Fail(QloopStatus::NullArgument, "null output pointer".into()));
        }
        let v = c.ctx.is_zero_windowed(&elem(c, text(x)?)?)?;
        *out = i32::from(v == ZeroVerdict::PresumedZero);
        Ok(QloopStatus::Ok)
    })
}

/// Runs a verification suite. The report is written to `*out` in both the
/// `Ok` and `VerifyFailed` cases.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qloop_verify(ctx: *const QloopContext, suite: *const c_char, out: *mut *mut c_char) -> QloopStatus {
    guard(|| {
        let c = handle(ctx)?;
        let rep = verify::run(text(suite)?, &c.ctx)?;
        emit(out, rep.render())?;
        if rep.ok() {
            Ok(QloopStatus::Ok)
        } else {
            set_error("verification failed");
            Ok(QloopStatus::VerifyFailed)
        }
    })
}
