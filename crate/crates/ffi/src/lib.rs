//! C ABI over the `toroidal` crate.
//!
//! Objects cross the boundary as opaque handles. Every call returns a
//! [`TorStatus`]; on failure a message is available from [`tor_last_error`]
//! until the next call on the same thread. Strings handed out by the library
//! must be released with [`tor_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toroidal::doc::{parse_element, print_element};
use toroidal::lattice::{IntMatrix, UnimodularMatrix};
use toroidal::simple_lie::build_simple;
use toroidal::toroidal::{Flavor, ToroidalAlgebra, TorElt};
use toroidal::verify;
use toroidal::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Dimension = 3,
    Domain = 4,
    FlavorMismatch = 5,
    Unsupported = 6,
    Coverage = 7,
    Parse = 8,
    /// The call succeeded but a checked identity failed.
    Violation = 9,
    Panic = 10,
}

/// An algebra instance.
pub struct TorAlgebra {
    alg: ToroidalAlgebra,
}

/// An element together with the algebra it lives in.
pub struct TorElement {
    alg: ToroidalAlgebra,
    x: TorElt,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TorStatus {
    match e {
        Error::Dimension(_) => TorStatus::Dimension,
        Error::Domain(_) => TorStatus::Domain,
        Error::Flavor(_) => TorStatus::FlavorMismatch,
        Error::Unsupported(_) => TorStatus::Unsupported,
        Error::Coverage { .. } => TorStatus::Coverage,
        Error::Parse { .. } => TorStatus::Parse,
    }
}

struct Fail(TorStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<TorStatus, Fail>) -> TorStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            TorStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(TorStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TorStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(TorStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<TorStatus, Fail> {
    if out.is_null() {
        return Err(Fail(TorStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(TorStatus::Ok)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<TorStatus, Fail> {
    if out.is_null() {
        return Err(Fail(TorStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).expect("documents contain no nul").into_raw();
    Ok(TorStatus::Ok)
}

/// Message for the most recent failure on this thread, or null.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn tor_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an algebra. `flavor` is one of `tau`, `tau_tilde`, `tau_hat`,
/// `dera_hat`; `rank` is ignored for `dera_hat`.
///
/// # Safety
/// `flavor` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tor_algebra_new(
    flavor: *const c_char,
    rank: u32,
    n: u32,
    out: *mut *mut TorAlgebra,
) -> TorStatus {
    guard(|| {
        let flavor = Flavor::parse(read_str(flavor, "flavor")?)?;
        let alg = if flavor == Flavor::DerAHat {
            ToroidalAlgebra::dera_hat(n as usize)?
        } else {
            ToroidalAlgebra::new(build_simple(rank as usize)?, n as usize, flavor)?
        };
        write_out(out, TorAlgebra { alg })
    })
}

/// # Safety
/// `a` must be null or a handle from [`tor_algebra_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tor_algebra_free(a: *mut TorAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of Laurent variables of the algebra, 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tor_algebra_variables(a: *const TorAlgebra) -> u32 {
    a.as_ref().map_or(0, |a| a.alg.n() as u32)
}

/// Zero element of `a`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tor_algebra_zero(a: *const TorAlgebra, out: *mut *mut TorElement) -> TorStatus {
    guard(|| {
        let a = deref(a, "algebra")?;
        write_out(out, TorElement { alg: a.alg.clone(), x: a.alg.zero() })
    })
}

/// Parses an element document (JSON).
///
/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tor_element_parse(json: *const c_char, out: *mut *mut TorElement) -> TorStatus {
    guard(|| {
        let (alg, x) = parse_element(read_str(json, "json")?)?;
        write_out(out, TorElement { alg, x })
    })
}

/// Serializes an element document. Free the result with [`tor_string_free`].
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tor_element_to_json(x: *const TorElement, out: *mut *mut c_char) -> TorStatus {
    guard(|| {
        let x = deref(x, "element")?;
        write_string(out, print_element(&x.alg, &x.x))
    })
}

/// 1 if zero, 0 if not, -1 for a null handle.
///
/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tor_element_is_zero(x: *const TorElement) -> i32 {
    x.as_ref().map_or(-1, |x| x.x.is_zero() as i32)
}

/// # Safety
/// `x` must be null or a live element handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tor_element_free(x: *mut TorElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Lie bracket `[x, y]`. Both elements must belong to the same algebra.
///
/// # Safety
/// `x`, `y` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tor_bracket(
    x: *const TorElement,
    y: *const TorElement,
    out: *mut *mut TorElement,
) -> TorStatus {
    guard(|| {
        let (x, y) = (deref(x, "x")?, deref(y, "y")?);
        if x.x.header() != y.x.header() {
            return Err(Fail(TorStatus::FlavorMismatch, "elements belong to different algebras".into()));
        }
        let z = x.alg.bracket(&x.x, &y.x)?;
        write_out(out, TorElement { alg: x.alg.clone(), x: z })
    })
}

/// Applies the automorphism induced by an `n x n` unimodular integer matrix,
/// given row-major in `entries` (length `n * n`).
///
/// # Safety
/// `x` must be a live handle, `entries` must point at `n * n` integers and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tor_twist(
    x: *const TorElement,
    entries: *const i64,
    n: usize,
    out: *mut *mut TorElement,
) -> TorStatus {
    guard(|| {
        let x = deref(x, "element")?;
        if entries.is_null() {
            return Err(Fail(TorStatus::NullPointer, "matrix is null".into()));
        }
        let flat = std::slice::from_raw_parts(entries, n * n);
        let rows = flat.chunks(n.max(1)).map(|r| r.to_vec()).collect();
        let b = UnimodularMatrix::new(IntMatrix::from_rows(rows)?)?;
        let z = x.alg.twist(&b, &x.x)?;
        write_out(out, TorElement { alg: x.alg.clone(), x: z })
    })
}

/// Runs a randomized verification suite and writes its JSON report.
/// Returns [`TorStatus::Violation`] (with the report still written) when a
/// check fails.
///
/// # Safety
/// `suite` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tor_verify(
    suite: *const c_char,
    seed: u64,
    size: u32,
    rank: u32,
    modes: i64,
    out: *mut *mut c_char,
) -> TorStatus {
    guard(|| {
        let suite = read_str(suite, "suite")?;
        let params = verify::Params { seed, size: size as usize, rank: rank as usize, modes };
        let report = verify::run(suite, &params)?;
        write_string(out, toroidal::doc::print(&report))?;
        if report.passed {
            Ok(TorStatus::Ok)
        } else {
            Err(Fail(TorStatus::Violation, format!("{} failures", report.failures)))
        }
    })
}
