//! C ABI for `typel-core`.
//!
//! Objects are opaque handles created by `*_new`/`*_from_*` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`TypelStatus`]; on failure [`typel_last_error`] describes the problem for
//! the calling thread. Strings returned through out-parameters are owned by
//! the caller and released with [`typel_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use typel_core::cli::spec::{Payload, SpecFile};
use typel_core::exact_moments::{
    check_moment_comparison, check_r_logconcave, even_moments_gausspoly, even_moments_lattice, GaussPolyLaw, LatticeDistribution,
    MomentSequence,
};
use typel_core::ferro::{ferro_moment_comparison, SpinSystem};
use typel_core::rational::{format_rational, parse_rational, Rational};
use typel_core::seq_tools::LogConcavity;
use typel_core::typel_cert::{classify, Overall};
use typel_core::{Error, Verdict};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypelStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    CapExceeded = 4,
    PrecisionExhausted = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypelVerdict {
    Holds = 0,
    Fails = 1,
    Na = 2,
    Inconclusive = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypelOverall {
    Certified = 0,
    Refuted = 1,
    Inconclusive = 2,
}

impl From<Verdict> for TypelVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Holds => TypelVerdict::Holds,
            Verdict::Fails => TypelVerdict::Fails,
            Verdict::Na => TypelVerdict::Na,
            Verdict::Inconclusive => TypelVerdict::Inconclusive,
        }
    }
}

/// Symmetric distribution on `{-n, ..., n}`.
pub struct TypelLattice(LatticeDistribution);

/// Exact even moments `m_0, m_2, ..., m_{2N}`.
pub struct TypelMoments(MomentSequence);

/// Finite ferromagnetic spin system.
pub struct TypelSpinSystem {
    system: SpinSystem,
    weights: Option<Vec<Rational>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: TypelStatus, msg: impl Into<String>) -> TypelStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> TypelStatus {
    let status = match e {
        Error::ParseRational(_) => TypelStatus::Parse,
        Error::CapExceeded { .. } => TypelStatus::CapExceeded,
        Error::PrecisionExhausted(_) => TypelStatus::PrecisionExhausted,
        Error::NoConvergence(_) | Error::Degenerate(_) => TypelStatus::Internal,
        _ => TypelStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`TypelStatus::Internal`].
fn guard(f: impl FnOnce() -> TypelStatus) -> TypelStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TypelStatus::Internal, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TypelStatus> {
    if s.is_null() {
        return Err(fail(TypelStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(TypelStatus::Parse, "string is not UTF-8"))
}

unsafe fn read_rationals(items: *const *const c_char, len: usize) -> Result<Vec<Rational>, TypelStatus> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if items.is_null() {
        return Err(fail(TypelStatus::NullPointer, "null array"));
    }
    std::slice::from_raw_parts(items, len)
        .iter()
        .map(|&s| parse_rational(read_str(s)?).map_err(from_error))
        .collect()
}

fn write_string(out: *mut *mut c_char, s: &str) {
    if !out.is_null() {
        let c = CString::new(s).expect("no interior nul");
        unsafe { *out = c.into_raw() };
    }
}

fn boxed<T>(out: *mut *mut T, value: T) {
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn typel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn typel_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn typel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a lattice distribution from `p_0, ..., p_n` given as rational strings.
///
/// # Safety
/// `p` points to `len` NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn typel_lattice_new(p: *const *const c_char, len: usize, out: *mut *mut TypelLattice) -> TypelStatus {
    guard(|| {
        if out.is_null() {
            return fail(TypelStatus::NullPointer, "null out pointer");
        }
        let p = match read_rationals(p, len) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match LatticeDistribution::new(p) {
            Ok(d) => {
                boxed(out, TypelLattice(d));
                TypelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `d` must come from [`typel_lattice_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn typel_lattice_free(d: *mut TypelLattice) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Combined unit-circle certificate for a lattice distribution.
///
/// # Safety
/// `d` is a valid handle; `alphas` points to `n_alpha` strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn typel_classify(
    d: *const TypelLattice,
    alphas: *const *const c_char,
    n_alpha: usize,
    tol: f64,
    out: *mut TypelOverall,
) -> TypelStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return fail(TypelStatus::NullPointer, "null handle or out pointer");
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return fail(TypelStatus::InvalidArgument, "tolerance must be positive");
        }
        let alphas = match read_rationals(alphas, n_alpha) {
            Ok(a) => a,
            Err(s) => return s,
        };
        match classify(&(*d).0, &alphas, tol) {
            Ok(r) => {
                *out = match r.overall {
                    Overall::Certified => TypelOverall::Certified,
                    Overall::Refuted => TypelOverall::Refuted,
                    Overall::Inconclusive => TypelOverall::Inconclusive,
                };
                TypelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Even moments of a lattice distribution up to order `2 n_max`.
///
/// # Safety
/// `d` is a valid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn typel_moments_lattice(d: *const TypelLattice, n_max: usize, out: *mut *mut TypelMoments) -> TypelStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return fail(TypelStatus::NullPointer, "null handle or out pointer");
        }
        boxed(out, TypelMoments(even_moments_lattice(&(*d).0, n_max)));
        TypelStatus::Ok
    })
}

/// Even moments of the law with MGF `e^{a z^2/2} ∏ (1 + b_j z^2)`.
///
/// # Safety
/// `a` is a NUL-terminated string, `b` points to `nb` strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn typel_moments_gausspoly(
    a: *const c_char,
    b: *const *const c_char,
    nb: usize,
    n_max: usize,
    out: *mut *mut TypelMoments,
) -> TypelStatus {
    guard(|| {
        if out.is_null() {
            return fail(TypelStatus::NullPointer, "null out pointer");
        }
        let a = match read_str(a).and_then(|s| parse_rational(s).map_err(from_error)) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let b = match read_rationals(b, nb) {
            Ok(b) => b,
            Err(s) => return s,
        };
        match GaussPolyLaw::new(a, b) {
            Ok(law) => {
                boxed(out, TypelMoments(even_moments_gausspoly(&law, n_max)));
                TypelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `m` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn typel_moments_free(m: *mut TypelMoments) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of stored even moments, `N + 1`.
///
/// # Safety
/// `m` is a valid handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn typel_moments_len(m: *const TypelMoments) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).0.len()
    }
}

/// `r_n` as a rational string.
///
/// # Safety
/// `m` is a valid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn typel_moments_r(m: *const TypelMoments, n: usize, out: *mut *mut c_char) -> TypelStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return fail(TypelStatus::NullPointer, "null handle or out pointer");
        }
        match (*m).0.r().get(n) {
            Some(r) => {
                write_string(out, &format_rational(r));
                TypelStatus::Ok
            }
            None => fail(TypelStatus::InvalidArgument, format!("index {n} out of range")),
        }
    })
}

/// Log-concavity of the r-sequence. `fail_index` receives the first failing index, or `SIZE_MAX`.
///
/// # Safety
/// `m` is a valid handle; `verdict` is writable; `fail_index` may be null.
#[no_mangle]
pub unsafe extern "C" fn typel_r_logconcave(m: *const TypelMoments, verdict: *mut TypelVerdict, fail_index: *mut usize) -> TypelStatus {
    guard(|| {
        if m.is_null() || verdict.is_null() {
            return fail(TypelStatus::NullPointer, "null handle or out pointer");
        }
        let r = check_r_logconcave(&(*m).0);
        let (v, idx) = match r.result {
            _ if r.vacuous => (TypelVerdict::Na, usize::MAX),
            LogConcavity::Holds => (TypelVerdict::Holds, usize::MAX),
            LogConcavity::FailsAt(i) | LogConcavity::SupportGap(i) => (TypelVerdict::Fails, i),
        };
        *verdict = v;
        if !fail_index.is_null() {
            *fail_index = idx;
        }
        TypelStatus::Ok
    })
}

/// Exact moment comparison `r_{q/2}^{p/2} <= r_{p/2}^{q/2}`; `slack` (optional) receives the difference.
///
/// # Safety
/// `m` is a valid handle; `verdict` is writable; `slack` may be null.
#[no_mangle]
pub unsafe extern "C" fn typel_moment_comparison(
    m: *const TypelMoments,
    p: u32,
    q: u32,
    verdict: *mut TypelVerdict,
    slack: *mut *mut c_char,
) -> TypelStatus {
    guard(|| {
        if m.is_null() || verdict.is_null() {
            return fail(TypelStatus::NullPointer, "null handle or out pointer");
        }
        match check_moment_comparison(&(*m).0, p, q) {
            Ok(c) => {
                *verdict = if c.holds() { TypelVerdict::Holds } else { TypelVerdict::Fails };
                write_string(slack, &format_rational(&c.slack));
                TypelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Parses a `spin-system` JSON spec.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn typel_spin_system_from_json(json: *const c_char, out: *mut *mut TypelSpinSystem) -> TypelStatus {
    guard(|| {
        if out.is_null() {
            return fail(TypelStatus::NullPointer, "null out pointer");
        }
        let src = match read_str(json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match SpecFile::parse(src) {
            Ok((_, Payload::SpinSystem { system, weights })) => {
                boxed(out, TypelSpinSystem { system, weights });
                TypelStatus::Ok
            }
            Ok(_) => fail(TypelStatus::InvalidArgument, "spec is not of kind `spin-system`"),
            Err(e) => fail(TypelStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn typel_spin_system_free(s: *mut TypelSpinSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Moment comparison for `Σ a_j X_j` at `digits` significant digits. The
/// spec's weights are used, or all ones.
///
/// # Safety
/// `s` is a valid handle; `verdict` is writable.
#[no_mangle]
pub unsafe extern "C" fn typel_ferro_comparison(
    s: *const TypelSpinSystem,
    p: u32,
    q: u32,
    digits: u32,
    verdict: *mut TypelVerdict,
) -> TypelStatus {
    guard(|| {
        if s.is_null() || verdict.is_null() {
            return fail(TypelStatus::NullPointer, "null handle or out pointer");
        }
        let s = &*s;
        let a = s.weights.clone().unwrap_or_else(|| vec![Rational::from_integer(1.into()); s.system.n()]);
        match ferro_moment_comparison(&s.system, &a, p, q, digits) {
            Ok(c) => {
                *verdict = c.check.verdict.into();
                TypelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
