//! C ABI over the `orthoschubert` library.
//!
//! Conventions:
//! - every function returns an [`OsStatus`]; results come back via out-pointers;
//! - handles are opaque and freed by the matching `*_free` function;
//! - strings returned by the library are NUL-terminated, owned by the
//!   caller, and released with [`os_string_free`];
//! - after a non-`Ok` status, [`os_last_error`] describes the failure on the
//!   calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use orthoschubert::arakelov::{arith_degree, BottChernPlugin};
use orthoschubert::ortho::{ortho_schubert, structure_constants};
use orthoschubert::render::{render_table, table_row};
use orthoschubert::stanley::f_coeff;
use orthoschubert::sym::Partition;
use orthoschubert::{Error, PermutationA, Polynomial, SignedPermutation};

/// Status codes. `Ok` is zero; everything else is a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input or violated precondition.
    Usage = 3,
    /// The mathematics refuses the request.
    Domain = 4,
    /// A Bott-Chern component must be supplied through a plugin.
    MissingBottChern = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// Opaque signed permutation.
pub struct OsSignedPerm(SignedPermutation);

/// Opaque polynomial with rational coefficients.
pub struct OsPolynomial(Polynomial);

/// Opaque set of Bott-Chern inputs.
pub struct OsPlugin(BottChernPlugin);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> OsStatus {
    match e {
        Error::MissingBottChern { .. } => OsStatus::MissingBottChern,
        e if e.is_usage() => OsStatus::Usage,
        _ => OsStatus::Domain,
    }
}

struct Fail(OsStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(format!("{}: {e}", e.kind()));
        Fail(status_of(&e))
    }
}

fn null(what: &str) -> Fail {
    set_error(format!("null pointer: {what}"));
    Fail(OsStatus::NullPointer)
}

/// Runs `f`, mapping errors and panics to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> OsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OsStatus::Ok,
        Ok(Err(Fail(s))) => s,
        Err(_) => {
            set_error("internal panic");
            OsStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        Fail(OsStatus::InvalidUtf8)
    })
}

unsafe fn read_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains NUL");
        Fail(OsStatus::Internal)
    })?;
    write_out(out, c.into_raw(), "out")
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn os_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn os_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a signed permutation such as `"-3,-1,2"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_perm_parse(text: *const c_char, out: *mut *mut OsSignedPerm) -> OsStatus {
    guard(|| {
        let w: SignedPermutation = read_str(text, "text")?.parse()?;
        write_out(out, Box::into_raw(Box::new(OsSignedPerm(w))), "out")
    })
}

/// # Safety
/// `p` must come from [`os_perm_parse`] and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn os_perm_free(p: *mut OsSignedPerm) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Rank `n` and Coxeter length of `p`.
///
/// # Safety
/// `p` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_perm_info(p: *const OsSignedPerm, n: *mut usize, length: *mut usize) -> OsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("perm"))?;
        write_out(n, p.0.n(), "n")?;
        write_out(length, p.0.length(), "length")
    })
}

/// The orthogonal Schubert polynomial `D_w`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_schubert(w: *const OsSignedPerm, out: *mut *mut OsPolynomial) -> OsStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("w"))?;
        let p = ortho_schubert(&w.0)?;
        write_out(out, Box::into_raw(Box::new(OsPolynomial(p))), "out")
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn os_poly_free(p: *mut OsPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Wire JSON `{"n": .., "terms": [{"exp": [..], "coef": "p/q"}]}`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_poly_to_json(p: *const OsPolynomial, out: *mut *mut c_char) -> OsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        let s = serde_json::to_string(&p.0.to_json()).expect("polynomial serializes");
        write_string(out, s)
    })
}

/// The `P~_lambda S_pi` rendering of `D_w`, as in the table.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_render(w: *const OsSignedPerm, out: *mut *mut c_char) -> OsStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("w"))?;
        write_string(out, table_row(&w.0)?.rendering)
    })
}

/// The full table for `W~_n`, header included.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_table(n: usize, out: *mut *mut c_char) -> OsStatus {
    guard(|| write_string(out, render_table(n, 1)?))
}

/// `f^w_{lambda, pi}`; `lambda` holds its parts, `pi` its one-line entries.
///
/// # Safety
/// Array pointers must be valid for their lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_f_coeff(
    w: *const OsSignedPerm,
    lambda: *const usize,
    lambda_len: usize,
    pi: *const usize,
    pi_len: usize,
    out: *mut u64,
) -> OsStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("w"))?;
        let lambda = Partition::new(read_slice(lambda, lambda_len, "lambda")?.to_vec())?;
        let pi = PermutationA::new(read_slice(pi, pi_len, "pi")?.to_vec())?;
        write_out(out, f_coeff(&w.0, &lambda, &pi)?, "out")
    })
}

/// Structure constants of `D_u D_v` as JSON.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_structure_constants(
    u: *const OsSignedPerm,
    v: *const OsSignedPerm,
    out: *mut *mut c_char,
) -> OsStatus {
    guard(|| {
        let u = u.as_ref().ok_or_else(|| null("u"))?;
        let v = v.as_ref().ok_or_else(|| null("v"))?;
        let sc = structure_constants(&u.0, &v.0)?;
        write_string(out, serde_json::to_string(&sc.to_json()).expect("constants serialize"))
    })
}

/// Loads Bott-Chern inputs from plugin JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_plugin_from_json(json: *const c_char, out: *mut *mut OsPlugin) -> OsStatus {
    guard(|| {
        let p = BottChernPlugin::from_json_str(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(OsPlugin(p))), "out")
    })
}

/// # Safety
/// `p` must come from [`os_plugin_from_json`] and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn os_plugin_free(p: *mut OsPlugin) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Arithmetic degree of `x^_1^{e_1} ... x^_n^{e_n}` as an exact rational
/// string `"p/q"` (or `"p"`). `plugin` may be NULL.
///
/// # Safety
/// `exps` must be valid for `n` entries; `plugin` must be NULL or live;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn os_arith_degree(
    exps: *const u32,
    n: usize,
    plugin: *const OsPlugin,
    out: *mut *mut c_char,
) -> OsStatus {
    guard(|| {
        let exps = read_slice(exps, n, "exps")?;
        let empty = BottChernPlugin::empty();
        let plugin = plugin.as_ref().map_or(&empty, |p| &p.0);
        write_string(out, arith_degree(exps, plugin)?.to_string())
    })
}
