//! C ABI over `dynr`.
//!
//! Algebras are opaque `DynrAlgebra` handles. Every call returns a
//! `DynrStatus`; on failure `dynr_last_error` describes the problem for the
//! calling thread. Operators cross the boundary as separate row-major real and
//! imaginary arrays of length `dim * dim`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use dynr::cli::{self, RunConfig};
use dynr::holofun::f_eval;
use dynr::liealg::{catalog, parse_algebra, validate, AlgebraElement, LieAlgebra};
use dynr::rmat::{canonical_r, domain_check, Method};
use dynr::ybe::cdybe_residual;
use dynr::{Error, Tolerances};
use num_complex::Complex64;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownAlgebra = 4,
    Dimension = 5,
    SingularForm = 6,
    Domain = 7,
    Pole = 8,
    Spectral = 9,
    Numerical = 10,
    Usage = 11,
    Panic = 12,
}

/// Back-end for the r-matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynrMethod {
    Spectral = 0,
    Contour = 1,
    Taylor = 2,
}

impl From<DynrMethod> for Method {
    fn from(m: DynrMethod) -> Self {
        match m {
            DynrMethod::Spectral => Method::Spectral,
            DynrMethod::Contour => Method::Contour,
            DynrMethod::Taylor => Method::Taylor,
        }
    }
}

/// Opaque algebra handle.
pub struct DynrAlgebra {
    inner: LieAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DynrStatus {
    match e {
        Error::Dimension { .. } => DynrStatus::Dimension,
        Error::SingularForm { .. } => DynrStatus::SingularForm,
        Error::UnknownAlgebra(_) => DynrStatus::UnknownAlgebra,
        Error::Parse { .. } => DynrStatus::Parse,
        Error::Pole { .. } => DynrStatus::Pole,
        Error::Domain(_) | Error::Radius { .. } | Error::ParameterRange(_) | Error::OrderOverflow { .. } => {
            DynrStatus::Domain
        }
        Error::ClusterSeparation(_) | Error::NotDiagonalizable | Error::NotEigenvector { .. } => DynrStatus::Spectral,
        Error::SingularResolvent { .. } | Error::Numerical(_) => DynrStatus::Numerical,
        Error::Usage(_) => DynrStatus::Usage,
    }
}

enum Failure {
    Status(DynrStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DynrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DynrStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic".into());
            DynrStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(DynrStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(DynrStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn algebra_arg<'a>(p: *const DynrAlgebra) -> Result<&'a LieAlgebra, Failure> {
    p.as_ref().map(|a| &a.inner).ok_or_else(|| null("algebra"))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Reads `dim` coordinates; a null `im` means purely real.
unsafe fn element_arg(a: &LieAlgebra, re: *const f64, im: *const f64, len: usize) -> Result<AlgebraElement, Failure> {
    if len != a.dim() {
        return Err(Error::Dimension { expected: a.dim(), found: len }.into());
    }
    if re.is_null() {
        return Err(null("omega_re"));
    }
    let re = slice::from_raw_parts(re, len);
    let coords = if im.is_null() {
        re.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    } else {
        let im = slice::from_raw_parts(im, len);
        re.iter().zip(im).map(|(&x, &y)| Complex64::new(x, y)).collect()
    };
    Ok(AlgebraElement::new(coords))
}

fn into_handle(a: LieAlgebra, out: &mut *mut DynrAlgebra) {
    *out = Box::into_raw(Box::new(DynrAlgebra { inner: a }));
}

/// Library version as a static string. Do not free.
#[no_mangle]
pub extern "C" fn dynr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failing call on this thread, or null.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dynr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a catalog algebra such as `sl2`, `abelian(3)` or `direct_sum(sl2,sl2)`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dynr_algebra_catalog(name: *const c_char, out: *mut *mut DynrAlgebra) -> DynrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        into_handle(catalog(str_arg(name, "name")?)?, out);
        Ok(())
    })
}

/// Parses an algebra from the text file format.
///
/// # Safety
/// `name` and `text` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dynr_algebra_parse(
    name: *const c_char,
    text: *const c_char,
    out: *mut *mut DynrAlgebra,
) -> DynrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        into_handle(parse_algebra(str_arg(name, "name")?, str_arg(text, "text")?)?, out);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dynr_algebra_free(a: *mut DynrAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra, 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynr_algebra_dim(a: *const DynrAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.inner.dim())
}

/// Checks antisymmetry, Jacobi, invariance and nondegeneracy.
///
/// # Safety
/// `a` must be a live handle and `pass` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dynr_algebra_validate(a: *const DynrAlgebra, pass: *mut bool) -> DynrStatus {
    guard(|| {
        let r = validate(algebra_arg(a)?, &Tolerances::default());
        *out_arg(pass, "pass")? = r.pass;
        Ok(())
    })
}

/// `f(z) = coth(z/2)/2 - 1/z`.
///
/// # Safety
/// `out_re` and `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dynr_f_eval(re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> DynrStatus {
    guard(|| {
        let v = f_eval(Complex64::new(re, im))?;
        *out_arg(out_re, "out_re")? = v.re;
        *out_arg(out_im, "out_im")? = v.im;
        Ok(())
    })
}

/// Whether no eigenvalue of `ad w` is near `2πiZ*`.
///
/// # Safety
/// `a` must be a live handle, `omega_re` must hold `len` values, `omega_im`
/// must be null or hold `len` values, and `ok` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dynr_domain_check(
    a: *const DynrAlgebra,
    omega_re: *const f64,
    omega_im: *const f64,
    len: usize,
    ok: *mut bool,
) -> DynrStatus {
    guard(|| {
        let alg = algebra_arg(a)?;
        let w = element_arg(alg, omega_re, omega_im, len)?;
        *out_arg(ok, "ok")? = domain_check(alg, &w, &Tolerances::default());
        Ok(())
    })
}

/// Writes the matrix of `R(w)` in row-major order.
///
/// # Safety
/// As for `dynr_domain_check`; `out_re` and `out_im` must each hold `len * len` values.
#[no_mangle]
pub unsafe extern "C" fn dynr_r_matrix(
    a: *const DynrAlgebra,
    omega_re: *const f64,
    omega_im: *const f64,
    len: usize,
    method: DynrMethod,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DynrStatus {
    guard(|| {
        let alg = algebra_arg(a)?;
        let w = element_arg(alg, omega_re, omega_im, len)?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let r = canonical_r(alg, &w, method.into(), &Tolerances::default())?.r;
        let (re, im) = (slice::from_raw_parts_mut(out_re, len * len), slice::from_raw_parts_mut(out_im, len * len));
        for i in 0..len {
            for j in 0..len {
                re[i * len + j] = r[(i, j)].re;
                im[i * len + j] = r[(i, j)].im;
            }
        }
        Ok(())
    })
}

/// Largest Yang-Baxter residual over all basis pairs.
///
/// # Safety
/// As for `dynr_domain_check`; `residual` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dynr_cdybe_residual(
    a: *const DynrAlgebra,
    omega_re: *const f64,
    omega_im: *const f64,
    len: usize,
    method: DynrMethod,
    residual: *mut f64,
) -> DynrStatus {
    guard(|| {
        let alg = algebra_arg(a)?;
        let w = element_arg(alg, omega_re, omega_im, len)?;
        *out_arg(residual, "residual")? = cdybe_residual(alg, &w, method.into(), &Tolerances::default())?.max;
        Ok(())
    })
}

/// Runs the verification suites described by a JSON run configuration and
/// returns the JSON report. Missing fields take their defaults. `pass` receives
/// the overall verdict. Free the report with `dynr_string_free`.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `report` and `pass` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dynr_verify_json(
    config_json: *const c_char,
    report: *mut *mut c_char,
    pass: *mut bool,
) -> DynrStatus {
    guard(|| {
        let report = out_arg(report, "report")?;
        *report = ptr::null_mut();
        let pass = out_arg(pass, "pass")?;
        let text = str_arg(config_json, "config_json")?;
        let config: RunConfig = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let r = cli::run(&config)?;
        *pass = r.pass;
        *report = CString::new(r.to_json()).map_err(|_| Error::Numerical("report contains NUL".into()))?.into_raw();
        Ok(())
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dynr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
