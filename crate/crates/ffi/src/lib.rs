//! C ABI for cartankit.
//!
//! Conventions:
//! - objects cross the boundary as opaque handles (`CkLie`, `CkGroup`) or
//!   as JSON strings in the library's canonical wire formats;
//! - every fallible call returns a [`CkStatus`]; on any non-`Ok` status the
//!   thread-local message from [`ck_last_error`] describes the failure;
//! - strings returned through `char**` outputs are owned by the library and
//!   must be released with [`ck_string_free`].
//!
//! The header `include/cartankit.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cartankit::error::Error;
use cartankit::group::GroupContext;
use cartankit::json::{
    group_from_value, lie_from_value, mat_from_value, report_to_value, root_datum_to_value,
    subalgebra_arg_from_value, subspace_to_value, OutputOpts,
};
use cartankit::liealg::LieAlgebra;
use cartankit::{corpus, verify};

/// Status codes mirroring the CLI exit codes, plus FFI-specific conditions.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CkStatus {
    /// Success.
    Ok = 0,
    /// The computation ran but reported a failure (rejected element,
    /// failed check, counterexample).
    Fail = 1,
    /// Malformed input: bad JSON, wrong dimensions, unknown names.
    InputError = 2,
    /// The input needs eigenvalues outside Q(i).
    SplitFailure = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// A panic was caught at the boundary; state may be stale.
    Panic = 5,
}

/// Opaque Lie algebra handle.
pub struct CkLie(LieAlgebra);

/// Opaque group context handle.
pub struct CkGroup(GroupContext);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> CkStatus {
    match e {
        Error::Split(_) => CkStatus::SplitFailure,
        Error::Input(_)
        | Error::DimensionMismatch(_)
        | Error::NotSquare { .. }
        | Error::ZeroPolynomial
        | Error::DivisionByZero => CkStatus::InputError,
        _ => CkStatus::Fail,
    }
}

/// Message for the most recent non-`Ok` status on this thread, or null.
/// The pointer is valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through a `char**` output of
/// this library, not yet freed; null is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_cstr<'a>(ptr: *const c_char) -> Result<&'a str, CkStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(CkStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        CkStatus::InputError
    })
}

fn write_string(out: *mut *mut c_char, s: String) -> CkStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CkStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CkStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL");
            CkStatus::Panic
        }
    }
}

fn guard(body: impl FnOnce() -> CkStatus) -> CkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic caught at the FFI boundary");
            CkStatus::Panic
        }
    }
}

fn parse_json(text: &str) -> Result<serde_json::Value, CkStatus> {
    serde_json::from_str(text).map_err(|e| {
        set_error(format!("invalid JSON: {e}"));
        CkStatus::InputError
    })
}

fn fail_with(e: &Error) -> CkStatus {
    set_error(e.to_string());
    status_of(e)
}

/// Load a Lie algebra from its JSON form
/// `{"ambient": n, "basis": [Mat, ...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On `Ok` the handle must be released with [`ck_lie_free`].
#[no_mangle]
pub unsafe extern "C" fn ck_lie_from_json(json: *const c_char, out: *mut *mut CkLie) -> CkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return CkStatus::NullPointer;
        }
        let text = match read_cstr(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value = match parse_json(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match lie_from_value(&value) {
            Ok(lie) => {
                *out = Box::into_raw(Box::new(CkLie(lie)));
                CkStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// # Safety
/// `lie` must come from this library and not be freed twice; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_lie_free(lie: *mut CkLie) {
    if !lie.is_null() {
        drop(Box::from_raw(lie));
    }
}

/// # Safety
/// `lie` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ck_lie_dim(lie: *const CkLie, out: *mut usize) -> CkStatus {
    guard(|| {
        if lie.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CkStatus::NullPointer;
        }
        *out = (*lie).0.dim();
        CkStatus::Ok
    })
}

/// Rank of the algebra (dimension of a Cartan subalgebra), deterministic
/// given the seed.
///
/// # Safety
/// `lie` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ck_lie_rank(lie: *const CkLie, seed: u64, out: *mut usize) -> CkStatus {
    guard(|| {
        if lie.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CkStatus::NullPointer;
        }
        match (*lie).0.rank(seed) {
            Ok(r) => {
                *out = r;
                CkStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// A Cartan subalgebra as subspace JSON.
///
/// # Safety
/// `lie` must be valid; `out_json` receives an owned string (see
/// [`ck_string_free`]).
#[no_mangle]
pub unsafe extern "C" fn ck_lie_cartan_json(
    lie: *const CkLie,
    seed: u64,
    out_json: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        if lie.is_null() {
            set_error("null handle");
            return CkStatus::NullPointer;
        }
        match (*lie).0.cartan_subalgebra(seed) {
            Ok(h) => write_string(
                out_json,
                subspace_to_value(&h, OutputOpts::default()).to_string(),
            ),
            Err(e) => fail_with(&e),
        }
    })
}

/// Root space decomposition of a nilpotent subalgebra given as
/// `{"vectors": [...]}` or `{"indices": [...]}`.
///
/// # Safety
/// As for [`ck_lie_cartan_json`]; `h_json` must be a valid string.
#[no_mangle]
pub unsafe extern "C" fn ck_lie_roots_json(
    lie: *const CkLie,
    h_json: *const c_char,
    out_json: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        if lie.is_null() {
            set_error("null handle");
            return CkStatus::NullPointer;
        }
        let text = match read_cstr(h_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value = match parse_json(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let lie = &(*lie).0;
        let h = match subalgebra_arg_from_value(lie, &value) {
            Ok(h) => h,
            Err(e) => return fail_with(&e),
        };
        match lie.roots(&h) {
            Ok(datum) => write_string(
                out_json,
                root_datum_to_value(&datum, OutputOpts::default()).to_string(),
            ),
            Err(e) => fail_with(&e),
        }
    })
}

/// Look up a built-in group context by name (see `cartankit corpus --list`).
///
/// # Safety
/// `name` must be a valid string; `out` a valid pointer. Release the handle
/// with [`ck_group_free`].
#[no_mangle]
pub unsafe extern "C" fn ck_group_corpus(name: *const c_char, out: *mut *mut CkGroup) -> CkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return CkStatus::NullPointer;
        }
        let name = match read_cstr(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match corpus::context(name) {
            Some(ctx) => {
                *out = Box::into_raw(Box::new(CkGroup(ctx)));
                CkStatus::Ok
            }
            None => {
                set_error(format!("unknown corpus context {name:?}"));
                CkStatus::InputError
            }
        }
    })
}

/// Load a group context from JSON `{"name", "ambient", "lie", "hint"}`.
/// Loaded groups carry no sampler.
///
/// # Safety
/// As for [`ck_lie_from_json`].
#[no_mangle]
pub unsafe extern "C" fn ck_group_from_json(
    json: *const c_char,
    out: *mut *mut CkGroup,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return CkStatus::NullPointer;
        }
        let text = match read_cstr(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value = match parse_json(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match group_from_value(&value) {
            Ok(ctx) => {
                *out = Box::into_raw(Box::new(CkGroup(ctx)));
                CkStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// # Safety
/// `group` must come from this library and not be freed twice; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_group_free(group: *mut CkGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

unsafe fn group_and_element<'a>(
    group: *const CkGroup,
    elem_json: *const c_char,
) -> Result<(&'a GroupContext, cartankit::Mat), CkStatus> {
    if group.is_null() {
        set_error("null group handle");
        return Err(CkStatus::NullPointer);
    }
    let text = read_cstr(elem_json)?;
    let value = parse_json(text)?;
    let mat = mat_from_value(&value).map_err(|e| fail_with(&e))?;
    Ok((&(*group).0, mat))
}

/// Validate an element (matrix JSON) against the group: `Ok` when accepted,
/// `Fail` with a reason otherwise.
///
/// # Safety
/// `group` and `elem_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ck_group_validate(
    group: *const CkGroup,
    elem_json: *const c_char,
) -> CkStatus {
    guard(|| {
        let (ctx, g) = match group_and_element(group, elem_json) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match ctx.validate(&g) {
            Ok(()) => CkStatus::Ok,
            Err(rej) => {
                set_error(rej.to_string());
                CkStatus::Fail
            }
        }
    })
}

/// The shifted characteristic coefficients of Ad(g) as a JSON array of
/// scalar strings, lowest degree first.
///
/// # Safety
/// `group`, `elem_json` valid; `out_json` receives an owned string.
#[no_mangle]
pub unsafe extern "C" fn ck_group_acoeffs_json(
    group: *const CkGroup,
    elem_json: *const c_char,
    out_json: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let (ctx, g) = match group_and_element(group, elem_json) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match ctx.a_coeffs(&g) {
            Ok(a) => {
                let arr: Vec<serde_json::Value> = a
                    .coeffs()
                    .iter()
                    .map(|s| serde_json::Value::String(s.to_string()))
                    .collect();
                write_string(out_json, serde_json::Value::Array(arr).to_string())
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// `r(g)`, the least index with a nonzero shifted coefficient.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ck_group_r(
    group: *const CkGroup,
    elem_json: *const c_char,
    out: *mut usize,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return CkStatus::NullPointer;
        }
        let (ctx, g) = match group_and_element(group, elem_json) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match ctx.r_of(&g) {
            Ok(r) => {
                *out = r;
                CkStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// `g^1(Ad g)` as subspace JSON.
///
/// # Safety
/// All pointers must be valid; `out_json` receives an owned string.
#[no_mangle]
pub unsafe extern "C" fn ck_group_g1_json(
    group: *const CkGroup,
    elem_json: *const c_char,
    out_json: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let (ctx, g) = match group_and_element(group, elem_json) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match ctx.g1_of(&g) {
            Ok(h) => write_string(
                out_json,
                subspace_to_value(&h, OutputOpts::default()).to_string(),
            ),
            Err(e) => fail_with(&e),
        }
    })
}

/// Regularity of an element.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ck_group_is_regular(
    group: *const CkGroup,
    elem_json: *const c_char,
    seed: u64,
    out: *mut bool,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return CkStatus::NullPointer;
        }
        let (ctx, g) = match group_and_element(group, elem_json) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match ctx.is_regular(&g, seed) {
            Ok(v) => {
                *out = v;
                CkStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Membership in the C-Cartan of a Cartan subalgebra given in the
/// subalgebra-argument JSON form.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ck_group_in_c(
    group: *const CkGroup,
    elem_json: *const c_char,
    h_json: *const c_char,
    seed: u64,
    out: *mut bool,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return CkStatus::NullPointer;
        }
        let (ctx, g) = match group_and_element(group, elem_json) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let text = match read_cstr(h_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value = match parse_json(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let h = match subalgebra_arg_from_value(ctx.lie(), &value) {
            Ok(h) => h,
            Err(e) => return fail_with(&e),
        };
        match ctx.in_c_h(&g, &h, seed) {
            Ok(v) => {
                *out = v;
                CkStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Run one verification check; the canonical report JSON is written to
/// `out_json` whenever the check ran. A `samples` of 0 selects the
/// per-check default. Returns `Fail` iff the check failed.
///
/// # Safety
/// `check_id` must be a valid string; `out_json` receives an owned string.
#[no_mangle]
pub unsafe extern "C" fn ck_verify_check_json(
    check_id: *const c_char,
    seed: u64,
    samples: u64,
    out_json: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let id = match read_cstr(check_id) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let samples = if samples == 0 {
            verify::default_samples(id)
        } else {
            samples
        };
        match verify::run_check(id, seed, samples) {
            Ok(report) => {
                let failed = report.outcome == verify::Outcome::Fail;
                let status = write_string(out_json, report_to_value(&report, true).to_string());
                if status != CkStatus::Ok {
                    return status;
                }
                if failed {
                    set_error(format!("check {id} failed"));
                    CkStatus::Fail
                } else {
                    CkStatus::Ok
                }
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Run the whole verification suite; writes a JSON array of canonical
/// reports. Returns `Fail` iff some check failed.
///
/// # Safety
/// `out_json` must be a valid pointer; it receives an owned string.
#[no_mangle]
pub unsafe extern "C" fn ck_verify_all_json(seed: u64, out_json: *mut *mut c_char) -> CkStatus {
    guard(|| match verify::run_all(seed) {
        Ok(reports) => {
            let arr: Vec<serde_json::Value> =
                reports.iter().map(|r| report_to_value(r, true)).collect();
            let status = write_string(out_json, serde_json::Value::Array(arr).to_string());
            if status != CkStatus::Ok {
                return status;
            }
            if verify::any_failed(&reports) {
                set_error("some verification check failed");
                CkStatus::Fail
            } else {
                CkStatus::Ok
            }
        }
        Err(e) => fail_with(&e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        ck_string_free(ptr);
        s
    }

    #[test]
    fn corpus_group_acoeffs_through_the_boundary() {
        unsafe {
            let mut group: *mut CkGroup = std::ptr::null_mut();
            assert_eq!(
                ck_group_corpus(cstr("sl2").as_ptr(), &mut group),
                CkStatus::Ok
            );
            let elem = cstr(
                r#"{"rows":2,"cols":2,"entries":[[{"re":"2"},{"re":"0"}],[{"re":"0"},{"re":"1/2"}]]}"#,
            );
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ck_group_acoeffs_json(group, elem.as_ptr(), &mut out),
                CkStatus::Ok
            );
            assert_eq!(take_string(out), r#"["0","-9/4","-9/4","1"]"#);

            let mut r: usize = 99;
            assert_eq!(ck_group_r(group, elem.as_ptr(), &mut r), CkStatus::Ok);
            assert_eq!(r, 1);

            let mut regular = false;
            assert_eq!(
                ck_group_is_regular(group, elem.as_ptr(), 0, &mut regular),
                CkStatus::Ok
            );
            assert!(regular);

            let mut in_c = false;
            assert_eq!(
                ck_group_in_c(
                    group,
                    elem.as_ptr(),
                    cstr(r#"{"indices":[0]}"#).as_ptr(),
                    0,
                    &mut in_c
                ),
                CkStatus::Ok
            );
            assert!(in_c);
            ck_group_free(group);
        }
    }

    #[test]
    fn lie_handle_round_trip() {
        unsafe {
            let json = cstr(
                r#"{"ambient":2,"basis":[
                    {"rows":2,"cols":2,"entries":[[{"re":"1"},{"re":"0"}],[{"re":"0"},{"re":"-1"}]]},
                    {"rows":2,"cols":2,"entries":[[{"re":"0"},{"re":"1"}],[{"re":"0"},{"re":"0"}]]},
                    {"rows":2,"cols":2,"entries":[[{"re":"0"},{"re":"0"}],[{"re":"1"},{"re":"0"}]]}
                ]}"#,
            );
            let mut lie: *mut CkLie = std::ptr::null_mut();
            assert_eq!(ck_lie_from_json(json.as_ptr(), &mut lie), CkStatus::Ok);
            let mut dim = 0usize;
            assert_eq!(ck_lie_dim(lie, &mut dim), CkStatus::Ok);
            assert_eq!(dim, 3);
            let mut rank = 0usize;
            assert_eq!(ck_lie_rank(lie, 0, &mut rank), CkStatus::Ok);
            assert_eq!(rank, 1);
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(ck_lie_cartan_json(lie, 0, &mut out), CkStatus::Ok);
            let cartan = take_string(out);
            assert!(cartan.contains("\"ambient_dim\":3"), "{cartan}");

            let mut roots: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ck_lie_roots_json(lie, cstr(r#"{"indices":[0]}"#).as_ptr(), &mut roots),
                CkStatus::Ok
            );
            let datum = take_string(roots);
            assert!(datum.contains("\"roots\""), "{datum}");
            ck_lie_free(lie);
        }
    }

    #[test]
    fn error_paths_report_status_and_message() {
        unsafe {
            let mut lie: *mut CkLie = std::ptr::null_mut();
            assert_eq!(
                ck_lie_from_json(cstr("not json").as_ptr(), &mut lie),
                CkStatus::InputError
            );
            assert!(!ck_last_error().is_null());

            let mut group: *mut CkGroup = std::ptr::null_mut();
            assert_eq!(
                ck_group_corpus(cstr("nope").as_ptr(), &mut group),
                CkStatus::InputError
            );

            assert_eq!(
                ck_group_corpus(cstr("sl2").as_ptr(), &mut group),
                CkStatus::Ok
            );
            let not_det1 = cstr(
                r#"{"rows":2,"cols":2,"entries":[[{"re":"2"},{"re":"0"}],[{"re":"0"},{"re":"1"}]]}"#,
            );
            assert_eq!(ck_group_validate(group, not_det1.as_ptr()), CkStatus::Fail);
            let msg = CStr::from_ptr(ck_last_error()).to_str().unwrap();
            assert!(msg.contains("det1"), "{msg}");
            ck_group_free(group);

            assert_eq!(
                ck_lie_rank(std::ptr::null(), 0, std::ptr::null_mut()),
                CkStatus::NullPointer
            );
        }
    }

    #[test]
    fn verify_check_over_ffi() {
        unsafe {
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ck_verify_check_json(cstr("C12").as_ptr(), 42, 0, &mut out),
                CkStatus::Ok
            );
            let report = take_string(out);
            assert!(report.contains("\"check\":\"C12\""), "{report}");
            assert!(report.contains("\"outcome\":\"pass\""), "{report}");

            assert_eq!(
                ck_verify_check_json(cstr("C99").as_ptr(), 42, 0, &mut out),
                CkStatus::InputError
            );
        }
    }
}
