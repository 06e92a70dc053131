//! C ABI for the weilcat library.
//!
//! Conventions:
//! - Every fallible function returns a [`WcStatus`]; results come back
//!   through out-pointers, which are written only on `WC_STATUS_OK` (except
//!   where documented, such as the hom-violation witness).
//! - `WcAlgebra` and `WcMorphism` are opaque handles. Free them with the
//!   matching `wc_*_free`; null is accepted and ignored there.
//! - Strings returned through out-pointers are NUL-terminated UTF-8 owned by
//!   the caller; release them with [`wc_string_free`]. Strings returned by
//!   [`wc_status_name`] are static and must not be freed.
//! - After any non-OK status, [`wc_last_error_message`] returns a
//!   human-readable description of the failure.
//!
//! Algebras, elements, and morphisms cross the boundary in the same textual
//! syntax the CLI uses (`W^2@W`, `3*x1 + x1*x2`,
//! `[W -> W@W]{ x1 -> x1*x2 }`).

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use weilcat::dsl::{parse_algebra, parse_element, parse_morphism, parse_morphism_shape};
use weilcat::limits;
use weilcat::weil::{check_hom, compose, HomVerdict, WeilAlgebra, WeilMorphism};

/// Result code of every fallible call in this ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum WcStatus {
    /// The call succeeded and all out-pointers were written.
    WC_STATUS_OK = 0,
    /// A required pointer argument was null.
    WC_STATUS_NULL_ARGUMENT = 1,
    /// A string argument was not valid UTF-8.
    WC_STATUS_INVALID_UTF8 = 2,
    /// A textual argument did not parse; see `wc_last_error_message`.
    WC_STATUS_PARSE_ERROR = 3,
    /// Inputs parsed but the operation is undefined on them (boundary or
    /// parameter mismatch); see `wc_last_error_message`.
    WC_STATUS_DOMAIN_ERROR = 4,
    /// The checked generator images do not define a morphism.
    WC_STATUS_NOT_HOM = 5,
    /// The result does not fit the requested fixed-width type.
    WC_STATUS_OVERFLOW = 6,
    /// An internal invariant failed; see `wc_last_error_message`.
    WC_STATUS_INTERNAL = 7,
}

use WcStatus::*;

/// Opaque handle to a Weil ℕ-algebra.
pub struct WcAlgebra(WeilAlgebra);

/// Opaque handle to a morphism of Weil ℕ-algebras.
pub struct WcMorphism(WeilMorphism);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let stored = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: WcStatus, message: impl Into<Vec<u8>>) -> WcStatus {
    set_error(message);
    status
}

/// Runs `body` with panics converted to `WC_STATUS_INTERNAL`.
fn guarded(body: impl FnOnce() -> WcStatus) -> WcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in library call".to_string());
            fail(WC_STATUS_INTERNAL, message)
        }
    }
}

/// Reads a C string argument, reporting null and UTF-8 failures.
///
/// # Safety
/// `text` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, WcStatus> {
    if text.is_null() {
        return Err(fail(WC_STATUS_NULL_ARGUMENT, "string argument is null"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(WC_STATUS_INVALID_UTF8, "string argument is not UTF-8"))
}

fn write_string(out: *mut *mut c_char, value: String) -> WcStatus {
    let Ok(cstring) = CString::new(value) else {
        return fail(WC_STATUS_INTERNAL, "rendered string contains NUL");
    };
    unsafe { *out = cstring.into_raw() };
    clear_error();
    WC_STATUS_OK
}

macro_rules! require_out {
    ($ptr:expr) => {
        if $ptr.is_null() {
            return fail(WC_STATUS_NULL_ARGUMENT, "out-pointer is null");
        }
    };
}

macro_rules! require_handle {
    ($ptr:expr) => {{
        if $ptr.is_null() {
            return fail(WC_STATUS_NULL_ARGUMENT, "handle argument is null");
        }
        &(*$ptr).0
    }};
}

/// Returns a static name for a status code. Never fails; never free the
/// result.
#[no_mangle]
pub extern "C" fn wc_status_name(status: WcStatus) -> *const c_char {
    let name: &'static CStr = match status {
        WC_STATUS_OK => c"ok",
        WC_STATUS_NULL_ARGUMENT => c"null argument",
        WC_STATUS_INVALID_UTF8 => c"invalid utf-8",
        WC_STATUS_PARSE_ERROR => c"parse error",
        WC_STATUS_DOMAIN_ERROR => c"domain error",
        WC_STATUS_NOT_HOM => c"not a morphism",
        WC_STATUS_OVERFLOW => c"overflow",
        WC_STATUS_INTERNAL => c"internal error",
    };
    name.as_ptr()
}

/// Returns a copy of the current thread's last error message, or null if the
/// last call on this thread succeeded. The caller frees it with
/// [`wc_string_free`].
#[no_mangle]
pub extern "C" fn wc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null_mut(), |msg| msg.clone().into_raw())
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `text` must be null or a pointer previously returned through a `char**`
/// out-parameter or [`wc_last_error_message`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Parses an algebra like `N` or `W^2@W` into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_algebra_parse(
    text: *const c_char,
    out: *mut *mut WcAlgebra,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let text = match read_str(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        match parse_algebra(text) {
            Ok(algebra) => {
                *out = Box::into_raw(Box::new(WcAlgebra(algebra)));
                clear_error();
                WC_STATUS_OK
            }
            Err(error) => fail(WC_STATUS_PARSE_ERROR, error.to_string()),
        }
    })
}

/// Renders an algebra handle back to its textual form.
///
/// # Safety
/// `algebra` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_algebra_to_string(
    algebra: *const WcAlgebra,
    out: *mut *mut c_char,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let algebra = require_handle!(algebra);
        write_string(out, algebra.to_string())
    })
}

/// Writes the number of generators of an algebra.
///
/// # Safety
/// `algebra` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_algebra_generator_count(
    algebra: *const WcAlgebra,
    out: *mut u32,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let algebra = require_handle!(algebra);
        *out = algebra.generator_count();
        clear_error();
        WC_STATUS_OK
    })
}

/// Writes the size of the monomial basis, `∏ (nᵢ + 1)`.
///
/// # Safety
/// `algebra` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_algebra_basis_size(
    algebra: *const WcAlgebra,
    out: *mut u64,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let algebra = require_handle!(algebra);
        *out = algebra.basis_size();
        clear_error();
        WC_STATUS_OK
    })
}

/// Writes 1 if the algebras are equal (same block widths), else 0.
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_algebra_equal(
    left: *const WcAlgebra,
    right: *const WcAlgebra,
    out: *mut c_int,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let left = require_handle!(left);
        let right = require_handle!(right);
        *out = c_int::from(left == right);
        clear_error();
        WC_STATUS_OK
    })
}

/// Tensors two algebras into a new handle.
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_algebra_tensor(
    left: *const WcAlgebra,
    right: *const WcAlgebra,
    out: *mut *mut WcAlgebra,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let left = require_handle!(left);
        let right = require_handle!(right);
        *out = Box::into_raw(Box::new(WcAlgebra(left.tensor(right))));
        clear_error();
        WC_STATUS_OK
    })
}

/// Frees an algebra handle. Null is ignored.
///
/// # Safety
/// `algebra` must be null or a live handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_algebra_free(algebra: *mut WcAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Parses a morphism like `[W -> W@W]{ x1 -> x1*x2 }` into a new handle.
/// The images are hom-checked; a violation is a parse-level rejection here
/// (use [`wc_check_hom`] to obtain the witness).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_morphism_parse(
    text: *const c_char,
    out: *mut *mut WcMorphism,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let text = match read_str(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        match parse_morphism(text) {
            Ok(morphism) => {
                *out = Box::into_raw(Box::new(WcMorphism(morphism)));
                clear_error();
                WC_STATUS_OK
            }
            Err(error) => fail(WC_STATUS_PARSE_ERROR, error.to_string()),
        }
    })
}

/// Renders a morphism handle back to its textual form.
///
/// # Safety
/// `morphism` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_morphism_to_string(
    morphism: *const WcMorphism,
    out: *mut *mut c_char,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let morphism = require_handle!(morphism);
        write_string(out, morphism.to_string())
    })
}

/// Clones a morphism's source algebra into a new handle.
///
/// # Safety
/// `morphism` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_morphism_source(
    morphism: *const WcMorphism,
    out: *mut *mut WcAlgebra,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let morphism = require_handle!(morphism);
        *out = Box::into_raw(Box::new(WcAlgebra(morphism.source().clone())));
        clear_error();
        WC_STATUS_OK
    })
}

/// Clones a morphism's target algebra into a new handle.
///
/// # Safety
/// `morphism` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_morphism_target(
    morphism: *const WcMorphism,
    out: *mut *mut WcAlgebra,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let morphism = require_handle!(morphism);
        *out = Box::into_raw(Box::new(WcAlgebra(morphism.target().clone())));
        clear_error();
        WC_STATUS_OK
    })
}

/// Composes two morphisms, outer after inner. Fails with
/// `WC_STATUS_DOMAIN_ERROR` if the endpoints do not match.
///
/// # Safety
/// `outer` and `inner` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_morphism_compose(
    outer: *const WcMorphism,
    inner: *const WcMorphism,
    out: *mut *mut WcMorphism,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let outer = require_handle!(outer);
        let inner = require_handle!(inner);
        match compose(outer, inner) {
            Ok(composite) => {
                *out = Box::into_raw(Box::new(WcMorphism(composite)));
                clear_error();
                WC_STATUS_OK
            }
            Err(error) => fail(WC_STATUS_DOMAIN_ERROR, error.to_string()),
        }
    })
}

/// Tensors two morphisms into a new handle.
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_morphism_tensor(
    left: *const WcMorphism,
    right: *const WcMorphism,
    out: *mut *mut WcMorphism,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let left = require_handle!(left);
        let right = require_handle!(right);
        *out = Box::into_raw(Box::new(WcMorphism(left.tensor(right))));
        clear_error();
        WC_STATUS_OK
    })
}

/// Frees a morphism handle. Null is ignored.
///
/// # Safety
/// `morphism` must be null or a live handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_morphism_free(morphism: *mut WcMorphism) {
    if !morphism.is_null() {
        drop(Box::from_raw(morphism));
    }
}

/// Checks whether the generator images in `text` define a morphism.
/// Returns `WC_STATUS_OK` for a morphism. For a violation, returns
/// `WC_STATUS_NOT_HOM` and, if `witness` is non-null, writes a description
/// of the offending pair of generators and their image product.
///
/// # Safety
/// `text` must be a NUL-terminated string; `witness` must be null or a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_check_hom(
    text: *const c_char,
    witness: *mut *mut c_char,
) -> WcStatus {
    guarded(|| {
        let text = match read_str(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        let (source, target, images) = match parse_morphism_shape(text) {
            Ok(shape) => shape,
            Err(error) => return fail(WC_STATUS_PARSE_ERROR, error.to_string()),
        };
        match check_hom(&source, &target, &images) {
            Ok(HomVerdict::Hom) => {
                if !witness.is_null() {
                    *witness = std::ptr::null_mut();
                }
                clear_error();
                WC_STATUS_OK
            }
            Ok(HomVerdict::Violation { i, j, product }) => {
                let message =
                    format!("images of related generators x{i}, x{j} have product {product}");
                if !witness.is_null() {
                    *witness = CString::new(message.clone())
                        .expect("no NUL in rendering")
                        .into_raw();
                }
                fail(WC_STATUS_NOT_HOM, message)
            }
            Err(error) => fail(WC_STATUS_DOMAIN_ERROR, error.to_string()),
        }
    })
}

/// Parses `element` in `algebra` and writes its normal form.
///
/// # Safety
/// `algebra` and `element` must be NUL-terminated strings; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_normalize(
    algebra: *const c_char,
    element: *const c_char,
    out: *mut *mut c_char,
) -> WcStatus {
    guarded(|| {
        require_out!(out);
        let algebra = match read_str(algebra) {
            Ok(text) => text,
            Err(status) => return status,
        };
        let element = match read_str(element) {
            Ok(text) => text,
            Err(status) => return status,
        };
        let ambient = match parse_algebra(algebra) {
            Ok(ambient) => ambient,
            Err(error) => return fail(WC_STATUS_PARSE_ERROR, error.to_string()),
        };
        match parse_element(element, &ambient) {
            Ok(value) => write_string(out, value.to_string()),
            Err(error) => fail(WC_STATUS_PARSE_ERROR, error.to_string()),
        }
    })
}

fn verify_square(
    square: &limits::Square,
    seed: u64,
    budget: usize,
    passed: *mut c_int,
    report_json: *mut *mut c_char,
) -> WcStatus {
    let report = limits::verify_pullback_seeded(square, seed, budget);
    unsafe {
        if !passed.is_null() {
            *passed = c_int::from(report.passed());
        }
        if !report_json.is_null() {
            return write_string(report_json, report.to_json().to_string());
        }
    }
    clear_error();
    WC_STATUS_OK
}

/// Verifies the vertical-lift square against `budget` seeded cones. Writes 1
/// to `passed` if certification and every lift check succeed, else 0; writes
/// the full JSON report if `report_json` is non-null.
///
/// # Safety
/// `passed` and `report_json` must each be null or valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wc_verify_vertical(
    seed: u64,
    budget: usize,
    passed: *mut c_int,
    report_json: *mut *mut c_char,
) -> WcStatus {
    guarded(|| verify_square(&limits::vertical_square(), seed, budget, passed, report_json))
}

/// Verifies the foundational square on `base ⊗ W^{m+n}` against `budget`
/// seeded cones; see [`wc_verify_vertical`] for the outputs. Fails with
/// `WC_STATUS_DOMAIN_ERROR` if `m` or `n` is zero.
///
/// # Safety
/// `base` must be a NUL-terminated string; `passed` and `report_json` must
/// each be null or valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wc_verify_foundational(
    base: *const c_char,
    m: u32,
    n: u32,
    seed: u64,
    budget: usize,
    passed: *mut c_int,
    report_json: *mut *mut c_char,
) -> WcStatus {
    guarded(|| {
        let base = match read_str(base) {
            Ok(text) => text,
            Err(status) => return status,
        };
        let base = match parse_algebra(base) {
            Ok(base) => base,
            Err(error) => return fail(WC_STATUS_PARSE_ERROR, error.to_string()),
        };
        let square = match limits::foundational_square(&base, m, n) {
            Ok(square) => square,
            Err(error) => return fail(WC_STATUS_DOMAIN_ERROR, error.to_string()),
        };
        verify_square(&square, seed, budget, passed, report_json)
    })
}
