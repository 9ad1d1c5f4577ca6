//! C ABI over `fincat`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`FcStatus`]; on failure, [`fc_last_error_message`] describes the error
//! for the calling thread. Strings returned by the library are released with
//! [`fc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use fincat::adjunction::{find_right_adjoint, is_phi_admissible};
use fincat::daft::{verify_daft, TheoremInstance};
use fincat::fincat::{Category, Functor};
use fincat::format::{parse_category, parse_functor, write_functor};
use fincat::presheaf::WeightClass;
use fincat::weights::{is_cocontinuous, TablePair};
use fincat::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    UnsupportedClass = 5,
    UnsupportedPair = 6,
    PreconditionFailure = 7,
    Internal = 8,
}

/// A validated finite category.
pub struct FcCategory(Arc<Category>);

/// A functor between two categories. Keeps its categories alive.
pub struct FcFunctor(Functor);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FcStatus {
    match e {
        Error::Parse { .. } => FcStatus::ParseError,
        Error::UnsupportedClass(_) => FcStatus::UnsupportedClass,
        Error::UnsupportedPair { .. } => FcStatus::UnsupportedPair,
        Error::PreconditionFailure { .. } => FcStatus::PreconditionFailure,
        _ => FcStatus::InvalidInput,
    }
}

struct Failure(FcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), format!("{}: {e}", e.kind()))
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FcStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            FcStatus::Internal
        }
    }
}

unsafe fn as_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(FcStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(FcStatus::NullArgument, format!("{what} is null")))
}

fn class(name: &str) -> Result<WeightClass, Failure> {
    Ok(name.parse::<WeightClass>()?)
}

fn out_string(s: String, out: *mut *mut c_char) {
    let c = CString::new(s).expect("library output has no nul bytes");
    unsafe { *out = c.into_raw() };
}

fn null_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(FcStatus::NullArgument, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a `.fincat` description.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fc_category_parse(text: *const c_char, out: *mut *mut FcCategory) -> FcStatus {
    guard(|| {
        null_out(out)?;
        let c = parse_category(as_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(FcCategory(Arc::new(c))));
        Ok(())
    })
}

/// # Safety
/// `c` must come from [`fc_category_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fc_category_free(c: *mut FcCategory) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn fc_category_object_count(c: *const FcCategory) -> usize {
    c.as_ref().map_or(0, |c| c.0.object_count())
}

/// # Safety
/// `c` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn fc_category_morphism_count(c: *const FcCategory) -> usize {
    c.as_ref().map_or(0, |c| c.0.morphism_count())
}

/// Parses a `.fun` description of a functor `source -> target`.
///
/// # Safety
/// Handles must be valid, `text` nul-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fc_functor_parse(
    text: *const c_char,
    source: *const FcCategory,
    target: *const FcCategory,
    out: *mut *mut FcFunctor,
) -> FcStatus {
    guard(|| {
        null_out(out)?;
        let a = handle(source, "source")?;
        let b = handle(target, "target")?;
        let f = parse_functor(as_str(text, "text")?, &a.0, &b.0)?;
        *out = Box::into_raw(Box::new(FcFunctor(f)));
        Ok(())
    })
}

/// # Safety
/// `f` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fc_functor_free(f: *mut FcFunctor) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Writes the functor in `.fun` format.
///
/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fc_functor_to_text(f: *const FcFunctor, out: *mut *mut c_char) -> FcStatus {
    guard(|| {
        null_out(out)?;
        let f = handle(f, "functor")?;
        out_string(write_functor(&f.0, "source", "target"), out);
        Ok(())
    })
}

/// Sets `*found` and, when a right adjoint exists and `right` is not null,
/// stores a new handle for it in `*right`.
///
/// # Safety
/// `f` must be a valid handle, `found` a valid pointer, `right` null or valid.
#[no_mangle]
pub unsafe extern "C" fn fc_find_right_adjoint(
    f: *const FcFunctor,
    found: *mut bool,
    right: *mut *mut FcFunctor,
) -> FcStatus {
    guard(|| {
        null_out(found)?;
        let f = handle(f, "functor")?;
        match find_right_adjoint(&f.0) {
            Ok(adj) => {
                *found = true;
                if !right.is_null() {
                    *right = Box::into_raw(Box::new(FcFunctor(adj.right)));
                }
            }
            Err(_) => *found = false,
        }
        Ok(())
    })
}

/// Whether every hom-presheaf of `f` lies in the named weight class.
///
/// # Safety
/// `f` must be a valid handle, `class_name` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fc_is_admissible(f: *const FcFunctor, class_name: *const c_char, out: *mut bool) -> FcStatus {
    guard(|| {
        null_out(out)?;
        let f = handle(f, "functor")?;
        *out = is_phi_admissible(&f.0, class(as_str(class_name, "class")?)?).holds;
        Ok(())
    })
}

/// Whether `f` preserves colimits of shapes in the class with at most
/// `bound` morphisms.
///
/// # Safety
/// `f` must be a valid handle, `class_name` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fc_is_cocontinuous(
    f: *const FcFunctor,
    class_name: *const c_char,
    bound: usize,
    out: *mut bool,
) -> FcStatus {
    guard(|| {
        null_out(out)?;
        let f = handle(f, "functor")?;
        *out = is_cocontinuous(&f.0, class(as_str(class_name, "class")?)?, bound).holds;
        Ok(())
    })
}

/// Checks both sides of the theorem for `(psi, phi)` and stores the verdict
/// record as a JSON string in `*json`.
///
/// # Safety
/// `f` must be a valid handle, names nul-terminated, `json` valid.
#[no_mangle]
pub unsafe extern "C" fn fc_verify_daft(
    f: *const FcFunctor,
    psi: *const c_char,
    phi: *const c_char,
    bound: usize,
    json: *mut *mut c_char,
) -> FcStatus {
    guard(|| {
        null_out(json)?;
        let f = handle(f, "functor")?;
        let pair = TablePair::new(class(as_str(psi, "psi")?)?, class(as_str(phi, "phi")?)?)?;
        let record = verify_daft(&TheoremInstance {
            id: "ffi".into(),
            f: f.0.clone(),
            pair,
            size_bound: bound,
        })?;
        out_string(serde_json::to_string(&record).expect("records serialise"), json);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
