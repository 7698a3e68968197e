//! C interface to the concept lattice engine.
//!
//! Frames, contexts and lattices are opaque handles created from JSON and
//! released with their `_free` function. Every fallible call returns a
//! `MaclStatus`; on failure `macl_last_error` describes what went wrong on
//! the calling thread. Strings handed out by the library must be released
//! with `macl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use macl::adjunctions::Strategy;
use macl::concept::ConceptLattice;
use macl::engine::{compute, Options};
use macl::frame::{Context, MultiAdjointFrame};
use macl::oracle::oracle_direct;
use macl::Error;

/// Result codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaclStatus {
    Ok = 0,
    ParseError = 1,
    ValidationError = 2,
    Mismatch = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaclStrategy {
    Auto = 0,
    Brute = 1,
    Generators = 2,
    Both = 3,
}

impl From<MaclStrategy> for Strategy {
    fn from(s: MaclStrategy) -> Self {
        match s {
            MaclStrategy::Auto => Strategy::Auto,
            MaclStrategy::Brute => Strategy::Brute,
            MaclStrategy::Generators => Strategy::Generators,
            MaclStrategy::Both => Strategy::Both,
        }
    }
}

/// A validated multi-adjoint frame.
pub struct MaclFrame(MultiAdjointFrame);

/// A context read against a particular frame.
pub struct MaclContext(Context);

/// A computed concept lattice.
pub struct MaclLattice(ConceptLattice);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: MaclStatus, msg: impl Into<String>) -> MaclStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> MaclStatus {
    let status = match e.exit_code() {
        1 => MaclStatus::ParseError,
        3 => MaclStatus::Mismatch,
        _ => MaclStatus::ValidationError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> MaclStatus) -> MaclStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(MaclStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MaclStatus> {
    if s.is_null() {
        return Err(fail(MaclStatus::NullArgument, "string argument is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(MaclStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn text(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Parses and validates a frame. On success `*out` owns a new frame.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn macl_frame_from_json(json: *const c_char, out: *mut *mut MaclFrame) -> MaclStatus {
    guard(|| {
        if out.is_null() {
            return fail(MaclStatus::NullArgument, "out is null");
        }
        let json = match read_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match MultiAdjointFrame::from_json(json) {
            Ok(f) => {
                put(out, MaclFrame(f));
                MaclStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// # Safety
/// `frame` must come from `macl_frame_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn macl_frame_free(frame: *mut MaclFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Number of adjoint triples in the frame, or 0 for a null handle.
///
/// # Safety
/// `frame` must be null or a live frame handle.
#[no_mangle]
pub unsafe extern "C" fn macl_frame_triples(frame: *const MaclFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.0.len())
}

/// Parses a context whose cells name elements of the frame's `P`.
///
/// # Safety
/// `frame` must be a live frame handle, `json` a nul-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn macl_context_from_json(
    frame: *const MaclFrame,
    json: *const c_char,
    out: *mut *mut MaclContext,
) -> MaclStatus {
    guard(|| {
        let Some(frame) = frame.as_ref() else {
            return fail(MaclStatus::NullArgument, "frame is null");
        };
        if out.is_null() {
            return fail(MaclStatus::NullArgument, "out is null");
        }
        let json = match read_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match Context::from_json(json, &frame.0) {
            Ok(c) => {
                put(out, MaclContext(c));
                MaclStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// # Safety
/// `context` must come from `macl_context_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn macl_context_free(context: *mut MaclContext) {
    if !context.is_null() {
        drop(Box::from_raw(context));
    }
}

/// Computes the concept lattice of the frame's mode. A `limit` of 0 uses
/// the default fibre limit. With `check_oracle` set the result is compared
/// against direct enumeration and `MACL_STATUS_MISMATCH` returned on any
/// difference.
///
/// # Safety
/// `frame` and `context` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn macl_lattice_compute(
    frame: *const MaclFrame,
    context: *const MaclContext,
    strategy: MaclStrategy,
    limit: usize,
    check_oracle: bool,
    out: *mut *mut MaclLattice,
) -> MaclStatus {
    guard(|| {
        let (Some(frame), Some(context)) = (frame.as_ref(), context.as_ref()) else {
            return fail(MaclStatus::NullArgument, "frame or context is null");
        };
        if out.is_null() {
            return fail(MaclStatus::NullArgument, "out is null");
        }
        let mut options = Options {
            strategy: strategy.into(),
            ..Options::default()
        };
        if limit > 0 {
            options.limit = limit;
        }
        let lattice = match compute(&frame.0, &context.0, options) {
            Ok(l) => l,
            Err(e) => return from_error(e),
        };
        if check_oracle {
            let direct = match oracle_direct(&frame.0, &context.0, options.limit) {
                Ok(l) => l,
                Err(e) => return from_error(e),
            };
            let cmp = lattice.compare(&direct);
            if !cmp.is_equal() {
                return from_error(Error::OracleMismatch(cmp.differences));
            }
        }
        put(out, MaclLattice(lattice));
        MaclStatus::Ok
    })
}

/// # Safety
/// `lattice` must come from `macl_lattice_compute` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn macl_lattice_free(lattice: *mut MaclLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Number of concepts, or 0 for a null handle.
///
/// # Safety
/// `lattice` must be null or a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn macl_lattice_len(lattice: *const MaclLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.0.len())
}

/// Whether concept `i` lies below concept `j`; false when out of range.
///
/// # Safety
/// `lattice` must be null or a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn macl_lattice_leq(lattice: *const MaclLattice, i: usize, j: usize) -> bool {
    match lattice.as_ref() {
        Some(l) if i < l.0.len() && j < l.0.len() => l.0.leq(i, j),
        _ => false,
    }
}

/// Writes the lattice as JSON into a new string owned by the caller.
///
/// # Safety
/// `lattice` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn macl_lattice_to_json(lattice: *const MaclLattice, out: *mut *mut c_char) -> MaclStatus {
    guard(|| {
        let Some(lattice) = lattice.as_ref() else {
            return fail(MaclStatus::NullArgument, "lattice is null");
        };
        if out.is_null() {
            return fail(MaclStatus::NullArgument, "out is null");
        }
        *out = text(serde_json::to_string(&lattice.0).expect("lattice serializes"));
        MaclStatus::Ok
    })
}

/// Writes the Hasse diagram in DOT syntax into a new string.
///
/// # Safety
/// `lattice` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn macl_lattice_to_dot(lattice: *const MaclLattice, out: *mut *mut c_char) -> MaclStatus {
    guard(|| {
        let Some(lattice) = lattice.as_ref() else {
            return fail(MaclStatus::NullArgument, "lattice is null");
        };
        if out.is_null() {
            return fail(MaclStatus::NullArgument, "out is null");
        }
        *out = text(lattice.0.to_dot());
        MaclStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn macl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn macl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn macl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
