//! C interface to the `prgraph` library.
//!
//! Every function returns a [`PrgStatus`]; on failure the message is kept in
//! thread-local storage and can be fetched with [`prg_last_error`]. Groups
//! are opaque handles created by [`prg_group_new`] and released with
//! [`prg_group_free`]. Strings returned by the library must be released with
//! [`prg_string_free`]. Tuples are arrays of `uint32_t` element ids.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prgraph::groups::literal::parse_tuple;
use prgraph::pragraph::census::ComponentMap;
use prgraph::pragraph::search::{to_redundant, PathOutcome, SearchLimits};
use prgraph::walker::{sample_element, WalkConfig};
use prgraph::{build_group, Error, FiniteGroupTable, NielsenWord};

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    NotGenerating = 4,
    NotConnected = 5,
    Internal = 6,
}

/// Opaque finite group handle.
pub struct PrgGroup {
    inner: FiniteGroupTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(PrgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match &e {
            Error::CapExceeded { .. } => PrgStatus::CapExceeded,
            Error::NotGenerating(_) | Error::NoGeneratingTuple { .. } => PrgStatus::NotGenerating,
            Error::Io(_) => PrgStatus::Internal,
            _ => PrgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PrgStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(PrgStatus::InvalidArgument, msg.into())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PrgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PrgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PrgStatus::Internal
        }
    }
}

unsafe fn group<'a>(g: *const PrgGroup) -> Result<&'a FiniteGroupTable, Failure> {
    unsafe { g.as_ref() }.map(|g| &g.inner).ok_or_else(|| null("group"))
}

unsafe fn string<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    unsafe { p.as_mut() }.ok_or_else(|| null(what))
}

unsafe fn tuple<'a>(g: &FiniteGroupTable, ids: *const u32, k: usize) -> Result<&'a [u32], Failure> {
    if k == 0 {
        return Ok(&[]);
    }
    if ids.is_null() {
        return Err(null("tuple"));
    }
    let t = unsafe { std::slice::from_raw_parts(ids, k) };
    if let Some(&x) = t.iter().find(|&&x| x as usize >= g.order()) {
        return Err(invalid(format!("element id {x} out of range")));
    }
    Ok(t)
}

fn element(g: &FiniteGroupTable, x: u32) -> Result<u32, Failure> {
    if (x as usize) < g.order() {
        Ok(x)
    } else {
        Err(invalid(format!("element id {x} out of range")))
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(PrgStatus::Internal, "string contains NUL".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn prg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn prg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn prg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds a group from a spec such as `"psl2:5"` or `"ab:5,5"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prg_group_new(spec: *const c_char, out_group: *mut *mut PrgGroup) -> PrgStatus {
    guard(|| {
        let slot = unsafe { out(out_group, "out_group") }?;
        *slot = ptr::null_mut();
        let inner = build_group(unsafe { string(spec, "spec") }?)?;
        *slot = Box::into_raw(Box::new(PrgGroup { inner }));
        Ok(())
    })
}

/// Releases a group. NULL is ignored.
///
/// # Safety
/// `g` must come from [`prg_group_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn prg_group_free(g: *mut PrgGroup) {
    if !g.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(unsafe { Box::from_raw(g) })));
    }
}

/// # Safety
/// `g` must be a live handle and `out_order` writable.
#[no_mangle]
pub unsafe extern "C" fn prg_group_order(g: *const PrgGroup, out_order: *mut u64) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        *unsafe { out(out_order, "out_order") }? = g.order() as u64;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out_id` writable.
#[no_mangle]
pub unsafe extern "C" fn prg_group_mul(g: *const PrgGroup, x: u32, y: u32, out_id: *mut u32) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let v = g.mul(element(g, x)?, element(g, y)?);
        *unsafe { out(out_id, "out_id") }? = v;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out_id` writable.
#[no_mangle]
pub unsafe extern "C" fn prg_group_inv(g: *const PrgGroup, x: u32, out_id: *mut u32) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let v = g.inv(element(g, x)?);
        *unsafe { out(out_id, "out_id") }? = v;
        Ok(())
    })
}

/// Parses a tuple literal into `out_ids`. `out_len` receives the tuple
/// length even when `capacity` is too small (then InvalidArgument).
///
/// # Safety
/// `out_ids` must hold `capacity` ids; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prg_parse_tuple(
    g: *const PrgGroup,
    literal: *const c_char,
    out_ids: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let len = unsafe { out(out_len, "out_len") }?;
        let t = parse_tuple(g, unsafe { string(literal, "literal") }?)?;
        *len = t.len();
        if t.len() > capacity {
            return Err(invalid(format!("tuple of length {} exceeds capacity {capacity}", t.len())));
        }
        if !t.is_empty() {
            if out_ids.is_null() {
                return Err(null("out_ids"));
            }
            unsafe { std::slice::from_raw_parts_mut(out_ids, t.len()) }.copy_from_slice(&t);
        }
        Ok(())
    })
}

/// # Safety
/// `ids` must hold `k` ids; `out_result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prg_is_generating(
    g: *const PrgGroup,
    ids: *const u32,
    k: usize,
    out_result: *mut bool,
) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let t = unsafe { tuple(g, ids, k) }?;
        *unsafe { out(out_result, "out_result") }? = g.is_generating(t);
        Ok(())
    })
}

/// Number of connected components of the graph on generating `k`-tuples.
///
/// # Safety
/// `g` must be a live handle and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn prg_components(
    g: *const PrgGroup,
    k: usize,
    extended: bool,
    out_count: *mut u64,
) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let count = unsafe { out(out_count, "out_count") }?;
        *count = ComponentMap::build(g, k, extended)?.component_count() as u64;
        Ok(())
    })
}

/// Number of T-systems of generating `k`-tuples.
///
/// # Safety
/// `g` must be a live handle and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn prg_tsystem_count(g: *const PrgGroup, k: usize, out_count: *mut u64) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let count = unsafe { out(out_count, "out_count") }?;
        *count = prgraph::tsystems::tsystems(g, k)?.tsystem_count as u64;
        Ok(())
    })
}

/// One element drawn by the product replacement walk after `burn_in` steps.
///
/// # Safety
/// `g` must be a live handle and `out_id` writable.
#[no_mangle]
pub unsafe extern "C" fn prg_walk_sample(
    g: *const PrgGroup,
    k: usize,
    burn_in: u64,
    seed: u64,
    out_id: *mut u32,
) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let slot = unsafe { out(out_id, "out_id") }?;
        *slot = sample_element(g, &WalkConfig::new(k, burn_in, seed))?;
        Ok(())
    })
}

/// Applies a move word (`"R+ 1 2 P 1 3 I 2"`, 1-based) to a tuple.
///
/// # Safety
/// `ids` and `out_ids` must each hold `k` ids.
#[no_mangle]
pub unsafe extern "C" fn prg_apply_word(
    g: *const PrgGroup,
    ids: *const u32,
    k: usize,
    word: *const c_char,
    out_ids: *mut u32,
) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let t = unsafe { tuple(g, ids, k) }?;
        let w: NielsenWord = unsafe { string(word, "word") }?.parse()?;
        let result = w.apply(g, t)?;
        if k > 0 {
            if out_ids.is_null() {
                return Err(null("out_ids"));
            }
            unsafe { std::slice::from_raw_parts_mut(out_ids, k) }.copy_from_slice(&result);
        }
        Ok(())
    })
}

/// Shortest move word taking a generating tuple to one containing the
/// identity. `max_visited` of 0 means unlimited. On success `out_word`
/// receives a string to release with [`prg_string_free`].
///
/// # Safety
/// `ids` must hold `k` ids; `out_word` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prg_to_redundant(
    g: *const PrgGroup,
    ids: *const u32,
    k: usize,
    extended: bool,
    max_visited: u64,
    out_word: *mut *mut c_char,
) -> PrgStatus {
    guard(|| {
        let g = unsafe { group(g) }?;
        let slot = unsafe { out(out_word, "out_word") }?;
        *slot = ptr::null_mut();
        let t = unsafe { tuple(g, ids, k) }?;
        let limits = SearchLimits {
            max_depth: None,
            max_visited: (max_visited > 0).then_some(max_visited as usize),
        };
        match to_redundant(g, t, extended, limits)? {
            PathOutcome::Found { word, .. } => {
                let text = word.moves().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
                *slot = into_c_string(text)?;
                Ok(())
            }
            PathOutcome::NotConnected { explored } => Err(Failure(
                PrgStatus::NotConnected,
                format!("no redundant tuple reachable ({explored} explored)"),
            )),
            PathOutcome::LimitReached { explored } => Err(Failure(
                PrgStatus::CapExceeded,
                format!("search limit reached after {explored} tuples"),
            )),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_codes_are_stable() {
        assert_eq!(PrgStatus::Ok as i32, 0);
        assert_eq!(PrgStatus::Internal as i32, 6);
    }

    #[test]
    fn error_is_recorded() {
        let mut g = ptr::null_mut();
        let spec = CString::new("nope:1").unwrap();
        let s = unsafe { prg_group_new(spec.as_ptr(), &mut g) };
        assert_eq!(s, PrgStatus::InvalidArgument);
        assert!(g.is_null());
        assert!(!prg_last_error().is_null());
    }
}
