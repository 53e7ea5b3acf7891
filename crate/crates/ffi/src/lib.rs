//! C ABI over `freedep`.
//!
//! Subgroups live behind opaque [`FdSubgroup`] handles. Every fallible call
//! returns an [`FdStatus`] and writes its result through an out-pointer; on
//! failure [`fd_last_error_message`] describes the problem. Strings returned
//! by the library must be released with [`fd_string_free`], handles with
//! [`fd_subgroup_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use freedep::closure::{dep_subgroup, dependence_closure};
use freedep::dependence::is_dependent;
use freedep::{build_core, Alphabet, CoreGraph, Error, Word};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed word, alphabet or generator list.
    Parse = 3,
    /// The request has no answer for these inputs.
    Domain = 4,
    /// An internal consistency check failed.
    Internal = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// A finitely generated subgroup of a free group.
pub struct FdSubgroup {
    gens: Vec<Word>,
    core: CoreGraph,
}

impl FdSubgroup {
    fn core_with(&self, extra: &Word) -> CoreGraph {
        let alphabet = self.core.alphabet().union(&Alphabet::infer([extra]));
        if alphabet.len() == self.core.alphabet().len() {
            self.core.clone()
        } else {
            build_core(&self.gens, &alphabet)
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = if e.is_input_error() {
            FdStatus::Parse
        } else if matches!(e, Error::Internal(_)) {
            FdStatus::Internal
        } else {
            FdStatus::Domain
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FdStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside freedep".into());
            FdStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(FdStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FdStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn handle<'a>(p: *const FdSubgroup) -> Result<&'a FdSubgroup, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(FdStatus::NullPointer, "subgroup handle is null".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(FdStatus::NullPointer, "output pointer is null".into()))
}

fn word(s: &str) -> Result<Word, Failure> {
    Ok(s.trim().parse::<Word>()?)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Builds a subgroup from generators separated by newlines. `alphabet` may be
/// null, in which case the letters used are taken; otherwise it is a list
/// such as `"a b c"` that must contain every letter used.
///
/// # Safety
/// `generators` and a non-null `alphabet` must be NUL-terminated strings and
/// `out_handle` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_subgroup_new(
    generators: *const c_char,
    alphabet: *const c_char,
    out_handle: *mut *mut FdSubgroup,
) -> FdStatus {
    guard(|| {
        let text = str_arg(generators, "generators")?;
        let slot = out(out_handle)?;
        let gens = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(word)
            .collect::<Result<Vec<_>, _>>()?;
        let alphabet = if alphabet.is_null() {
            Alphabet::infer(&gens)
        } else {
            let a = Alphabet::parse(str_arg(alphabet, "alphabet")?)?;
            for w in &gens {
                a.check_word(w)?;
            }
            a
        };
        let core = build_core(&gens, &alphabet);
        *slot = Box::into_raw(Box::new(FdSubgroup { gens, core }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fd_subgroup_free(h: *mut FdSubgroup) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out_rank` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_subgroup_rank(h: *const FdSubgroup, out_rank: *mut usize) -> FdStatus {
    guard(|| {
        *out(out_rank)? = handle(h)?.core.rank();
        Ok(())
    })
}

/// Membership of a word.
///
/// # Safety
/// `h` must be a live handle, `w` a NUL-terminated string and `out_member`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_subgroup_contains(
    h: *const FdSubgroup,
    w: *const c_char,
    out_member: *mut bool,
) -> FdStatus {
    guard(|| {
        let h = handle(h)?;
        let w = word(str_arg(w, "word")?)?;
        *out(out_member)? = h.core.alphabet().contains_word(&w) && h.core.contains(&w);
        Ok(())
    })
}

/// Whether `w` depends on the subgroup.
///
/// # Safety
/// Same as [`fd_subgroup_contains`].
#[no_mangle]
pub unsafe extern "C" fn fd_is_dependent(
    h: *const FdSubgroup,
    w: *const c_char,
    out_dependent: *mut bool,
) -> FdStatus {
    guard(|| {
        let h = handle(h)?;
        let w = word(str_arg(w, "word")?)?;
        *out(out_dependent)? = is_dependent(&h.core_with(&w), &w)?.verdict;
        Ok(())
    })
}

/// New handle for the subgroup generated by the dependent elements.
///
/// # Safety
/// `h` must be a live handle and `out_handle` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_dep_subgroup(h: *const FdSubgroup, out_handle: *mut *mut FdSubgroup) -> FdStatus {
    guard(|| {
        let h = handle(h)?;
        let slot = out(out_handle)?;
        let core = dep_subgroup(&h.core)?;
        *slot = Box::into_raw(Box::new(FdSubgroup {
            gens: core.basis(),
            core,
        }));
        Ok(())
    })
}

/// Number of steps until the dependence sequence stabilises.
///
/// # Safety
/// `h` must be a live handle and `out_length` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_closure_length(h: *const FdSubgroup, out_length: *mut usize) -> FdStatus {
    guard(|| {
        let h = handle(h)?;
        let slot = out(out_length)?;
        *slot = dependence_closure(&h.core)?.length;
        Ok(())
    })
}

/// Basis words, one per line. Free the result with [`fd_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out_text` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_subgroup_basis(h: *const FdSubgroup, out_text: *mut *mut c_char) -> FdStatus {
    guard(|| {
        let h = handle(h)?;
        let slot = out(out_text)?;
        let mut text = String::new();
        for w in h.core.basis() {
            text.push_str(&w.to_string());
            text.push('\n');
        }
        *slot = into_c_string(text);
        Ok(())
    })
}

/// Core graph in DOT. Free the result with [`fd_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out_text` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_subgroup_to_dot(h: *const FdSubgroup, out_text: *mut *mut c_char) -> FdStatus {
    guard(|| {
        let h = handle(h)?;
        *out(out_text)? = into_c_string(h.core.to_dot());
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
