//! C ABI over `alpha_traversal`.
//!
//! Trees and certified digits are opaque heap handles released with their
//! `_free` function. Every entry point returns an [`AlphaStatus`]; on failure
//! a message is available from [`alpha_last_error`] on the same thread.
//! Strings returned through `char **` are owned by the caller and released
//! with [`alpha_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use alpha_traversal::alpha::{certified_digits, format_digit_file, CertifiedDigits, LazyEngine};
use alpha_traversal::analysis::max_self_overlap;
use alpha_traversal::text::{format_tree, parse_tree};
use alpha_traversal::traversal::{fetch, traverse_fetch};
use alpha_traversal::{lazy, Error, Tree};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    BoundViolation = 5,
    IoError = 6,
    Panic = 7,
}

/// Traversal statistics of one fetch-and-discard traversal.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AlphaStats {
    pub size: u64,
    pub tsl: u64,
    /// Splay-to-root rotations, `tsl - 1` (0 for the empty tree).
    pub cost: u64,
    pub rp: u64,
    pub irp: u64,
}

/// Opaque tree handle.
pub struct AlphaTree(Tree);

/// Opaque certified-digits handle.
pub struct AlphaDigits {
    digits: CertifiedDigits,
    integer_part: CString,
    fraction: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(AlphaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::DigitFormat(_) => AlphaStatus::ParseError,
            Error::BoundViolation(_) | Error::Overflow(_) => AlphaStatus::BoundViolation,
            Error::Io(_) | Error::Checkpoint { .. } => AlphaStatus::IoError,
            _ => AlphaStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AlphaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            AlphaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            AlphaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(AlphaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(AlphaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn tree_arg<'a>(p: *const AlphaTree, what: &str) -> Result<&'a Tree, Failure> {
    p.as_ref().map(|t| &t.0).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_tree(out: *mut *mut AlphaTree, tree: Tree) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(AlphaTree(tree))))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(AlphaStatus::InvalidArgument, "interior NUL".into()))?;
    put(out, c.into_raw())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn alpha_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a tree in text form (`.`, `(L R)`, `M h`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_parse(text: *const c_char, out: *mut *mut AlphaTree) -> AlphaStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        put_tree(out, parse_tree(text)?)
    })
}

/// The maximal tree of height `h` (`h >= -1`, at most 40).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_maximal(h: i32, out: *mut *mut AlphaTree) -> AlphaStatus {
    guard(|| {
        if h > 40 {
            return Err(Failure(AlphaStatus::InvalidArgument, format!("height {h} too large")));
        }
        put_tree(out, Tree::maximal(h)?)
    })
}

/// A new tree: `tree` with `k` nodes chained above it as rightmost ancestors.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_extend(tree: *const AlphaTree, k: usize, out: *mut *mut AlphaTree) -> AlphaStatus {
    guard(|| {
        let t = tree_arg(tree, "tree")?.clone();
        put_tree(out, Tree::extend(t, k))
    })
}

/// A new tree with a fresh root whose left subtree is `left` and right
/// subtree is `right`.
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_join(
    left: *const AlphaTree,
    right: *const AlphaTree,
    out: *mut *mut AlphaTree,
) -> AlphaStatus {
    guard(|| {
        let a = tree_arg(left, "left")?.clone();
        let b = tree_arg(right, "right")?.clone();
        put_tree(out, Tree::join(a, b))
    })
}

/// A new tree: the result of `k` fetch-and-discard steps on `tree`.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_fetch(tree: *const AlphaTree, k: usize, out: *mut *mut AlphaTree) -> AlphaStatus {
    guard(|| {
        let t = tree_arg(tree, "tree")?;
        put_tree(out, fetch(k, t)?)
    })
}

/// Release a tree handle. Null is ignored.
///
/// # Safety
/// `tree` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_free(tree: *mut AlphaTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_size(tree: *const AlphaTree) -> usize {
    tree.as_ref().map_or(0, |t| t.0.size())
}

/// Traverse a copy of `tree` by fetch-and-discard.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_stats(tree: *const AlphaTree, out: *mut AlphaStats) -> AlphaStatus {
    guard(|| {
        let s = traverse_fetch(tree_arg(tree, "tree")?);
        put(
            out,
            AlphaStats { size: s.steps, tsl: s.tsl, cost: s.cost(), rp: s.rp.unwrap_or(0), irp: s.irp.unwrap_or(0) },
        )
    })
}

/// Canonical text form of `tree`; free with [`alpha_string_free`].
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_tree_format(tree: *const AlphaTree, out: *mut *mut c_char) -> AlphaStatus {
    guard(|| {
        let t = tree_arg(tree, "tree")?;
        put_string(out, format_tree(t))
    })
}

/// Root persistence of `M_h` doubly extended, from the lazy engine.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_rp_m2(h: u32, out: *mut u64) -> AlphaStatus {
    guard(|| put(out, lazy::rp_m2(h)))
}

/// Initial root persistence of `M_h` doubly extended, from the lazy engine.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_irp_m2(h: u32, out: *mut u64) -> AlphaStatus {
    guard(|| put(out, lazy::irp_m2(h)))
}

/// Certify digits of alpha at level `n` (> 1).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_certify(n: u64, out: *mut *mut AlphaDigits) -> AlphaStatus {
    guard(|| {
        let digits = certified_digits(n, &LazyEngine)?;
        let integer_part = CString::new(digits.integer_part.clone()).expect("digits only");
        let fraction = CString::new(digits.fraction_digits.clone()).expect("digits only");
        put(out, Box::into_raw(Box::new(AlphaDigits { digits, integer_part, fraction })))
    })
}

/// Number of certified fraction digits, or 0 for a null handle.
///
/// # Safety
/// `digits` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alpha_digits_certified_count(digits: *const AlphaDigits) -> usize {
    digits.as_ref().map_or(0, |d| d.digits.certified_count)
}

/// The level the digits were certified at, or 0 for a null handle.
///
/// # Safety
/// `digits` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alpha_digits_level(digits: *const AlphaDigits) -> u64 {
    digits.as_ref().map_or(0, |d| d.digits.level)
}

/// Certified integer digits (empty if none); borrowed from the handle.
///
/// # Safety
/// `digits` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alpha_digits_integer_part(digits: *const AlphaDigits) -> *const c_char {
    digits.as_ref().map_or(ptr::null(), |d| d.integer_part.as_ptr())
}

/// Certified fraction digits; borrowed from the handle.
///
/// # Safety
/// `digits` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alpha_digits_fraction(digits: *const AlphaDigits) -> *const c_char {
    digits.as_ref().map_or(ptr::null(), |d| d.fraction.as_ptr())
}

/// The digit file text; free with [`alpha_string_free`].
///
/// # Safety
/// `digits` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_digits_file(
    digits: *const AlphaDigits,
    annotated: bool,
    out: *mut *mut c_char,
) -> AlphaStatus {
    guard(|| {
        let d = digits.as_ref().ok_or_else(|| null("digits"))?;
        put_string(out, format_digit_file(&d.digits, annotated))
    })
}

/// Release a digits handle. Null is ignored.
///
/// # Safety
/// `digits` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn alpha_digits_free(digits: *mut AlphaDigits) {
    if !digits.is_null() {
        drop(Box::from_raw(digits));
    }
}

/// Maximum self-overlap of a digit string.
///
/// # Safety
/// `digits` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alpha_max_self_overlap(digits: *const c_char, out: *mut usize) -> AlphaStatus {
    guard(|| {
        let s = str_arg(digits, "digits")?;
        put(out, max_self_overlap(s))
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn alpha_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
