//! C bindings for building and verifying Cayley-Sudoku tables.
//!
//! Every object crosses the boundary as an opaque pointer created by a
//! `cs_*_from_*` or `cs_table_build` call and released by the matching
//! `cs_*_free`. Fallible calls return a [`CsStatus`]; on failure the message
//! is available from [`cs_last_error_message`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`cs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use cayley_sudoku::cli::{build_table, parse_group_spec, parse_subgroup_spec, Construction};
use cayley_sudoku::constructions::DEFAULT_NODE_CAP;
use cayley_sudoku::{CayleySudokuTable, Error, FiniteGroup, Outcome, Subgroup, SudokuVerdict};

/// Result of a fallible call. Values 2 to 5 match the command-line exit
/// statuses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    ConditionFailed = 2,
    NotFound = 3,
    Resource = 4,
    Malformed = 5,
    NullArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsConstruction {
    OneRight = 0,
    OneLeft = 1,
    TwoLeft = 2,
    TwoRight = 3,
}

/// A finite group.
pub struct CsGroup(Arc<FiniteGroup>);

/// A subgroup; keeps its group alive.
pub struct CsSubgroup(Subgroup);

/// A bordered, blocked Cayley table.
pub struct CsTable(CayleySudokuTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e.outcome() {
            Outcome::Success => CsStatus::Ok,
            Outcome::ConditionFailed => CsStatus::ConditionFailed,
            Outcome::NotFound => CsStatus::NotFound,
            Outcome::Resource => CsStatus::Resource,
            Outcome::Malformed => CsStatus::Malformed,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CsStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CsStatus::Panic
        }
    }
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(CsStatus::Malformed, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| Failure(CsStatus::Malformed, "output contains NUL".into()))?
        .into_raw();
    Ok(())
}

/// # Safety
/// `p` is null or a live handle of type `T`.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// The last error message on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a group from a spec such as `"Z9"`, `"S4"` or `"perm:4:(12);(1234)"`.
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_group_from_spec(spec: *const c_char, out: *mut *mut CsGroup) -> CsStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let g = parse_group_spec(spec)?;
        write_out(out, CsGroup(g))
    })
}

/// Order of the group, or 0 for null.
///
/// # Safety
/// `group` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_group_order(group: *const CsGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `group` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_group_free(group: *mut CsGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Resolves a subgroup spec (`;`-separated generators, `stab:<point>`,
/// `trivial`, `whole`) inside `group`.
///
/// # Safety
/// `group` is a live handle, `spec` a NUL-terminated string, `out` valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_subgroup_from_spec(
    group: *const CsGroup,
    spec: *const c_char,
    out: *mut *mut CsSubgroup,
) -> CsStatus {
    guard(|| {
        let g = borrow(group, "group")?;
        let spec = read_str(spec, "spec")?;
        let s = parse_subgroup_spec(&g.0, spec)?;
        write_out(out, CsSubgroup(s))
    })
}

/// Order of the subgroup, or 0 for null.
///
/// # Safety
/// `subgroup` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_subgroup_order(subgroup: *const CsSubgroup) -> usize {
    subgroup.as_ref().map_or(0, |s| s.0.order())
}

/// # Safety
/// `subgroup` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_subgroup_free(subgroup: *mut CsSubgroup) {
    if !subgroup.is_null() {
        drop(Box::from_raw(subgroup));
    }
}

/// Builds a verified table with the default partition (construction 1) or
/// the translates of the least universal transversal (construction 2).
/// Returns `NotFound` when construction 2 has no universal transversal.
///
/// # Safety
/// `subgroup` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_table_build(
    subgroup: *const CsSubgroup,
    construction: CsConstruction,
    out: *mut *mut CsTable,
) -> CsStatus {
    guard(|| {
        let s = borrow(subgroup, "subgroup")?;
        let c = match construction {
            CsConstruction::OneRight => Construction::OneRight,
            CsConstruction::OneLeft => Construction::OneLeft,
            CsConstruction::TwoLeft => Construction::TwoLeft,
            CsConstruction::TwoRight => Construction::TwoRight,
        };
        match build_table(&s.0, c, None, DEFAULT_NODE_CAP)? {
            Some(t) => write_out(out, CsTable(t)),
            None => Err(Failure(CsStatus::NotFound, "no universal transversal exists".into())),
        }
    })
}

/// Parses an exchange document. The layout is not verified.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_table_from_exchange(text: *const c_char, out: *mut *mut CsTable) -> CsStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let t = CayleySudokuTable::from_exchange(text).map_err(Error::from)?;
        write_out(out, CsTable(t))
    })
}

/// `Ok` when every block holds each element once, `ConditionFailed` with
/// the first failing block as the message otherwise.
///
/// # Safety
/// `table` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_table_verify(table: *const CsTable) -> CsStatus {
    guard(|| {
        let t = borrow(table, "table")?;
        match t.0.verify_sudoku().map_err(Error::from)? {
            SudokuVerdict::Pass => Ok(()),
            SudokuVerdict::Fail(f) => Err(Failure(CsStatus::ConditionFailed, f.to_string())),
        }
    })
}

/// Number of rows (and columns), or 0 for null.
///
/// # Safety
/// `table` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_table_size(table: *const CsTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.size())
}

/// # Safety
/// `table` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_table_render_text(table: *const CsTable, out: *mut *mut c_char) -> CsStatus {
    guard(|| write_string(out, borrow(table, "table")?.0.render_text()))
}

/// # Safety
/// `table` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_table_to_exchange(table: *const CsTable, out: *mut *mut c_char) -> CsStatus {
    guard(|| write_string(out, borrow(table, "table")?.0.to_exchange()))
}

/// # Safety
/// `table` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_table_free(table: *mut CsTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
