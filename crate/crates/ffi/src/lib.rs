//! C ABI over the spinwreath engine.
//!
//! Every function returns an [`SwStatus`]. On failure a message is kept in a
//! thread-local slot readable through [`sw_last_error`]. Strings are copied
//! into caller buffers: `required` receives the size including the NUL, and
//! `SW_BUFFER_TOO_SMALL` is returned when `len` is less than that.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spinwreath::gamma::{builtin, GroupData};
use spinwreath::render::{CellMode, TableDocument};
use spinwreath::wreath::{full_table, SpinTable};
use spinwreath::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwStatus {
    SwOk = 0,
    SwNullPointer = 1,
    SwInvalidArgument = 2,
    SwParseError = 3,
    SwValidationError = 4,
    SwOutOfRange = 5,
    SwBufferTooSmall = 6,
    SwInternal = 7,
    SwPanic = 8,
}

/// Opaque handle to a finite group given by its character table.
pub struct SwGroup {
    inner: GroupData,
}

/// Opaque handle to a computed spin character table.
pub struct SwTable {
    table: SpinTable,
    group: GroupData,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Fail(SwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnknownGroup(_) | Error::InvalidPartition(_) | Error::NoConcreteModel(_) => {
                SwStatus::SwInvalidArgument
            }
            Error::MalformedGroup(_) | Error::Json(_) | Error::Io(_) => SwStatus::SwParseError,
            Error::Validation(_) => SwStatus::SwValidationError,
            Error::OracleTooLarge { .. } => SwStatus::SwOutOfRange,
            _ => SwStatus::SwInternal,
        };
        Fail(status, e.to_string())
    }
}

fn fail(status: SwStatus, msg: impl Into<String>) -> Fail {
    Fail(status, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwStatus::SwOk,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside spinwreath");
            SwStatus::SwPanic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(SwStatus::SwNullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(SwStatus::SwInvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(SwStatus::SwNullPointer, format!("{what} is null")));
    }
    *out = value;
    Ok(())
}

unsafe fn copy_string(s: &str, buf: *mut c_char, len: usize, required: *mut usize) -> Result<(), Fail> {
    let need = s.len() + 1;
    if !required.is_null() {
        *required = need;
    }
    if len < need {
        return Err(fail(SwStatus::SwBufferTooSmall, format!("need {need} bytes, got {len}")));
    }
    if buf.is_null() {
        return Err(fail(SwStatus::SwNullPointer, "buffer is null"));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

unsafe fn table_ref<'a>(t: *const SwTable) -> Result<&'a SwTable, Fail> {
    t.as_ref().ok_or_else(|| fail(SwStatus::SwNullPointer, "table is null"))
}

fn check_cell(t: &SwTable, row: usize, col: usize) -> Result<(), Fail> {
    let (rows, cols) = (t.table.rows.len(), t.table.columns.len());
    if row >= rows || col >= cols {
        return Err(fail(SwStatus::SwOutOfRange, format!("cell ({row}, {col}) outside {rows}×{cols}")));
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the last error message of this thread.
///
/// # Safety
/// `buf` must be valid for `len` bytes; `required` may be null.
#[no_mangle]
pub unsafe extern "C" fn sw_last_error(buf: *mut c_char, len: usize, required: *mut usize) -> SwStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match copy_string(&msg, buf, len, required) {
        Ok(()) => SwStatus::SwOk,
        Err(Fail(s, _)) => s,
    }
}

/// Looks up a builtin group: trivial, z2, z3, z4, klein4, s3, d4.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_group_builtin(name: *const c_char, out: *mut *mut SwGroup) -> SwStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let g = builtin(name)?;
        write_out(out, Box::into_raw(Box::new(SwGroup { inner: g })), "out")
    })
}

/// Parses and validates a group from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_group_from_json(json: *const c_char, out: *mut *mut SwGroup) -> SwStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let g = GroupData::from_json(text)?;
        write_out(out, Box::into_raw(Box::new(SwGroup { inner: g })), "out")
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sw_group_free(g: *mut SwGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Computes the spin character table of Γ̃_n.
///
/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_table_compute(group: *const SwGroup, n: u32, out: *mut *mut SwTable) -> SwStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| fail(SwStatus::SwNullPointer, "group is null"))?;
        if n == 0 {
            return Err(fail(SwStatus::SwInvalidArgument, "n must be at least 1"));
        }
        let table = full_table(n, &g.inner)?;
        write_out(out, Box::into_raw(Box::new(SwTable { table, group: g.inner.clone() })), "out")
    })
}

/// # Safety
/// `t` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sw_table_free(t: *mut SwTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_table_rows(t: *const SwTable, out: *mut usize) -> SwStatus {
    guard(|| write_out(out, table_ref(t)?.table.rows.len(), "out"))
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_table_cols(t: *const SwTable, out: *mut usize) -> SwStatus {
    guard(|| write_out(out, table_ref(t)?.table.columns.len(), "out"))
}

/// Floating-point value of one cell at D⁺.
///
/// # Safety
/// `t` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_table_cell_complex(
    t: *const SwTable,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> SwStatus {
    guard(|| {
        let t = table_ref(t)?;
        check_cell(t, row, col)?;
        let z = t.table.values[row][col].to_complex();
        write_out(re, z.re, "re")?;
        write_out(im, z.im, "im")
    })
}

/// Exact value of one cell at D⁺, e.g. `(1/2)*sqrt(2)`.
///
/// # Safety
/// `t` must be a live handle; `buf` must be valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sw_table_cell_string(
    t: *const SwTable,
    row: usize,
    col: usize,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> SwStatus {
    guard(|| {
        let t = table_ref(t)?;
        check_cell(t, row, col)?;
        copy_string(&t.table.values[row][col].to_string(), buf, len, required)
    })
}

/// Row label λ, with a trailing `'` for the associate.
///
/// # Safety
/// `t` must be a live handle; `buf` must be valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sw_table_row_label(
    t: *const SwTable,
    row: usize,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> SwStatus {
    guard(|| {
        let t = table_ref(t)?;
        check_cell(t, row, 0)?;
        copy_string(&t.table.rows[row].to_string(), buf, len, required)
    })
}

/// Column label ρ.
///
/// # Safety
/// `t` must be a live handle; `buf` must be valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sw_table_col_label(
    t: *const SwTable,
    col: usize,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> SwStatus {
    guard(|| {
        let t = table_ref(t)?;
        check_cell(t, 0, col)?;
        copy_string(&t.table.columns[col].rho.to_string(), buf, len, required)
    })
}

/// The table as a JSON document. Free the result with [`sw_string_free`].
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_table_to_json(t: *const SwTable, out: *mut *mut c_char) -> SwStatus {
    guard(|| {
        let t = table_ref(t)?;
        let text = TableDocument::build(&t.table, &t.group, CellMode::Exact)?.to_json()?;
        let c = CString::new(text).map_err(|_| fail(SwStatus::SwInternal, "interior NUL in JSON"))?;
        write_out(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from [`sw_table_to_json`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_are_stable() {
        assert_eq!(SwStatus::SwOk as i32, 0);
        assert_eq!(SwStatus::SwPanic as i32, 8);
    }

    #[test]
    fn panics_are_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, SwStatus::SwPanic);
    }

    #[test]
    fn error_mapping() {
        let Fail(s, _) = Error::Validation("x".into()).into();
        assert_eq!(s, SwStatus::SwValidationError);
        let Fail(s, _) = Error::UnknownGroup("x".into()).into();
        assert_eq!(s, SwStatus::SwInvalidArgument);
    }
}
