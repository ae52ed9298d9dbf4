//! C interface. Lattices are opaque handles; every call returns a
//! `CyclatStatus` and writes results through out-pointers. Strings handed
//! out by the library are freed with `cyclat_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclat::cyclic::{det_via_roots, is_cyclic};
use cyclat::document::LatticeDocument;
use cyclat::heights::weil_height;
use cyclat::planar::canonical_x;
use cyclat::roots::root_report_csv;
use cyclat::{Error, Lattice, Scalar};
use num_bigint::BigInt;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameter = 4,
    NotWellRounded = 5,
    NotCyclic = 6,
    WrongRank = 7,
    ScaleLimit = 8,
    Domain = 9,
    Internal = 10,
}

/// Opaque lattice handle.
pub struct CyclatLattice {
    inner: Lattice,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CyclatWrFlags {
    pub is_wr: bool,
    pub generated_by_min: bool,
    pub basis_of_min: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CyclatStatus {
    match e {
        Error::Parse { .. } => CyclatStatus::Parse,
        Error::InvalidParameter(_) => CyclatStatus::InvalidParameter,
        Error::NotWellRounded => CyclatStatus::NotWellRounded,
        Error::NotCyclic | Error::NonCyclicGalois => CyclatStatus::NotCyclic,
        Error::WrongRank { .. } | Error::IncompatibleDimension(..) => CyclatStatus::WrongRank,
        Error::ScaleLimit(_) => CyclatStatus::ScaleLimit,
        Error::Inconsistent(_) | Error::Overflow(_) | Error::EnclosureTooWide(_) => CyclatStatus::Internal,
        _ => CyclatStatus::Domain,
    }
}

/// Runs `f`, recording the error message and mapping panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), CyclatStatus>) -> CyclatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CyclatStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            CyclatStatus::Internal
        }
    }
}

fn lift<T>(r: cyclat::Result<T>) -> Result<T, CyclatStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CyclatStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(CyclatStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8".into());
        CyclatStatus::InvalidUtf8
    })
}

unsafe fn handle<'a>(l: *const CyclatLattice) -> Result<&'a Lattice, CyclatStatus> {
    l.as_ref().map(|h| &h.inner).ok_or_else(|| {
        set_error("null lattice handle".into());
        CyclatStatus::NullPointer
    })
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), CyclatStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(CyclatStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), CyclatStatus> {
    let c = CString::new(s).map_err(|_| CyclatStatus::Internal)?;
    write(out, c.into_raw())
}

/// Parses a JSON lattice document into a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_lattice_from_json(json: *const c_char, out: *mut *mut CyclatLattice) -> CyclatStatus {
    guard(|| {
        let text = read_str(json)?;
        let l = lift(LatticeDocument::parse(text).and_then(|d| d.lattice()))?;
        write(out, Box::into_raw(Box::new(CyclatLattice { inner: l })))
    })
}

/// Lattice spanned by `cols` integer columns of length `dim`, stored column after column.
///
/// # Safety
/// `entries` must point to `dim * cols` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_lattice_from_int_columns(
    entries: *const i64,
    dim: usize,
    cols: usize,
    out: *mut *mut CyclatLattice,
) -> CyclatStatus {
    guard(|| {
        if entries.is_null() {
            set_error("null entries".into());
            return Err(CyclatStatus::NullPointer);
        }
        if dim == 0 || cols == 0 {
            set_error("empty basis".into());
            return Err(CyclatStatus::InvalidParameter);
        }
        let data = std::slice::from_raw_parts(entries, dim * cols);
        let columns: Vec<Vec<i64>> = data.chunks(dim).map(<[i64]>::to_vec).collect();
        let l = lift(Lattice::from_int_columns(&columns))?;
        write(out, Box::into_raw(Box::new(CyclatLattice { inner: l })))
    })
}

/// # Safety
/// `l` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cyclat_lattice_free(l: *mut CyclatLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_lattice_rank(l: *const CyclatLattice, out: *mut usize) -> CyclatStatus {
    guard(|| write(out, handle(l)?.rank()))
}

/// Canonical JSON document of the lattice.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_lattice_to_json(l: *const CyclatLattice, out: *mut *mut c_char) -> CyclatStatus {
    guard(|| write_string(out, LatticeDocument::from_lattice(handle(l)?).to_json()))
}

/// The parameter `x` of a planar WR lattice, as an exact entry string.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_canonical_x(l: *const CyclatLattice, out: *mut *mut c_char) -> CyclatStatus {
    guard(|| {
        let c = lift(canonical_x(handle(l)?))?;
        write_string(out, c.x.to_string())
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_wr_flags(l: *const CyclatLattice, out: *mut CyclatWrFlags) -> CyclatStatus {
    guard(|| {
        let f = handle(l)?.wr_flags();
        write(out, CyclatWrFlags { is_wr: f.is_wr, generated_by_min: f.generated_by_min, basis_of_min: f.basis_of_min })
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_is_cyclic(l: *const CyclatLattice, out: *mut bool) -> CyclatStatus {
    guard(|| write(out, lift(is_cyclic(handle(l)?))?))
}

/// `det P(c)` as a decimal string, computed from the values of `c` at the roots of unity.
///
/// # Safety
/// `c` must point to `n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_det_via_roots(c: *const i64, n: usize, out: *mut *mut c_char) -> CyclatStatus {
    guard(|| {
        if c.is_null() {
            set_error("null vector".into());
            return Err(CyclatStatus::NullPointer);
        }
        if n == 0 {
            set_error("empty vector".into());
            return Err(CyclatStatus::InvalidParameter);
        }
        let v: Vec<BigInt> = std::slice::from_raw_parts(c, n).iter().map(|&x| BigInt::from(x)).collect();
        write_string(out, lift(det_via_roots(&v))?.to_string())
    })
}

/// Enclosure `[lo, hi]` of the Weil height of an exact entry such as `"2-1*sqrt(3)"`.
///
/// # Safety
/// `entry` must be a nul-terminated string; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_weil_height(entry: *const c_char, lo: *mut f64, hi: *mut f64) -> CyclatStatus {
    guard(|| {
        let x: Scalar = lift(read_str(entry)?.parse())?;
        let h = weil_height(&x);
        write(lo, h.lo())?;
        write(hi, h.hi())
    })
}

/// CSV report on the root lattices of rank at most `max_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclat_root_report_csv(max_n: usize, out: *mut *mut c_char) -> CyclatStatus {
    guard(|| write_string(out, lift(root_report_csv(max_n))?))
}

/// Message of the last failed call on this thread, or null. Free with `cyclat_string_free`.
#[no_mangle]
pub extern "C" fn cyclat_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cyclat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
