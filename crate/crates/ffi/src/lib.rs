//! C interface to `dyconvex`.
//!
//! Every fallible function returns a [`DyStatus`]. On failure a message is kept per
//! thread and can be read with [`dy_last_error_message`]. Strings returned through
//! `char **` out-parameters are owned by the caller and released with [`dy_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dyconvex::classify::{interval_type, DEFAULT_SEARCH_DEPTH};
use dyconvex::cli::report::{self, GensTarget, ReportDocument};
use dyconvex::cli::PointFile;
use dyconvex::groupoid::{equals_groupoid, member, ClosureOptions, GeneratorSet};
use dyconvex::{DyadicPoint, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DyStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Invalid = 4,
    Degenerate = 5,
    PointLimit = 6,
    SearchExhausted = 7,
    Panic = 8,
}

/// A set of generators together with its hull and face subspaces.
pub struct DyGeneratorSet {
    file: PointFile,
    set: GeneratorSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> DyStatus {
    match err {
        Error::Parse(_) => DyStatus::Parse,
        Error::Degenerate(_) => DyStatus::Degenerate,
        Error::PointLimit(_) => DyStatus::PointLimit,
        Error::SearchExhausted(_) => DyStatus::SearchExhausted,
        _ => DyStatus::Invalid,
    }
}

enum Fail {
    Status(DyStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DyStatus::Ok
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            DyStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(DyStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(DyStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(h: *const DyGeneratorSet, what: &str) -> Result<&'a DyGeneratorSet, Fail> {
    h.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Status(DyStatus::Invalid, "string contains NUL".into()))?;
    put(out, c.into_raw(), "out")
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dy_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dy_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a point file (`dim N` header, one point per line) into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_generator_set_new(text: *const c_char, out: *mut *mut DyGeneratorSet) -> DyStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let file: PointFile = text.parse()?;
        let set = GeneratorSet::new(file.points.clone())?;
        put(out, Box::into_raw(Box::new(DyGeneratorSet { file, set })), "out")
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from [`dy_generator_set_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dy_generator_set_free(h: *mut DyGeneratorSet) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_generator_set_len(h: *const DyGeneratorSet, out: *mut usize) -> DyStatus {
    guard(|| put(out, handle(h, "set")?.set.len(), "out"))
}

/// Ambient dimension.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_generator_set_dim(h: *const DyGeneratorSet, out: *mut usize) -> DyStatus {
    guard(|| put(out, handle(h, "set")?.file.dim, "out"))
}

/// Whether `point` lies in the groupoid generated by `h`.
///
/// # Safety
/// `h` must be a live handle, `point` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_member(h: *const DyGeneratorSet, point: *const c_char, out: *mut bool) -> DyStatus {
    guard(|| {
        let h = handle(h, "set")?;
        let p: DyadicPoint = read_str(point, "point")?.parse()?;
        put(out, member(&p, &h.set)?, "out")
    })
}

/// Whether two sets generate the same groupoid.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_equals_groupoid(
    a: *const DyGeneratorSet,
    b: *const DyGeneratorSet,
    out: *mut bool,
) -> DyStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        put(out, equals_groupoid(&a.set, &b.set)?, "out")
    })
}

/// Type `k` of a collinear set, in decimal.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_interval_type(h: *const DyGeneratorSet, out: *mut *mut c_char) -> DyStatus {
    guard(|| {
        let d = interval_type(&handle(h, "set")?.set)?;
        put_string(out, d.type_k.to_string())
    })
}

unsafe fn json_out(out: *mut *mut c_char, doc: ReportDocument) -> Result<(), Fail> {
    put_string(out, doc.to_json())
}

/// JSON report for the representative triangle `T_{i,j,m,n}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_classify_params_json(i: u64, j: u64, m: u64, n: u64, out: *mut *mut c_char) -> DyStatus {
    guard(|| json_out(out, report::classify_params(i, j, m, n)?))
}

/// JSON report normalizing the triangle whose three vertices are in `h`.
/// A `depth` of 0 selects the default.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_classify_triangle_json(
    h: *const DyGeneratorSet,
    depth: u32,
    out: *mut *mut c_char,
) -> DyStatus {
    guard(|| {
        let depth = if depth == 0 { DEFAULT_SEARCH_DEPTH } else { depth };
        json_out(out, report::classify_vertices(&handle(h, "set")?.file, depth)?)
    })
}

/// JSON report of the generated points with denominator exponent at most `exp_cap`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_closure_json(
    h: *const DyGeneratorSet,
    exp_cap: u32,
    slack: u32,
    out: *mut *mut c_char,
) -> DyStatus {
    guard(|| {
        let opts = ClosureOptions::new(exp_cap, slack)?;
        let (doc, _) = report::closure(&handle(h, "set")?.file, &opts)?;
        json_out(out, doc)
    })
}

/// JSON report with a generating set and its certificate.
///
/// With `semipolytope` false the target is the convex hull of `h` as a full
/// dyadic polytope, otherwise it is the groupoid generated by `h`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dy_gens_json(
    h: *const DyGeneratorSet,
    semipolytope: bool,
    reduce: bool,
    out: *mut *mut c_char,
) -> DyStatus {
    guard(|| {
        let file = handle(h, "set")?.file.clone();
        let target = if semipolytope {
            GensTarget::Semipolytope(file)
        } else {
            GensTarget::Polytope(file)
        };
        let (doc, _) = report::gens(&target, reduce)?;
        json_out(out, doc)
    })
}
