//! C interface to `picext`.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free` function. Fallible calls return a [`PicextStatus`] and
//! write their result through an out-pointer; the message of the last
//! failure on the calling thread is available from
//! [`picext_last_error`]. Integer results that do not fit in `int64_t`
//! fail with `PICEXT_STATUS_OVERFLOW`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use picext::cli::{self, DocError, Document, Entity};
use picext::complex::Complex;
use picext::derived::{DerivedClass, ExtGroup};
use picext::extensions::{self, Extension};
use picext::zmodule::{FpGroup, Int};
use picext::Error;

/// Status codes. The values 2, 3 and 4 agree with the exit codes of the
/// `picext` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PicextStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Validation = 3,
    Precondition = 4,
    InvalidUtf8 = 6,
    UnknownEntity = 7,
    Overflow = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// A parsed document.
pub struct PicextDocument(Document);

/// A bounded complex of finitely presented abelian groups.
pub struct PicextComplex(Complex);

/// An extension `B -> E -> A` of length-3 complexes.
pub struct PicextExtension(Extension);

/// The group `Hom_D(A, B[i])` with its canonical coordinates.
pub struct PicextExtGroup(ExtGroup);

/// An element of a [`PicextExtGroup`].
pub struct PicextClass(DerivedClass);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

fn fail(status: PicextStatus, msg: impl Into<String>) -> PicextStatus {
    set_error(msg);
    status
}

fn math(e: Error) -> PicextStatus {
    let status = match cli::exit_code(&e) {
        3 => PicextStatus::Validation,
        _ => PicextStatus::Precondition,
    };
    fail(status, e.to_string())
}

fn doc_error(e: DocError) -> PicextStatus {
    let status = match e {
        DocError::Syntax { .. } => PicextStatus::Parse,
        DocError::Unknown { .. } => PicextStatus::UnknownEntity,
        DocError::Invalid { .. } => PicextStatus::Validation,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> PicextStatus) -> PicextStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == PicextStatus::Ok {
                set_error("");
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(PicextStatus::Panic, msg)
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, PicextStatus> {
    if p.is_null() {
        return Err(fail(PicextStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(PicextStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> PicextStatus {
    if out.is_null() {
        return fail(PicextStatus::NullPointer, "null out-pointer");
    }
    *out = Box::into_raw(Box::new(v));
    PicextStatus::Ok
}

/// Copies `v` into `buf[0..cap]` and stores its length in `len`, which is
/// set even when the buffer is too small.
unsafe fn put_ints(v: &[Int], buf: *mut i64, cap: usize, len: *mut usize) -> PicextStatus {
    if len.is_null() {
        return fail(PicextStatus::NullPointer, "null length pointer");
    }
    *len = v.len();
    if v.len() > cap {
        return fail(
            PicextStatus::BufferTooSmall,
            format!("{} entries needed", v.len()),
        );
    }
    if buf.is_null() && !v.is_empty() {
        return fail(PicextStatus::NullPointer, "null buffer");
    }
    for (k, x) in v.iter().enumerate() {
        match x.to_i64() {
            Some(y) => *buf.add(k) = y,
            None => {
                return fail(
                    PicextStatus::Overflow,
                    format!("{x} does not fit in 64 bits"),
                )
            }
        }
    }
    PicextStatus::Ok
}

macro_rules! handle {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => &h.0,
            None => return fail(PicextStatus::NullPointer, "null handle"),
        }
    };
}

/// Message of the last failure on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn picext_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn picext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a document.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_document_parse(
    text: *const c_char,
    out: *mut *mut PicextDocument,
) -> PicextStatus {
    guard(|| {
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::parse(text) {
            Ok(d) => put(out, PicextDocument(d)),
            Err(e) => doc_error(e),
        }
    })
}

/// # Safety
/// `doc` is null or a live document handle.
#[no_mangle]
pub unsafe extern "C" fn picext_document_free(doc: *mut PicextDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Canonical text of a document; free with [`picext_string_free`].
///
/// # Safety
/// `doc` is a live document handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_document_emit(
    doc: *const PicextDocument,
    out: *mut *mut c_char,
) -> PicextStatus {
    guard(|| {
        let d = handle!(doc);
        if out.is_null() {
            return fail(PicextStatus::NullPointer, "null out-pointer");
        }
        *out = CString::new(d.emit()).expect("no interior nul").into_raw();
        PicextStatus::Ok
    })
}

/// Copies the complex `name` out of a document.
///
/// # Safety
/// `doc` is a live handle, `name` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn picext_document_complex(
    doc: *const PicextDocument,
    name: *const c_char,
    out: *mut *mut PicextComplex,
) -> PicextStatus {
    guard(|| {
        let d = handle!(doc);
        let name = match str_arg(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match d.get(name) {
            Some(Entity::Complex(c)) => put(out, PicextComplex(c.clone())),
            _ => fail(
                PicextStatus::UnknownEntity,
                format!("unknown complex `{name}`"),
            ),
        }
    })
}

/// Copies the extension `name` out of a document.
///
/// # Safety
/// `doc` is a live handle, `name` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn picext_document_extension(
    doc: *const PicextDocument,
    name: *const c_char,
    out: *mut *mut PicextExtension,
) -> PicextStatus {
    guard(|| {
        let d = handle!(doc);
        let name = match str_arg(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match d.get(name) {
            Some(Entity::Extension(e)) => put(out, PicextExtension(e.as_ref().clone())),
            _ => fail(
                PicextStatus::UnknownEntity,
                format!("unknown extension `{name}`"),
            ),
        }
    })
}

/// Runs a command of the `picext` binary on `input` (which may be null).
/// `out` receives standard output, `err` the diagnostics and `code` the exit
/// code; either string pointer may be null when not wanted.
///
/// # Safety
/// `input` is null or nul-terminated; `command` and the `argc` entries of
/// `argv` are nul-terminated; non-null out-pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn picext_run(
    input: *const c_char,
    command: *const c_char,
    argv: *const *const c_char,
    argc: usize,
    seed: u64,
    count: usize,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
    code: *mut i32,
) -> PicextStatus {
    guard(|| {
        let input = if input.is_null() {
            None
        } else {
            match str_arg(input) {
                Ok(t) => Some(t),
                Err(s) => return s,
            }
        };
        let cmd = match str_arg(command) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if argv.is_null() && argc > 0 {
            return fail(PicextStatus::NullPointer, "null argv");
        }
        let mut args = Vec::with_capacity(argc);
        for k in 0..argc {
            match str_arg(*argv.add(k)) {
                Ok(a) => args.push(a.to_string()),
                Err(s) => return s,
            }
        }
        let o = cli::run(input, cmd, &args, &cli::Options { seed, count });
        if !code.is_null() {
            *code = o.code;
        }
        if !out.is_null() {
            *out = CString::new(o.stdout).expect("no interior nul").into_raw();
        }
        if !err.is_null() {
            *err = CString::new(o.stderr).expect("no interior nul").into_raw();
        }
        PicextStatus::Ok
    })
}

/// `Z/m` concentrated in degree `n`; `m = 0` gives `Z`.
#[no_mangle]
pub extern "C" fn picext_complex_cyclic(m: i64, n: i32) -> *mut PicextComplex {
    Box::into_raw(Box::new(PicextComplex(Complex::concentrated(
        FpGroup::cyclic(m),
        n,
    ))))
}

/// # Safety
/// `c` is null or a live complex handle.
#[no_mangle]
pub unsafe extern "C" fn picext_complex_free(c: *mut PicextComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Elementary divisors of `H^n`, zeros for free summands.
///
/// # Safety
/// `c` is a live handle; `buf` has room for `cap` entries; `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_complex_cohomology(
    c: *const PicextComplex,
    n: i32,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> PicextStatus {
    guard(|| {
        let k = handle!(c);
        let ds = if k.is_zero_complex() {
            Vec::new()
        } else {
            k.cohomology(n).group.elementary_divisors()
        };
        put_ints(&ds, buf, cap, len)
    })
}

/// `Hom_D(A, B[i])`.
///
/// # Safety
/// `a`, `b` are live complex handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_ext_group(
    a: *const PicextComplex,
    b: *const PicextComplex,
    i: i32,
    out: *mut *mut PicextExtGroup,
) -> PicextStatus {
    guard(|| {
        let (a, b) = (handle!(a), handle!(b));
        put(out, PicextExtGroup(ExtGroup::new(a, b, i)))
    })
}

/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn picext_ext_group_free(g: *mut PicextExtGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Elementary divisors of the group; a coordinate vector has this length.
///
/// # Safety
/// `g` is a live handle; `buf` has room for `cap` entries; `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_ext_group_divisors(
    g: *const PicextExtGroup,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> PicextStatus {
    guard(|| put_ints(&handle!(g).divisors(), buf, cap, len))
}

/// The class with canonical coordinates `coords[0..len]`.
///
/// # Safety
/// `g` is a live handle; `coords` has `len` entries; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_ext_group_class(
    g: *const PicextExtGroup,
    coords: *const i64,
    len: usize,
    out: *mut *mut PicextClass,
) -> PicextStatus {
    guard(|| {
        let g = handle!(g);
        if g.divisors().len() != len {
            return fail(
                PicextStatus::Precondition,
                format!("{} coordinates expected, got {len}", g.divisors().len()),
            );
        }
        if coords.is_null() && len > 0 {
            return fail(PicextStatus::NullPointer, "null coordinates");
        }
        let c: Vec<Int> = (0..len).map(|k| Int::from(*coords.add(k))).collect();
        put(out, PicextClass(g.class(&c)))
    })
}

/// # Safety
/// `c` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn picext_class_free(c: *mut PicextClass) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Canonical coordinates of a class.
///
/// # Safety
/// `c` is a live handle; `buf` has room for `cap` entries; `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_class_coords(
    c: *const PicextClass,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> PicextStatus {
    guard(|| put_ints(handle!(c).coords(), buf, cap, len))
}

/// The extension `Ψ(x)` realising a degree-1 class.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_class_realize(
    x: *const PicextClass,
    out: *mut *mut PicextExtension,
) -> PicextStatus {
    guard(|| match extensions::realize_psi(handle!(x)) {
        Ok(e) => put(out, PicextExtension(e)),
        Err(e) => math(e),
    })
}

/// The split extension `B -> A ⊕ B -> A`.
///
/// # Safety
/// `a`, `b` are live handles of complexes in degrees -2..0; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_extension_neutral(
    a: *const PicextComplex,
    b: *const PicextComplex,
    out: *mut *mut PicextExtension,
) -> PicextStatus {
    guard(|| {
        let (a, b) = (handle!(a), handle!(b));
        if !a.is_length3() || !b.is_length3() {
            return fail(
                PicextStatus::Validation,
                "complexes must live in degrees -2, -1, 0",
            );
        }
        put(out, PicextExtension(extensions::neutral(a, b)))
    })
}

/// # Safety
/// `e` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn picext_extension_free(e: *mut PicextExtension) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Writes the two exactness conditions; returns `PICEXT_STATUS_OK` either way.
///
/// # Safety
/// `e` is a live handle; `cond_a`, `cond_b` are writable.
#[no_mangle]
pub unsafe extern "C" fn picext_extension_validate(
    e: *const PicextExtension,
    cond_a: *mut bool,
    cond_b: *mut bool,
) -> PicextStatus {
    guard(|| {
        let e = handle!(e);
        if cond_a.is_null() || cond_b.is_null() {
            return fail(PicextStatus::NullPointer, "null out-pointer");
        }
        let rep = e.validate();
        *cond_a = rep.cond_a;
        *cond_b = rep.cond_b;
        PicextStatus::Ok
    })
}

/// The class `Θ(e)` in `Hom_D(A, B[1])`.
///
/// # Safety
/// `e` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_extension_theta(
    e: *const PicextExtension,
    out: *mut *mut PicextClass,
) -> PicextStatus {
    guard(|| match extensions::classify_theta(handle!(e)) {
        Ok(c) => put(out, PicextClass(c)),
        Err(err) => math(err),
    })
}

/// Baer sum of two extensions of `A` by `B`.
///
/// # Safety
/// `e1`, `e2` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_extension_baer_sum(
    e1: *const PicextExtension,
    e2: *const PicextExtension,
    out: *mut *mut PicextExtension,
) -> PicextStatus {
    guard(|| match extensions::baer_sum(handle!(e1), handle!(e2)) {
        Ok(e) => put(out, PicextExtension(e)),
        Err(err) => math(err),
    })
}

/// Whether `e1` and `e2` are equivalent, by a validated witness.
///
/// # Safety
/// `e1`, `e2` are live handles; `equivalent` is writable.
#[no_mangle]
pub unsafe extern "C" fn picext_extension_equivalent(
    e1: *const PicextExtension,
    e2: *const PicextExtension,
    equivalent: *mut bool,
) -> PicextStatus {
    guard(|| {
        let (e1, e2) = (handle!(e1), handle!(e2));
        if equivalent.is_null() {
            return fail(PicextStatus::NullPointer, "null out-pointer");
        }
        match extensions::equivalence_witness(e1, e2) {
            Ok(w) => {
                *equivalent = w.is_some_and(|w| w.validate().valid());
                PicextStatus::Ok
            }
            Err(err) => math(err),
        }
    })
}
