use std::ffi::{c_char, CStr, CString};
use std::ptr;

use picext_ffi::*;

const Z4: &str = include_str!("../../core/examples/z4.txt");

fn last_error() -> String {
    unsafe { CStr::from_ptr(picext_last_error()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    picext_string_free(s);
    out
}

unsafe fn ints(f: impl Fn(*mut i64, usize, *mut usize) -> PicextStatus) -> Vec<i64> {
    let mut len = 0;
    let mut buf = [0i64; 16];
    assert_eq!(
        f(buf.as_mut_ptr(), buf.len(), &mut len),
        PicextStatus::Ok,
        "{}",
        last_error()
    );
    buf[..len].to_vec()
}

#[test]
fn ext_of_cyclic_groups() {
    unsafe {
        let a = picext_complex_cyclic(4, 0);
        let b = picext_complex_cyclic(6, 0);
        let mut g = ptr::null_mut();
        assert_eq!(picext_ext_group(a, b, 1, &mut g), PicextStatus::Ok);
        assert_eq!(
            ints(|p, c, l| picext_ext_group_divisors(g, p, c, l)),
            vec![2]
        );
        let mut len = 7;
        assert_eq!(
            picext_ext_group_divisors(g, ptr::null_mut(), 0, &mut len),
            PicextStatus::BufferTooSmall
        );
        assert_eq!(len, 1);
        assert_eq!(
            ints(|p, c, l| picext_complex_cohomology(a, 0, p, c, l)),
            vec![4]
        );
        picext_ext_group_free(g);
        picext_complex_free(a);
        picext_complex_free(b);
    }
}

#[test]
fn realize_and_classify() {
    unsafe {
        let a = picext_complex_cyclic(3, 0);
        let mut g = ptr::null_mut();
        assert_eq!(picext_ext_group(a, a, 1, &mut g), PicextStatus::Ok);
        let mut x = ptr::null_mut();
        assert_eq!(
            picext_ext_group_class(g, [2i64].as_ptr(), 1, &mut x),
            PicextStatus::Ok
        );
        let mut e = ptr::null_mut();
        assert_eq!(
            picext_class_realize(x, &mut e),
            PicextStatus::Ok,
            "{}",
            last_error()
        );
        let (mut ca, mut cb) = (false, false);
        assert_eq!(
            picext_extension_validate(e, &mut ca, &mut cb),
            PicextStatus::Ok
        );
        assert!(ca && cb);
        let mut t = ptr::null_mut();
        assert_eq!(picext_extension_theta(e, &mut t), PicextStatus::Ok);
        assert_eq!(ints(|p, c, l| picext_class_coords(t, p, c, l)), vec![2]);
        let mut s = ptr::null_mut();
        assert_eq!(picext_extension_baer_sum(e, e, &mut s), PicextStatus::Ok);
        let mut ts = ptr::null_mut();
        assert_eq!(picext_extension_theta(s, &mut ts), PicextStatus::Ok);
        assert_eq!(ints(|p, c, l| picext_class_coords(ts, p, c, l)), vec![1]);
        let mut n = ptr::null_mut();
        assert_eq!(picext_extension_neutral(a, a, &mut n), PicextStatus::Ok);
        let mut eq = true;
        assert_eq!(picext_extension_equivalent(e, n, &mut eq), PicextStatus::Ok);
        assert!(!eq);
        assert_eq!(picext_extension_equivalent(e, e, &mut eq), PicextStatus::Ok);
        assert!(eq);
        for c in [x, t, ts] {
            picext_class_free(c);
        }
        for h in [e, s, n] {
            picext_extension_free(h);
        }
        picext_ext_group_free(g);
        picext_complex_free(a);
    }
}

#[test]
fn documents() {
    unsafe {
        let text = CString::new(Z4).unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(
            picext_document_parse(text.as_ptr(), &mut d),
            PicextStatus::Ok
        );
        let mut out = ptr::null_mut();
        assert_eq!(picext_document_emit(d, &mut out), PicextStatus::Ok);
        assert!(take(out).contains("extension X: A by A"));
        let mut e = ptr::null_mut();
        let name = CString::new("X").unwrap();
        assert_eq!(
            picext_document_extension(d, name.as_ptr(), &mut e),
            PicextStatus::Ok
        );
        let mut t = ptr::null_mut();
        assert_eq!(picext_extension_theta(e, &mut t), PicextStatus::Ok);
        assert_eq!(ints(|p, c, l| picext_class_coords(t, p, c, l)), vec![1]);
        let mut c = ptr::null_mut();
        assert_eq!(
            picext_document_complex(d, name.as_ptr(), &mut c),
            PicextStatus::UnknownEntity
        );
        assert!(last_error().contains("unknown complex"));
        picext_class_free(t);
        picext_extension_free(e);
        picext_document_free(d);
    }
}

#[test]
fn errors() {
    unsafe {
        let mut d = ptr::null_mut();
        let bad = CString::new(
            "complex K\n  deg -1: Z\n  deg 0: Z\n  deg -2: Z\n  d -2: [[1]]\n  d -1: [[1]]\nend\n",
        )
        .unwrap();
        assert_eq!(
            picext_document_parse(bad.as_ptr(), &mut d),
            PicextStatus::Validation
        );
        assert!(last_error().contains("not a complex"), "{}", last_error());
        let bad = CString::new("complex K\n  deg 0: [[\nend\n").unwrap();
        assert_eq!(
            picext_document_parse(bad.as_ptr(), &mut d),
            PicextStatus::Parse
        );
        assert_eq!(
            picext_document_parse(ptr::null(), &mut d),
            PicextStatus::NullPointer
        );
        assert!(d.is_null());
        let a = picext_complex_cyclic(2, 3);
        let mut e = ptr::null_mut();
        assert_eq!(
            picext_extension_neutral(a, a, &mut e),
            PicextStatus::Validation
        );
        picext_complex_free(a);
        let mut t = ptr::null_mut();
        assert_eq!(
            picext_extension_theta(ptr::null(), &mut t),
            PicextStatus::NullPointer
        );
    }
}

#[test]
fn run_commands() {
    unsafe {
        let input = CString::new(Z4).unwrap();
        let cmd = CString::new("ext").unwrap();
        let args: Vec<CString> = ["A", "A", "1"]
            .iter()
            .map(|s| CString::new(*s).unwrap())
            .collect();
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        let (mut out, mut err, mut code) = (ptr::null_mut(), ptr::null_mut(), -1);
        let s = picext_run(
            input.as_ptr(),
            cmd.as_ptr(),
            argv.as_ptr(),
            argv.len(),
            0,
            0,
            &mut out,
            &mut err,
            &mut code,
        );
        assert_eq!(s, PicextStatus::Ok);
        assert_eq!(code, 0);
        assert!(take(out).contains("divisors [2]"));
        assert_eq!(take(err), "");
        let cmd = CString::new("selftest").unwrap();
        let s = picext_run(
            ptr::null(),
            cmd.as_ptr(),
            ptr::null(),
            0,
            42,
            10,
            &mut out,
            ptr::null_mut(),
            &mut code,
        );
        assert_eq!(s, PicextStatus::Ok);
        assert_eq!(code, 0);
        assert!(take(out).ends_with("selftest: ok\n"));
    }
}

#[test]
fn header_is_current() {
    let h = include_str!("../include/picext.h");
    for f in [
        "picext_document_parse",
        "picext_run",
        "picext_ext_group_divisors",
        "picext_extension_theta",
        "picext_extension_baer_sum",
        "PICEXT_STATUS_VALIDATION = 3",
    ] {
        assert!(h.contains(f), "{f} missing from the header");
    }
}
