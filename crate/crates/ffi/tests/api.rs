use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qgeo_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qgeo_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qgeo_last_error_message()) }.to_str().unwrap().to_owned()
}

#[test]
fn lookup_nf_and_commutator() {
    let name = CString::new("planck1d").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qgeo_model_lookup(name.as_ptr(), &mut m) }, QgeoStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qgeo_model_name(m, &mut s) }, QgeoStatus::Ok);
    assert_eq!(take(s), "planck1d");

    let e = CString::new("lam.laminv + p.x").unwrap();
    assert_eq!(unsafe { qgeo_normal_form(m, e.as_ptr(), &mut s) }, QgeoStatus::Ok);
    assert_eq!(take(s), "x.p + i*hbar*lam + (-i*hbar + 1)");

    let (x, p) = (CString::new("x").unwrap(), CString::new("p").unwrap());
    assert_eq!(unsafe { qgeo_commutator(m, x.as_ptr(), p.as_ptr(), &mut s) }, QgeoStatus::Ok);
    assert_eq!(take(s), "-i*hbar*lam + i*hbar");
    unsafe { qgeo_model_free(m) };
}

#[test]
fn suite_and_export() {
    let name = CString::new("fun_S3").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qgeo_model_lookup(name.as_ptr(), &mut m) }, QgeoStatus::Ok);
    let checks = CString::new("hopf-axioms, fourier").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { qgeo_run_suite(m, checks.as_ptr(), 0, &mut r) }, QgeoStatus::Ok);
    assert!(unsafe { qgeo_reports_len(r) } > 1);
    assert_eq!(unsafe { qgeo_reports_all_passed(r) }, 1);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qgeo_reports_export(r, QgeoFormat::Text, &mut s) }, QgeoStatus::Ok);
    assert!(take(s).contains("0 failed"));
    unsafe {
        qgeo_reports_free(r);
        qgeo_model_free(m);
    }
}

#[test]
fn failing_suite_from_dsl() {
    let src = CString::new(
        "params q;\nalgebra bad { gens x, y; rule y.x -> q*x.y; }\n\
         coproduct bad { x -> x | 1 + 1 | x; y -> y | 1 + 1 | y; }\ncounit bad { x -> 0; y -> 0; }\n",
    )
    .unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qgeo_model_from_dsl(src.as_ptr(), &mut m) }, QgeoStatus::Ok, "{}", last_error());
    let checks = CString::new("hopf-axioms").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { qgeo_run_suite(m, checks.as_ptr(), 2, &mut r) }, QgeoStatus::Ok);
    assert_eq!(unsafe { qgeo_reports_all_passed(r) }, 0);
    unsafe {
        qgeo_reports_free(r);
        qgeo_model_free(m);
    }
}

#[test]
fn errors_are_reported() {
    let mut m = ptr::null_mut();
    let bad = CString::new("nosuch").unwrap();
    assert_eq!(unsafe { qgeo_model_lookup(bad.as_ptr(), &mut m) }, QgeoStatus::UnknownModel);
    assert!(last_error().contains("nosuch"));
    assert_eq!(unsafe { qgeo_model_lookup(ptr::null(), &mut m) }, QgeoStatus::NullPointer);
    let src = CString::new("algebra a { gens x; rule x.x -> ; }").unwrap();
    assert_eq!(unsafe { qgeo_model_from_dsl(src.as_ptr(), &mut m) }, QgeoStatus::Parse);
    assert!(last_error().starts_with("1:"));
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { qgeo_model_lookup(invalid.as_ptr().cast(), &mut m) },
        QgeoStatus::InvalidUtf8
    );
    let mut s = ptr::null_mut();
    let e = CString::new("x").unwrap();
    assert_eq!(unsafe { qgeo_normal_form(ptr::null(), e.as_ptr(), &mut s) }, QgeoStatus::NullPointer);
    assert_eq!(unsafe { qgeo_reports_len(ptr::null()) }, 0);
    unsafe {
        qgeo_model_free(ptr::null_mut());
        qgeo_reports_free(ptr::null_mut());
        qgeo_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qgeo_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compile the C program in tests/ against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libqgeo_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = std::env::temp_dir().join(format!("qgeo_c_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c_smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "c smoke ok");
}
