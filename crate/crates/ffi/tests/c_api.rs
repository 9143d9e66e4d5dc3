use std::ffi::{CStr, CString};
use std::ptr;

use gffcheck_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn open(name: &str) -> *mut GffHandle {
    let mut h = ptr::null_mut();
    let st = unsafe { gff_open_fixture(c(name).as_ptr(), &mut h) };
    assert_eq!(st, GffStatus::Ok);
    assert!(!h.is_null());
    h
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gff_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gff_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn classify_and_space_form() {
    let h = open("example3");
    let mut class = GffClass::NotGff;
    assert_eq!(unsafe { gff_classify(h, &mut class) }, GffStatus::Ok);
    assert_eq!(class, GffClass::SSpaceForm);
    let mut dim = 0;
    assert_eq!(unsafe { gff_dim(h, &mut dim) }, GffStatus::Ok);
    assert_eq!(dim, 4);
    let mut cstr = ptr::null_mut();
    assert_eq!(unsafe { gff_space_form_c(h, &mut cstr) }, GffStatus::Ok);
    assert_eq!(take(cstr), "0");
    unsafe { gff_free(h) };
}

#[test]
fn curvatures_through_strings() {
    let h = open("example3");
    let mut k = ptr::null_mut();
    let p = c("0");
    let st = unsafe { gff_sectional_curvature(h, p.as_ptr(), c("dx").as_ptr(), c("Z2").as_ptr(), &mut k) };
    assert_eq!(st, GffStatus::Ok, "{}", last_error());
    assert_eq!(take(k), "-1");
    let st = unsafe { gff_phi_sectional_curvature(h, p.as_ptr(), c("dx - y*Z1 - y*Z2").as_ptr(), &mut k) };
    assert_eq!(st, GffStatus::Ok, "{}", last_error());
    assert_eq!(take(k), "0");
    let st = unsafe { gff_sectional_curvature(h, p.as_ptr(), c("Z1+Z2").as_ptr(), c("dx").as_ptr(), &mut k) };
    assert_eq!(st, GffStatus::DegeneratePlane);
    assert!(last_error().contains("degenerate"));
    let st = unsafe { gff_phi_sectional_curvature(h, p.as_ptr(), c("Z1").as_ptr(), &mut k) };
    assert_eq!(st, GffStatus::InvalidVector);
    unsafe { gff_free(h) };
}

#[test]
fn verify_and_json() {
    let h = open("example2");
    let mut failures = usize::MAX;
    assert_eq!(unsafe { gff_verify(h, &mut failures) }, GffStatus::Ok);
    assert_eq!(failures, 0);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { gff_report_json(h, GffReportKind::Classify, &mut json) }, GffStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["space_form_c"], "-6");
    assert_eq!(v["classification"], "S-space-form");
    unsafe { gff_free(h) };
}

#[test]
fn errors_are_codes_not_crashes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { gff_open_fixture(c("example9").as_ptr(), &mut h) }, GffStatus::InputError);
    assert!(h.is_null());
    assert!(last_error().contains("example9"));
    assert_eq!(unsafe { gff_open_fixture(ptr::null(), &mut h) }, GffStatus::NullArgument);
    assert_eq!(unsafe { gff_open_text(c("dim 3\nframe 5\n").as_ptr(), &mut h) }, GffStatus::InputError);
    let mut class = GffClass::NotGff;
    assert_eq!(unsafe { gff_classify(ptr::null(), &mut class) }, GffStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { gff_open_text(bad.as_ptr().cast(), &mut h) }, GffStatus::InvalidUtf8);
    unsafe { gff_free(ptr::null_mut()) };
    unsafe { gff_string_free(ptr::null_mut()) };
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gffcheck.h")).unwrap();
    for f in [
        "gff_last_error",
        "gff_open_fixture",
        "gff_open_text",
        "gff_free",
        "gff_string_free",
        "gff_dim",
        "gff_classify",
        "gff_space_form_c",
        "gff_sectional_curvature",
        "gff_phi_sectional_curvature",
        "gff_verify",
        "gff_report_json",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct GffHandle GffHandle;"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; header syntax not checked");
        return;
    };
    let dir = std::env::temp_dir().join(format!("gffcheck-hdr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"gffcheck.h\"\nint main(void) { GffHandle *h = 0; GffClass c; return gff_classify(h, &c) == GFF_STATUS_NULL_ARGUMENT ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg(concat!("-I", env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
