use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fincat_ffi::*;

const CHAIN2: &str = "object bot top\nmorphism bot<top : bot -> top\n";
const CHAIN3: &str = "object bot mid top\n\
morphism bot<mid : bot -> mid\n\
morphism mid<top : mid -> top\n\
morphism bot<top : bot -> top\n\
compose mid<top . bot<mid = bot<top\n";
const INCLUSION: &str = "object bot |-> bot\nobject top |-> top\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = fc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn category(text: &str) -> *mut FcCategory {
    let mut out = ptr::null_mut();
    assert_eq!(fc_category_parse(c(text).as_ptr(), &mut out), FcStatus::Ok);
    out
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    fc_string_free(p);
    s
}

#[test]
fn inclusion_round_trip() {
    unsafe {
        let a = category(CHAIN2);
        let b = category(CHAIN3);
        assert_eq!(fc_category_object_count(b), 3);
        assert_eq!(fc_category_morphism_count(b), 6);
        let mut f = ptr::null_mut();
        assert_eq!(fc_functor_parse(c(INCLUSION).as_ptr(), a, b, &mut f), FcStatus::Ok);

        let mut found = false;
        let mut right = ptr::null_mut();
        assert_eq!(fc_find_right_adjoint(f, &mut found, &mut right), FcStatus::Ok);
        assert!(found);
        let mut text = ptr::null_mut();
        assert_eq!(fc_functor_to_text(right, &mut text), FcStatus::Ok);
        let text = take_string(text);
        assert!(text.contains("object mid |-> bot"), "{text}");

        let mut holds = false;
        assert_eq!(fc_is_admissible(f, c("empty").as_ptr(), &mut holds), FcStatus::Ok);
        assert!(holds);
        assert_eq!(fc_is_cocontinuous(f, c("small").as_ptr(), 4, &mut holds), FcStatus::Ok);
        assert!(holds);

        let mut json = ptr::null_mut();
        assert_eq!(
            fc_verify_daft(f, c("small").as_ptr(), c("empty").as_ptr(), 5, &mut json),
            FcStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["agreement"], true);
        assert_eq!(v["lhs"], true);

        fc_functor_free(right);
        fc_functor_free(f);
        fc_category_free(a);
        fc_category_free(b);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut out = ptr::null_mut();
        let bad = c("object a b c\nmorphism f : a -> b\nmorphism g : b -> c\n");
        assert_eq!(fc_category_parse(bad.as_ptr(), &mut out), FcStatus::InvalidInput);
        assert!(last_error().contains("UndefinedComposite") || last_error().contains("undefined"));
        assert_eq!(
            fc_category_parse(c("nonsense").as_ptr(), &mut out),
            FcStatus::ParseError
        );
        assert_eq!(fc_category_parse(ptr::null(), &mut out), FcStatus::NullArgument);

        let a = category(CHAIN2);
        let mut f = ptr::null_mut();
        let reversed = c("object bot |-> top\nobject top |-> bot\n");
        assert_eq!(
            fc_functor_parse(reversed.as_ptr(), a, a, &mut f),
            FcStatus::InvalidInput
        );
        assert_eq!(
            fc_functor_parse(c("object bot |-> bot\nobject top |-> top\n").as_ptr(), a, a, &mut f),
            FcStatus::Ok
        );
        let mut holds = false;
        assert_eq!(
            fc_is_admissible(f, c("tiny").as_ptr(), &mut holds),
            FcStatus::UnsupportedClass
        );
        let mut json = ptr::null_mut();
        assert_eq!(
            fc_verify_daft(f, c("filtered").as_ptr(), c("finite").as_ptr(), 5, &mut json),
            FcStatus::UnsupportedPair
        );
        // a successful call clears the message
        assert_eq!(fc_is_admissible(f, c("empty").as_ptr(), &mut holds), FcStatus::Ok);
        assert!(fc_last_error_message().is_null());
        fc_functor_free(f);
        fc_category_free(a);
    }
}

#[test]
fn precondition_failure_is_reported() {
    unsafe {
        let two = category("object a1 a2\n");
        let one = category("object *\n");
        let mut f = ptr::null_mut();
        let text = c("object a1 |-> *\nobject a2 |-> *\n");
        assert_eq!(fc_functor_parse(text.as_ptr(), two, one, &mut f), FcStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(
            fc_verify_daft(f, c("small").as_ptr(), c("empty").as_ptr(), 5, &mut json),
            FcStatus::PreconditionFailure
        );
        assert!(last_error().contains("source"));
        assert_eq!(
            fc_verify_daft(f, c("connected").as_ptr(), c("discrete").as_ptr(), 5, &mut json),
            FcStatus::Ok
        );
        fc_string_free(json);
        fc_functor_free(f);
        fc_category_free(two);
        fc_category_free(one);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_is_current_and_compiles() {
    let header = crate_dir().join("include/fincat.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "fc_category_parse",
        "fc_functor_parse",
        "fc_find_right_adjoint",
        "fc_is_admissible",
        "fc_is_cocontinuous",
        "fc_verify_daft",
        "fc_string_free",
        "fc_last_error_message",
        "typedef struct FcCategory FcCategory",
    ] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let Some(cc) = compiler() else { return };
    let status = Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
        .unwrap();
    assert!(status.success());
}

fn compiler() -> Option<&'static str> {
    ["cc", "clang", "gcc"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
}

/// Links the static library into a C program when the library has been
/// built next to this test binary.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else { return };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libfincat_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new(cc)
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
