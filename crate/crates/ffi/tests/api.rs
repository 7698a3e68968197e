use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use macl_ffi::*;

const FRAME: &str = r#"{
    "mode": "formal",
    "L1": {"elements": ["0","h","1"], "leq": [[true,true,true],[false,true,true],[false,false,true]]},
    "L2": {"elements": ["0","h","1"], "leq": [[true,true,true],[false,true,true],[false,false,true]]},
    "P":  {"elements": ["0","h","1"], "leq": [[true,true,true],[false,true,true],[false,false,true]]},
    "triples": [{"conjunction": [["0","0","0"],["0","h","h"],["0","h","1"]]}]
}"#;

const CONTEXT: &str = r#"{"attributes": ["a"], "objects": [{"name": "o", "type": 1}], "phi": [["h"]]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = macl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn handles() -> (*mut MaclFrame, *mut MaclContext) {
    let (mut frame, mut context) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(macl_frame_from_json(c(FRAME).as_ptr(), &mut frame), MaclStatus::Ok);
    assert_eq!(macl_frame_triples(frame), 1);
    assert_eq!(
        macl_context_from_json(frame, c(CONTEXT).as_ptr(), &mut context),
        MaclStatus::Ok
    );
    (frame, context)
}

#[test]
fn compute_and_export() {
    unsafe {
        let (frame, context) = handles();
        let mut lattice = ptr::null_mut();
        let status = macl_lattice_compute(frame, context, MaclStrategy::Both, 0, true, &mut lattice);
        assert_eq!(status, MaclStatus::Ok);
        // fixed presheaves mu = h and mu = 1
        assert_eq!(macl_lattice_len(lattice), 2);
        assert!(macl_lattice_leq(lattice, 0, 1));
        assert!(!macl_lattice_leq(lattice, 1, 0));
        assert!(!macl_lattice_leq(lattice, 0, 7));

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(macl_lattice_to_json(lattice, &mut json), MaclStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        macl_string_free(json);
        let parsed: macl::concept::ConceptLattice = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.concepts[0].attributes, ["h"]);
        assert_eq!(parsed.concepts[1].objects, ["h"]);

        macl_lattice_free(lattice);
        macl_context_free(context);
        macl_frame_free(frame);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut frame = ptr::null_mut();
        assert_eq!(
            macl_frame_from_json(c("{").as_ptr(), &mut frame),
            MaclStatus::ParseError
        );
        assert!(frame.is_null());
        assert!(last_error().starts_with("frame:"));

        let bad = FRAME.replace(r#"[["0","0","0"]"#, r#"[["h","0","0"]"#);
        assert_eq!(
            macl_frame_from_json(c(&bad).as_ptr(), &mut frame),
            MaclStatus::ValidationError
        );
        assert!(last_error().contains("does not preserve joins"));

        assert_eq!(macl_frame_from_json(ptr::null(), &mut frame), MaclStatus::NullArgument);
        assert_eq!(
            macl_frame_from_json(c(FRAME).as_ptr(), ptr::null_mut()),
            MaclStatus::NullArgument
        );
        let invalid = [0xffu8, 0];
        assert_eq!(
            macl_frame_from_json(invalid.as_ptr().cast(), &mut frame),
            MaclStatus::InvalidUtf8
        );

        let (frame, context) = handles();
        assert!(macl_last_error().is_null());
        let mut lattice = ptr::null_mut();
        assert_eq!(
            macl_lattice_compute(frame, context, MaclStrategy::Auto, 2, false, &mut lattice),
            MaclStatus::ValidationError
        );
        assert!(last_error().contains("above the limit of 2"));
        assert_eq!(
            macl_lattice_compute(ptr::null(), context, MaclStrategy::Auto, 0, false, &mut lattice),
            MaclStatus::NullArgument
        );

        let mut ctx = ptr::null_mut();
        let cell = CONTEXT.replace("[[\"h\"]]", "[[\"x\"]]");
        assert_eq!(
            macl_context_from_json(frame, c(&cell).as_ptr(), &mut ctx),
            MaclStatus::ParseError
        );
        assert!(last_error().contains("`x`"));

        macl_context_free(context);
        macl_frame_free(frame);
        // null handles are ignored
        macl_frame_free(ptr::null_mut());
        macl_string_free(ptr::null_mut());
        assert_eq!(macl_lattice_len(ptr::null()), 0);
    }
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(macl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/macl.h")).unwrap();
    for name in [
        "macl_frame_from_json",
        "macl_frame_free",
        "macl_context_from_json",
        "macl_lattice_compute",
        "macl_lattice_to_json",
        "macl_lattice_to_dot",
        "macl_string_free",
        "macl_last_error",
        "typedef struct MaclLattice MaclLattice;",
        "MACL_STATUS_MISMATCH = 3",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles `smoke.c` against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libmacl_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("macl_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("concepts=4 version=0.1.0"));
}
