use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;
use wga_ffi::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.sld"))
}

fn open(name: &str) -> *mut WgaDiagram {
    let path = CString::new(fixture(name).to_str().unwrap()).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { wga_diagram_from_file(path.as_ptr(), &mut d) }, WgaStatus::Ok);
    assert!(!d.is_null());
    d
}

fn last_error() -> String {
    let p = wga_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn weave_round_trip() {
    let d = open("weave4_t2");
    let (mut c, mut tw, mut v) = (0usize, 0usize, 0f64);
    let mut g = WgaGeometry::Satellite;
    unsafe {
        assert_eq!(wga_crossing_count(d, &mut c), WgaStatus::Ok);
        assert_eq!(wga_twist_number(d, &mut tw), WgaStatus::Ok);
        assert_eq!(wga_volume_lower_bound(d, &mut v), WgaStatus::Ok);
        assert_eq!(wga_classify(d, &mut g), WgaStatus::Ok);
        wga_diagram_free(d);
    }
    assert_eq!((c, tw), (4, 4));
    assert!((v - 2.0 * 3.66386237670887).abs() < 1e-9);
    assert_eq!(g, WgaGeometry::Hyperbolic);
}

#[test]
fn refusals_and_errors() {
    let d = open("heegaard11_t2");
    let mut v = 0.0;
    assert_eq!(unsafe { wga_volume_lower_bound(d, &mut v) }, WgaStatus::Refused);
    assert!(last_error().contains("r = 4, need r > 4"), "{}", last_error());

    let mut ok = false;
    assert_eq!(unsafe { wga_filling_certified(d, 0, 2, 4, &mut ok) }, WgaStatus::BadArgument);
    assert_eq!(unsafe { wga_filling_certified(d, 9, 1, 1, &mut ok) }, WgaStatus::BadArgument);
    assert_eq!(unsafe { wga_twist_number(d, ptr::null_mut()) }, WgaStatus::NullPointer);
    assert_eq!(unsafe { wga_twist_number(ptr::null(), &mut 0) }, WgaStatus::NullPointer);
    unsafe { wga_diagram_free(d) };

    let mut out = ptr::null_mut();
    let bad = CString::new("not json").unwrap();
    assert_eq!(unsafe { wga_diagram_from_sld(bad.as_ptr(), &mut out) }, WgaStatus::Parse);
    assert!(out.is_null());
    let missing = CString::new("/nonexistent.sld").unwrap();
    assert_eq!(unsafe { wga_diagram_from_file(missing.as_ptr(), &mut out) }, WgaStatus::Io);
    unsafe { wga_diagram_free(ptr::null_mut()) };
}

#[test]
fn fillings_and_json() {
    let d = open("fig8_s2");
    let mut ok = false;
    assert_eq!(unsafe { wga_filling_certified(d, 0, 1, 5, &mut ok) }, WgaStatus::Ok);
    assert!(ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wga_report_json(d, &mut s) }, WgaStatus::Ok);
    let json = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe {
        wga_string_free(s);
        wga_diagram_free(d);
    }
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["name"], "fig8_s2");
}

/// Compile the C smoke program against the generated header and the static
/// library, then run it. Skipped when no C compiler is on PATH.
#[test]
fn c_program_links_against_header() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/c_abi-* -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libwga_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out = std::env::temp_dir().join(format!("wga_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).arg(fixture("weave4_t2")).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
