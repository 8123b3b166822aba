//! C ABI over `wga_core`.
//!
//! Diagrams live behind an opaque `WgaDiagram` handle. Every call returns a
//! `WgaStatus`; results go through out-pointers. On failure a description of
//! the last error on the calling thread is available from
//! `wga_last_error_message`. Strings handed out by the library are freed
//! with `wga_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wga_core::certificate::{Certificate, Conclusion};
use wga_core::dehn::{filling_certificate, Slope};
use wga_core::invariants::{classify_geometry, volume_lower_bound, DiagramFacts};
use wga_core::io::report::{run_pipeline, Analysis, Request};
use wga_core::{parse_document, Document};

/// Opaque parsed diagram together with its ambient context.
pub struct WgaDiagram {
    doc: Document,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WgaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    /// A hypothesis of the requested certificate failed or is undeclared.
    Refused = 5,
    BadArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WgaGeometry {
    Hyperbolic = 0,
    Satellite = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: WgaStatus, msg: impl Into<String>) -> WgaStatus {
    set_error(msg);
    status
}

/// Run `f`, turning panics into `WgaStatus::Panic`.
fn guard(f: impl FnOnce() -> WgaStatus) -> WgaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(WgaStatus::Panic, msg)
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, WgaStatus> {
    if s.is_null() {
        return Err(fail(WgaStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(WgaStatus::InvalidUtf8, e.to_string()))
}

unsafe fn diagram_arg<'a>(d: *const WgaDiagram) -> Result<&'a WgaDiagram, WgaStatus> {
    d.as_ref().ok_or_else(|| fail(WgaStatus::NullPointer, "null diagram handle"))
}

fn refused(c: &Certificate) -> WgaStatus {
    fail(WgaStatus::Refused, c.refusal().unwrap_or("refused"))
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! out_arg {
    ($p:expr) => {
        if $p.is_null() {
            return fail(WgaStatus::NullPointer, "null output pointer");
        }
    };
}

fn store_diagram(doc: Document, out: *mut *mut WgaDiagram) -> WgaStatus {
    // SAFETY: `out` was null-checked by the caller.
    unsafe { *out = Box::into_raw(Box::new(WgaDiagram { doc })) };
    WgaStatus::Ok
}

/// Parse a diagram from SLD text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_diagram_from_sld(text: *const c_char, out: *mut *mut WgaDiagram) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let text = try_ffi!(str_arg(text));
        match parse_document(text) {
            Ok(doc) => store_diagram(doc, out),
            Err(e) => fail(WgaStatus::Parse, e.to_string()),
        }
    })
}

/// Read and parse an SLD file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_diagram_from_file(path: *const c_char, out: *mut *mut WgaDiagram) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let path = try_ffi!(str_arg(path));
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(WgaStatus::Io, format!("{path}: {e}")),
        };
        match parse_document(&text) {
            Ok(doc) => store_diagram(doc, out),
            Err(e) => fail(WgaStatus::Parse, e.to_string()),
        }
    })
}

/// Release a diagram. Null is ignored.
///
/// # Safety
/// `d` must come from a `wga_diagram_from_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wga_diagram_free(d: *mut WgaDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of crossings.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_crossing_count(d: *const WgaDiagram, out: *mut usize) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let d = try_ffi!(diagram_arg(d));
        *out = d.doc.diagram.crossing_count();
        WgaStatus::Ok
    })
}

/// Twist number of the diagram.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_twist_number(d: *const WgaDiagram, out: *mut usize) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let d = try_ffi!(diagram_arg(d));
        *out = wga_core::invariants::twist_structure(&d.doc.diagram).tw;
        WgaStatus::Ok
    })
}

/// Certified lower bound on the complement's hyperbolic volume.
/// Returns `Refused` when a hypothesis does not hold.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_volume_lower_bound(d: *const WgaDiagram, out: *mut f64) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let d = try_ffi!(diagram_arg(d));
        let f = DiagramFacts::new(&d.doc.diagram, &d.doc.ambient);
        let c = volume_lower_bound(&f);
        match c.conclusion() {
            Some(Conclusion::VolumeAtLeast { value, .. }) => {
                *out = *value;
                WgaStatus::Ok
            }
            _ => refused(&c),
        }
    })
}

/// Certified geometry of the link complement.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_classify(d: *const WgaDiagram, out: *mut WgaGeometry) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let d = try_ffi!(diagram_arg(d));
        let f = DiagramFacts::new(&d.doc.diagram, &d.doc.ambient);
        let c = classify_geometry(&f);
        match c.conclusion() {
            Some(Conclusion::Hyperbolic) => *out = WgaGeometry::Hyperbolic,
            Some(Conclusion::Satellite { .. }) => *out = WgaGeometry::Satellite,
            _ => return refused(&c),
        }
        WgaStatus::Ok
    })
}

/// Whether filling `component` along p/q is certified hyperbolic. `Ok` with
/// `*out == false` means no certificate applies, not that the filling is
/// exceptional.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_filling_certified(
    d: *const WgaDiagram,
    component: usize,
    p: i64,
    q: i64,
    out: *mut bool,
) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let d = try_ffi!(diagram_arg(d));
        if component >= d.doc.diagram.strands().len() {
            return fail(WgaStatus::BadArgument, format!("no link component {component}"));
        }
        let s = match Slope::new(component, p, q) {
            Ok(s) => s,
            Err(e) => return fail(WgaStatus::BadArgument, e.to_string()),
        };
        let f = DiagramFacts::new(&d.doc.diagram, &d.doc.ambient);
        *out = filling_certificate(&f, &[s]).slopes[0].hyperbolic;
        WgaStatus::Ok
    })
}

/// Full analysis report as JSON. Free the result with `wga_string_free`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wga_report_json(d: *const WgaDiagram, out: *mut *mut c_char) -> WgaStatus {
    guard(|| {
        out_arg!(out);
        let d = try_ffi!(diagram_arg(d));
        let req = Request {
            analyses: vec![Analysis::Validate, Analysis::Invariants, Analysis::Chunks, Analysis::Classify, Analysis::Dehn],
            ..Default::default()
        };
        let json = run_pipeline(&d.doc, &req).to_json();
        *out = CString::new(json).expect("JSON has no NUL bytes").into_raw();
        WgaStatus::Ok
    })
}

/// Free a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn wga_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
