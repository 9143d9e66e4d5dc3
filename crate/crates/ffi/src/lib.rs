//! C interface to the gffcheck engine.
//!
//! Structures live behind an opaque [`GffHandle`]. Every call returns a
//! [`GffStatus`]; on failure the message is available from
//! [`gff_last_error`] on the same thread. Strings handed out by the library
//! are freed with [`gff_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use gffcheck::cli::{parse_point, parse_vector};
use gffcheck::curvature::{riemann_tensor, CurvatureTensor, PointCurvature};
use gffcheck::gff::GffStructure;
use gffcheck::pipeline::{analyze, verify, Analysis};
use gffcheck::scalar::fmt_rational;
use gffcheck::spec_io::{builtin_fixture, parse_manifold_spec, Classification, Format};
use gffcheck::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GffStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Parse, fixture or usage error in the input.
    InputError = 3,
    /// Vectors spanning the plane are dependent or the plane is degenerate.
    DegeneratePlane = 4,
    /// A vector is lightlike or not in Im(phi) where that is required.
    InvalidVector = 5,
    ReconstructionInapplicable = 6,
    /// Any other failure of the computation.
    MathError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GffClass {
    NotGff = 0,
    MetricGff = 1,
    K = 2,
    C = 3,
    AlmostS = 4,
    S = 5,
    SSpaceForm = 6,
}

impl From<Classification> for GffClass {
    fn from(c: Classification) -> Self {
        match c {
            Classification::NotGff => GffClass::NotGff,
            Classification::MetricGff => GffClass::MetricGff,
            Classification::K => GffClass::K,
            Classification::C => GffClass::C,
            Classification::AlmostS => GffClass::AlmostS,
            Classification::S => GffClass::S,
            Classification::SSpaceForm => GffClass::SSpaceForm,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GffReportKind {
    Classify = 0,
    Verify = 1,
}

/// A parsed structure with lazily computed analysis and curvature.
pub struct GffHandle {
    structure: GffStructure,
    analysis: OnceLock<Result<Analysis, Error>>,
    curvature: OnceLock<Result<CurvatureTensor, Error>>,
}

impl GffHandle {
    fn analysis(&self) -> Result<&Analysis, Error> {
        self.analysis
            .get_or_init(|| analyze(&self.structure))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn curvature(&self) -> Result<&CurvatureTensor, Error> {
        self.curvature
            .get_or_init(|| riemann_tensor(self.structure.metric()))
            .as_ref()
            .map_err(Clone::clone)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GffStatus {
    match e {
        Error::DegeneratePlane | Error::LinearlyDependent => GffStatus::DegeneratePlane,
        Error::Lightlike | Error::NotInDistribution => GffStatus::InvalidVector,
        Error::ReconstructionInapplicable(_) => GffStatus::ReconstructionInapplicable,
        Error::Syntax { .. }
        | Error::UnknownIdentifier { .. }
        | Error::UnknownCoordinate(_)
        | Error::UnknownFixture(_)
        | Error::DimensionMismatch(_)
        | Error::AsymmetricMetric { .. }
        | Error::InvalidFrame { .. }
        | Error::Malformed(_)
        | Error::Io { .. }
        | Error::Usage(_)
        | Error::PointArity { .. }
        | Error::InvalidCausalCharacter { .. } => GffStatus::InputError,
        _ => GffStatus::MathError,
    }
}

/// Runs `f`, recording errors and turning panics into [`GffStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), (GffStatus, String)>) -> GffStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GffStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GffStatus::Panic
        }
    }
}

fn lift(e: Error) -> (GffStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (GffStatus, String) {
    (GffStatus::NullArgument, "null argument".to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (GffStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GffStatus::InvalidUtf8, "string is not UTF-8".to_string()))
}

unsafe fn handle<'a>(h: *const GffHandle) -> Result<&'a GffHandle, (GffStatus, String)> {
    h.as_ref().ok_or_else(null)
}

fn out_string(out: *mut *mut c_char, s: String) -> Result<(), (GffStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| (GffStatus::MathError, "interior NUL in output".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn open(spec: Result<gffcheck::spec_io::ManifoldSpec, Error>, out: *mut *mut GffHandle) -> Result<(), (GffStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let structure = GffStructure::new(&spec.map_err(lift)?).map_err(lift)?;
    let h = Box::new(GffHandle {
        structure,
        analysis: OnceLock::new(),
        curvature: OnceLock::new(),
    });
    unsafe { *out = Box::into_raw(h) };
    Ok(())
}

/// Message of the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Opens a built-in structure (`example1`, `example2`, `example3`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gff_open_fixture(name: *const c_char, out: *mut *mut GffHandle) -> GffStatus {
    guard(|| {
        let name = read_str(name)?;
        open(builtin_fixture(name), out)
    })
}

/// Opens a structure from definition-file text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gff_open_text(text: *const c_char, out: *mut *mut GffHandle) -> GffStatus {
    guard(|| {
        let text = read_str(text)?;
        open(parse_manifold_spec(text), out)
    })
}

/// # Safety
/// `h` must come from one of the open functions and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gff_free(h: *mut GffHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed only once.
#[no_mangle]
pub unsafe extern "C" fn gff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gff_dim(h: *const GffHandle, out: *mut usize) -> GffStatus {
    guard(|| {
        let h = handle(h)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = h.structure.dim();
        Ok(())
    })
}

/// Writes the class, including `S_SPACE_FORM` when R = S(c).
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gff_classify(h: *const GffHandle, out: *mut GffClass) -> GffStatus {
    guard(|| {
        let h = handle(h)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = h.analysis().map_err(lift)?.class().into();
        Ok(())
    })
}

/// Writes the space-form constant as a rational string, or NULL when the
/// structure is not a space form.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gff_space_form_c(h: *const GffHandle, out: *mut *mut c_char) -> GffStatus {
    guard(|| {
        let h = handle(h)?;
        if out.is_null() {
            return Err(null());
        }
        match &h.analysis().map_err(lift)?.space_form_c {
            Some(c) => out_string(out, fmt_rational(c)),
            None => {
                *out = ptr::null_mut();
                Ok(())
            }
        }
    })
}

/// Sectional curvature of span{X, Y} at a point, as a rational string.
/// `point` is `0` or `name=value,...`; `x` and `y` are vector expressions
/// over `d<coord>` and `Z1..Zr`.
///
/// # Safety
/// All strings must be NUL-terminated, `h` live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gff_sectional_curvature(
    h: *const GffHandle,
    point: *const c_char,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> GffStatus {
    guard(|| {
        let h = handle(h)?;
        let s = &h.structure;
        let p = parse_point(read_str(point)?, s).map_err(lift)?;
        let xv = parse_vector(read_str(x)?, s).and_then(|v| v.evaluate(&p)).map_err(lift)?;
        let yv = parse_vector(read_str(y)?, s).and_then(|v| v.evaluate(&p)).map_err(lift)?;
        let pc = PointCurvature::new(s, h.curvature().map_err(lift)?, &p).map_err(lift)?;
        let k = pc.sectional(&xv, &yv).map_err(lift)?;
        out_string(out, fmt_rational(&k))
    })
}

/// φ-sectional curvature H(X) at a point, as a rational string.
///
/// # Safety
/// All strings must be NUL-terminated, `h` live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gff_phi_sectional_curvature(
    h: *const GffHandle,
    point: *const c_char,
    x: *const c_char,
    out: *mut *mut c_char,
) -> GffStatus {
    guard(|| {
        let h = handle(h)?;
        let s = &h.structure;
        let p = parse_point(read_str(point)?, s).map_err(lift)?;
        let xv = parse_vector(read_str(x)?, s).and_then(|v| v.evaluate(&p)).map_err(lift)?;
        let pc = PointCurvature::new(s, h.curvature().map_err(lift)?, &p).map_err(lift)?;
        let k = pc.phi_sectional(&xv).map_err(lift)?;
        out_string(out, fmt_rational(&k))
    })
}

/// Runs every identity suite and writes the number of failed verdicts.
///
/// # Safety
/// `h` must be a live handle and `failures` writable.
#[no_mangle]
pub unsafe extern "C" fn gff_verify(h: *const GffHandle, failures: *mut usize) -> GffStatus {
    guard(|| {
        let h = handle(h)?;
        let failures = failures.as_mut().ok_or_else(null)?;
        let report = verify(&h.structure).map_err(lift)?;
        *failures = report.verdicts.iter().filter(|v| v.is_failure()).count();
        Ok(())
    })
}

/// The JSON report of `classify` or `verify`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gff_report_json(h: *const GffHandle, kind: GffReportKind, out: *mut *mut c_char) -> GffStatus {
    guard(|| {
        let h = handle(h)?;
        let report = match kind {
            GffReportKind::Classify => h.analysis().map_err(lift)?.report(),
            GffReportKind::Verify => verify(&h.structure).map_err(lift)?,
        };
        out_string(out, report.render(Format::Json))
    })
}
