//! C ABI over `walg`. Objects cross the boundary as opaque handles owned by
//! the caller and released with the matching `_free` function. Every call
//! returns a [`WalgStatus`]; on failure [`walg_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use walg::cli::{self, CliError};
use walg::liealg::{LieError, Shape};
use walg::vertex::{VState, VertexAlgebra, VertexError};
use walg::walgebra::{self, GeneratorSet, WalgError};

/// Status code returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    TooLarge = 3,
    Unsupported = 4,
    Parse = 5,
    WeightBound = 6,
    Internal = 7,
}

/// Output syntax for rendered elements.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalgFormat {
    Text = 0,
    Latex = 1,
    Json = 2,
}

/// Verification suites over a generator set.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalgSuite {
    Reconstruction = 0,
    Closure = 1,
    Miura = 2,
    Leading = 3,
}

/// All `W_ij^(r)` of one shape.
pub struct WalgGenerators {
    set: GeneratorSet,
}

/// A state of the vertex algebra `V^k(b)` for a fixed shape.
pub struct WalgState {
    shape: Shape,
    state: VState,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(WalgStatus, String);

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        Failure(WalgStatus::InvalidArgument, e.to_string())
    }
}

impl From<VertexError> for Failure {
    fn from(e: VertexError) -> Self {
        let status = match e {
            VertexError::WeightBound { .. } => WalgStatus::WeightBound,
            _ => WalgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn walg_status(e: &WalgError) -> WalgStatus {
    match e {
        WalgError::TooLarge { .. } => WalgStatus::TooLarge,
        WalgError::UnsupportedShape => WalgStatus::Unsupported,
        WalgError::Vertex(VertexError::WeightBound { .. }) => WalgStatus::WeightBound,
        _ => WalgStatus::Internal,
    }
}

impl From<WalgError> for Failure {
    fn from(e: WalgError) -> Self {
        Failure(walg_status(&e), e.to_string())
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match &e {
            CliError::Walg(w) => walg_status(w),
            CliError::Parse(_) | CliError::Coeff(_) => WalgStatus::Parse,
            CliError::Usage(_) => WalgStatus::InvalidArgument,
            CliError::Io(_) => WalgStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(WalgStatus::InvalidArgument, msg.into())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            WalgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WalgStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure(WalgStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(WalgStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(WalgStatus::Internal, "interior NUL".into()))?;
    write_out(out, c.into_raw())
}

fn shape(n: usize, l: usize) -> Result<Shape, Failure> {
    Ok(Shape::new(n, l)?)
}

fn check_index(set: &GeneratorSet, i: usize, j: usize, r: usize) -> Result<(), Failure> {
    let s = set.shape();
    if (1..=s.n).contains(&i) && (1..=s.n).contains(&j) && (1..=s.l).contains(&r) {
        Ok(())
    } else {
        Err(invalid(format!("W_{i}{j}^({r}) outside shape {s}")))
    }
}

fn render_state(s: &VState, format: WalgFormat) -> String {
    match format {
        WalgFormat::Text => s.to_string(),
        WalgFormat::Latex => s.to_latex(),
        WalgFormat::Json => cli::state_to_json(s).to_string(),
    }
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn walg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn walg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Extracts every generator of shape `(n, l)`.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_generators_new(n: usize, l: usize, out: *mut *mut WalgGenerators) -> WalgStatus {
    guard(|| {
        let set = walgebra::extract_generators(shape(n, l)?)?;
        write_out(out, Box::into_raw(Box::new(WalgGenerators { set })))
    })
}

/// # Safety
/// `h` is null or a live handle from [`walg_generators_new`].
#[no_mangle]
pub unsafe extern "C" fn walg_generators_free(h: *mut WalgGenerators) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of generators, `l·n²`.
///
/// # Safety
/// `h` is a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_generators_count(h: *const WalgGenerators, out: *mut usize) -> WalgStatus {
    guard(|| write_out(out, deref(h)?.set.len()))
}

/// Renders `W_ij^(r)` in `U(b[t⁻¹]t⁻¹)`, or its Miura image when `miura` is set.
///
/// # Safety
/// `h` is a live handle, `out` a valid pointer. Free the result with
/// [`walg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn walg_generator_render(
    h: *const WalgGenerators,
    i: usize,
    j: usize,
    r: usize,
    miura: bool,
    format: WalgFormat,
    out: *mut *mut c_char,
) -> WalgStatus {
    guard(|| {
        let set = &deref(h)?.set;
        check_index(set, i, j, r)?;
        let mut w = set.get(i, j, r).clone();
        if miura {
            w = walgebra::miura(&w, set.shape());
        }
        let s = match format {
            WalgFormat::Text => w.to_string(),
            WalgFormat::Latex => w.to_latex(),
            WalgFormat::Json => cli::alg_to_json(&w).to_string(),
        };
        write_string(out, s)
    })
}

/// `W_ij^(r)` as a vertex algebra state.
///
/// # Safety
/// `h` is a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_generator_state(
    h: *const WalgGenerators,
    i: usize,
    j: usize,
    r: usize,
    out: *mut *mut WalgState,
) -> WalgStatus {
    guard(|| {
        let set = &deref(h)?.set;
        check_index(set, i, j, r)?;
        let shape = *set.shape();
        let state = VertexAlgebra::new(shape).embed_alg(set.get(i, j, r))?;
        write_out(out, Box::into_raw(Box::new(WalgState { shape, state })))
    })
}

/// Runs one suite; `passed` receives the verdict.
///
/// # Safety
/// `h` is a live handle, `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_generators_verify(h: *const WalgGenerators, suite: WalgSuite, passed: *mut bool) -> WalgStatus {
    guard(|| {
        let set = &deref(h)?.set;
        let report = match suite {
            WalgSuite::Reconstruction => walgebra::verify_reconstruction(set),
            WalgSuite::Closure => walgebra::verify_closure(set),
            WalgSuite::Miura => walgebra::verify_miura_factorization(set),
            WalgSuite::Leading => walgebra::verify_centralizer_basis(set),
        };
        write_out(passed, report.passed())
    })
}

/// κ_b of shape `(n, l)` as JSON `{"basis": [...], "rows": [[...]]}`.
///
/// # Safety
/// `out` is a valid pointer. Free the result with [`walg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn walg_kappa_table_json(n: usize, l: usize, full: bool, out: *mut *mut c_char) -> WalgStatus {
    guard(|| {
        let (n, l) = (n.to_string(), l.to_string());
        let mut args = vec!["walg", "--format", "json", "kappa-table", "--n", &n, "--l", &l];
        if full {
            args.push("--full");
        }
        let (mut buf, mut err) = (Vec::new(), Vec::new());
        if cli::run(args, &mut buf, &mut err) != 0 {
            return Err(invalid(String::from_utf8_lossy(&err).trim().to_string()));
        }
        let s = String::from_utf8(buf).map_err(|_| Failure(WalgStatus::Internal, "non-UTF-8 output".into()))?;
        write_string(out, s.trim_end().to_string())
    })
}

/// Parses a state of shape `(n, l)` from its JSON form.
///
/// # Safety
/// `json` is a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_state_from_json(n: usize, l: usize, json: *const c_char, out: *mut *mut WalgState) -> WalgStatus {
    guard(|| {
        let shape = shape(n, l)?;
        deref(json)?;
        let text = CStr::from_ptr(json).to_str().map_err(|_| Failure(WalgStatus::Parse, "input is not UTF-8".into()))?;
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure(WalgStatus::Parse, e.to_string()))?;
        let state = cli::state_from_json(&value, &VertexAlgebra::new(shape))?;
        write_out(out, Box::into_raw(Box::new(WalgState { shape, state })))
    })
}

/// # Safety
/// `s` is null or a live state handle.
#[no_mangle]
pub unsafe extern "C" fn walg_state_free(s: *mut WalgState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` is a live handle, `out` a valid pointer. Free the result with
/// [`walg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn walg_state_render(s: *const WalgState, format: WalgFormat, out: *mut *mut c_char) -> WalgStatus {
    guard(|| write_string(out, render_state(&deref(s)?.state, format)))
}

/// # Safety
/// `s` is a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_state_is_zero(s: *const WalgState, out: *mut bool) -> WalgStatus {
    guard(|| write_out(out, deref(s)?.state.is_zero()))
}

/// # Safety
/// `a`, `b` are live handles, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_state_equal(a: *const WalgState, b: *const WalgState, out: *mut bool) -> WalgStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        write_out(out, a.shape == b.shape && a.state == b.state)
    })
}

/// `a_(n)b` within the default weight bound.
///
/// # Safety
/// `a`, `b` are live handles of the same shape, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_state_product(
    a: *const WalgState,
    n: i32,
    b: *const WalgState,
    out: *mut *mut WalgState,
) -> WalgStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        if a.shape != b.shape {
            return Err(invalid(format!("shapes {} and {} differ", a.shape, b.shape)));
        }
        let state = VertexAlgebra::new(a.shape).nth_product(&a.state, n, &b.state)?;
        write_out(out, Box::into_raw(Box::new(WalgState { shape: a.shape, state })))
    })
}

/// Applies the translation operator `D`.
///
/// # Safety
/// `s` is a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_state_translate(s: *const WalgState, out: *mut *mut WalgState) -> WalgStatus {
    guard(|| {
        let s = deref(s)?;
        let state = VertexAlgebra::new(s.shape).translate(&s.state);
        write_out(out, Box::into_raw(Box::new(WalgState { shape: s.shape, state })))
    })
}

/// The conformal vector of shape `(2, 2)`.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn walg_conformal_vector(out: *mut *mut WalgState) -> WalgStatus {
    guard(|| {
        let shape = shape(2, 2)?;
        let gens = walgebra::extract_generators(shape)?;
        let state = walgebra::conformal_vector_22(&gens, &VertexAlgebra::new(shape))?;
        write_out(out, Box::into_raw(Box::new(WalgState { shape, state })))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(walg_status(&WalgError::TooLarge { size: 9, max: 6 }), WalgStatus::TooLarge);
        assert_eq!(walg_status(&WalgError::UnsupportedShape), WalgStatus::Unsupported);
        let bound = WalgError::Vertex(VertexError::WeightBound { weight: 9, bound: 8 });
        assert_eq!(walg_status(&bound), WalgStatus::WeightBound);
        assert_eq!(Failure::from(CliError::Parse("x".into())).0, WalgStatus::Parse);
    }

    #[test]
    fn panics_become_internal_errors() {
        assert_eq!(guard(|| panic!("boom")), WalgStatus::Internal);
        let msg = unsafe { CStr::from_ptr(walg_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }

    #[test]
    fn freeing_null_is_a_no_op() {
        unsafe {
            walg_string_free(std::ptr::null_mut());
            walg_state_free(std::ptr::null_mut());
            walg_generators_free(std::ptr::null_mut());
        }
    }
}
