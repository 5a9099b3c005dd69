//! C interface for the wlest estimation library.
//!
//! Models are opaque handles created from the same JSON document the CLI
//! reads and released with [`wlest_model_free`]. Estimation works on flat
//! `double` buffers split into real and imaginary parts. Every fallible call
//! returns a [`WlestStatus`]; on failure a textual description is available
//! from [`wlest_last_error_message`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, CStr, CString};

use wlest::cli::ModelFile;
use wlest::{estimate, Complex64, ComplexVector, Error, EstimatorKind, LinearModel};

/// Outcome of a C API call, mirroring the library's error categories.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WlestStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer was null or an argument was unusable as given.
    InvalidArgument = 1,
    /// The inputs were rejected (dimensions, symmetry, parse failures).
    ValidationError = 2,
    /// A numerical step failed (singular or rank-deficient system).
    NumericalError = 3,
}

/// Estimator selector for [`wlest_estimate`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WlestEstimator {
    /// Best linear unbiased estimator on the complex measurements.
    Blue = 0,
    /// Real part of the BLUE output; not unbiased-optimal on its own.
    ReBlue = 1,
    /// Best widely linear unbiased estimator on augmented measurements.
    Bwlue = 2,
    /// Widely linear minimum mean squared error estimator (needs a prior).
    Wlmmse = 3,
    /// Optimal unbiased estimator for real parameters under proper noise.
    Rbwlue = 4,
}

impl WlestEstimator {
    fn kind(self) -> EstimatorKind {
        match self {
            WlestEstimator::Blue => EstimatorKind::Blue,
            WlestEstimator::ReBlue => EstimatorKind::ReBlue,
            WlestEstimator::Bwlue => EstimatorKind::Bwlue,
            WlestEstimator::Wlmmse => EstimatorKind::Wlmmse,
            WlestEstimator::Rbwlue => EstimatorKind::Rbwlue,
        }
    }
}

/// Opaque handle for a measurement model (H, noise statistics, optional
/// prior). Create with [`wlest_model_from_json`], release with
/// [`wlest_model_free`].
pub struct WlestModel {
    inner: LinearModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::default());
}

fn status_of(err: &Error) -> WlestStatus {
    set_error(&err.to_string());
    match err.exit_code() {
        1 => WlestStatus::InvalidArgument,
        3 => WlestStatus::NumericalError,
        _ => WlestStatus::ValidationError,
    }
}

fn null_argument(name: &str) -> WlestStatus {
    set_error(&format!("{name} must not be null"));
    WlestStatus::InvalidArgument
}

/// Returns the library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wlest_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns a description of the most recent failure on the calling thread,
/// or an empty string after a success. The pointer stays valid until the
/// next wlest call on the same thread.
#[no_mangle]
pub extern "C" fn wlest_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses a model from a NUL-terminated JSON document (the same format the
/// CLI reads: an `H` matrix, `noise` covariance blocks, and an optional
/// `prior`). On success writes a handle to `out`; the caller owns it and
/// must release it with [`wlest_model_free`].
///
/// # Safety
/// `json` must point to a valid NUL-terminated string and `out` to writable
/// pointer storage.
#[no_mangle]
pub unsafe extern "C" fn wlest_model_from_json(
    json: *const c_char,
    out: *mut *mut WlestModel,
) -> WlestStatus {
    if out.is_null() {
        return null_argument("out");
    }
    *out = std::ptr::null_mut();
    if json.is_null() {
        return null_argument("json");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(text) => text,
        Err(_) => {
            set_error("json is not valid UTF-8");
            return WlestStatus::InvalidArgument;
        }
    };
    let file: ModelFile = match serde_json::from_str(text) {
        Ok(file) => file,
        Err(e) => {
            set_error(&format!("model JSON is malformed: {e}"));
            return WlestStatus::ValidationError;
        }
    };
    match file.to_model() {
        Ok(model) => {
            *out = Box::into_raw(Box::new(WlestModel { inner: model }));
            clear_error();
            WlestStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a model handle. Passing null is a no-op.
///
/// # Safety
/// `model` must be null or a handle from [`wlest_model_from_json`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn wlest_model_free(model: *mut WlestModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Returns the measurement count of a model, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle from [`wlest_model_from_json`].
#[no_mangle]
pub unsafe extern "C" fn wlest_model_ny(model: *const WlestModel) -> usize {
    model.as_ref().map_or(0, |m| m.inner.ny())
}

/// Returns the parameter count of a model, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle from [`wlest_model_from_json`].
#[no_mangle]
pub unsafe extern "C" fn wlest_model_nx(model: *const WlestModel) -> usize {
    model.as_ref().map_or(0, |m| m.inner.nx())
}

/// Runs one estimator on a measurement vector.
///
/// `y_re` and `y_im` hold the measurement split into real and imaginary
/// parts; `y_len` must equal the model's measurement count. On success the
/// estimate is written to `x_re` and `x_im`, which must each hold the
/// model's parameter count. `x_var` is optional: when non-null it receives
/// the per-component error variance where the estimator provides one and
/// NaN where it does not.
///
/// # Safety
/// All non-null pointers must reference buffers of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn wlest_estimate(
    model: *const WlestModel,
    estimator: WlestEstimator,
    y_re: *const c_double,
    y_im: *const c_double,
    y_len: usize,
    x_re: *mut c_double,
    x_im: *mut c_double,
    x_var: *mut c_double,
) -> WlestStatus {
    let Some(model) = model.as_ref() else {
        return null_argument("model");
    };
    if y_re.is_null() {
        return null_argument("y_re");
    }
    if y_im.is_null() {
        return null_argument("y_im");
    }
    if x_re.is_null() {
        return null_argument("x_re");
    }
    if x_im.is_null() {
        return null_argument("x_im");
    }
    if y_len != model.inner.ny() {
        set_error(&format!(
            "y_len is {y_len} but the model has {} measurements",
            model.inner.ny()
        ));
        return WlestStatus::ValidationError;
    }

    let y: ComplexVector = (0..y_len)
        .map(|i| Complex64::new(*y_re.add(i), *y_im.add(i)))
        .collect();
    match estimate(&model.inner, estimator.kind(), &y) {
        Ok(result) => {
            for (i, value) in result.x_hat.iter().enumerate() {
                *x_re.add(i) = value.re;
                *x_im.add(i) = value.im;
            }
            if !x_var.is_null() {
                for i in 0..result.x_hat.len() {
                    *x_var.add(i) = match &result.covariance {
                        Some(c) => c.get(i, i).re,
                        None => f64::NAN,
                    };
                }
            }
            clear_error();
            WlestStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
