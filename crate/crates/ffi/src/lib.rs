//! C ABI for `mimetic-detect`.
//!
//! Every entry point returns an [`MdStatus`]; results come back through
//! out-pointers. Objects are opaque handles created by `*_new` and released
//! by the matching `*_free`. After a non-`OK` status, [`md_last_error`]
//! gives a human-readable message for the calling thread.
//!
//! Images are passed as row-major `double` buffers of `height * width`
//! samples in `[0, 1]`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use mimetic_detect::eval::auc_mann_whitney;
use mimetic_detect::imaging::load_grayscale;
use mimetic_detect::{
    build_grad_2d, calibrate, sign_noise, smooth_control, Detector, DetectorConfig, DetectorReport,
    Error, FieldVector, Gradient2D, Image, Layout, Order, Verdict,
};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedOrder = 3,
    GridTooSmall = 4,
    DimensionMismatch = 5,
    ZeroImage = 6,
    TooFewSamples = 7,
    Io = 8,
    Decode = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdVerdict {
    Clean = 0,
    Adversarial = 1,
    Unthresholded = 2,
}

/// Outcome of one detection. `tau` is NaN when no threshold is set.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MdReport {
    pub k: u32,
    pub e_h1: f64,
    pub e_l2: f64,
    pub t: f64,
    pub tau: f64,
    pub verdict: MdVerdict,
}

/// Opaque detector handle.
pub struct MdDetector {
    inner: Detector,
}

/// Opaque 2D gradient operator handle.
pub struct MdGradient {
    inner: Gradient2D,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> MdStatus {
    match err {
        Error::UnsupportedOrder(_) | Error::OrderMismatch { .. } => MdStatus::UnsupportedOrder,
        Error::GridTooSmall { .. } => MdStatus::GridTooSmall,
        Error::DimensionMismatch { .. } | Error::ShapeMismatch { .. } => {
            MdStatus::DimensionMismatch
        }
        Error::ZeroImage => MdStatus::ZeroImage,
        Error::TooFewSamples { .. } | Error::EmptyDirectory(_) => MdStatus::TooFewSamples,
        Error::Io(_) => MdStatus::Io,
        Error::MalformedHeader(_)
        | Error::TruncatedPayload { .. }
        | Error::UnsupportedBitDepth(_)
        | Error::UnknownFormat
        | Error::Png(_)
        | Error::ChannelCount(_) => MdStatus::Decode,
        Error::File { source, .. } => status_of(source),
        _ => MdStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), MdStatus>) -> MdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MdStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            MdStatus::Panic
        }
    }
}

fn fail(err: Error) -> MdStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

fn invalid(msg: &str) -> MdStatus {
    set_last_error(msg.to_string());
    MdStatus::InvalidArgument
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), MdStatus> {
    if p.is_null() {
        set_last_error(format!("{name} is null"));
        Err(MdStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn order_of(k: u32) -> Result<Order, MdStatus> {
    Order::try_from(k as usize).map_err(fail)
}

/// Borrows `len` doubles; a null pointer is accepted only for `len == 0`.
unsafe fn doubles<'a>(p: *const f64, len: usize, name: &str) -> Result<&'a [f64], MdStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    non_null(p, name)?;
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn doubles_mut<'a>(p: *mut f64, len: usize, name: &str) -> Result<&'a mut [f64], MdStatus> {
    if len == 0 {
        return Ok(&mut []);
    }
    non_null(p, name)?;
    Ok(slice::from_raw_parts_mut(p, len))
}

fn image_len(height: usize, width: usize) -> Result<usize, MdStatus> {
    height
        .checked_mul(width)
        .filter(|&n| n > 0)
        .ok_or_else(|| invalid("height and width must be positive"))
}

fn to_report(r: &DetectorReport) -> MdReport {
    MdReport {
        k: r.k as u32,
        e_h1: r.e_h1,
        e_l2: r.e_l2,
        t: r.t,
        tau: r.tau.unwrap_or(f64::NAN),
        verdict: match r.verdict {
            Verdict::Clean => MdVerdict::Clean,
            Verdict::Adversarial => MdVerdict::Adversarial,
            Verdict::Unthresholded => MdVerdict::Unthresholded,
        },
    }
}

/// Static description of a status code; unknown codes get a generic text.
#[no_mangle]
pub extern "C" fn md_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"invalid argument",
        3 => c"unsupported order",
        4 => c"grid too small for order",
        5 => c"dimension mismatch",
        6 => c"statistic undefined for zero image",
        7 => c"too few samples",
        8 => c"i/o error",
        9 => c"image decode error",
        10 => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Message for the last failure on this thread, or null if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn md_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a detector of order `k` with no threshold.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn md_detector_new(k: u32, out: *mut *mut MdDetector) -> MdStatus {
    guard(|| {
        non_null(out, "out")?;
        let order = order_of(k)?;
        let config = DetectorConfig::new(order, None).map_err(fail)?;
        let handle = Box::new(MdDetector {
            inner: Detector::new(config),
        });
        *out = Box::into_raw(handle);
        Ok(())
    })
}

/// Releases a detector. Null is ignored.
///
/// # Safety
/// `detector` must come from [`md_detector_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn md_detector_free(detector: *mut MdDetector) {
    if !detector.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(detector))));
    }
}

/// Sets the decision threshold. Pass NaN to remove it.
///
/// # Safety
/// `detector` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn md_detector_set_threshold(
    detector: *mut MdDetector,
    tau: f64,
) -> MdStatus {
    guard(|| {
        non_null(detector, "detector")?;
        let d = &mut *detector;
        let threshold = if tau.is_nan() { None } else { Some(tau) };
        let config = DetectorConfig::new(d.inner.config().order, threshold).map_err(fail)?;
        d.inner = Detector::new(config);
        Ok(())
    })
}

/// Scores a row-major `height × width` image.
///
/// # Safety
/// `pixels` must point to `height * width` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_detector_evaluate(
    detector: *const MdDetector,
    pixels: *const f64,
    height: usize,
    width: usize,
    out: *mut MdReport,
) -> MdStatus {
    guard(|| {
        non_null(detector, "detector")?;
        non_null(out, "out")?;
        let n = image_len(height, width)?;
        let data = doubles(pixels, n, "pixels")?;
        let img = Image::new(height, width, data.to_vec()).map_err(fail)?;
        let report = (*detector).inner.evaluate(&img).map_err(fail)?;
        *out = to_report(&report);
        Ok(())
    })
}

/// Loads a PNG or binary PGM file as grayscale and scores it.
///
/// # Safety
/// `path` must be a nul-terminated UTF-8 string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_detector_evaluate_file(
    detector: *const MdDetector,
    path: *const c_char,
    out: *mut MdReport,
) -> MdStatus {
    guard(|| {
        non_null(detector, "detector")?;
        non_null(path, "path")?;
        non_null(out, "out")?;
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| invalid("path is not valid UTF-8"))?;
        let img = load_grayscale(path).map_err(fail)?;
        let report = (*detector).inner.evaluate(&img).map_err(fail)?;
        *out = to_report(&report);
        Ok(())
    })
}

/// Builds the order-`k` gradient for a `width × height` cell grid.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_gradient_new(
    k: u32,
    width: usize,
    height: usize,
    out: *mut *mut MdGradient,
) -> MdStatus {
    guard(|| {
        non_null(out, "out")?;
        let order = order_of(k)?;
        let inner = build_grad_2d(order, width, height).map_err(fail)?;
        *out = Box::into_raw(Box::new(MdGradient { inner }));
        Ok(())
    })
}

/// Releases a gradient operator. Null is ignored.
///
/// # Safety
/// `gradient` must come from [`md_gradient_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn md_gradient_free(gradient: *mut MdGradient) {
    if !gradient.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(gradient))));
    }
}

/// Operator shape: rows are faces, columns are extended nodes.
///
/// # Safety
/// `gradient` must be live; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_gradient_shape(
    gradient: *const MdGradient,
    rows: *mut usize,
    cols: *mut usize,
) -> MdStatus {
    guard(|| {
        non_null(gradient, "gradient")?;
        non_null(rows, "rows")?;
        non_null(cols, "cols")?;
        let m = (*gradient).inner.matrix();
        *rows = m.nrows();
        *cols = m.ncols();
        Ok(())
    })
}

/// Applies the operator to an extended field of `(width+2)(height+2)`
/// values, x fastest, writing all face values.
///
/// # Safety
/// `field` must hold `field_len` doubles and `out` `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn md_gradient_apply(
    gradient: *const MdGradient,
    field: *const f64,
    field_len: usize,
    out: *mut f64,
    out_len: usize,
) -> MdStatus {
    guard(|| {
        non_null(gradient, "gradient")?;
        let g = &(*gradient).inner;
        let input = doubles(field, field_len, "field")?;
        let layout = Layout::ExtendedCenters2D {
            m: g.width(),
            n: g.height(),
        };
        let fv = FieldVector::new(input.to_vec(), layout).map_err(fail)?;
        let faces = g.apply(&fv).map_err(fail)?;
        if out_len != faces.len() {
            return Err(fail(Error::DimensionMismatch {
                expected: faces.len(),
                actual: out_len,
            }));
        }
        doubles_mut(out, out_len, "out")?.copy_from_slice(faces.values());
        Ok(())
    })
}

/// Seeded sign noise `±eps`, row-major, written to `out`.
///
/// # Safety
/// `out` must hold `height * width` doubles.
#[no_mangle]
pub unsafe extern "C" fn md_sign_noise(
    height: usize,
    width: usize,
    eps: f64,
    seed: u64,
    out: *mut f64,
) -> MdStatus {
    guard(|| {
        let n = image_len(height, width)?;
        let p = sign_noise(height, width, eps, seed).map_err(fail)?;
        doubles_mut(out, n, "out")?.copy_from_slice(p.delta());
        Ok(())
    })
}

/// Deterministic low-frequency control of amplitude `eps`.
///
/// # Safety
/// `out` must hold `height * width` doubles.
#[no_mangle]
pub unsafe extern "C" fn md_smooth_control(
    height: usize,
    width: usize,
    eps: f64,
    out: *mut f64,
) -> MdStatus {
    guard(|| {
        let n = image_len(height, width)?;
        let p = smooth_control(height, width, eps).map_err(fail)?;
        doubles_mut(out, n, "out")?.copy_from_slice(p.delta());
        Ok(())
    })
}

/// Mann–Whitney AUC of perturbed over clean scores, ties counted 1/2.
///
/// # Safety
/// Score pointers must hold the stated counts; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_auc(
    clean: *const f64,
    n_clean: usize,
    perturbed: *const f64,
    n_perturbed: usize,
    out: *mut f64,
) -> MdStatus {
    guard(|| {
        non_null(out, "out")?;
        let c = doubles(clean, n_clean, "clean")?;
        let p = doubles(perturbed, n_perturbed, "perturbed")?;
        *out = auc_mann_whitney(c, p).ok_or_else(|| {
            set_last_error("both score groups must be non-empty".into());
            MdStatus::TooFewSamples
        })?;
        Ok(())
    })
}

/// Threshold at level `alpha` from at least 20 clean scores.
///
/// # Safety
/// `scores` must hold `n` doubles; `tau` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_calibrate(
    k: u32,
    scores: *const f64,
    n: usize,
    alpha: f64,
    tau: *mut f64,
) -> MdStatus {
    guard(|| {
        non_null(tau, "tau")?;
        let order = order_of(k)?;
        let ts = doubles(scores, n, "scores")?;
        *tau = calibrate(order, ts, alpha).map_err(fail)?.tau;
        Ok(())
    })
}
