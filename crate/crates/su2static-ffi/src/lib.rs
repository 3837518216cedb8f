//! C ABI over `su2static`.
//!
//! Configs live behind an opaque [`Su2Config`] handle created with
//! `su2_config_new` or `su2_config_from_json` and released with
//! `su2_config_free`. Every fallible call returns an [`Su2Status`] and writes
//! its results through out-pointers. Panics never cross the boundary; they
//! come back as `SU2_STATUS_PANIC`.
//!
//! The header `include/su2static.h` is regenerated by the build script.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use su2static::catalog::{catalog, classify, instantiate, max_constraint_residual, CaseId, Realness};
use su2static::diff::FdScheme;
use su2static::residuals::{verify, FieldMode};
use su2static::{Error, GaugeConfig, RadialLaurent, C64};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    PointTooCloseToOrigin = 3,
    StepTooLarge = 4,
    ZeroCoupling = 5,
    UnsupportedPower = 6,
    OnSingularLocus = 7,
    ConstraintViolated = 8,
    MissingFreeParam = 9,
    ConfigParse = 10,
    Panic = 99,
}

impl From<Error> for Su2Status {
    fn from(e: Error) -> Self {
        match e {
            Error::PointTooCloseToOrigin { .. } => Su2Status::PointTooCloseToOrigin,
            Error::StepTooLarge { .. } => Su2Status::StepTooLarge,
            Error::ZeroCoupling => Su2Status::ZeroCoupling,
            Error::UnsupportedPower(_) => Su2Status::UnsupportedPower,
            Error::OnSingularLocus => Su2Status::OnSingularLocus,
            Error::ConstraintViolated(_) => Su2Status::ConstraintViolated,
            Error::MissingFreeParam(_) => Su2Status::MissingFreeParam,
            Error::ConfigParse(_) => Su2Status::ConfigParse,
        }
    }
}

/// How the fields are built for [`su2_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su2Mode {
    ClosedForm = 0,
    FiniteDifference = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su2Realness {
    Real = 0,
    Complex = 1,
}

/// Maximum residual norms over the shared sample set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Su2Residuals {
    pub gauss: f64,
    pub ampere: f64,
    pub faraday: f64,
    pub div_b: f64,
}

/// Opaque handle to a gauge config.
pub struct Su2Config {
    inner: GaugeConfig,
}

fn guard<F: FnOnce() -> Result<(), Su2Status>>(f: F) -> Su2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Su2Status::Ok,
        Ok(Err(s)) => s,
        Err(_) => Su2Status::Panic,
    }
}

unsafe fn read_k(k: *const f64) -> Result<[C64; 3], Su2Status> {
    if k.is_null() {
        return Err(Su2Status::NullPointer);
    }
    let v = std::slice::from_raw_parts(k, 6);
    Ok([C64::new(v[0], v[1]), C64::new(v[2], v[3]), C64::new(v[4], v[5])])
}

unsafe fn handle<'a>(cfg: *const Su2Config) -> Result<&'a Su2Config, Su2Status> {
    cfg.as_ref().ok_or(Su2Status::NullPointer)
}

/// Create a config with zero radial profiles.
///
/// # Safety
/// `k` must point to six doubles `k1.re, k1.im, k2.re, k2.im, k3.re, k3.im`;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su2_config_new(kappa_re: f64, kappa_im: f64, k: *const f64, out: *mut *mut Su2Config) -> Su2Status {
    guard(|| {
        if out.is_null() {
            return Err(Su2Status::NullPointer);
        }
        let k = read_k(k)?;
        let cfg = GaugeConfig::new(C64::new(kappa_re, kappa_im), k, RadialLaurent::zero(), RadialLaurent::zero());
        *out = Box::into_raw(Box::new(Su2Config { inner: cfg }));
        Ok(())
    })
}

/// Parse a config from the JSON format used by the command-line tool.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su2_config_from_json(json: *const c_char, out: *mut *mut Su2Config) -> Su2Status {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(Su2Status::NullPointer);
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| Su2Status::ConfigParse)?;
        let cfg = GaugeConfig::from_json(text)?;
        *out = Box::into_raw(Box::new(Su2Config { inner: cfg }));
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `cfg` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn su2_config_free(cfg: *mut Su2Config) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

unsafe fn add_term(cfg: *mut Su2Config, second: bool, power: i32, re: f64, im: f64) -> Su2Status {
    guard(|| {
        let cfg = cfg.as_mut().ok_or(Su2Status::NullPointer)?;
        let target = if second { &mut cfg.inner.f2 } else { &mut cfg.inner.f1 };
        target.add_term(power, C64::new(re, im))?;
        Ok(())
    })
}

/// Add `(re + i im) r^power` to `f1`; `power` must lie in `-2..=1`.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn su2_config_add_f1_term(cfg: *mut Su2Config, power: i32, re: f64, im: f64) -> Su2Status {
    add_term(cfg, false, power, re, im)
}

/// Add `(re + i im) r^power` to `f2`; `power` must lie in `-2..=1`.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn su2_config_add_f2_term(cfg: *mut Su2Config, power: i32, re: f64, im: f64) -> Su2Status {
    add_term(cfg, true, power, re, im)
}

/// Serialize a config to JSON. Free the string with [`su2_string_free`].
///
/// # Safety
/// `cfg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su2_config_to_json(cfg: *const Su2Config, out: *mut *mut c_char) -> Su2Status {
    guard(|| {
        let cfg = handle(cfg)?;
        if out.is_null() {
            return Err(Su2Status::NullPointer);
        }
        let text = serde_json::to_string(&cfg.inner).map_err(|_| Su2Status::ConfigParse)?;
        *out = CString::new(text).map_err(|_| Su2Status::ConfigParse)?.into_raw();
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn su2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Field-equation residuals over the 64-point sample set. `h_base` and
/// `richardson` are used only in finite-difference mode. A point that fails
/// to evaluate makes the affected norms infinite.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su2_verify(cfg: *const Su2Config, mode: Su2Mode, h_base: f64, richardson: bool, out: *mut Su2Residuals) -> Su2Status {
    guard(|| {
        let cfg = handle(cfg)?;
        if out.is_null() {
            return Err(Su2Status::NullPointer);
        }
        let mode = match mode {
            Su2Mode::ClosedForm => FieldMode::ClosedForm,
            Su2Mode::FiniteDifference => {
                if !(h_base > 0.0 && h_base.is_finite()) {
                    return Err(Su2Status::InvalidArgument);
                }
                FieldMode::FiniteDifference(FdScheme::new(h_base, richardson))
            }
        };
        let rep = verify(&cfg.inner, &mode);
        *out = Su2Residuals { gauss: rep.gauss, ampere: rep.ampere, faraday: rep.faraday, div_b: rep.div_b };
        Ok(())
    })
}

/// Largest constraint-equation residual over 16 radii in `[0.5, 2]`.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su2_constraint_max(cfg: *const Su2Config, out: *mut f64) -> Su2Status {
    guard(|| {
        let cfg = handle(cfg)?;
        if out.is_null() {
            return Err(Su2Status::NullPointer);
        }
        *out = max_constraint_residual(&cfg.inner);
        Ok(())
    })
}

/// Classify couplings. `case_code` receives a value in `1..=12`; pass it to
/// [`su2_case_name`] for the name.
///
/// # Safety
/// `k` must point to six doubles as in [`su2_config_new`]; the out-pointers
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn su2_classify(kappa_re: f64, kappa_im: f64, k: *const f64, case_code: *mut i32, has_solution: *mut bool) -> Su2Status {
    guard(|| {
        if case_code.is_null() || has_solution.is_null() {
            return Err(Su2Status::NullPointer);
        }
        let k = read_k(k)?;
        let c = classify(C64::new(kappa_re, kappa_im), k[0], k[1], k[2]);
        *case_code = c.case.code();
        *has_solution = c.has_solution();
        Ok(())
    })
}

/// Static name of a case code, or null for an unknown code.
#[no_mangle]
pub extern "C" fn su2_case_name(code: i32) -> *const c_char {
    const NAMES: [&CStr; 12] = [
        c"C1_g0_k10",
        c"C2_g0_k1nz_NoSolution",
        c"C3_1_k3zero",
        c"C3_1_k3nz_complex",
        c"C3_2_complex_k2",
        c"C4_1_halfquant",
        c"C4_1_fullquant",
        c"C4_1_other_NoSolution",
        c"C4_2_vpea",
        c"C4_2_complexC",
        c"C4_3_k2zero",
        c"C4_3_k2nz_complex",
    ];
    debug_assert_eq!(NAMES.len(), CaseId::ALL.len());
    match usize::try_from(code) {
        Ok(i) if (1..=NAMES.len()).contains(&i) => NAMES[i - 1].as_ptr(),
        _ => ptr::null(),
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn su2_status_message(status: Su2Status) -> *const c_char {
    let s: &CStr = match status {
        Su2Status::Ok => c"ok",
        Su2Status::NullPointer => c"null pointer argument",
        Su2Status::InvalidArgument => c"invalid argument",
        Su2Status::PointTooCloseToOrigin => c"point too close to the origin",
        Su2Status::StepTooLarge => c"finite-difference step too large for the radius",
        Su2Status::ZeroCoupling => c"coupling is zero",
        Su2Status::UnsupportedPower => c"Laurent power outside -2..=1",
        Su2Status::OnSingularLocus => c"point on the singular locus",
        Su2Status::ConstraintViolated => c"constraint violated",
        Su2Status::MissingFreeParam => c"missing free parameter",
        Su2Status::ConfigParse => c"config parse error",
        Su2Status::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Instantiate every solution row of a catalog with its default parameters
/// at coupling `kappa` and count rows with a failing instance (constraint
/// residual above 1e-12 or closed-form residual above 1e-7).
///
/// # Safety
/// The out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn su2_catalog_verify(realness: Su2Realness, kappa: f64, rows: *mut usize, failures: *mut usize) -> Su2Status {
    guard(|| {
        if rows.is_null() || failures.is_null() {
            return Err(Su2Status::NullPointer);
        }
        let realness = match realness {
            Su2Realness::Real => Realness::Real,
            Su2Realness::Complex => Realness::Complex,
        };
        let (mut n, mut bad) = (0usize, 0usize);
        for entry in catalog(realness).iter().filter(|e| e.has_solutions) {
            n += 1;
            let insts = instantiate(entry, &entry.default_params(), C64::new(kappa, 0.0))?;
            let ok = insts.iter().all(|i| {
                max_constraint_residual(&i.config) < 1e-12 && verify(&i.config, &FieldMode::ClosedForm).max_norm() < 1e-7
            });
            bad += (!ok) as usize;
        }
        *rows = n;
        *failures = bad;
        Ok(())
    })
}
