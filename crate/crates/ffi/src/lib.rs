//! C ABI over `superspace_delta`.
//!
//! Every fallible function returns an [`SsdStatus`] and writes its result
//! through out-pointers. On failure a message is available from
//! [`ssd_last_error`] on the same thread. Handles are opaque and must be
//! released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use superspace_delta::bound_state::{
    asymptotic_ratio, bound_state_energy, build_wavefunction_1d, energy_for_dimension, normalize,
    validate_wavefunction, ValidationReport,
};
use superspace_delta::fermionic::{build_hamiltonian, spectrum, SpectrumReport};
use superspace_delta::{Error, ModelParams, SuperWaveFunction1D};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Parameters outside the model's domain, e.g. `M > 1`.
    DomainError = 3,
    NumericalFailure = 4,
    OutOfRange = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_for(e: &Error) -> SsdStatus {
    match e {
        Error::UnsupportedDimension { .. }
        | Error::Divergent { .. }
        | Error::RequiresOneBoson { .. }
        | Error::PairCountOutOfRange { .. }
        | Error::TooManyPairs { .. } => SsdStatus::DomainError,
        Error::EigenNoConvergence { .. } | Error::QuadratureFailed { .. } | Error::ZeroNorm => SsdStatus::NumericalFailure,
        _ => SsdStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SsdStatus, String)>) -> SsdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SsdStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SsdStatus::Panic
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (SsdStatus, String)>;
}

impl<T> IntoFfi<T> for superspace_delta::Result<T> {
    fn ffi(self) -> Result<T, (SsdStatus, String)> {
        self.map_err(|e| (status_for(&e), e.to_string()))
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (SsdStatus, String)> {
    if out.is_null() {
        return Err((SsdStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn borrow<'a, T>(h: *const T) -> Result<&'a T, (SsdStatus, String)> {
    h.as_ref().ok_or((SsdStatus::NullPointer, "handle is null".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ssd_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

/// Message for the most recent failure on this thread, or NULL. Valid
/// until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ssd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Bound-state energy on `R^{m|2n}` with coupling `a`.
///
/// # Safety
/// `out_energy` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_energy(m: u32, n: u32, a: f64, out_energy: *mut f64) -> SsdStatus {
    guard(|| {
        let p = ModelParams::new(m, n, a).ffi()?;
        write(out_energy, bound_state_energy(&p).ffi()?)
    })
}

/// Bound-state energy for a real super-dimension `M <= 1`.
///
/// # Safety
/// `out_energy` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_energy_for_dimension(super_dimension: f64, a: f64, out_energy: *mut f64) -> SsdStatus {
    guard(|| write(out_energy, energy_for_dimension(super_dimension, a).ffi()?))
}

/// `E(M, 1) / M` for `M <= -10`.
///
/// # Safety
/// `out_ratio` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_asymptotic_ratio(super_dimension: f64, out_ratio: *mut f64) -> SsdStatus {
    guard(|| write(out_ratio, asymptotic_ratio(super_dimension).ffi()?))
}

/// Bound state on `R^{1|2n}`.
pub struct SsdWaveFunction {
    psi: SuperWaveFunction1D<f64>,
    energy: f64,
    report: ValidationReport,
}

/// Builds the `m = 1` bound state, optionally scaled to unit norm.
///
/// # Safety
/// `out_handle` must be valid for writes. The handle must be released with
/// [`ssd_wavefunction_free`].
#[no_mangle]
pub unsafe extern "C" fn ssd_wavefunction_new(
    n: u32,
    a: f64,
    normalized: bool,
    out_handle: *mut *mut SsdWaveFunction,
) -> SsdStatus {
    guard(|| {
        if out_handle.is_null() {
            return Err((SsdStatus::NullPointer, "output pointer is null".into()));
        }
        let p = ModelParams::new(1, n, a).ffi()?;
        let energy = bound_state_energy(&p).ffi()?;
        let mut psi = build_wavefunction_1d(&p).ffi()?;
        if normalized {
            psi = normalize(&psi).ffi()?;
        }
        let report = validate_wavefunction(&psi, &p).ffi()?;
        write(out_handle, Box::into_raw(Box::new(SsdWaveFunction { psi, energy, report })))
    })
}

/// # Safety
/// `handle` must come from [`ssd_wavefunction_new`] and not be used
/// afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ssd_wavefunction_free(handle: *mut SsdWaveFunction) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of fermion pairs `n`.
///
/// # Safety
/// `handle` must be a live wave-function handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_wavefunction_n_pairs(handle: *const SsdWaveFunction, out: *mut u32) -> SsdStatus {
    guard(|| write(out, borrow(handle)?.psi.n_pairs() as u32))
}

/// Energy `E` and decay rate `b = √(2|E|)`.
///
/// # Safety
/// `handle` must be a live wave-function handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_wavefunction_energy(
    handle: *const SsdWaveFunction,
    out_energy: *mut f64,
    out_decay: *mut f64,
) -> SsdStatus {
    guard(|| {
        let h = borrow(handle)?;
        write(out_energy, h.energy)?;
        write(out_decay, *h.psi.decay())
    })
}

/// Coefficient of `|x|^p e^{-b|x|}` in the component multiplying
/// `X̂^{2n-2k}`.
///
/// # Safety
/// `handle` must be a live wave-function handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_wavefunction_coefficient(
    handle: *const SsdWaveFunction,
    k: u32,
    p: u32,
    out: *mut f64,
) -> SsdStatus {
    guard(|| {
        let h = borrow(handle)?;
        if k as usize > h.psi.n_pairs() {
            return Err((SsdStatus::OutOfRange, format!("component {k} > n = {}", h.psi.n_pairs())));
        }
        write(out, h.psi.component(k as usize).coeff(p))
    })
}

/// Body of the wave function at `x`.
///
/// # Safety
/// `handle` must be a live wave-function handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_wavefunction_body_at(handle: *const SsdWaveFunction, x: f64, out: *mut f64) -> SsdStatus {
    guard(|| write(out, borrow(handle)?.psi.body_at(x)))
}

/// Whether the Schrödinger residual, jump condition and lower delta
/// cancellation all pass.
///
/// # Safety
/// `handle` must be a live wave-function handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_wavefunction_validated(handle: *const SsdWaveFunction, out: *mut bool) -> SsdStatus {
    guard(|| write(out, borrow(handle)?.report.passed()))
}

/// Spectrum of the `m = 0` Hamiltonian.
pub struct SsdSpectrum {
    report: SpectrumReport,
}

/// Builds and diagonalizes the fermionic Hamiltonian, `1 <= n <= 6`.
///
/// # Safety
/// `out_handle` must be valid for writes. Release with
/// [`ssd_spectrum_free`].
#[no_mangle]
pub unsafe extern "C" fn ssd_spectrum_new(n: u32, a: f64, out_handle: *mut *mut SsdSpectrum) -> SsdStatus {
    guard(|| {
        if out_handle.is_null() {
            return Err((SsdStatus::NullPointer, "output pointer is null".into()));
        }
        let report = build_hamiltonian(n, a).and_then(|h| spectrum(&h)).ffi()?;
        write(out_handle, Box::into_raw(Box::new(SsdSpectrum { report })))
    })
}

/// # Safety
/// `handle` must come from [`ssd_spectrum_new`] and not be used afterwards.
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ssd_spectrum_free(handle: *mut SsdSpectrum) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of distinct eigenvalues (clusters).
///
/// # Safety
/// `handle` must be a live spectrum handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_spectrum_len(handle: *const SsdSpectrum, out: *mut usize) -> SsdStatus {
    guard(|| write(out, borrow(handle)?.report.eigenvalues.len()))
}

/// Eigenvalue `index` with its algebraic multiplicity, ordered by real
/// then imaginary part.
///
/// # Safety
/// `handle` must be a live spectrum handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_spectrum_eigenvalue(
    handle: *const SsdSpectrum,
    index: usize,
    out_re: *mut f64,
    out_im: *mut f64,
    out_multiplicity: *mut usize,
) -> SsdStatus {
    guard(|| {
        let r = &borrow(handle)?.report;
        let c = r
            .eigenvalues
            .get(index)
            .ok_or((SsdStatus::OutOfRange, format!("index {index} >= {}", r.eigenvalues.len())))?;
        write(out_re, c.re)?;
        write(out_im, c.im)?;
        write(out_multiplicity, c.multiplicity)
    })
}

/// Geometric and algebraic multiplicity of the eigenvalue 0.
///
/// # Safety
/// `handle` must be a live spectrum handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_spectrum_zero_multiplicity(
    handle: *const SsdSpectrum,
    out_geometric: *mut usize,
    out_algebraic: *mut usize,
) -> SsdStatus {
    guard(|| {
        let r = &borrow(handle)?.report;
        write(out_geometric, r.zero_geometric_multiplicity)?;
        write(out_algebraic, r.zero_algebraic_multiplicity)
    })
}

/// The level `−(a n!(2π)^n)^{1/(n+1)}` and whether it was found.
///
/// # Safety
/// `handle` must be a live spectrum handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssd_spectrum_predicted_level(
    handle: *const SsdSpectrum,
    out_level: *mut f64,
    out_found: *mut bool,
) -> SsdStatus {
    guard(|| {
        let r = &borrow(handle)?.report;
        write(out_level, r.predicted_level)?;
        write(out_found, r.predicted_level_found)
    })
}
