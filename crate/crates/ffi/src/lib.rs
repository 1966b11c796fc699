//! C ABI over the `nlfkpp` solvers.
//!
//! Every fallible function returns an [`NlfkppStatus`]; on failure the
//! message is available from [`nlfkpp_last_error`] on the same thread.
//! Solutions are returned as opaque handles that the caller frees.

// `!(x > 0.0)` deliberately rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use nlfkpp::{asymptote, dispersion, steady, travwave, Error};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlfkppStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NoConvergence = 3,
    NumericalFailure = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Rear-tail classification of a travelling wave.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlfkppTailClass {
    Oscillatory = 0,
    Monotone = 1,
}

/// Opaque travelling-wave profile.
pub struct NlfkppTwProfile(travwave::TwProfile);

/// Opaque periodic steady state.
pub struct NlfkppSteadyState(steady::PeriodicState);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NlfkppStatus {
    match e {
        Error::Domain(_)
        | Error::GridTooSmall
        | Error::PeriodTooShort
        | Error::TongueClosed
        | Error::NoPositiveFront => NlfkppStatus::InvalidArgument,
        Error::NewtonFailure { .. }
        | Error::TrivialAttractor
        | Error::Root(_)
        | Error::BranchJump { .. } => NlfkppStatus::NoConvergence,
        _ => NlfkppStatus::NumericalFailure,
    }
}

fn fail(status: NlfkppStatus, msg: impl Into<String>) -> NlfkppStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, clearing the last error on success and mapping failures and panics.
fn guard<F>(f: F) -> NlfkppStatus
where
    F: FnOnce() -> Result<(), NlfkppStatus> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            NlfkppStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(NlfkppStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: nlfkpp::error::Result<T>) -> Result<T, NlfkppStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

/// Writes through `out`, reporting a null pointer.
unsafe fn put<T>(out: *mut T, v: T, name: &str) -> Result<(), NlfkppStatus> {
    if out.is_null() {
        return Err(fail(NlfkppStatus::NullPointer, format!("{name} is null")));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_opt<T>(out: *mut T, v: T) {
    if !out.is_null() {
        out.write(v);
    }
}

unsafe fn copy_out(src: &[f64], dst: *mut f64, len: usize, name: &str) -> Result<(), NlfkppStatus> {
    if dst.is_null() {
        return Err(fail(NlfkppStatus::NullPointer, format!("{name} is null")));
    }
    if len < src.len() {
        return Err(fail(
            NlfkppStatus::BufferTooSmall,
            format!("{name} needs {} values, got {len}", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    Ok(())
}

/// Message for the last failure on this thread, or null after a success.
/// The pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn nlfkpp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nlfkpp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Growth rate symbol about `u = 0`.
#[no_mangle]
pub extern "C" fn nlfkpp_w0(k: f64, d: f64) -> f64 {
    dispersion::w0(k, d)
}

/// Growth rate symbol about `u = 1`; negative means unstable.
#[no_mangle]
pub extern "C" fn nlfkpp_w1(k: f64, d: f64) -> f64 {
    dispersion::w1(k, d)
}

/// Smallest wavenumber above zero at which `u = 1` loses stability as `D → 0`.
#[no_mangle]
pub extern "C" fn nlfkpp_k0() -> f64 {
    dispersion::k0()
}

/// `r`-th maximum of the instability function and its location.
///
/// # Safety
/// `value` must be a valid pointer; `location` may be null.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_delta_max(
    r: usize,
    value: *mut f64,
    location: *mut f64,
) -> NlfkppStatus {
    guard(|| {
        let (v, x) = lift(dispersion::delta_max(r))?;
        put(value, v, "value")?;
        put_opt(location, x);
        Ok(())
    })
}

/// Wavelength interval `(λ₋, λ₊)` of tongue `i` at diffusivity `d`.
///
/// # Safety
/// `lambda_minus` and `lambda_plus` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_tongue_boundaries(
    i: usize,
    d: f64,
    lambda_minus: *mut f64,
    lambda_plus: *mut f64,
) -> NlfkppStatus {
    guard(|| {
        let (lm, lp) = lift(dispersion::tongue_boundaries(i, d))?;
        put(lambda_minus, lm, "lambda_minus")?;
        put(lambda_plus, lp, "lambda_plus")
    })
}

/// Diffusivity and rate at which the minimum-speed wave tail changes type.
///
/// # Safety
/// `sigma` and `d` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_oscillation_threshold(
    sigma: *mut f64,
    d: *mut f64,
) -> NlfkppStatus {
    guard(|| {
        let (s, dp) = lift(travwave::find_oscillation_threshold())?;
        put(sigma, s, "sigma")?;
        put(d, dp, "d")
    })
}

/// Eigenvalue of the inner transition-layer problem on `[−x_left, x_right]`.
///
/// # Safety
/// `l` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_transition_eigenvalue(
    x_left: f64,
    x_right: f64,
    n: usize,
    l: *mut f64,
) -> NlfkppStatus {
    guard(|| {
        let layer = lift(asymptote::solve_transition_layer(x_left, x_right, n))?;
        put(l, layer.l, "l")
    })
}

/// Peak height of the rescaled spike solution at `lambda_bar`.
///
/// # Safety
/// `v0` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_spike_height(lambda_bar: f64, v0: *mut f64) -> NlfkppStatus {
    guard(|| {
        let s = lift(asymptote::solve_spike(lambda_bar, None))?;
        put(v0, s.v0, "v0")
    })
}

/// Solves for the travelling wave of speed `v` at diffusivity `d`.
///
/// # Safety
/// `out` must be a valid pointer. The handle is released with [`nlfkpp_tw_free`].
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_tw_solve(
    d: f64,
    v: f64,
    out: *mut *mut NlfkppTwProfile,
) -> NlfkppStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(NlfkppStatus::NullPointer, "out is null"));
        }
        out.write(ptr::null_mut());
        if !(d > 0.0) || !(v > 0.0) {
            return Err(fail(
                NlfkppStatus::InvalidArgument,
                format!("need d > 0 and v > 0, got d = {d}, v = {v}"),
            ));
        }
        let p = lift(travwave::solve_tptw(
            d,
            v,
            &travwave::TwConfig::for_diffusivity(d),
        ))?;
        out.write(Box::into_raw(Box::new(NlfkppTwProfile(p))));
        Ok(())
    })
}

/// Number of grid points in the profile, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_tw_len(h: *const NlfkppTwProfile) -> usize {
    h.as_ref().map_or(0, |p| p.0.z.len())
}

/// Copies the grid and profile into caller buffers of length `len`.
///
/// # Safety
/// `h` must be a live handle; `z` and `u` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_tw_copy(
    h: *const NlfkppTwProfile,
    z: *mut f64,
    u: *mut f64,
    len: usize,
) -> NlfkppStatus {
    guard(|| {
        let p = h
            .as_ref()
            .ok_or_else(|| fail(NlfkppStatus::NullPointer, "handle is null"))?;
        copy_out(&p.0.z, z, len, "z")?;
        copy_out(&p.0.u, u, len, "u")
    })
}

/// Profile value at `z`, interpolated; NaN for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_tw_eval(h: *const NlfkppTwProfile, z: f64) -> f64 {
    h.as_ref().map_or(f64::NAN, |p| p.0.eval(z))
}

/// Rear tail type with decay rate `a` and frequency `b` of `u − 1 ∝ e^{az} cos(bz)`.
///
/// # Safety
/// `h` and `class` must be valid; `a` and `b` may be null.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_tw_tail(
    h: *const NlfkppTwProfile,
    class: *mut NlfkppTailClass,
    a: *mut f64,
    b: *mut f64,
) -> NlfkppStatus {
    guard(|| {
        let p = &h
            .as_ref()
            .ok_or_else(|| fail(NlfkppStatus::NullPointer, "handle is null"))?
            .0;
        let c = match p.tail_class {
            travwave::TailClass::Oscillatory => NlfkppTailClass::Oscillatory,
            travwave::TailClass::Monotone => NlfkppTailClass::Monotone,
        };
        put(class, c, "class")?;
        put_opt(a, p.rear_rate);
        put_opt(b, p.rear_frequency);
        Ok(())
    })
}

/// Releases a profile handle; null is ignored.
///
/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_tw_free(h: *mut NlfkppTwProfile) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Solves for the even periodic state of wavelength `lambda` on `n` half-period
/// nodes; `n = 0` picks a default resolution.
///
/// # Safety
/// `out` must be a valid pointer. The handle is released with [`nlfkpp_steady_free`].
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_steady_solve(
    lambda: f64,
    d: f64,
    n: usize,
    out: *mut *mut NlfkppSteadyState,
) -> NlfkppStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(NlfkppStatus::NullPointer, "out is null"));
        }
        out.write(ptr::null_mut());
        if !(lambda > 0.0) || !(d > 0.0) {
            return Err(fail(
                NlfkppStatus::InvalidArgument,
                format!("need lambda > 0 and d > 0, got {lambda}, {d}"),
            ));
        }
        let n = if n == 0 {
            steady::default_nodes(lambda, d)
        } else {
            n
        };
        let s = lift(steady::solve_at(
            lambda,
            d,
            n,
            steady::Seed::WeaklyNonlinear,
        ))?;
        out.write(Box::into_raw(Box::new(NlfkppSteadyState(s))));
        Ok(())
    })
}

/// Number of half-period nodes, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_steady_len(h: *const NlfkppSteadyState) -> usize {
    h.as_ref().map_or(0, |s| s.0.half_profile.len())
}

/// Copies the profile on `[0, λ/2]` into `f`, which holds `len` values.
///
/// # Safety
/// `h` must be a live handle; `f` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_steady_copy(
    h: *const NlfkppSteadyState,
    f: *mut f64,
    len: usize,
) -> NlfkppStatus {
    guard(|| {
        let s = h
            .as_ref()
            .ok_or_else(|| fail(NlfkppStatus::NullPointer, "handle is null"))?;
        copy_out(&s.0.half_profile, f, len, "f")
    })
}

/// Peak value, mass over one period and peak-to-trough amplitude.
///
/// # Safety
/// `h` must be a live handle; the outputs may be null.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_steady_summary(
    h: *const NlfkppSteadyState,
    u_max: *mut f64,
    mass: *mut f64,
    alpha: *mut f64,
) -> NlfkppStatus {
    guard(|| {
        let s = &h
            .as_ref()
            .ok_or_else(|| fail(NlfkppStatus::NullPointer, "handle is null"))?
            .0;
        put_opt(u_max, s.u_max);
        put_opt(mass, s.mass);
        put_opt(alpha, s.alpha);
        Ok(())
    })
}

/// Releases a steady-state handle; null is ignored.
///
/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nlfkpp_steady_free(h: *mut NlfkppSteadyState) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
