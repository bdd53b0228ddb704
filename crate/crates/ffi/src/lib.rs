//! C ABI over the trimode library: opaque state handles, status codes, and
//! flat output buffers, so other languages can compute negativities,
//! principal squeeze variances, and classifications without touching Rust.
//!
//! Ownership: constructors hand out `TrimodeState` pointers that must be
//! released with [`trimode_state_free`]. All other functions only borrow.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use trimode::classify::classify_state;
use trimode::entanglement::tripartite_negativity;
use trimode::families::{build_state, pure_density, Family, FamilySpec, StateVector};
use trimode::linalg::Mode;
use trimode::squeezing::{lambda_closed_form, squeeze_report};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrimodeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotNormalized = 3,
    UnsupportedFamily = 4,
    InternalError = 5,
}

/// Parametric state family selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrimodeFamily {
    Iii0 = 0,
    Iii1A = 1,
    Iii1B = 2,
    Iii2 = 3,
    Iii3 = 4,
    General = 5,
}

/// Mode selector (i is the most significant qubit).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrimodeMode {
    I = 0,
    J = 1,
    K = 2,
}

/// Classification result. `major` is 1, 2, or 3 for types I/II/III;
/// `subtype` is 0..3 for III-n and -1 otherwise; `pattern_*` flag which
/// qubit pairs are entangled; `pivot` is 0/1/2 for modes i/j/k and -1 when
/// no pivot applies.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TrimodeClass {
    pub major: i32,
    pub subtype: i32,
    pub pattern_ij: u8,
    pub pattern_ik: u8,
    pub pattern_jk: u8,
    pub pivot: i32,
}

/// Opaque three-qubit pure state.
pub struct TrimodeState {
    inner: StateVector,
}

fn family_of(raw: TrimodeFamily) -> Family {
    match raw {
        TrimodeFamily::Iii0 => Family::Iii0,
        TrimodeFamily::Iii1A => Family::Iii1A,
        TrimodeFamily::Iii1B => Family::Iii1B,
        TrimodeFamily::Iii2 => Family::Iii2,
        TrimodeFamily::Iii3 => Family::Iii3,
        TrimodeFamily::General => Family::General,
    }
}

fn mode_of(raw: TrimodeMode) -> Mode {
    match raw {
        TrimodeMode::I => Mode::I,
        TrimodeMode::J => Mode::J,
        TrimodeMode::K => Mode::K,
    }
}

fn status_of(err: &trimode::Error) -> TrimodeStatus {
    use trimode::Error;
    match err {
        Error::NotNormalized(_) => TrimodeStatus::NotNormalized,
        Error::UnsupportedFamily | Error::UnsupportedRegime => TrimodeStatus::UnsupportedFamily,
        _ => TrimodeStatus::InvalidArgument,
    }
}

fn guarded(run: impl FnOnce() -> TrimodeStatus) -> TrimodeStatus {
    catch_unwind(AssertUnwindSafe(run)).unwrap_or(TrimodeStatus::InternalError)
}

/// Build a state from 8 complex amplitudes (basis order |000> .. |111>,
/// index 4a + 2b + c). The amplitudes must be normalized.
///
/// # Safety
/// `re` and `im` must point to 8 readable doubles; `out` must be a valid
/// location for one pointer. On success `*out` owns the state.
#[no_mangle]
pub unsafe extern "C" fn trimode_state_new(
    re: *const f64,
    im: *const f64,
    out: *mut *mut TrimodeState,
) -> TrimodeStatus {
    if re.is_null() || im.is_null() || out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    let re = std::slice::from_raw_parts(re, 8);
    let im = std::slice::from_raw_parts(im, 8);
    guarded(|| {
        let mut amps = [trimode::num_complex::Complex64::new(0.0, 0.0); 8];
        for slot in 0..8 {
            amps[slot] = trimode::num_complex::Complex64::new(re[slot], im[slot]);
        }
        match StateVector::new(amps) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(TrimodeState { inner }));
                TrimodeStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Build a family member from probabilities (positive square roots become
/// the amplitudes). `probs` must hold `len` entries matching the family's
/// support size and summing to 1.
///
/// # Safety
/// `probs` must point to `len` readable doubles; `out` must be a valid
/// location for one pointer. On success `*out` owns the state.
#[no_mangle]
pub unsafe extern "C" fn trimode_state_from_family(
    family: TrimodeFamily,
    pivot: TrimodeMode,
    probs: *const f64,
    len: usize,
    out: *mut *mut TrimodeState,
) -> TrimodeStatus {
    if probs.is_null() || out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    let probs = std::slice::from_raw_parts(probs, len);
    guarded(|| {
        let spec = match FamilySpec::from_probabilities(family_of(family), mode_of(pivot), probs) {
            Ok(spec) => spec,
            Err(err) => return status_of(&err),
        };
        match build_state(&spec) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(TrimodeState { inner }));
                TrimodeStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// (|000> + |111>)/sqrt(2).
///
/// # Safety
/// `out` must be a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn trimode_state_ghz(out: *mut *mut TrimodeState) -> TrimodeStatus {
    if out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(TrimodeState {
        inner: StateVector::ghz(),
    }));
    TrimodeStatus::Ok
}

/// (|001> + |010> + |100>)/sqrt(3).
///
/// # Safety
/// `out` must be a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn trimode_state_w(out: *mut *mut TrimodeState) -> TrimodeStatus {
    if out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(TrimodeState {
        inner: StateVector::w(),
    }));
    TrimodeStatus::Ok
}

/// Release a state created by one of the constructors. NULL is ignored.
///
/// # Safety
/// `state` must be NULL or a pointer previously returned by a constructor
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trimode_state_free(state: *mut TrimodeState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// All seven negativities in the order N_ij, N_ik, N_jk, N_i-jk, N_j-ik,
/// N_k-ij, N_ijk.
///
/// # Safety
/// `state` must be a live state handle; `out` must point to 7 writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn trimode_entanglement(
    state: *const TrimodeState,
    out: *mut f64,
) -> TrimodeStatus {
    if state.is_null() || out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    let state = &*state;
    let out = std::slice::from_raw_parts_mut(out, 7);
    guarded(|| {
        let rho = pure_density(&state.inner);
        match tripartite_negativity(&rho) {
            Ok(report) => {
                out.copy_from_slice(&report.csv_fields());
                TrimodeStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// The four principal squeeze variances, numerically from operator moments,
/// in the order lambda_ij, lambda_ik, lambda_jk, lambda_ijk.
///
/// # Safety
/// `state` must be a live state handle; `out` must point to 4 writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn trimode_squeezing(
    state: *const TrimodeState,
    out: *mut f64,
) -> TrimodeStatus {
    if state.is_null() || out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    let state = &*state;
    let out = std::slice::from_raw_parts_mut(out, 4);
    guarded(|| {
        let rho = pure_density(&state.inner);
        match squeeze_report(&rho) {
            Ok(report) => {
                out.copy_from_slice(&report.csv_fields());
                TrimodeStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Closed-form principal squeeze variances of a family member described by
/// probabilities, in the order lambda_ij, lambda_ik, lambda_jk, lambda_ijk.
/// GENERAL is not supported.
///
/// # Safety
/// `probs` must point to `len` readable doubles; `out` must point to 4
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn trimode_closed_form_squeezing(
    family: TrimodeFamily,
    pivot: TrimodeMode,
    probs: *const f64,
    len: usize,
    out: *mut f64,
) -> TrimodeStatus {
    if probs.is_null() || out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    let probs = std::slice::from_raw_parts(probs, len);
    let out = std::slice::from_raw_parts_mut(out, 4);
    guarded(|| {
        let spec = match FamilySpec::from_probabilities(family_of(family), mode_of(pivot), probs) {
            Ok(spec) => spec,
            Err(err) => return status_of(&err),
        };
        match lambda_closed_form(&spec) {
            Ok(report) => {
                out.copy_from_slice(&report.csv_fields());
                TrimodeStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Classify a state at the given zero threshold (pass 0 for the default).
///
/// # Safety
/// `state` must be a live state handle; `out` must point to a writable
/// `TrimodeClass`.
#[no_mangle]
pub unsafe extern "C" fn trimode_classify(
    state: *const TrimodeState,
    epsilon: f64,
    out: *mut TrimodeClass,
) -> TrimodeStatus {
    if state.is_null() || out.is_null() {
        return TrimodeStatus::NullPointer;
    }
    let state = &*state;
    let eps = if epsilon > 0.0 {
        epsilon
    } else {
        trimode::entanglement::ZERO_NEGATIVITY_EPS
    };
    guarded(|| {
        let rho = pure_density(&state.inner);
        match classify_state(&rho, eps) {
            Ok(class) => {
                let major = match class.major {
                    trimode::Major::Separable => 1,
                    trimode::Major::BipartiteOnly => 2,
                    trimode::Major::Tripartite => 3,
                };
                *out = TrimodeClass {
                    major,
                    subtype: class.subtype.map(|s| s.index() as i32).unwrap_or(-1),
                    pattern_ij: class.zero_pattern[0] as u8,
                    pattern_ik: class.zero_pattern[1] as u8,
                    pattern_jk: class.zero_pattern[2] as u8,
                    pivot: class
                        .pivot
                        .map(|p| match p {
                            Mode::I => 0,
                            Mode::J => 1,
                            Mode::K => 2,
                        })
                        .unwrap_or(-1),
                };
                TrimodeStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Library version as a static null-terminated string.
#[no_mangle]
pub extern "C" fn trimode_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_through_the_c_abi() {
        unsafe {
            let mut state: *mut TrimodeState = std::ptr::null_mut();
            assert_eq!(trimode_state_ghz(&mut state), TrimodeStatus::Ok);
            let mut negs = [0.0f64; 7];
            assert_eq!(
                trimode_entanglement(state, negs.as_mut_ptr()),
                TrimodeStatus::Ok
            );
            assert!((negs[6] - 1.0).abs() < 1e-9); // N_ijk
            assert_eq!(negs[0], 0.0); // N_ij

            let mut lambdas = [0.0f64; 4];
            assert_eq!(
                trimode_squeezing(state, lambdas.as_mut_ptr()),
                TrimodeStatus::Ok
            );
            assert!((lambdas[0] - 4.0).abs() < 1e-9);
            assert!((lambdas[3] - 6.0).abs() < 1e-9);

            let mut class = TrimodeClass {
                major: 0,
                subtype: 0,
                pattern_ij: 0,
                pattern_ik: 0,
                pattern_jk: 0,
                pivot: 0,
            };
            assert_eq!(trimode_classify(state, 0.0, &mut class), TrimodeStatus::Ok);
            assert_eq!(class.major, 3);
            assert_eq!(class.subtype, 0);
            trimode_state_free(state);
        }
    }

    #[test]
    fn family_member_through_the_c_abi() {
        unsafe {
            let probs = [0.0f64, (2.0 + 2f64.sqrt()) / 4.0, (2.0 - 2f64.sqrt()) / 4.0];
            let mut state: *mut TrimodeState = std::ptr::null_mut();
            assert_eq!(
                trimode_state_from_family(
                    TrimodeFamily::Iii1A,
                    TrimodeMode::I,
                    probs.as_ptr(),
                    probs.len(),
                    &mut state,
                ),
                TrimodeStatus::Ok
            );
            let mut lambdas = [0.0f64; 4];
            assert_eq!(
                trimode_squeezing(state, lambdas.as_mut_ptr()),
                TrimodeStatus::Ok
            );
            // lambda_jk at the published optimum: 4 - 2 sqrt(2).
            assert!((lambdas[2] - (4.0 - 2.0 * 2f64.sqrt())).abs() < 1e-9);

            let mut closed = [0.0f64; 4];
            assert_eq!(
                trimode_closed_form_squeezing(
                    TrimodeFamily::Iii1A,
                    TrimodeMode::I,
                    probs.as_ptr(),
                    probs.len(),
                    closed.as_mut_ptr(),
                ),
                TrimodeStatus::Ok
            );
            for (a, b) in closed.iter().zip(lambdas.iter()) {
                assert!((a - b).abs() < 1e-9);
            }
            trimode_state_free(state);
        }
    }

    #[test]
    fn error_paths() {
        unsafe {
            // Null pointers.
            assert_eq!(
                trimode_state_ghz(std::ptr::null_mut()),
                TrimodeStatus::NullPointer
            );
            // Non-normalized amplitudes.
            let re = [1.0f64; 8];
            let im = [0.0f64; 8];
            let mut state: *mut TrimodeState = std::ptr::null_mut();
            assert_eq!(
                trimode_state_new(re.as_ptr(), im.as_ptr(), &mut state),
                TrimodeStatus::NotNormalized
            );
            // Wrong probability count.
            let probs = [0.5f64, 0.5];
            assert_eq!(
                trimode_state_from_family(
                    TrimodeFamily::Iii2,
                    TrimodeMode::I,
                    probs.as_ptr(),
                    probs.len(),
                    &mut state,
                ),
                TrimodeStatus::InvalidArgument
            );
            // Closed forms reject the general family.
            let probs8 = [0.125f64; 8];
            let mut out = [0.0f64; 4];
            assert_eq!(
                trimode_closed_form_squeezing(
                    TrimodeFamily::General,
                    TrimodeMode::I,
                    probs8.as_ptr(),
                    probs8.len(),
                    out.as_mut_ptr(),
                ),
                TrimodeStatus::UnsupportedFamily
            );
            // Freeing NULL is a no-op.
            trimode_state_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn version_string_is_null_terminated() {
        let ptr = trimode_version();
        let text = unsafe { std::ffi::CStr::from_ptr(ptr) }.to_str().unwrap();
        assert_eq!(text, env!("CARGO_PKG_VERSION"));
    }
}
