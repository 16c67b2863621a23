//! C ABI for the `entsep` library: opaque state handles, status codes, and
//! plain-double buffers, so other languages can bind against `entsep.h`
//! (generated into `include/` at build time).
//!
//! Conventions:
//! - every function returns an [`EntsepStatus`]; results go to out-pointers;
//! - complex buffers are interleaved `[re, im, re, im, ...]`, row-major;
//! - handles from `entsep_state_*` constructors are freed with
//!   [`entsep_state_free`]; strings from `*_json` with [`entsep_string_free`];
//! - nothing panics across the boundary.
//!
//! Safety contract for every `unsafe` function here: pointer arguments must
//! be null or valid for the documented length, buffers must not alias the
//! handle's own storage, and handles must come from this library and not be
//! used after `entsep_state_free`.
#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use entsep::bell::maximize_chsh;
use entsep::criteria::{entropy_of_state, entropy_test, majorization_test, ppt_test, schmidt_with_cutoff};
use entsep::densecoding::{
    classify, dc_advantage, dc_capacity, is_dc, reported_capacity, simulate_protocol, ClassLabel,
};
use entsep::states::{
    bell_state, default_mixture_size, projector, random_density, random_separable, werner,
    BellKind,
};
use entsep::{BipartiteDims, ComplexMatrix, DensityMatrix, Error, PureState};
use num_complex::Complex64;

/// Result of every C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntsepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionError = 3,
    DomainError = 4,
    ValidationError = 5,
    NumericalError = 6,
    UnsupportedDimension = 7,
    InternalError = 8,
}

/// Shell labels of the dense-coding classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntsepClass {
    Sep = 0,
    SepOrBound = 1,
    PptEnt = 2,
    NptNonDc = 3,
    Dc = 4,
}

/// The four Bell states.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntsepBell {
    PsiPlus = 0,
    PsiMinus = 1,
    PhiPlus = 2,
    PhiMinus = 3,
}

/// Opaque handle to a validated bipartite density matrix.
pub struct EntsepState {
    inner: DensityMatrix,
}

fn status_of(err: &Error) -> EntsepStatus {
    match err {
        Error::Dimension(_) => EntsepStatus::DimensionError,
        Error::Domain(_) => EntsepStatus::DomainError,
        Error::Validation(_) => EntsepStatus::ValidationError,
        Error::Numerical(_) => EntsepStatus::NumericalError,
        Error::UnsupportedDimension(_) => EntsepStatus::UnsupportedDimension,
    }
}

fn guarded(f: impl FnOnce() -> EntsepStatus) -> EntsepStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => EntsepStatus::InternalError,
    }
}

unsafe fn hand_out(state: DensityMatrix, out: *mut *mut EntsepState) -> EntsepStatus {
    unsafe { *out = Box::into_raw(Box::new(EntsepState { inner: state })) };
    EntsepStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[unsafe(no_mangle)]
pub extern "C" fn entsep_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds a state from an interleaved row-major complex matrix of side
/// `d_a * d_b` (so `2 * (d_a*d_b)^2` doubles). Validates hermiticity, unit
/// trace, and positivity.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_from_dense(
    re_im: *const f64,
    d_a: usize,
    d_b: usize,
    out: *mut *mut EntsepState,
) -> EntsepStatus {
    if re_im.is_null() || out.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let dims = match BipartiteDims::new(d_a, d_b) {
            Ok(d) => d,
            Err(e) => return status_of(&e),
        };
        let n = dims.total();
        let raw = unsafe { std::slice::from_raw_parts(re_im, 2 * n * n) };
        let entries: Vec<Complex64> = raw
            .chunks_exact(2)
            .map(|pair| Complex64::new(pair[0], pair[1]))
            .collect();
        let mat = match ComplexMatrix::new(n, n, entries) {
            Ok(m) => m,
            Err(e) => return status_of(&e),
        };
        match DensityMatrix::new(mat, dims) {
            Ok(rho) => unsafe { hand_out(rho, out) },
            Err(e) => status_of(&e),
        }
    })
}

/// Werner state p·|ψ⁻⟩⟨ψ⁻| + (1−p)/4·I.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_werner(p: f64, out: *mut *mut EntsepState) -> EntsepStatus {
    if out.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| match werner(p) {
        Ok(rho) => unsafe { hand_out(rho, out) },
        Err(e) => status_of(&e),
    })
}

/// Projector onto one of the four Bell states.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_bell(
    kind: EntsepBell,
    out: *mut *mut EntsepState,
) -> EntsepStatus {
    if out.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let kind = match kind {
            EntsepBell::PsiPlus => BellKind::PsiPlus,
            EntsepBell::PsiMinus => BellKind::PsiMinus,
            EntsepBell::PhiPlus => BellKind::PhiPlus,
            EntsepBell::PhiMinus => BellKind::PhiMinus,
        };
        unsafe { hand_out(projector(&bell_state(kind)), out) }
    })
}

/// Seeded random density matrix of the given rank (Wishart construction).
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_random(
    d_a: usize,
    d_b: usize,
    rank: usize,
    seed: u64,
    out: *mut *mut EntsepState,
) -> EntsepStatus {
    if out.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let dims = match BipartiteDims::new(d_a, d_b) {
            Ok(d) => d,
            Err(e) => return status_of(&e),
        };
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        match random_density(dims, rank, &mut rng) {
            Ok(rho) => unsafe { hand_out(rho, out) },
            Err(e) => status_of(&e),
        }
    })
}

/// Seeded random separable state with `k` product terms (`k = 0` picks the
/// default (d_A·d_B)²).
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_random_separable(
    d_a: usize,
    d_b: usize,
    k: usize,
    seed: u64,
    out: *mut *mut EntsepState,
) -> EntsepStatus {
    if out.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let dims = match BipartiteDims::new(d_a, d_b) {
            Ok(d) => d,
            Err(e) => return status_of(&e),
        };
        let k = if k == 0 { default_mixture_size(dims) } else { k };
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        match random_separable(dims, k, &mut rng) {
            Ok(rho) => unsafe { hand_out(rho, out) },
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a state handle. Null is a no-op.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_free(state: *mut EntsepState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Bipartite dimensions of a state.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_dims(
    state: *const EntsepState,
    out_d_a: *mut usize,
    out_d_b: *mut usize,
) -> EntsepStatus {
    if state.is_null() || out_d_a.is_null() || out_d_b.is_null() {
        return EntsepStatus::NullPointer;
    }
    let dims = unsafe { (*state).inner.dims() };
    unsafe {
        *out_d_a = dims.d_a();
        *out_d_b = dims.d_b();
    }
    EntsepStatus::Ok
}

/// Copies the density matrix into an interleaved buffer of `len` doubles;
/// `len` must be exactly `2 * (d_a*d_b)^2`.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_state_copy_dense(
    state: *const EntsepState,
    buf: *mut f64,
    len: usize,
) -> EntsepStatus {
    if state.is_null() || buf.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let mat = unsafe { (*state).inner.mat() };
        let n = mat.rows();
        if len != 2 * n * n {
            return EntsepStatus::InvalidArgument;
        }
        let out = unsafe { std::slice::from_raw_parts_mut(buf, len) };
        for (k, z) in mat.entries().iter().enumerate() {
            out[2 * k] = z.re;
            out[2 * k + 1] = z.im;
        }
        EntsepStatus::Ok
    })
}

unsafe fn criterion_out(
    state: *const EntsepState,
    tol: f64,
    out_margin: *mut f64,
    out_violated: *mut bool,
    which: fn(&DensityMatrix, f64) -> entsep::criteria::CriterionVerdict,
) -> EntsepStatus {
    if state.is_null() || out_margin.is_null() || out_violated.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let verdict = which(unsafe { &(*state).inner }, tol);
        unsafe {
            *out_margin = verdict.margin;
            *out_violated = verdict.violated;
        }
        EntsepStatus::Ok
    })
}

/// Partial transposition criterion: margin is the smallest eigenvalue of
/// ρ^{T_A}; `violated` certifies entanglement.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_ppt_test(
    state: *const EntsepState,
    tol: f64,
    out_margin: *mut f64,
    out_violated: *mut bool,
) -> EntsepStatus {
    unsafe { criterion_out(state, tol, out_margin, out_violated, ppt_test) }
}

/// Majorization criterion; margin is the most negative partial-sum gap.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_majorization_test(
    state: *const EntsepState,
    tol: f64,
    out_margin: *mut f64,
    out_violated: *mut bool,
) -> EntsepStatus {
    unsafe { criterion_out(state, tol, out_margin, out_violated, majorization_test) }
}

/// Entropy criterion; margin is min(S(ρ)−S(ρ_A), S(ρ)−S(ρ_B)) in bits.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_entropy_test(
    state: *const EntsepState,
    tol: f64,
    out_margin: *mut f64,
    out_violated: *mut bool,
) -> EntsepStatus {
    unsafe { criterion_out(state, tol, out_margin, out_violated, entropy_test) }
}

/// Von Neumann entropy of the state, in bits.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_entropy(
    state: *const EntsepState,
    out_bits: *mut f64,
) -> EntsepStatus {
    if state.is_null() || out_bits.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        unsafe { *out_bits = entropy_of_state(&(*state).inner) };
        EntsepStatus::Ok
    })
}

/// Dense-coding figures: raw one-capacity log₂d_A + S(ρ_B) − S(ρ), the
/// reported capacity floored at log₂d_A, and the advantage S(ρ_B) − S(ρ).
/// Null out-pointers are skipped.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_dc_capacity(
    state: *const EntsepState,
    out_one_capacity: *mut f64,
    out_reported: *mut f64,
    out_advantage: *mut f64,
) -> EntsepStatus {
    if state.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let rho = unsafe { &(*state).inner };
        unsafe {
            if !out_one_capacity.is_null() {
                *out_one_capacity = dc_capacity(rho);
            }
            if !out_reported.is_null() {
                *out_reported = reported_capacity(rho);
            }
            if !out_advantage.is_null() {
                *out_advantage = dc_advantage(rho);
            }
        }
        EntsepStatus::Ok
    })
}

/// Whether the state is dense-codeable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_is_dc(
    state: *const EntsepState,
    out: *mut bool,
) -> EntsepStatus {
    if state.is_null() || out.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        unsafe { *out = is_dc(&(*state).inner) };
        EntsepStatus::Ok
    })
}

/// Maximizes the CHSH violation of a two-qubit state; `restarts = 0` means
/// the default 32.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_chsh_maximize(
    state: *const EntsepState,
    restarts: usize,
    seed: u64,
    out_value: *mut f64,
) -> EntsepStatus {
    if state.is_null() || out_value.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let restarts = if restarts == 0 { 32 } else { restarts };
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        match maximize_chsh(unsafe { &(*state).inner }, restarts, &mut rng) {
            Ok((value, _)) => {
                unsafe { *out_value = value };
                EntsepStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Assigns the dense-coding shell label.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_classify(
    state: *const EntsepState,
    out_class: *mut EntsepClass,
) -> EntsepStatus {
    if state.is_null() || out_class.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let label = classify(unsafe { &(*state).inner }).class_label;
        let mapped = match label {
            ClassLabel::Sep => EntsepClass::Sep,
            ClassLabel::SepOrBound => EntsepClass::SepOrBound,
            ClassLabel::PptEnt => EntsepClass::PptEnt,
            ClassLabel::NptNonDc => EntsepClass::NptNonDc,
            ClassLabel::Dc => EntsepClass::Dc,
        };
        unsafe { *out_class = mapped };
        EntsepStatus::Ok
    })
}

/// Static name of a class label ("SEP", "SEP_or_BOUND", "PPT_ENT",
/// "NPT_NONDC", "DC").
#[unsafe(no_mangle)]
pub extern "C" fn entsep_class_name(class: EntsepClass) -> *const c_char {
    let name: &'static str = match class {
        EntsepClass::Sep => "SEP\0",
        EntsepClass::SepOrBound => "SEP_or_BOUND\0",
        EntsepClass::PptEnt => "PPT_ENT\0",
        EntsepClass::NptNonDc => "NPT_NONDC\0",
        EntsepClass::Dc => "DC\0",
    };
    name.as_ptr() as *const c_char
}

/// Full classification report as a JSON string (criterion margins, capacity,
/// label). Free with [`entsep_string_free`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_classify_json(
    state: *const EntsepState,
    out: *mut *mut c_char,
) -> EntsepStatus {
    if state.is_null() || out.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let report = classify(unsafe { &(*state).inner });
        let json = match serde_json::to_string(&report) {
            Ok(j) => j,
            Err(_) => return EntsepStatus::InternalError,
        };
        match CString::new(json) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                EntsepStatus::Ok
            }
            Err(_) => EntsepStatus::InternalError,
        }
    })
}

/// Frees a string returned by this library. Null is a no-op.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Schmidt coefficients of a pure state given as an interleaved amplitude
/// buffer of `2 * d_a * d_b` doubles. Writes up to `cap` coefficients and
/// the actual count.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_schmidt(
    amps_re_im: *const f64,
    d_a: usize,
    d_b: usize,
    cutoff: f64,
    out_coeffs: *mut f64,
    cap: usize,
    out_count: *mut usize,
) -> EntsepStatus {
    if amps_re_im.is_null() || out_coeffs.is_null() || out_count.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| {
        let dims = match BipartiteDims::new(d_a, d_b) {
            Ok(d) => d,
            Err(e) => return status_of(&e),
        };
        let raw = unsafe { std::slice::from_raw_parts(amps_re_im, 2 * dims.total()) };
        let amps: Vec<Complex64> = raw
            .chunks_exact(2)
            .map(|pair| Complex64::new(pair[0], pair[1]))
            .collect();
        let psi = match PureState::new(amps, dims) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        let dec = match schmidt_with_cutoff(&psi, cutoff) {
            Ok(d) => d,
            Err(e) => return status_of(&e),
        };
        let count = dec.coefficients().len();
        if count > cap {
            return EntsepStatus::InvalidArgument;
        }
        let out = unsafe { std::slice::from_raw_parts_mut(out_coeffs, count) };
        out.copy_from_slice(dec.coefficients());
        unsafe { *out_count = count };
        EntsepStatus::Ok
    })
}

/// One round of the ideal dense-coding protocol on a fresh singlet;
/// `message` in 0..=3 decodes back to itself.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn entsep_simulate_protocol(
    message: usize,
    out_decoded: *mut usize,
) -> EntsepStatus {
    if out_decoded.is_null() {
        return EntsepStatus::NullPointer;
    }
    guarded(|| match simulate_protocol(message) {
        Ok(decoded) => {
            unsafe { *out_decoded = decoded };
            EntsepStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}
