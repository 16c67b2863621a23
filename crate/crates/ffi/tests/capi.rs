//! Exercises the C ABI from the Rust side: handle lifecycle, status codes,
//! and agreement with the underlying library.

use std::ffi::CStr;
use std::ptr;

use entsep_ffi::*;

unsafe fn make_werner(p: f64) -> *mut EntsepState {
    let mut state: *mut EntsepState = ptr::null_mut();
    let status = unsafe { entsep_state_werner(p, &mut state) };
    assert_eq!(status, EntsepStatus::Ok);
    assert!(!state.is_null());
    state
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(entsep_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn werner_handle_reports_the_analytic_ppt_margin() {
    unsafe {
        let state = make_werner(0.5);
        let mut d_a = 0usize;
        let mut d_b = 0usize;
        assert_eq!(entsep_state_dims(state, &mut d_a, &mut d_b), EntsepStatus::Ok);
        assert_eq!((d_a, d_b), (2, 2));

        let mut margin = 0.0f64;
        let mut violated = false;
        assert_eq!(
            entsep_ppt_test(state, 1e-9, &mut margin, &mut violated),
            EntsepStatus::Ok
        );
        assert!((margin + 0.125).abs() < 1e-12);
        assert!(violated);
        entsep_state_free(state);
    }
}

#[test]
fn werner_rejects_out_of_range_mixing() {
    let mut state: *mut EntsepState = ptr::null_mut();
    let status = unsafe { entsep_state_werner(1.5, &mut state) };
    assert_eq!(status, EntsepStatus::DomainError);
    assert!(state.is_null());
}

#[test]
fn null_pointers_are_reported_not_dereferenced() {
    unsafe {
        let mut margin = 0.0;
        let mut violated = false;
        assert_eq!(
            entsep_ppt_test(ptr::null(), 1e-9, &mut margin, &mut violated),
            EntsepStatus::NullPointer
        );
        assert_eq!(
            entsep_state_werner(0.5, ptr::null_mut()),
            EntsepStatus::NullPointer
        );
        entsep_state_free(ptr::null_mut());
        entsep_string_free(ptr::null_mut());
    }
}

#[test]
fn bell_state_classifies_as_dc_with_capacity_two() {
    unsafe {
        let mut state: *mut EntsepState = ptr::null_mut();
        assert_eq!(
            entsep_state_bell(EntsepBell::PsiMinus, &mut state),
            EntsepStatus::Ok
        );

        let mut class = EntsepClass::Sep;
        assert_eq!(entsep_classify(state, &mut class), EntsepStatus::Ok);
        assert_eq!(class, EntsepClass::Dc);
        let name = CStr::from_ptr(entsep_class_name(class));
        assert_eq!(name.to_str().unwrap(), "DC");

        let (mut one, mut reported, mut advantage) = (0.0, 0.0, 0.0);
        assert_eq!(
            entsep_dc_capacity(state, &mut one, &mut reported, &mut advantage),
            EntsepStatus::Ok
        );
        assert!((one - 2.0).abs() < 1e-12);
        assert!((reported - 2.0).abs() < 1e-12);
        assert!((advantage - 1.0).abs() < 1e-9);

        let mut dc = false;
        assert_eq!(entsep_is_dc(state, &mut dc), EntsepStatus::Ok);
        assert!(dc);

        let mut value = 0.0;
        assert_eq!(entsep_chsh_maximize(state, 16, 7, &mut value), EntsepStatus::Ok);
        assert!((value - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-6);

        entsep_state_free(state);
    }
}

#[test]
fn dense_round_trip_through_the_abi() {
    unsafe {
        let state = make_werner(0.3);
        let mut buf = vec![0.0f64; 2 * 16];
        assert_eq!(
            entsep_state_copy_dense(state, buf.as_mut_ptr(), buf.len()),
            EntsepStatus::Ok
        );
        // wrong length is rejected
        assert_eq!(
            entsep_state_copy_dense(state, buf.as_mut_ptr(), 31),
            EntsepStatus::InvalidArgument
        );

        let mut rebuilt: *mut EntsepState = ptr::null_mut();
        assert_eq!(
            entsep_state_from_dense(buf.as_ptr(), 2, 2, &mut rebuilt),
            EntsepStatus::Ok
        );
        let mut buf2 = vec![0.0f64; 2 * 16];
        assert_eq!(
            entsep_state_copy_dense(rebuilt, buf2.as_mut_ptr(), buf2.len()),
            EntsepStatus::Ok
        );
        assert_eq!(buf, buf2);

        entsep_state_free(state);
        entsep_state_free(rebuilt);
    }
}

#[test]
fn invalid_dense_input_is_a_validation_error() {
    unsafe {
        // identity has trace 4, not 1
        let mut buf = vec![0.0f64; 2 * 16];
        for i in 0..4 {
            buf[2 * (i * 4 + i)] = 1.0;
        }
        let mut state: *mut EntsepState = ptr::null_mut();
        assert_eq!(
            entsep_state_from_dense(buf.as_ptr(), 2, 2, &mut state),
            EntsepStatus::ValidationError
        );
    }
}

#[test]
fn random_constructors_are_seed_deterministic() {
    unsafe {
        let mut a: *mut EntsepState = ptr::null_mut();
        let mut b: *mut EntsepState = ptr::null_mut();
        assert_eq!(entsep_state_random(2, 3, 4, 42, &mut a), EntsepStatus::Ok);
        assert_eq!(entsep_state_random(2, 3, 4, 42, &mut b), EntsepStatus::Ok);
        let mut ba = vec![0.0f64; 2 * 36];
        let mut bb = vec![0.0f64; 2 * 36];
        assert_eq!(entsep_state_copy_dense(a, ba.as_mut_ptr(), ba.len()), EntsepStatus::Ok);
        assert_eq!(entsep_state_copy_dense(b, bb.as_mut_ptr(), bb.len()), EntsepStatus::Ok);
        assert_eq!(ba, bb);
        entsep_state_free(a);
        entsep_state_free(b);

        // bad rank
        let mut c: *mut EntsepState = ptr::null_mut();
        assert_eq!(entsep_state_random(2, 2, 9, 1, &mut c), EntsepStatus::DomainError);
    }
}

#[test]
fn separable_states_pass_the_criteria_over_the_abi() {
    unsafe {
        let mut state: *mut EntsepState = ptr::null_mut();
        assert_eq!(
            entsep_state_random_separable(2, 2, 0, 9, &mut state),
            EntsepStatus::Ok
        );
        let mut margin = 0.0;
        let mut violated = true;
        for test in [entsep_ppt_test, entsep_majorization_test, entsep_entropy_test] {
            assert_eq!(test(state, 1e-9, &mut margin, &mut violated), EntsepStatus::Ok);
            assert!(!violated);
        }
        let mut class = EntsepClass::Dc;
        assert_eq!(entsep_classify(state, &mut class), EntsepStatus::Ok);
        assert_eq!(class, EntsepClass::Sep);
        entsep_state_free(state);
    }
}

#[test]
fn classify_json_is_parseable_and_freed() {
    unsafe {
        let state = make_werner(0.9);
        let mut s: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(entsep_classify_json(state, &mut s), EntsepStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_string();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["class_label"], "DC");
        entsep_string_free(s);
        entsep_state_free(state);
    }
}

#[test]
fn schmidt_over_the_abi() {
    unsafe {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let amps = [0.0, 0.0, s, 0.0, -s, 0.0, 0.0, 0.0];
        let mut coeffs = [0.0f64; 2];
        let mut count = 0usize;
        assert_eq!(
            entsep_schmidt(amps.as_ptr(), 2, 2, 1e-10, coeffs.as_mut_ptr(), 2, &mut count),
            EntsepStatus::Ok
        );
        assert_eq!(count, 2);
        assert!((coeffs[0] - s).abs() < 1e-12);
        assert!((coeffs[1] - s).abs() < 1e-12);

        // insufficient capacity
        assert_eq!(
            entsep_schmidt(amps.as_ptr(), 2, 2, 1e-10, coeffs.as_mut_ptr(), 1, &mut count),
            EntsepStatus::InvalidArgument
        );

        // non-normalized amplitudes
        let bad = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(
            entsep_schmidt(bad.as_ptr(), 2, 2, 1e-10, coeffs.as_mut_ptr(), 2, &mut count),
            EntsepStatus::ValidationError
        );
    }
}

#[test]
fn protocol_round_trip_over_the_abi() {
    unsafe {
        for message in 0..4usize {
            let mut decoded = usize::MAX;
            assert_eq!(entsep_simulate_protocol(message, &mut decoded), EntsepStatus::Ok);
            assert_eq!(decoded, message);
        }
        let mut decoded = 0usize;
        assert_eq!(entsep_simulate_protocol(9, &mut decoded), EntsepStatus::DomainError);
    }
}
