//! Property tests for the structural invariants: partial-transpose
//! involution, trace preservation, negativity symmetry and local-unitary
//! invariance, and the pure-state determinant oracle for bipartition
//! negativities.

use num_complex::Complex64;
use proptest::prelude::*;

use trimode::entanglement::{negativity_bipartition, negativity_pair, tripartite_negativity};
use trimode::families::{pure_density, StateVector};
use trimode::linalg::{
    eigen_hermitian, partial_trace, partial_transpose, ComplexMatrix, Mode, ALL_MODES,
};

fn state_strategy() -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8).prop_filter_map(
        "norm too small",
        |parts| {
            let norm2: f64 = parts.iter().map(|(re, im)| re * re + im * im).sum();
            if norm2 < 1e-3 {
                return None;
            }
            let inv = 1.0 / norm2.sqrt();
            let mut amps = [Complex64::new(0.0, 0.0); 8];
            for (slot, (re, im)) in parts.into_iter().enumerate() {
                amps[slot] = Complex64::new(re * inv, im * inv);
            }
            Some(StateVector::new(amps).expect("normalized"))
        },
    )
}

fn mode_strategy() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::I), Just(Mode::J), Just(Mode::K)]
}

/// Apply a single-mode unitary parameterized by three angles to one mode.
fn apply_local_unitary(state: &StateVector, mode: Mode, th: f64, ph: f64, ps: f64) -> StateVector {
    let u00 = Complex64::from_polar(th.cos(), ph);
    let u01 = Complex64::from_polar(th.sin(), ps);
    let u10 = -Complex64::from_polar(th.sin(), -ps);
    let u11 = Complex64::from_polar(th.cos(), -ph);
    let bit = 1usize << mode.bit();
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    for (idx, amp) in amps.iter_mut().enumerate() {
        let a0 = state.amplitudes()[idx & !bit];
        let a1 = state.amplitudes()[idx | bit];
        *amp = if idx & bit == 0 {
            u00 * a0 + u01 * a1
        } else {
            u10 * a0 + u11 * a1
        };
    }
    StateVector::from_raw(amps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_transpose_is_an_involution(state in state_strategy(), mode in mode_strategy()) {
        let rho = pure_density(&state);
        let back = partial_transpose(&partial_transpose(&rho, mode).unwrap(), mode).unwrap();
        prop_assert!(rho.sub(&back).frobenius_norm() == 0.0);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity(
        state in state_strategy(),
        mode in mode_strategy(),
    ) {
        let rho = pure_density(&state);
        let pt = partial_transpose(&rho, mode).unwrap();
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(pt.hermiticity_defect() < 1e-14);
    }

    #[test]
    fn partial_trace_composes_across_modes(state in state_strategy()) {
        // Tracing out k then j equals reducing straight to {i}.
        let rho = pure_density(&state);
        let pair = partial_trace(&rho, &[Mode::I, Mode::J]).unwrap();
        let via_pair = {
            // Reduce the 4x4 by summing mode-j diagonal blocks.
            let mut out = ComplexMatrix::zeros(2).unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for t in 0..2 {
                        acc += pair.get(2 * r + t, 2 * c + t);
                    }
                    out.set(r, c, acc);
                }
            }
            out
        };
        let direct = partial_trace(&rho, &[Mode::I]).unwrap();
        let mut dev = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                dev = dev.max((via_pair.get(r, c) - direct.get(r, c)).norm());
            }
        }
        prop_assert!(dev < 1e-12);
        prop_assert!((direct.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pair_negativity_is_symmetric_and_bounded(state in state_strategy()) {
        let rho = pure_density(&state);
        for &(a, b) in &[(Mode::I, Mode::J), (Mode::I, Mode::K), (Mode::J, Mode::K)] {
            let ab = negativity_pair(&rho, a, b).unwrap();
            let ba = negativity_pair(&rho, b, a).unwrap();
            prop_assert!((ab - ba).abs() < 1e-10);
            prop_assert!((0.0..=1.0 + 1e-9).contains(&ab));
        }
    }

    #[test]
    fn bipartition_negativity_matches_determinant_oracle(state in state_strategy()) {
        // For a pure state the bipartition negativity is 2 sqrt(det rho_m),
        // an algebraic route fully independent of the eigensolver.
        let rho = pure_density(&state);
        for mode in ALL_MODES {
            let reduced = partial_trace(&rho, &[mode]).unwrap();
            let det = (reduced.get(0, 0) * reduced.get(1, 1)
                - reduced.get(0, 1) * reduced.get(1, 0))
            .re
            .max(0.0);
            let oracle = 2.0 * det.sqrt();
            let measured = negativity_bipartition(&rho, mode).unwrap();
            prop_assert!(
                (measured - oracle).abs() < 1e-9,
                "mode {mode}: eigensolve {measured} vs determinant {oracle}"
            );
        }
    }

    #[test]
    fn negativities_are_local_unitary_invariant(
        state in state_strategy(),
        mode in mode_strategy(),
        th in 0.0f64..std::f64::consts::PI,
        ph in 0.0f64..std::f64::consts::PI,
        ps in 0.0f64..std::f64::consts::PI,
    ) {
        let rotated = apply_local_unitary(&state, mode, th, ph, ps);
        let before = tripartite_negativity(&pure_density(&state)).unwrap();
        let after = tripartite_negativity(&pure_density(&rotated)).unwrap();
        for (x, y) in before.csv_fields().iter().zip(after.csv_fields().iter()) {
            prop_assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn eigenvalues_sum_to_trace(state in state_strategy(), mode in mode_strategy()) {
        let rho = pure_density(&state);
        let pt = partial_transpose(&rho, mode).unwrap();
        let eig = eigen_hermitian(&pt).unwrap();
        let sum: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((sum - pt.trace().re).abs() < 1e-10);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}
