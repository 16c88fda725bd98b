//! Canonical setups shared by tests, examples and the bundled config files.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::quantum::{HermitianObservable, SchmidtForm, StateVector};
use crate::weak::{AncillaSelection, WeakMeasurementSetup};

fn qubit(a: Complex64, b: Complex64) -> StateVector {
    StateVector::new(vec![a, b]).expect("unit qubit")
}

fn plus() -> StateVector {
    qubit(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    )
}

fn plus_i(sign: f64) -> StateVector {
    qubit(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, sign * FRAC_1_SQRT_2),
    )
}

fn setup(
    coefficients: Vec<f64>,
    kappa: Vec<f64>,
    post: StateVector,
    phi: f64,
) -> WeakMeasurementSetup {
    let probe = SchmidtForm::computational(coefficients).expect("valid probe");
    let ancilla = AncillaSelection::new(plus(), post, HermitianObservable::diagonal(&[1.0, -1.0]))
        .expect("qubit ancilla");
    WeakMeasurementSetup::new(probe, kappa, ancilla, phi).expect("valid setup")
}

/// Probe `s = (√0.9, √0.1)`, `K = diag(0, 1)`, `|i⟩ = |+⟩`, `|f⟩ = (|0⟩ + i|1⟩)/√2`,
/// `O = Z`, `φ = 0.1`. The weak value is exactly `i`.
pub fn r1() -> WeakMeasurementSetup {
    setup(
        vec![0.9f64.sqrt(), 0.1f64.sqrt()],
        vec![0.0, 1.0],
        plus_i(1.0),
        0.1,
    )
}

/// [`r1`] with the conjugate post-selection `(|0⟩ − i|1⟩)/√2`, giving `O_W = −i`.
pub fn r1_dilution() -> WeakMeasurementSetup {
    setup(
        vec![0.9f64.sqrt(), 0.1f64.sqrt()],
        vec![0.0, 1.0],
        plus_i(-1.0),
        0.1,
    )
}

/// [`r1`] with the ancilla post-selected back onto `|i⟩`, giving a real weak value.
pub fn r1_no_postselection_shift() -> WeakMeasurementSetup {
    setup(
        vec![0.9f64.sqrt(), 0.1f64.sqrt()],
        vec![0.0, 1.0],
        plus(),
        0.1,
    )
}

/// Bell-state probe with the [`r1`] ancilla: nothing to concentrate.
pub fn maximally_entangled() -> WeakMeasurementSetup {
    setup(
        vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        vec![0.0, 1.0],
        plus_i(1.0),
        0.1,
    )
}

/// Rank-4 probe with populations `(0.4, 0.3, 0.2, 0.1)` and `K = diag(0, 1, 2, 3)`.
pub fn rank4() -> WeakMeasurementSetup {
    let coefficients = [0.4f64, 0.3, 0.2, 0.1].iter().map(|p| p.sqrt()).collect();
    setup(coefficients, vec![0.0, 1.0, 2.0, 3.0], plus_i(1.0), 0.05)
}
