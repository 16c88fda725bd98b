//! Weak values of a qubit observable for a few post-selections.
//!
//! Run with `cargo run --example weak_value`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use weakprobe::{weak_value, AncillaSelection, HermitianObservable, StateVector};

fn main() -> weakprobe::Result<()> {
    let z = HermitianObservable::diagonal(&[1.0, -1.0]);
    let plus = StateVector::bloch(std::f64::consts::FRAC_PI_2, 0.0);
    let posts = [
        ("|+>", plus.clone()),
        (
            "(|0> + i|1>)/sqrt2",
            StateVector::new(vec![
                Complex64::new(FRAC_1_SQRT_2, 0.0),
                Complex64::new(0.0, FRAC_1_SQRT_2),
            ])?,
        ),
        ("|0>", StateVector::basis(2, 0)),
        (
            "nearly |->",
            StateVector::bloch(std::f64::consts::FRAC_PI_2 + 0.02, std::f64::consts::PI),
        ),
    ];
    println!("pre-selection |+>, observable Z (eigenvalues +-1)");
    for (name, post) in posts {
        let selection = AncillaSelection::new(plus.clone(), post, z.clone())?;
        let w = weak_value(&selection)?;
        println!(
            "post {name:>20}: |<f|i>| = {:.4}, O_W = {:+.4} {:+.4}i",
            selection.overlap().norm(),
            w.re,
            w.im
        );
    }
    Ok(())
}
