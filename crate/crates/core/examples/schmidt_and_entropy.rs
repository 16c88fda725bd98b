//! Schmidt decomposition of a random two-qutrit state and the entanglement entropy of its halves.
//!
//! Run with `cargo run --example schmidt_and_entropy`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use weakprobe::quantum::{
    partial_trace, schmidt_decompose, von_neumann_entropy, BipartiteState, Subsystem,
};

fn main() -> weakprobe::Result<()> {
    // a fixed, unnormalized coefficient matrix M with |ψ⟩ = Σ M[a, b] |a⟩|b⟩
    let raw = DMatrix::from_row_slice(
        3,
        3,
        &[
            Complex64::new(0.8, 0.0),
            Complex64::new(0.1, 0.2),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -0.3),
            Complex64::new(0.4, 0.0),
            Complex64::new(0.1, 0.0),
            Complex64::new(0.05, 0.0),
            Complex64::new(0.0, 0.1),
            Complex64::new(0.2, 0.1),
        ],
    );
    let norm = raw.norm();
    let state = BipartiteState::new(raw / Complex64::new(norm, 0.0))?;

    let form = schmidt_decompose(state.coefficients())?;
    println!("Schmidt coefficients: {:?}", form.coefficients());
    println!("populations:          {:?}", form.populations());

    let rho_a = partial_trace(&state, Subsystem::B);
    let rho_b = partial_trace(&state, Subsystem::A);
    println!("S(rho_A) = {:.12}", von_neumann_entropy(&rho_a));
    println!("S(rho_B) = {:.12}", von_neumann_entropy(&rho_b));
    println!("S from coefficients = {:.12}", form.entropy());

    let error = (form.recompose().coefficients() - state.coefficients())
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm()));
    println!("round-trip error = {error:.2e}");
    Ok(())
}
