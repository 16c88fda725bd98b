//! Exact post-selected evolution against the first-order weak-limit state.
//!
//! Run with `cargo run --example exact_vs_weak_limit`.

use weakprobe::scenarios;
use weakprobe::weak::{approximation_error, exact_evolve_postselect, weak_limit_state};

fn main() -> weakprobe::Result<()> {
    let base = scenarios::r1();
    println!(
        "{:>8} {:>14} {:>14} {:>12} {:>12}",
        "phi", "P_exact", "P_weak", "dist", "prob_gap"
    );
    for phi in [0.2, 0.1, 0.05, 0.025, 0.0125] {
        let setup = base.with_phi(phi)?;
        let exact = exact_evolve_postselect(&setup)?;
        let weak = weak_limit_state(&setup)?;
        let err = approximation_error(&setup)?;
        println!(
            "{phi:>8} {:>14.10} {:>14.10} {:>12.3e} {:>12.3e}",
            exact.success_probability, weak.success_probability, err.state_distance, err.prob_gap
        );
    }
    let exact = exact_evolve_postselect(&base)?;
    println!(
        "final populations at phi = 0.1: {:?}",
        exact.final_probe.populations()
    );
    Ok(())
}
