//! How fast the first-order entropy ratio approaches the exact one as the coupling shrinks.
//!
//! Run with `cargo run --example convergence_sweep`.

use weakprobe::cli::{log_spaced, sweep_rows};
use weakprobe::config::SetupConfig;
use weakprobe::weak::EPS_OVERLAP;

fn main() -> weakprobe::Result<()> {
    let config = SetupConfig::from_json(include_str!("../configs/r1.json"))?;
    let phis = log_spaced(1e-4, 1e-1, 10)?;
    let rows = sweep_rows(&config, EPS_OVERLAP, &phis)?;
    println!(
        "{:>12} {:>14} {:>14} {:>12} {:>8}",
        "phi", "first-order", "exact", "gap", "slope"
    );
    let mut previous: Option<(f64, f64)> = None;
    for row in &rows {
        let slope = previous.map(|(p, g)| (row.abs_gap / g).ln() / (row.phi / p).ln());
        let slope = slope.map_or(String::from("-"), |s| format!("{s:.3}"));
        println!(
            "{:>12.4e} {:>14.10} {:>14.10} {:>12.3e} {:>8}",
            row.phi, row.ratio_first_order, row.ratio_exact, row.abs_gap, slope
        );
        previous = Some((row.phi, row.abs_gap));
    }
    Ok(())
}
