//! Concentration reports for the bundled scenarios.
//!
//! Run with `cargo run --example entropy_ratio`.

use weakprobe::{concentration_report, scenarios};

fn main() -> weakprobe::Result<()> {
    let cases = [
        ("reference", scenarios::r1()),
        ("conjugate post-selection", scenarios::r1_dilution()),
        ("real weak value", scenarios::r1_no_postselection_shift()),
        ("Bell-state probe", scenarios::maximally_entangled()),
        ("rank-4 probe", scenarios::rank4()),
    ];
    for (name, setup) in cases {
        let report = concentration_report(&setup)?;
        println!("{name}:");
        println!(
            "  weak value        {:+.6} {:+.6}i",
            report.weak_value.re, report.weak_value.im
        );
        println!("  witness gap       {:.9}", report.witness_gap);
        println!("  ratio first-order {:.9}", report.ratio_first_order);
        println!("  ratio exact       {:.9}", report.ratio_exact);
        println!(
            "  success prob.     {:.9}",
            report.success_probability_exact
        );
        println!("  verdict           {:?}", report.verdict);
    }
    Ok(())
}
