//! Random search over qubit ancilla preparations and observables, reduced to a Pareto front.
//!
//! Run with `cargo run --release --example ingredient_search`.

use weakprobe::concentration::concentration_report;
use weakprobe::config::SpaceConfig;
use weakprobe::search::{pareto_filter, search, SearchConfig};

fn main() -> weakprobe::Result<()> {
    let space = SpaceConfig::from_json(include_str!("../configs/space_r1.json"))?.to_space()?;
    let config = SearchConfig::random(42, 10_000, 0.01)?;
    let results = search(&space, &config)?;
    let front = pareto_filter(&results);
    println!(
        "witness gap {:.6}, {} feasible candidates, {} on the front",
        space.witness_gap(),
        results.len(),
        front.len()
    );
    println!("{:>12} {:>12} {:>22}", "gain", "success", "weak value");
    let step = (front.len() / 10).max(1);
    for candidate in front.iter().step_by(step) {
        let w = candidate.weak_value;
        println!(
            "{:>12.5} {:>12.5} {:>10.4} {:+.4}i",
            candidate.first_order_gain, candidate.success_probability_exact, w.re, w.im
        );
    }
    if let Some(best) = front.first() {
        let report = concentration_report(&space.setup(&best.ingredients)?)?;
        println!(
            "largest gain: exact entropy ratio {:.6} at success {:.4}",
            report.ratio_exact, report.success_probability_exact
        );
    }
    Ok(())
}
