//! The commands behind the `weakprobe` binary, as functions returning the text they print.
//!
//! Reported numbers are rounded to 9 significant digits so output files are
//! stable across platforms; configs and ingredient vectors embedded in the
//! output keep full precision so they can be replayed exactly.

use serde::Serialize;

use crate::concentration::{
    concentration_report, entropy_ratio_exact, entropy_ratio_first_order, Verdict,
};
use crate::config::{ComplexPair, SetupConfig, SpaceConfig};
use crate::error::{Error, Result};
use crate::search::{pareto_filter, search, Ingredients, SearchConfig};
use crate::weak::{exact_evolve_postselect, weak_value, EPS_OVERLAP};

/// Environment variable overriding the post-selection orthogonality threshold.
pub const EPS_OVERLAP_ENV: &str = "WEAKPROBE_EPS_OVERLAP";

pub const SWEEP_CSV_HEADER: &str = "phi,ratio_first_order,ratio_exact,abs_gap,success_exact";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::config(
                "--format",
                format!("expected json or csv, got {other}"),
            )),
        }
    }
}

/// `ε_overlap`, honoring [`EPS_OVERLAP_ENV`] when set.
pub fn eps_overlap_from_env() -> Result<f64> {
    match std::env::var(EPS_OVERLAP_ENV) {
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| *v >= 0.0 && v.is_finite())
            .ok_or_else(|| {
                Error::config(EPS_OVERLAP_ENV, format!("not a nonnegative number: {text}"))
            }),
        Err(_) => Ok(EPS_OVERLAP),
    }
}

/// Rounds to 9 significant digits; `-0.0` becomes `0.0`.
pub fn round9(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.8e}")
        .parse::<f64>()
        .expect("formatted float parses")
        + 0.0
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn json_only(format: OutputFormat, command: &str) -> Result<()> {
    match format {
        OutputFormat::Json => Ok(()),
        OutputFormat::Csv => Err(Error::config(
            "--format",
            format!("{command} only writes json"),
        )),
    }
}

#[derive(Debug, Serialize)]
struct WeakValueOutput {
    re: f64,
    im: f64,
    overlap_abs: f64,
}

pub fn cmd_weak_value(
    config: &SetupConfig,
    eps_overlap: f64,
    format: OutputFormat,
) -> Result<String> {
    json_only(format, "weak-value")?;
    let setup = config.to_setup_with_eps(eps_overlap)?;
    let w = weak_value(setup.ancilla())?;
    Ok(json(&WeakValueOutput {
        re: round9(w.re),
        im: round9(w.im),
        overlap_abs: round9(setup.ancilla().overlap().norm()),
    }))
}

#[derive(Debug, Serialize)]
struct ReportOutput {
    weak_value: ComplexPair,
    witness_gap: f64,
    first_order_gain: f64,
    ratio_first_order: f64,
    ratio_exact: f64,
    success_probability_exact: f64,
    verdict: Verdict,
}

pub fn cmd_concentrate(
    config: &SetupConfig,
    eps_overlap: f64,
    format: OutputFormat,
) -> Result<String> {
    json_only(format, "concentrate")?;
    let report = concentration_report(&config.to_setup_with_eps(eps_overlap)?)?;
    Ok(json(&ReportOutput {
        weak_value: [round9(report.weak_value.re), round9(report.weak_value.im)],
        witness_gap: round9(report.witness_gap),
        first_order_gain: round9(report.first_order_gain),
        ratio_first_order: round9(report.ratio_first_order),
        ratio_exact: round9(report.ratio_exact),
        success_probability_exact: round9(report.success_probability_exact),
        verdict: report.verdict,
    }))
}

/// One row of a coupling sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub phi: f64,
    pub ratio_first_order: f64,
    pub ratio_exact: f64,
    pub abs_gap: f64,
    pub success_exact: f64,
}

/// `points` log-spaced couplings from `phi_min` to `phi_max`, endpoints exact.
pub fn log_spaced(phi_min: f64, phi_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(phi_min > 0.0) || !(phi_max > phi_min) || !phi_max.is_finite() {
        return Err(Error::config(
            "--phi-min/--phi-max",
            format!("need 0 < phi_min < phi_max, got {phi_min} and {phi_max}"),
        ));
    }
    if points < 2 {
        return Err(Error::config(
            "--points",
            format!("need at least 2 points, got {points}"),
        ));
    }
    let (lo, hi) = (phi_min.ln(), phi_max.ln());
    let last = points - 1;
    Ok((0..points)
        .map(|j| match j {
            0 => phi_min,
            j if j == last => phi_max,
            j => (lo + (hi - lo) * j as f64 / last as f64).exp(),
        })
        .collect())
}

/// Full-precision sweep rows; [`cmd_sweep`] formats them.
pub fn sweep_rows(config: &SetupConfig, eps_overlap: f64, phis: &[f64]) -> Result<Vec<SweepRow>> {
    let base = config.to_setup_with_eps(eps_overlap)?;
    phis.iter()
        .map(|&phi| {
            let setup = base.with_phi(phi)?;
            let ratio_first_order = entropy_ratio_first_order(&setup)?;
            let ratio_exact = entropy_ratio_exact(&setup)?;
            let success_exact = exact_evolve_postselect(&setup)?.success_probability;
            Ok(SweepRow {
                phi,
                ratio_first_order,
                ratio_exact,
                abs_gap: (ratio_exact - ratio_first_order).abs(),
                success_exact,
            })
        })
        .collect()
}

pub fn cmd_sweep(
    config: &SetupConfig,
    eps_overlap: f64,
    phi_min: f64,
    phi_max: f64,
    points: usize,
    format: OutputFormat,
) -> Result<String> {
    let phis = log_spaced(phi_min, phi_max, points)?;
    let rows: Vec<SweepRow> = sweep_rows(config, eps_overlap, &phis)?
        .into_iter()
        .map(|r| SweepRow {
            phi: round9(r.phi),
            ratio_first_order: round9(r.ratio_first_order),
            ratio_exact: round9(r.ratio_exact),
            abs_gap: round9(r.abs_gap),
            success_exact: round9(r.success_exact),
        })
        .collect();
    Ok(match format {
        OutputFormat::Json => json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from(SWEEP_CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.phi, r.ratio_first_order, r.ratio_exact, r.abs_gap, r.success_exact
                ));
            }
            out
        }
    })
}

#[derive(Debug, Serialize)]
struct FrontEntry {
    first_order_gain: f64,
    success_probability_exact: f64,
    weak_value: ComplexPair,
    ingredients: Ingredients,
    /// Feed to `concentrate` to reproduce this entry.
    setup: SetupConfig,
}

#[derive(Debug, Serialize)]
struct SearchOutput {
    search: SearchConfig,
    witness_gap: f64,
    feasible: usize,
    front: Vec<FrontEntry>,
}

pub fn cmd_search(
    space: &SpaceConfig,
    eps_overlap: f64,
    search_config: &SearchConfig,
) -> Result<String> {
    let candidate_space = space.to_space_with_eps(eps_overlap)?;
    let results = search(&candidate_space, search_config)?;
    let front = pareto_filter(&results)
        .into_iter()
        .map(|r| FrontEntry {
            first_order_gain: round9(r.first_order_gain),
            success_probability_exact: round9(r.success_probability_exact),
            weak_value: [round9(r.weak_value.re), round9(r.weak_value.im)],
            setup: space.replay_setup(&r.ingredients),
            ingredients: r.ingredients,
        })
        .collect();
    Ok(json(&SearchOutput {
        search: *search_config,
        witness_gap: round9(candidate_space.witness_gap()),
        feasible: results.len(),
        front,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1() -> SetupConfig {
        SetupConfig::from_json(include_str!("../configs/r1.json")).unwrap()
    }

    #[test]
    fn round9_keeps_nine_digits() {
        assert_eq!(round9(1.119_275_860_437_226), 1.119_275_86);
        assert_eq!(round9(-0.0), 0.0);
        assert!(round9(-0.0).is_sign_positive());
        assert_eq!(round9(0.0), 0.0);
        assert_eq!(round9(123_456_789_123.0), 123_456_789_000.0);
    }

    #[test]
    fn log_spacing() {
        let phis = log_spaced(0.05, 0.1, 2).unwrap();
        assert_eq!(phis, vec![0.05, 0.1]);
        let phis = log_spaced(1e-4, 1e-1, 4).unwrap();
        assert!((phis[1] - 1e-3).abs() < 1e-15 && (phis[2] - 1e-2).abs() < 1e-15);
        assert!(log_spaced(0.1, 0.1, 3).is_err());
        assert!(log_spaced(0.0, 0.1, 3).is_err());
        assert!(log_spaced(0.01, 0.1, 1).is_err());
    }

    #[test]
    fn weak_value_output() {
        let out = cmd_weak_value(&r1(), EPS_OVERLAP, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["re"], 0.0);
        assert_eq!(v["im"], 1.0);
        assert_eq!(v["overlap_abs"], round9(std::f64::consts::FRAC_1_SQRT_2));
        assert!(cmd_weak_value(&r1(), EPS_OVERLAP, OutputFormat::Csv).is_err());
    }

    #[test]
    fn sweep_csv_layout() {
        let out = cmd_sweep(&r1(), EPS_OVERLAP, 0.05, 0.1, 2, OutputFormat::Csv).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], SWEEP_CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("0.1,1.11927586,"));
        assert!(!out.contains('\r'));
    }
}
