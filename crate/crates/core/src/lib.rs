//! Weak measurements with an entangled probe.
//!
//! An ancilla pre-selected in `|i⟩` and post-selected in `|f⟩` couples to one
//! half of a bipartite pure probe through `H = κ K ⊗ O`. In the weak limit the
//! probe's Schmidt coefficients are filtered by the weak value
//! `O_W = ⟨f|O|i⟩/⟨f|i⟩`, and its entanglement entropy changes at first order
//! only through `Im(O_W)`. This crate
//!
//! * computes weak values and both the exact and first-order post-selected probe ([`weak`]),
//! * predicts the entropy ratio and the concentration verdict, and checks it against
//!   exact evolution ([`concentration`]),
//! * searches ancilla ingredients for setups that concentrate entanglement ([`search`]),
//! * reads and writes the JSON/CSV formats used by the `weakprobe` binary ([`config`], [`cli`]).
//!
//! The runnable programs under `examples/` walk through each of these.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod concentration;
pub mod config;
pub mod error;
pub mod quantum;
pub mod scenarios;
pub mod search;
pub mod weak;

pub use concentration::{concentration_report, ConcentrationReport, Verdict};
pub use error::{Error, Result};
pub use quantum::{DensityMatrix, HermitianObservable, SchmidtForm, StateVector};
pub use weak::{weak_value, AncillaSelection, EvolutionResult, WeakMeasurementSetup};
