//! Seeded, reproducible verification experiments.
//!
//! Each experiment re-checks one quantitative claim of the theory on
//! hand-built fixtures and seeded random bodies, and emits a [`Report`]:
//! a list of labelled measurements, each with a target, a tolerance, and
//! a pass flag. Experiments are deterministic functions of their seed —
//! rerunning with the same seed reproduces every measurement bit for
//! bit (only `runtime_ms` varies).
//!
//! Conventions:
//!
//! * two-sided checks store the measured value and the expected target;
//! * one-sided checks ("length at least the bound") store the clamped
//!   violation `max(0, bound − value)` against target `0`, so a passing
//!   run shows `0.0`;
//! * purely informational values carry tolerance [`f64::MAX`] and always
//!   pass; they exist so the raw numbers appear in the emitted report.

mod verify;

pub use verify::{
    lemma35_decay, prop22_decompose, triangle_demo, verify_thm1_backward,
    verify_thm1_backward_suite, verify_thm1_forward, verify_thm2, verify_thm3, verify_thm4,
    verify_thm4_suite, Thm4Case,
};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// One labelled check: passes when `|value − target| ≤ tolerance`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Measurement {
    pub fn new(label: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        let pass = (value - target).abs() <= tolerance;
        Measurement { label: label.into(), value, target, tolerance, pass }
    }

    /// A measurement that records a number without judging it.
    pub fn informational(label: impl Into<String>, value: f64) -> Self {
        Measurement { label: label.into(), value, target: 0.0, tolerance: f64::MAX, pass: true }
    }
}

/// The outcome of one experiment: named measurements plus the inputs and
/// seed needed to reproduce them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub measurements: Vec<Measurement>,
    pub seed: u64,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(name: impl Into<String>, seed: u64) -> Self {
        Report {
            name: name.into(),
            inputs: BTreeMap::new(),
            measurements: Vec::new(),
            seed,
            runtime_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, m: Measurement) {
        self.measurements.push(m);
    }

    /// True when every measurement passed.
    pub fn passed(&self) -> bool {
        self.measurements.iter().all(|m| m.pass)
    }

    /// Appends another report's measurements, prefixing their labels with
    /// the source report's name.
    pub fn absorb(&mut self, other: Report) {
        for (k, v) in other.inputs {
            self.inputs.entry(format!("{}.{}", other.name, k)).or_insert(v);
        }
        for m in other.measurements {
            self.measurements.push(Measurement {
                label: format!("{}.{}", other.name, m.label),
                ..m
            });
        }
    }

    /// CSV rendering: one row per measurement.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,label,value,target,tolerance,pass\n");
        for m in &self.measurements {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.name, m.label, m.value, m.target, m.tolerance, m.pass
            ));
        }
        out
    }
}

/// Runs `body` against a fresh report, recording the wall-clock runtime.
pub(crate) fn timed_report(
    name: &str,
    seed: u64,
    body: impl FnOnce(&mut Report),
) -> Report {
    let start = Instant::now();
    let mut report = Report::new(name, seed);
    body(&mut report);
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// Extrapolates the limit of a sequence sampled along a parameter that
/// halves from term to term, assuming first- and second-order error terms:
/// for `x_j = L + a·2^{−j} + b·4^{−j}` two Richardson stages (orders 1
/// and 2) cancel both terms exactly, so path excesses with linear plus
/// quadratic dependence on the construction parameter extrapolate to
/// rounding accuracy. Constant and single-scale geometric sequences are
/// fixed points of both stages.
pub fn extrapolated_limit(values: &[f64]) -> f64 {
    match values.len() {
        0 => panic!("extrapolation input is nonempty"),
        1 => values[0],
        _ => {
            let first: Vec<f64> = values.windows(2).map(|w| 2.0 * w[1] - w[0]).collect();
            if first.len() == 1 {
                return first[0];
            }
            let second: Vec<f64> =
                first.windows(2).map(|w| (4.0 * w[1] - w[0]) / 3.0).collect();
            *second.last().expect("two or more stage-one terms")
        }
    }
}
