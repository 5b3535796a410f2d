use std::fmt::Write;

use nonlocality::behavior::DeterministicStrategy;
use nonlocality::classifier::{NoGoVerdict, SupportWitness};
use nonlocality::json::{round_sig, Value, VerdictDoc};
use nonlocality::rational::{self, Rational};
use serde::Serialize;

use crate::Format;

pub const LABEL_WIDTH: usize = 28;

#[derive(Debug, Serialize)]
pub struct StrategyDoc {
    pub map_a: Vec<usize>,
    pub map_b: Vec<usize>,
}

impl From<&DeterministicStrategy> for StrategyDoc {
    fn from(d: &DeterministicStrategy) -> Self {
        Self {
            map_a: d.map_a.clone(),
            map_b: d.map_b.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExactDoc {
    pub exact: Value,
    pub decimal: f64,
}

impl From<&Rational> for ExactDoc {
    fn from(r: &Rational) -> Self {
        Self {
            exact: Value::exact(r),
            decimal: round_sig(rational::to_f64(r)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictReport<T: Serialize> {
    #[serde(flatten)]
    pub verdict: VerdictDoc,
    pub witness_tuple: Option<T>,
}

pub fn verdict_report<T: Serialize>(
    v: &NoGoVerdict,
    label: impl Fn(usize, usize, usize, usize) -> T,
) -> VerdictReport<T> {
    VerdictReport {
        verdict: VerdictDoc::from_verdict(v),
        witness_tuple: match v.support_witness {
            Some(SupportWitness::Uncovered { x, y, a, b }) => Some(label(x, y, a, b)),
            _ => None,
        },
    }
}

pub fn exact(r: &Rational) -> String {
    format!(
        "{} ({})",
        rational::display(r),
        decimal(rational::to_f64(r))
    )
}

pub fn decimal(v: f64) -> String {
    format!("{v:.10}")
}

/// Appends one fixed-width `label value` line.
pub fn line(out: &mut String, label: &str, value: impl std::fmt::Display) {
    writeln!(out, "{label:<LABEL_WIDTH$}{value}").expect("string write");
}

pub fn verdict_lines(out: &mut String, v: &NoGoVerdict) {
    let arithmetic = VerdictDoc::from_verdict(v).arithmetic;
    line(
        out,
        "verdict",
        format!(
            "violates_locality={} btwi={} pt={} ({arithmetic})",
            v.violates_locality, v.btwi, v.pt
        ),
    );
    line(out, "witness", v.witness());
}

pub fn emit<T: Serialize>(format: Format, doc: &T, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Table => table(),
    }
}
