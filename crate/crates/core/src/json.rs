//! On-disk JSON schema.
//!
//! Tables are nested as one row per setting pair `(x, y)` in row-major
//! order, each row listing outcome pairs `(a, b)` in row-major order.
//! Exact values are written as `{"num": n, "den": d}`, floating-point
//! values as numbers rounded to 12 significant digits.

use num::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::behavior::{Behavior, BellExpression, Scenario, SupportTable};
use crate::classifier::NoGoVerdict;
use crate::games::Game;
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(#[from] crate::Error),
}

/// Rounds to 12 significant digits so output is stable across platforms.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    format!("{v:.11e}").parse().expect("formatted float")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BigNum {
    Small(i64),
    Big(String),
}

impl BigNum {
    fn from_bigint(n: &BigInt) -> Self {
        i64::try_from(n)
            .map(BigNum::Small)
            .unwrap_or_else(|_| BigNum::Big(n.to_string()))
    }

    fn to_bigint(&self) -> Result<BigInt, FormatError> {
        match self {
            BigNum::Small(v) => Ok(BigInt::from(*v)),
            BigNum::Big(s) => s
                .parse()
                .map_err(|_| FormatError::Schema(format!("invalid integer {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact { num: BigNum, den: BigNum },
    Float(f64),
}

impl Value {
    pub fn exact(r: &Rational) -> Self {
        Value::Exact {
            num: BigNum::from_bigint(r.numer()),
            den: BigNum::from_bigint(r.denom()),
        }
    }

    pub fn float(v: f64) -> Self {
        Value::Float(round_sig(v))
    }

    fn to_rational(&self) -> Result<Option<Rational>, FormatError> {
        match self {
            Value::Exact { num, den } => {
                let den = den.to_bigint()?;
                if den == BigInt::from(0) {
                    return Err(FormatError::Schema("zero denominator".into()));
                }
                Ok(Some(Rational::new(num.to_bigint()?, den)))
            }
            Value::Float(_) => Ok(None),
        }
    }

    fn to_f64(&self) -> Result<f64, FormatError> {
        match self {
            Value::Float(v) => Ok(*v),
            _ => Ok(crate::rational::to_f64(
                &self.to_rational()?.expect("exact"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub inputs_a: usize,
    pub inputs_b: usize,
    pub outputs_a: usize,
    pub outputs_b: usize,
}

impl ScenarioDoc {
    fn from_scenario(s: &Scenario) -> Self {
        Self {
            inputs_a: s.inputs_a,
            inputs_b: s.inputs_b,
            outputs_a: s.outputs_a,
            outputs_b: s.outputs_b,
        }
    }

    fn to_scenario(self) -> Result<Scenario, FormatError> {
        Ok(Scenario::new(
            self.inputs_a,
            self.inputs_b,
            self.outputs_a,
            self.outputs_b,
        )?)
    }
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v != SCHEMA_VERSION {
        return Err(FormatError::Schema(format!(
            "unsupported schema_version {v}"
        )));
    }
    Ok(())
}

fn nest<T: Clone>(s: &Scenario, flat: &[T]) -> Vec<Vec<T>> {
    flat.chunks(s.outcome_pairs()).map(|c| c.to_vec()).collect()
}

fn flatten<T>(s: &Scenario, field: &str, rows: Vec<Vec<T>>) -> Result<Vec<T>, FormatError> {
    if rows.len() != s.setting_pairs() {
        return Err(FormatError::Schema(format!(
            "`{field}` has {} rows, expected {} (one per setting pair)",
            rows.len(),
            s.setting_pairs()
        )));
    }
    let mut out = Vec::with_capacity(s.table_len());
    for (pair, row) in rows.into_iter().enumerate() {
        if row.len() != s.outcome_pairs() {
            return Err(FormatError::Schema(format!(
                "`{field}` row {pair} (x={}, y={}) has {} entries, expected {}",
                pair / s.inputs_b,
                pair % s.inputs_b,
                row.len(),
                s.outcome_pairs()
            )));
        }
        out.extend(row);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorDoc {
    pub schema_version: u32,
    pub scenario: ScenarioDoc,
    pub table: Vec<Vec<Value>>,
}

impl BehaviorDoc {
    pub fn from_behavior(b: &Behavior) -> Self {
        let values: Vec<Value> = match b.exact() {
            Some(t) => t.iter().map(Value::exact).collect(),
            None => b.table().iter().map(|&v| Value::float(v)).collect(),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            scenario: ScenarioDoc::from_scenario(b.scenario()),
            table: nest(b.scenario(), &values),
        }
    }

    /// A table given entirely in `{num, den}` form stays exact.
    pub fn into_behavior(self) -> Result<Behavior, FormatError> {
        check_version(self.schema_version)?;
        let s = self.scenario.to_scenario()?;
        let flat = flatten(&s, "table", self.table)?;
        let exact: Option<Vec<Rational>> = flat
            .iter()
            .map(|v| v.to_rational())
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .collect();
        match exact {
            Some(t) => Ok(Behavior::from_exact(s, t)?),
            None => Ok(Behavior::new(
                s,
                flat.iter().map(Value::to_f64).collect::<Result<_, _>>()?,
            )?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpressionDoc {
    pub schema_version: u32,
    pub scenario: ScenarioDoc,
    pub coeffs: Vec<Vec<Value>>,
    #[serde(default)]
    pub description: String,
}

impl ExpressionDoc {
    pub fn from_expression(e: &BellExpression) -> Self {
        let values: Vec<Value> = e.coeffs().iter().map(Value::exact).collect();
        Self {
            schema_version: SCHEMA_VERSION,
            scenario: ScenarioDoc::from_scenario(e.scenario()),
            coeffs: nest(e.scenario(), &values),
            description: e.description().to_string(),
        }
    }

    pub fn into_expression(self) -> Result<BellExpression, FormatError> {
        check_version(self.schema_version)?;
        let s = self.scenario.to_scenario()?;
        let flat = flatten(&s, "coeffs", self.coeffs)?;
        let coeffs = flat
            .iter()
            .map(|v| match v.to_rational()? {
                Some(r) => Ok(r),
                None => {
                    let f = v.to_f64()?;
                    if !f.is_finite() {
                        return Err(FormatError::Schema("non-finite coefficient".into()));
                    }
                    Ok(crate::rational::rationalize(
                        f,
                        crate::rational::DEFAULT_RATIONAL_TOL,
                    ))
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(BellExpression::new(s, coeffs, self.description)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportDoc {
    pub schema_version: u32,
    pub scenario: ScenarioDoc,
    pub possible: Vec<Vec<bool>>,
}

impl SupportDoc {
    pub fn from_support(t: &SupportTable) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            scenario: ScenarioDoc::from_scenario(t.scenario()),
            possible: nest(t.scenario(), t.possible()),
        }
    }

    pub fn into_support(self) -> Result<SupportTable, FormatError> {
        check_version(self.schema_version)?;
        let s = self.scenario.to_scenario()?;
        let flat = flatten(&s, "possible", self.possible)?;
        Ok(SupportTable::new(s, flat)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameDoc {
    pub schema_version: u32,
    pub name: String,
    pub inputs_a: Vec<String>,
    pub inputs_b: Vec<String>,
    pub outputs_a: Vec<String>,
    pub outputs_b: Vec<String>,
    /// `[x_a, x_b, y_a, y_b]` label tuples in the relation.
    pub accepted: Vec<[String; 4]>,
}

impl GameDoc {
    pub fn from_game(g: &Game) -> Self {
        let accepted = g
            .accepted_tuples()
            .map(|(x, y, a, b)| {
                [
                    g.inputs_a()[x].clone(),
                    g.inputs_b()[y].clone(),
                    g.outputs_a()[a].clone(),
                    g.outputs_b()[b].clone(),
                ]
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            name: g.name().to_string(),
            inputs_a: g.inputs_a().to_vec(),
            inputs_b: g.inputs_b().to_vec(),
            outputs_a: g.outputs_a().to_vec(),
            outputs_b: g.outputs_b().to_vec(),
            accepted,
        }
    }

    pub fn into_game(self) -> Result<Game, FormatError> {
        check_version(self.schema_version)?;
        let find = |set: &[String], label: &str, what: &str| {
            set.iter().position(|l| l == label).ok_or_else(|| {
                FormatError::Schema(format!(
                    "accepted tuple uses unknown {what} label {label:?}"
                ))
            })
        };
        let mut tuples = Vec::with_capacity(self.accepted.len());
        for [xa, xb, ya, yb] in &self.accepted {
            tuples.push((
                find(&self.inputs_a, xa, "inputs_a")?,
                find(&self.inputs_b, xb, "inputs_b")?,
                find(&self.outputs_a, ya, "outputs_a")?,
                find(&self.outputs_b, yb, "outputs_b")?,
            ));
        }
        Ok(Game::from_predicate(
            self.name,
            (self.inputs_a, self.inputs_b),
            (self.outputs_a, self.outputs_b),
            |x, y, a, b| tuples.contains(&(x, y, a, b)),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictDoc {
    pub schema_version: u32,
    pub violates_locality: bool,
    pub btwi: bool,
    pub pt: bool,
    pub arithmetic: &'static str,
    pub witness: String,
}

impl VerdictDoc {
    pub fn from_verdict(v: &NoGoVerdict) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            violates_locality: v.violates_locality,
            btwi: v.btwi,
            pt: v.pt,
            arithmetic: match v.arithmetic() {
                crate::behavior::Arithmetic::Exact => "exact",
                crate::behavior::Arithmetic::Numerical => "numerical",
            },
            witness: v.witness(),
        }
    }
}

pub fn behavior_from_str(s: &str) -> Result<Behavior, FormatError> {
    serde_json::from_str::<BehaviorDoc>(s)?.into_behavior()
}

pub fn behavior_to_string(b: &Behavior) -> String {
    serde_json::to_string_pretty(&BehaviorDoc::from_behavior(b)).expect("serializable")
}

pub fn expression_from_str(s: &str) -> Result<BellExpression, FormatError> {
    serde_json::from_str::<ExpressionDoc>(s)?.into_expression()
}

pub fn game_from_str(s: &str) -> Result<Game, FormatError> {
    serde_json::from_str::<GameDoc>(s)?.into_game()
}
