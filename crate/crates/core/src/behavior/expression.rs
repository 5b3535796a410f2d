use num::{One, Zero};

use super::{enum_cap, Behavior, DeterministicStrategy, Scenario};
use crate::rational::{rationalize, Rational, DEFAULT_RATIONAL_TOL};
use crate::{Error, Result};

/// A linear functional `Σ c(x,y,a,b) · p(a,b|x,y)` with rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BellExpression {
    scenario: Scenario,
    coeffs: Vec<Rational>,
    description: String,
}

impl BellExpression {
    pub fn new(
        scenario: Scenario,
        coeffs: Vec<Rational>,
        description: impl Into<String>,
    ) -> Result<Self> {
        if coeffs.len() != scenario.table_len() {
            return Err(Error::DimensionMismatch {
                expected: scenario.table_len(),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            scenario,
            coeffs,
            description: description.into(),
        })
    }

    /// Floating-point coefficients, rationalized by continued fractions.
    pub fn from_f64(
        scenario: Scenario,
        coeffs: &[f64],
        description: impl Into<String>,
    ) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("expression coefficients"));
        }
        let exact = coeffs
            .iter()
            .map(|&c| rationalize(c, DEFAULT_RATIONAL_TOL))
            .collect();
        Self::new(scenario, exact, description)
    }

    /// `Σ w(x,y) ⟨A_x B_y⟩` for a binary scenario, with outcome index 0 as `+1`.
    pub fn from_correlators(
        scenario: Scenario,
        weights: &[Rational],
        description: impl Into<String>,
    ) -> Result<Self> {
        if !scenario.is_binary() {
            return Err(Error::NotBinary);
        }
        if weights.len() != scenario.setting_pairs() {
            return Err(Error::DimensionMismatch {
                expected: scenario.setting_pairs(),
                found: weights.len(),
            });
        }
        let mut coeffs = vec![Rational::zero(); scenario.table_len()];
        for x in 0..scenario.inputs_a {
            for y in 0..scenario.inputs_b {
                let w = &weights[x * scenario.inputs_b + y];
                for a in 0..2 {
                    for b in 0..2 {
                        coeffs[scenario.index(x, y, a, b)] =
                            if a == b { w.clone() } else { -w.clone() };
                    }
                }
            }
        }
        Self::new(scenario, coeffs, description)
    }

    pub fn zero(scenario: Scenario) -> Self {
        Self {
            scenario,
            coeffs: vec![Rational::zero(); scenario.table_len()],
            description: "zero".into(),
        }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, x: usize, y: usize, a: usize, b: usize) -> &Rational {
        &self.coeffs[self.scenario.index(x, y, a, b)]
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Exact value on a deterministic strategy.
    pub fn value_at(&self, d: &DeterministicStrategy) -> Rational {
        d.touched_indices(&self.scenario)
            .map(|i| &self.coeffs[i])
            .sum()
    }
}

/// `⟨A₀B₀⟩ + ⟨A₀B₁⟩ + ⟨A₁B₀⟩ − ⟨A₁B₁⟩`.
pub fn chsh_expression() -> BellExpression {
    let w = [
        Rational::one(),
        Rational::one(),
        Rational::one(),
        -Rational::one(),
    ];
    BellExpression::from_correlators(Scenario::binary_2x2(), &w, "CHSH: E00 + E01 + E10 - E11")
        .expect("binary scenario")
}

fn check_scenarios(e: &BellExpression, b: &Behavior) -> Result<()> {
    if e.scenario() != b.scenario() {
        return Err(Error::ScenarioMismatch(format!(
            "{} vs {}",
            e.scenario(),
            b.scenario()
        )));
    }
    Ok(())
}

pub fn evaluate_expression(e: &BellExpression, b: &Behavior) -> Result<f64> {
    check_scenarios(e, b)?;
    Ok(e.coeffs
        .iter()
        .zip(b.table())
        .map(|(c, p)| crate::rational::to_f64(c) * p)
        .sum())
}

/// Exact value, available when the behavior carries an exact table.
pub fn evaluate_exact(e: &BellExpression, b: &Behavior) -> Result<Option<Rational>> {
    check_scenarios(e, b)?;
    Ok(b.exact()
        .map(|t| e.coeffs.iter().zip(t).map(|(c, p)| c * p).sum()))
}

/// Maximum of an expression over local models, with the first maximizing
/// deterministic strategy in `(map_a, map_b)` lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct LhvBound {
    pub value: Rational,
    pub strategy: DeterministicStrategy,
}

/// Exact local bound. For each of Alice's deterministic maps the expression
/// separates over Bob's settings, so each `map_b(y)` is chosen independently;
/// the smallest maximizing output keeps the lexicographic tie-break.
pub fn lhv_bound(e: &BellExpression) -> Result<LhvBound> {
    let s = *e.scenario();
    s.check_cap(enum_cap())?;
    let mut map_a = vec![0usize; s.inputs_a];
    let mut best: Option<LhvBound> = None;
    loop {
        let mut total = Rational::zero();
        let mut map_b = Vec::with_capacity(s.inputs_b);
        for y in 0..s.inputs_b {
            let mut best_b: Option<(usize, Rational)> = None;
            for b in 0..s.outputs_b {
                let v: Rational = (0..s.inputs_a).map(|x| e.coeff(x, y, map_a[x], b)).sum();
                if best_b.as_ref().is_none_or(|(_, bv)| v > *bv) {
                    best_b = Some((b, v));
                }
            }
            let (b, v) = best_b.expect("at least one output");
            map_b.push(b);
            total += v;
        }
        if best.as_ref().is_none_or(|cur| total > cur.value) {
            best = Some(LhvBound {
                value: total,
                strategy: DeterministicStrategy {
                    map_a: map_a.clone(),
                    map_b,
                },
            });
        }
        if !super::advance(&mut map_a, s.outputs_a) {
            break;
        }
    }
    Ok(best.expect("at least one strategy"))
}
