//! Decision procedures for the three forms of local-hidden-variable no-go
//! theorem.
//!
//! - Bell theorem: the behavior lies outside the local polytope.
//! - Bell theorem without inequalities: no local model both stays inside
//!   the quantum support and produces every quantum-possible outcome.
//! - Pseudo-telepathy: no deterministic strategy stays inside the support.
//!
//! A deterministic strategy *respects* a support table when, on every
//! setting pair, the outcome it produces is possible. Mixtures of
//! respecting strategies are exactly the local models that never emit a
//! forbidden outcome, and such a mixture can produce an outcome iff some
//! strategy in it does. Both possibilistic tests therefore reduce to the
//! set of respecting strategies and the outcomes they cover.

use std::fmt;

use serde::Serialize;

use crate::behavior::{
    enumerate_deterministic, local_membership_with, support_of, Arithmetic, Behavior,
    DeterministicStrategy, Membership, MembershipConfig, Scenario, SupportTable,
};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyFilterResult {
    scenario: Scenario,
    pub respecting: Vec<DeterministicStrategy>,
    /// Indexed `(x, y, a, b)`; true where some respecting strategy lands.
    pub coverage: Vec<bool>,
}

impl StrategyFilterResult {
    pub fn is_covered(&self, x: usize, y: usize, a: usize, b: usize) -> bool {
        self.coverage[self.scenario.index(x, y, a, b)]
    }

    /// First possible outcome, in `(x, y, a, b)` order, that no respecting
    /// strategy produces.
    pub fn first_uncovered(&self, support: &SupportTable) -> Option<(usize, usize, usize, usize)> {
        support
            .possible()
            .iter()
            .zip(&self.coverage)
            .position(|(&p, &c)| p && !c)
            .map(|i| self.scenario.coords(i))
    }
}

pub fn support_respecting_strategies(s: &SupportTable) -> Result<StrategyFilterResult> {
    let scenario = *s.scenario();
    let possible = s.possible();
    let mut coverage = vec![false; scenario.table_len()];
    let mut respecting = Vec::new();
    for d in enumerate_deterministic(&scenario)? {
        if d.touched_indices(&scenario).all(|i| possible[i]) {
            for i in d.touched_indices(&scenario) {
                coverage[i] = true;
            }
            respecting.push(d);
        }
    }
    Ok(StrategyFilterResult {
        scenario,
        respecting,
        coverage,
    })
}

/// Evidence for a possibilistic verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SupportWitness {
    /// Every deterministic strategy emits some forbidden outcome.
    EmptyRespectingSet,
    /// A quantum-possible outcome that no respecting strategy produces.
    Uncovered {
        x: usize,
        y: usize,
        a: usize,
        b: usize,
    },
}

impl fmt::Display for SupportWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportWitness::EmptyRespectingSet => {
                write!(f, "no deterministic strategy avoids every forbidden outcome")
            }
            SupportWitness::Uncovered { x, y, a, b } => write!(
                f,
                "outcome (a={a}, b={b}) on settings (x={x}, y={y}) is possible but no local model avoiding forbidden outcomes produces it"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<SupportWitness>,
}

/// True iff no deterministic strategy stays within the support.
pub fn is_pseudotelepathic(s: &SupportTable) -> Result<Decision> {
    let filter = support_respecting_strategies(s)?;
    Ok(pt_from_filter(&filter))
}

fn pt_from_filter(filter: &StrategyFilterResult) -> Decision {
    let holds = filter.respecting.is_empty();
    Decision {
        holds,
        witness: holds.then_some(SupportWitness::EmptyRespectingSet),
    }
}

/// True iff the respecting set is empty or leaves some possible outcome
/// uncovered.
pub fn is_btwi(s: &SupportTable) -> Result<Decision> {
    let filter = support_respecting_strategies(s)?;
    Ok(btwi_from_filter(s, &filter))
}

fn btwi_from_filter(s: &SupportTable, filter: &StrategyFilterResult) -> Decision {
    if filter.respecting.is_empty() {
        return Decision {
            holds: true,
            witness: Some(SupportWitness::EmptyRespectingSet),
        };
    }
    match filter.first_uncovered(s) {
        Some((x, y, a, b)) => Decision {
            holds: true,
            witness: Some(SupportWitness::Uncovered { x, y, a, b }),
        },
        None => Decision {
            holds: false,
            witness: None,
        },
    }
}

/// Placement of a behavior in the no-go hierarchy.
#[derive(Debug, Clone, PartialEq)]
pub struct NoGoVerdict {
    pub violates_locality: bool,
    pub btwi: bool,
    pub pt: bool,
    pub membership: Membership,
    pub support_witness: Option<SupportWitness>,
}

impl NoGoVerdict {
    pub fn arithmetic(&self) -> Arithmetic {
        self.membership.arithmetic()
    }

    /// Human-readable evidence for the strongest form that holds.
    pub fn witness(&self) -> String {
        if let Some(w) = &self.support_witness {
            return w.to_string();
        }
        match &self.membership {
            Membership::Nonlocal { residual, .. } => format!(
                "no convex combination of deterministic strategies reproduces the table (least L1 residual {})",
                short_rational(residual)
            ),
            Membership::Local { weights, .. } => {
                format!("local model with {} deterministic strategies", weights.len())
            }
        }
    }

    /// `pt ⇒ btwi ⇒ violates_locality`.
    pub fn is_consistent(&self) -> bool {
        (!self.pt || self.btwi) && (!self.btwi || self.violates_locality)
    }
}

fn short_rational(r: &Rational) -> String {
    let s = rational::display(r);
    if s.len() <= 24 {
        s
    } else {
        format!("{:.6e}", rational::to_f64(r))
    }
}

/// Runs the locality test and both possibilistic tests.
///
/// The membership test prunes at the same `eps_support` and accepts only
/// residuals below `eps_support / 2`, so a local verdict always covers the
/// whole support and the hierarchy holds by construction.
pub fn classify(b: &Behavior, eps_support: f64) -> Result<NoGoVerdict> {
    let support = support_of(b, eps_support)?;
    let filter = support_respecting_strategies(&support)?;
    let pt = pt_from_filter(&filter);
    let btwi = btwi_from_filter(&support, &filter);
    let cfg = MembershipConfig {
        eps_support,
        ..MembershipConfig::default()
    };
    let membership = local_membership_with(b, &cfg)?;
    let verdict = NoGoVerdict {
        violates_locality: !membership.is_local(),
        btwi: btwi.holds,
        pt: pt.holds,
        membership,
        support_witness: btwi.witness,
    };
    debug_assert!(verdict.is_consistent(), "hierarchy violated: {verdict:?}");
    Ok(verdict)
}

/// The four probabilities the Hardy argument cites.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyValues {
    /// `p(−,−|σ_x,σ_x)`
    pub minus_minus_xx: f64,
    /// `p(−,−|σ_x,σ_z)`
    pub minus_minus_xz: f64,
    /// `p(−,−|σ_z,σ_x)`
    pub minus_minus_zx: f64,
    /// `p(+,+|σ_z,σ_z)`
    pub plus_plus_zz: f64,
    /// Same four values when the behavior is exact.
    pub exact: Option<[Rational; 4]>,
}

impl HardyValues {
    pub fn as_array(&self) -> [f64; 4] {
        [
            self.minus_minus_xx,
            self.minus_minus_xz,
            self.minus_minus_zx,
            self.plus_plus_zz,
        ]
    }

    fn show(&self, k: usize) -> String {
        match &self.exact {
            Some(e) => rational::display(&e[k]),
            None => format!("{:.10}", self.as_array()[k]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HardyOutcome {
    Contradiction,
    NoContradiction(String),
    PremiseVacuous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyChain {
    pub values: HardyValues,
    pub steps: Vec<String>,
    pub outcome: HardyOutcome,
}

/// Walks the Hardy argument on a 2×2 binary behavior with setting 0 =
/// `σ_z`, setting 1 = `σ_x`, outcome 0 = `+`, outcome 1 = `−`.
pub fn hardy_chain(b: &Behavior, eps: f64) -> Result<HardyChain> {
    if *b.scenario() != Scenario::binary_2x2() {
        return Err(Error::ScenarioMismatch(format!(
            "the Hardy argument needs 2 settings and 2 outcomes per side, got {}",
            b.scenario()
        )));
    }
    const Z: usize = 0;
    const X: usize = 1;
    const PLUS: usize = 0;
    const MINUS: usize = 1;
    let points = [
        (X, X, MINUS, MINUS),
        (X, Z, MINUS, MINUS),
        (Z, X, MINUS, MINUS),
        (Z, Z, PLUS, PLUS),
    ];
    let v = points.map(|(x, y, a, c)| b.p(x, y, a, c));
    let exact = b
        .exact()
        .map(|_| points.map(|(x, y, a, c)| b.exact_p(x, y, a, c).cloned().expect("exact table")));
    let values = HardyValues {
        minus_minus_xx: v[0],
        minus_minus_xz: v[1],
        minus_minus_zx: v[2],
        plus_plus_zz: v[3],
        exact,
    };

    let mut steps = vec![format!(
        "(1) Suppose a local hidden-variable instance yields (-,-) on (x,x); quantum mechanics gives p(-,-|x,x) = {}.",
        values.show(0)
    )];
    if v[0] <= eps {
        steps.push("The premise never occurs, so the argument is vacuous.".into());
        return Ok(HardyChain {
            values,
            steps,
            outcome: HardyOutcome::PremiseVacuous,
        });
    }
    if v[1] > eps || v[2] > eps {
        let reason = format!(
            "p(-,-|x,z) = {} and p(-,-|z,x) = {}: the local z outputs are not forced",
            values.show(1),
            values.show(2)
        );
        steps.push(format!("(2) {reason}."));
        return Ok(HardyChain {
            values,
            steps,
            outcome: HardyOutcome::NoContradiction(reason),
        });
    }
    steps.push(format!(
        "(2) p(-,-|x,z) = {} with Alice's x output -, so Bob's z output is +; p(-,-|z,x) = {} with Bob's x output -, so Alice's z output is +.",
        values.show(1),
        values.show(2)
    ));
    steps.push("(3) Both local z outputs are +, so this instance yields (+,+) on (z,z).".into());
    if v[3] > eps {
        let reason = format!("p(+,+|z,z) = {} allows the forced outcome", values.show(3));
        steps.push(format!("(4) {reason}; no contradiction."));
        return Ok(HardyChain {
            values,
            steps,
            outcome: HardyOutcome::NoContradiction(reason),
        });
    }
    steps.push(format!(
        "(4) p(+,+|z,z) = {}: contradiction. A local model producing (-,-) on (x,x) must also produce the forbidden (+,+) on (z,z).",
        values.show(3)
    ));
    Ok(HardyChain {
        values,
        steps,
        outcome: HardyOutcome::Contradiction,
    })
}
