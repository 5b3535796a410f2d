use super::{Behavior, Scenario};
use crate::{Error, Result};

/// Default threshold separating "possible" from "forbidden" entries.
pub const DEFAULT_EPS_SUPPORT: f64 = 1e-9;

/// The zero/nonzero pattern of a behavior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTable {
    scenario: Scenario,
    possible: Vec<bool>,
}

impl SupportTable {
    /// Every setting pair must allow at least one outcome.
    pub fn new(scenario: Scenario, possible: Vec<bool>) -> Result<Self> {
        if possible.len() != scenario.table_len() {
            return Err(Error::DimensionMismatch {
                expected: scenario.table_len(),
                found: possible.len(),
            });
        }
        let t = Self { scenario, possible };
        if let Some((x, y)) = t.first_empty_pair() {
            return Err(Error::InvalidBehavior {
                x,
                y,
                reason: "no possible outcome".into(),
            });
        }
        Ok(t)
    }

    pub fn full(scenario: Scenario) -> Self {
        Self {
            scenario,
            possible: vec![true; scenario.table_len()],
        }
    }

    fn first_empty_pair(&self) -> Option<(usize, usize)> {
        let s = &self.scenario;
        let width = s.outcome_pairs();
        self.possible
            .chunks(width)
            .position(|block| !block.iter().any(|&p| p))
            .map(|pair| (pair / s.inputs_b, pair % s.inputs_b))
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn possible(&self) -> &[bool] {
        &self.possible
    }

    pub fn is_possible(&self, x: usize, y: usize, a: usize, b: usize) -> bool {
        self.possible[self.scenario.index(x, y, a, b)]
    }

    /// Marks one more outcome as possible.
    pub fn with_possible(mut self, x: usize, y: usize, a: usize, b: usize) -> Self {
        let i = self.scenario.index(x, y, a, b);
        self.possible[i] = true;
        self
    }
}

/// `possible(x,y,a,b) = p(a,b|x,y) > eps_support`.
pub fn support_of(b: &Behavior, eps_support: f64) -> Result<SupportTable> {
    if eps_support.is_nan() || eps_support <= 0.0 {
        return Err(Error::InvalidArgument(
            "eps_support must be positive".into(),
        ));
    }
    let s = *b.scenario();
    let t = SupportTable {
        scenario: s,
        possible: b.table().iter().map(|&p| p > eps_support).collect(),
    };
    match t.first_empty_pair() {
        Some((x, y)) => Err(Error::EmptySupport {
            x,
            y,
            eps: eps_support,
        }),
        None => Ok(t),
    }
}
