//! Bipartite conditional outcome tables and their local (LHV) structure.
//!
//! Tables are indexed `(x, y, a, b)` in row-major order: Alice's setting,
//! Bob's setting, Alice's outcome, Bob's outcome.

mod expression;
mod membership;
mod sampling;
mod simplex;
mod support;

pub use expression::{
    chsh_expression, evaluate_exact, evaluate_expression, lhv_bound, BellExpression, LhvBound,
};
pub use membership::{
    local_membership, local_membership_with, Arithmetic, Membership, MembershipConfig,
};
pub use sampling::{simulate_rounds, Simulation};
pub use support::{support_of, SupportTable, DEFAULT_EPS_SUPPORT};

use std::fmt;

use num::{One, Zero};

use crate::quantum::{outcome_probability_by_index, ProjectiveMeasurement, StateVector};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Default bound on the number of deterministic strategies any routine
/// will enumerate.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;
/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "NONLOCALITY_ENUM_CAP";
/// Tolerance for probability-table validation.
pub const EPS_PROB: f64 = 1e-9;

/// The enumeration cap in effect: `NONLOCALITY_ENUM_CAP` if set and
/// parseable, otherwise [`DEFAULT_ENUM_CAP`].
pub fn enum_cap() -> u64 {
    std::env::var(ENUM_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// Setting and outcome counts of a bipartite scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub inputs_a: usize,
    pub inputs_b: usize,
    pub outputs_a: usize,
    pub outputs_b: usize,
}

impl Scenario {
    pub fn new(
        inputs_a: usize,
        inputs_b: usize,
        outputs_a: usize,
        outputs_b: usize,
    ) -> Result<Self> {
        Self::with_cap(inputs_a, inputs_b, outputs_a, outputs_b, enum_cap())
    }

    pub fn with_cap(
        inputs_a: usize,
        inputs_b: usize,
        outputs_a: usize,
        outputs_b: usize,
        cap: u64,
    ) -> Result<Self> {
        if [inputs_a, inputs_b, outputs_a, outputs_b].contains(&0) {
            return Err(Error::InvalidArgument(
                "scenario counts must be at least 1".into(),
            ));
        }
        let s = Self {
            inputs_a,
            inputs_b,
            outputs_a,
            outputs_b,
        };
        s.check_cap(cap)?;
        Ok(s)
    }

    /// The CHSH/Hardy shape: two settings and two outcomes per side.
    pub fn binary_2x2() -> Self {
        Self {
            inputs_a: 2,
            inputs_b: 2,
            outputs_a: 2,
            outputs_b: 2,
        }
    }

    pub(crate) fn check_cap(&self, cap: u64) -> Result<()> {
        let count = self.strategy_count();
        if count > cap as u128 {
            return Err(Error::CapExceeded { count, cap });
        }
        Ok(())
    }

    fn party_count(outputs: usize, inputs: usize) -> u128 {
        (0..inputs).fold(1u128, |acc, _| acc.saturating_mul(outputs as u128))
    }

    pub fn strategies_a(&self) -> u128 {
        Self::party_count(self.outputs_a, self.inputs_a)
    }

    pub fn strategies_b(&self) -> u128 {
        Self::party_count(self.outputs_b, self.inputs_b)
    }

    /// `outputs_a^inputs_a · outputs_b^inputs_b`, saturating.
    pub fn strategy_count(&self) -> u128 {
        self.strategies_a().saturating_mul(self.strategies_b())
    }

    pub fn setting_pairs(&self) -> usize {
        self.inputs_a * self.inputs_b
    }

    pub fn outcome_pairs(&self) -> usize {
        self.outputs_a * self.outputs_b
    }

    pub fn table_len(&self) -> usize {
        self.setting_pairs() * self.outcome_pairs()
    }

    pub fn index(&self, x: usize, y: usize, a: usize, b: usize) -> usize {
        debug_assert!(x < self.inputs_a && y < self.inputs_b);
        debug_assert!(a < self.outputs_a && b < self.outputs_b);
        ((x * self.inputs_b + y) * self.outputs_a + a) * self.outputs_b + b
    }

    /// Inverse of [`Scenario::index`].
    pub fn coords(&self, index: usize) -> (usize, usize, usize, usize) {
        let b = index % self.outputs_b;
        let rest = index / self.outputs_b;
        let a = rest % self.outputs_a;
        let rest = rest / self.outputs_a;
        (rest / self.inputs_b, rest % self.inputs_b, a, b)
    }

    pub fn is_binary(&self) -> bool {
        self.outputs_a == 2 && self.outputs_b == 2
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{} settings, {}x{} outcomes",
            self.inputs_a, self.inputs_b, self.outputs_a, self.outputs_b
        )
    }
}

/// One output per setting for each party; the vertices of the local polytope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    pub map_a: Vec<usize>,
    pub map_b: Vec<usize>,
}

impl DeterministicStrategy {
    pub fn new(scenario: &Scenario, map_a: Vec<usize>, map_b: Vec<usize>) -> Result<Self> {
        if map_a.len() != scenario.inputs_a || map_b.len() != scenario.inputs_b {
            return Err(Error::ScenarioMismatch(
                "strategy tables must have one entry per setting".into(),
            ));
        }
        if map_a.iter().any(|&a| a >= scenario.outputs_a)
            || map_b.iter().any(|&b| b >= scenario.outputs_b)
        {
            return Err(Error::InvalidArgument(
                "strategy output out of range".into(),
            ));
        }
        Ok(Self { map_a, map_b })
    }

    /// Position of this strategy in lexicographic `(map_a, map_b)` order.
    pub fn rank(&self, scenario: &Scenario) -> u128 {
        let digits = |map: &[usize], base: usize| {
            map.iter()
                .fold(0u128, |acc, &d| acc * base as u128 + d as u128)
        };
        digits(&self.map_a, scenario.outputs_a) * scenario.strategies_b()
            + digits(&self.map_b, scenario.outputs_b)
    }

    /// The table position `(x, y, map_a(x), map_b(y))` for every setting pair.
    pub fn touched_indices<'a>(
        &'a self,
        scenario: &'a Scenario,
    ) -> impl Iterator<Item = usize> + 'a {
        (0..scenario.inputs_a).flat_map(move |x| {
            (0..scenario.inputs_b).map(move |y| scenario.index(x, y, self.map_a[x], self.map_b[y]))
        })
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |m: &[usize]| {
            m.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "A=({}) B=({})", join(&self.map_a), join(&self.map_b))
    }
}

/// Odometer over all deterministic strategies in lexicographic order.
#[derive(Debug, Clone)]
pub struct Strategies {
    scenario: Scenario,
    next: Option<DeterministicStrategy>,
}

impl Iterator for Strategies {
    type Item = DeterministicStrategy;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let s = &self.scenario;
        if advance(&mut succ.map_b, s.outputs_b) || advance(&mut succ.map_a, s.outputs_a) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Increments a little-endian-at-the-back digit string; false on wrap-around.
pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// All `outputs_a^inputs_a · outputs_b^inputs_b` deterministic strategies,
/// each exactly once, lexicographic on `(map_a, map_b)`.
pub fn enumerate_deterministic(s: &Scenario) -> Result<Strategies> {
    s.check_cap(enum_cap())?;
    Ok(Strategies {
        scenario: *s,
        next: Some(DeterministicStrategy {
            map_a: vec![0; s.inputs_a],
            map_b: vec![0; s.inputs_b],
        }),
    })
}

/// A conditional distribution `p(a,b|x,y)`.
///
/// Behaviors built from rational data keep an exact copy of the table; the
/// exact copy is what the simplex uses when present.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior {
    scenario: Scenario,
    table: Vec<f64>,
    exact: Option<Vec<Rational>>,
}

impl Behavior {
    pub fn new(scenario: Scenario, table: Vec<f64>) -> Result<Self> {
        if table.len() != scenario.table_len() {
            return Err(Error::DimensionMismatch {
                expected: scenario.table_len(),
                found: table.len(),
            });
        }
        for x in 0..scenario.inputs_a {
            for y in 0..scenario.inputs_b {
                let start = scenario.index(x, y, 0, 0);
                let block = &table[start..start + scenario.outcome_pairs()];
                if let Some(v) = block
                    .iter()
                    .find(|v| !v.is_finite() || **v < -EPS_PROB || **v > 1.0 + EPS_PROB)
                {
                    return Err(Error::InvalidBehavior {
                        x,
                        y,
                        reason: format!("entry {v} outside [0, 1]"),
                    });
                }
                let sum: f64 = block.iter().sum();
                if (sum - 1.0).abs() > EPS_PROB {
                    return Err(Error::InvalidBehavior {
                        x,
                        y,
                        reason: format!("outcomes sum to {sum}"),
                    });
                }
            }
        }
        Ok(Self {
            scenario,
            table,
            exact: None,
        })
    }

    pub fn from_exact(scenario: Scenario, table: Vec<Rational>) -> Result<Self> {
        if table.len() != scenario.table_len() {
            return Err(Error::DimensionMismatch {
                expected: scenario.table_len(),
                found: table.len(),
            });
        }
        for x in 0..scenario.inputs_a {
            for y in 0..scenario.inputs_b {
                let start = scenario.index(x, y, 0, 0);
                let block = &table[start..start + scenario.outcome_pairs()];
                if let Some(v) = block
                    .iter()
                    .find(|v| **v < Rational::zero() || **v > Rational::one())
                {
                    return Err(Error::InvalidBehavior {
                        x,
                        y,
                        reason: format!("entry {} outside [0, 1]", rational::display(v)),
                    });
                }
                let sum: Rational = block.iter().sum();
                if !sum.is_one() {
                    return Err(Error::InvalidBehavior {
                        x,
                        y,
                        reason: format!("outcomes sum to {}", rational::display(&sum)),
                    });
                }
            }
        }
        Ok(Self {
            scenario,
            table: table.iter().map(rational::to_f64).collect(),
            exact: Some(table),
        })
    }

    /// Exact convex combination of deterministic behaviors.
    pub fn mixture(
        scenario: Scenario,
        parts: &[(DeterministicStrategy, Rational)],
    ) -> Result<Self> {
        let mut table = vec![Rational::zero(); scenario.table_len()];
        for (d, w) in parts {
            if *w < Rational::zero() {
                return Err(Error::InvalidArgument("negative mixture weight".into()));
            }
            DeterministicStrategy::new(&scenario, d.map_a.clone(), d.map_b.clone())?;
            for i in d.touched_indices(&scenario) {
                table[i] += w;
            }
        }
        Self::from_exact(scenario, table)
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn exact(&self) -> Option<&[Rational]> {
        self.exact.as_deref()
    }

    pub fn p(&self, x: usize, y: usize, a: usize, b: usize) -> f64 {
        self.table[self.scenario.index(x, y, a, b)]
    }

    pub fn exact_p(&self, x: usize, y: usize, a: usize, b: usize) -> Option<&Rational> {
        self.exact
            .as_ref()
            .map(|t| &t[self.scenario.index(x, y, a, b)])
    }

    /// `½ Σ |p − q|` averaged over setting pairs.
    pub fn total_variation(&self, other: &Behavior) -> Result<f64> {
        if self.scenario != other.scenario {
            return Err(Error::ScenarioMismatch(format!(
                "{} vs {}",
                self.scenario, other.scenario
            )));
        }
        let l1: f64 = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(p, q)| (p - q).abs())
            .sum();
        Ok(0.5 * l1 / self.scenario.setting_pairs() as f64)
    }
}

/// Born-rule table for Alice measuring `meas_a[x]` and Bob `meas_b[y]` on a
/// two-party state.
pub fn behavior_from_quantum(
    state: &StateVector,
    meas_a: &[ProjectiveMeasurement],
    meas_b: &[ProjectiveMeasurement],
) -> Result<Behavior> {
    if state.dims().len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: state.dims().len(),
        });
    }
    if meas_a.is_empty() || meas_b.is_empty() {
        return Err(Error::InvalidArgument(
            "each party needs at least one setting".into(),
        ));
    }
    let oa = meas_a[0].outcome_count();
    let ob = meas_b[0].outcome_count();
    if meas_a.iter().any(|m| m.outcome_count() != oa)
        || meas_b.iter().any(|m| m.outcome_count() != ob)
    {
        return Err(Error::InvalidArgument(
            "all settings of a party must have the same number of outcomes".into(),
        ));
    }
    let scenario = Scenario::new(meas_a.len(), meas_b.len(), oa, ob)?;
    let mut table = vec![0.0; scenario.table_len()];
    for (x, ma) in meas_a.iter().enumerate() {
        for (y, mb) in meas_b.iter().enumerate() {
            let mut sum = 0.0;
            for a in 0..oa {
                for b in 0..ob {
                    let p = outcome_probability_by_index(state, &[ma, mb], &[a, b])?;
                    table[scenario.index(x, y, a, b)] = p;
                    sum += p;
                }
            }
            for a in 0..oa {
                for b in 0..ob {
                    table[scenario.index(x, y, a, b)] /= sum;
                }
            }
        }
    }
    Behavior::new(scenario, table)
}

/// `p(++) + p(−−) − p(+−) − p(−+)`; outcome index 0 is `+1`.
pub fn correlator(b: &Behavior, x: usize, y: usize) -> Result<f64> {
    let s = b.scenario();
    if !s.is_binary() {
        return Err(Error::NotBinary);
    }
    if x >= s.inputs_a || y >= s.inputs_b {
        return Err(Error::InvalidArgument(format!(
            "setting pair ({x}, {y}) out of range"
        )));
    }
    Ok(b.p(x, y, 0, 0) + b.p(x, y, 1, 1) - b.p(x, y, 0, 1) - b.p(x, y, 1, 0))
}

/// The 0/1 table of a deterministic strategy.
pub fn strategy_behavior(s: &Scenario, d: &DeterministicStrategy) -> Behavior {
    let mut table = vec![Rational::zero(); s.table_len()];
    for i in d.touched_indices(s) {
        table[i] = Rational::one();
    }
    Behavior::from_exact(*s, table).expect("deterministic tables are normalized")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::scenarios;

    #[test]
    fn strategy_counts() {
        let count = |s: Scenario| enumerate_deterministic(&s).unwrap().count();
        assert_eq!(count(Scenario::binary_2x2()), 16);
        assert_eq!(count(Scenario::new(3, 3, 4, 4).unwrap()), 4096);
        assert_eq!(count(Scenario::new(1, 1, 1, 1).unwrap()), 1);
        assert_eq!(count(Scenario::new(2, 3, 3, 2).unwrap()), 9 * 8);
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let s = Scenario::new(2, 2, 3, 2).unwrap();
        let all: Vec<_> = enumerate_deterministic(&s).unwrap().collect();
        for (i, d) in all.iter().enumerate() {
            assert_eq!(d.rank(&s), i as u128);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(
            Scenario::with_cap(2, 2, 2, 2, 15),
            Err(Error::CapExceeded { count: 16, cap: 15 })
        ));
        assert!(matches!(
            Scenario::new(10, 10, 8, 8),
            Err(Error::CapExceeded { .. })
        ));
        assert!(Scenario::new(0, 1, 1, 1).is_err());
    }

    #[test]
    fn index_round_trip() {
        let s = Scenario::new(3, 2, 4, 3).unwrap();
        for i in 0..s.table_len() {
            let (x, y, a, b) = s.coords(i);
            assert_eq!(s.index(x, y, a, b), i);
        }
    }

    #[test]
    fn strategy_behavior_table() {
        let s = Scenario::binary_2x2();
        let d = DeterministicStrategy::new(&s, vec![0, 0], vec![0, 0]).unwrap();
        let b = strategy_behavior(&s, &d);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(b.p(x, y, 0, 0), 1.0);
                assert_eq!(correlator(&b, x, y).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn behavior_validation_names_the_pair() {
        let s = Scenario::binary_2x2();
        let mut t = vec![0.25; 16];
        t[s.index(1, 0, 0, 0)] = 0.5;
        match Behavior::new(s, t) {
            Err(Error::InvalidBehavior { x: 1, y: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let mut t = vec![ratio(1, 4); 16];
        t[s.index(0, 1, 1, 1)] = ratio(1, 3);
        assert!(matches!(
            Behavior::from_exact(s, t),
            Err(Error::InvalidBehavior { x: 0, y: 1, .. })
        ));
    }

    #[test]
    fn white_noise_correlator() {
        let b = Behavior::new(Scenario::binary_2x2(), vec![0.25; 16]).unwrap();
        assert_eq!(correlator(&b, 1, 0).unwrap(), 0.0);
        let b3 = Behavior::new(Scenario::new(1, 1, 3, 3).unwrap(), vec![1.0 / 9.0; 9]).unwrap();
        assert_eq!(correlator(&b3, 0, 0), Err(Error::NotBinary));
    }

    #[test]
    fn hardy_quantum_table() {
        let b = scenarios::hardy_behavior();
        // settings: 0 = σ_z, 1 = σ_x; outcomes: 0 = +, 1 = −
        assert!((b.p(1, 1, 1, 1) - 1.0 / 12.0).abs() < 1e-12);
        assert!(b.p(1, 0, 1, 1).abs() < 1e-12);
        assert!(b.p(0, 1, 1, 1).abs() < 1e-12);
        assert!(b.p(0, 0, 0, 0).abs() < 1e-12);
    }

    #[test]
    fn product_state_table() {
        let pp = StateVector::basis(vec![2, 2], 0).unwrap();
        let z = ProjectiveMeasurement::sigma_z();
        let b = behavior_from_quantum(&pp, std::slice::from_ref(&z), std::slice::from_ref(&z)).unwrap();
        assert_eq!(b.p(0, 0, 0, 0), 1.0);
    }

    #[test]
    fn singlet_correlator_matches_expectation() {
        use crate::quantum::{expectation, Operator};
        let psi = scenarios::singlet();
        let z = ProjectiveMeasurement::sigma_z();
        let b = behavior_from_quantum(&psi, std::slice::from_ref(&z), std::slice::from_ref(&z)).unwrap();
        let direct = expectation(&psi, &[Operator::pauli_z(), Operator::pauli_z()]).unwrap();
        assert!((correlator(&b, 0, 0).unwrap() - direct).abs() < 1e-12);
        assert!((direct + 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixture_is_exact() {
        let s = Scenario::binary_2x2();
        let d1 = DeterministicStrategy::new(&s, vec![0, 1], vec![1, 0]).unwrap();
        let d2 = DeterministicStrategy::new(&s, vec![1, 1], vec![0, 0]).unwrap();
        let b = Behavior::mixture(s, &[(d1, ratio(1, 3)), (d2, ratio(2, 3))]).unwrap();
        assert_eq!(b.exact_p(0, 0, 0, 1), Some(&ratio(1, 3)));
        assert_eq!(b.exact_p(0, 0, 1, 0), Some(&ratio(2, 3)));
    }
}
