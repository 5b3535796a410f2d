//! Bipartite nonlocal games `G = (X, Y, R)`.
//!
//! A game is tabulated as a relation over `(x_a, x_b, y_a, y_b)` on the
//! same row-major index as a [`Behavior`], so a game, its Bell expression
//! and quantum behaviors induced by strategies share one [`Scenario`].

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use crate::behavior::{
    advance, behavior_from_quantum, enum_cap, Behavior, BellExpression, DeterministicStrategy,
    Scenario,
};
use crate::quantum::{
    outcome_probability_by_index, tensor_op, Operator, ProjectiveMeasurement, StateVector,
};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    name: String,
    inputs_a: Vec<String>,
    inputs_b: Vec<String>,
    outputs_a: Vec<String>,
    outputs_b: Vec<String>,
    scenario: Scenario,
    accepted: Vec<bool>,
}

impl Game {
    /// Tabulates `relation(x_a, x_b, y_a, y_b)` over the full product of
    /// label indices.
    pub fn from_predicate(
        name: impl Into<String>,
        inputs: (Vec<String>, Vec<String>),
        outputs: (Vec<String>, Vec<String>),
        relation: impl Fn(usize, usize, usize, usize) -> bool,
    ) -> Result<Self> {
        let (inputs_a, inputs_b) = inputs;
        let (outputs_a, outputs_b) = outputs;
        for (what, set) in [
            ("inputs_a", &inputs_a),
            ("inputs_b", &inputs_b),
            ("outputs_a", &outputs_a),
            ("outputs_b", &outputs_b),
        ] {
            if set.is_empty() {
                return Err(Error::InvalidArgument(format!("{what} is empty")));
            }
            for (i, l) in set.iter().enumerate() {
                if set[..i].contains(l) {
                    return Err(Error::InvalidArgument(format!(
                        "duplicate label {l:?} in {what}"
                    )));
                }
            }
        }
        let scenario = Scenario::new(
            inputs_a.len(),
            inputs_b.len(),
            outputs_a.len(),
            outputs_b.len(),
        )?;
        let accepted = (0..scenario.table_len())
            .map(|i| {
                let (x, y, a, b) = scenario.coords(i);
                relation(x, y, a, b)
            })
            .collect();
        Ok(Self {
            name: name.into(),
            inputs_a,
            inputs_b,
            outputs_a,
            outputs_b,
            scenario,
            accepted,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs_a(&self) -> &[String] {
        &self.inputs_a
    }

    pub fn inputs_b(&self) -> &[String] {
        &self.inputs_b
    }

    pub fn outputs_a(&self) -> &[String] {
        &self.outputs_a
    }

    pub fn outputs_b(&self) -> &[String] {
        &self.outputs_b
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn wins(&self, x: usize, y: usize, a: usize, b: usize) -> bool {
        self.accepted[self.scenario.index(x, y, a, b)]
    }

    /// Accepted tuples as index quadruples, in table order.
    pub fn accepted_tuples(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.accepted
            .iter()
            .enumerate()
            .filter(|(_, &w)| w)
            .map(|(i, _)| self.scenario.coords(i))
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Bit `k` (0-based, left to right) of a three-bit answer.
fn answer_bit(answer: usize, k: usize) -> usize {
    (answer >> (2 - k)) & 1
}

/// Alice gets a row, Bob a column; each answers three bits. Alice's bits
/// must have even parity, Bob's odd, and they must agree on the shared cell.
pub fn magic_square() -> Game {
    let trits: Vec<String> = (0..3).map(|i| i.to_string()).collect();
    let answers: Vec<String> = (0..8).map(|o| format!("{o:03b}")).collect();
    Game::from_predicate(
        "magic-square",
        (trits.clone(), trits),
        (answers.clone(), answers),
        |row, col, ya, yb| {
            let parity = |o: usize| (0..3).map(|k| answer_bit(o, k)).sum::<usize>() % 2;
            parity(ya) == 0 && parity(yb) == 1 && answer_bit(ya, col) == answer_bit(yb, row)
        },
    )
    .expect("well-formed game")
}

/// Win iff `a ⊕ b = x ∧ y`.
pub fn chsh_game() -> Game {
    Game::from_predicate(
        "chsh-game",
        (labels("", 2), labels("", 2)),
        (labels("", 2), labels("", 2)),
        |x, y, a, b| (a ^ b) == (x & y),
    )
    .expect("well-formed game")
}

/// Looks up a built-in game by its CLI name.
pub fn builtin(name: &str) -> Option<Game> {
    match name {
        "magic-square" => Some(magic_square()),
        "chsh-game" => Some(chsh_game()),
        _ => None,
    }
}

/// Probabilities over input pairs, indexed `x_a * |X_b| + x_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDistribution(Vec<Rational>);

impl InputDistribution {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(|w| *w < Rational::zero()) {
            return Err(Error::InvalidArgument("negative input probability".into()));
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidArgument(format!(
                "input probabilities sum to {}",
                rational::display(&sum)
            )));
        }
        Ok(Self(weights))
    }

    pub fn uniform(s: &Scenario) -> Self {
        let n = s.setting_pairs() as i64;
        Self(vec![rational::ratio(1, n); n as usize])
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    fn check(&self, s: &Scenario) -> Result<()> {
        if self.0.len() != s.setting_pairs() {
            return Err(Error::DimensionMismatch {
                expected: s.setting_pairs(),
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalValue {
    pub value: Rational,
    /// First optimal strategy in `(map_a, map_b)` lexicographic order.
    pub strategy: DeterministicStrategy,
}

/// Optimal winning probability without communication, by enumerating every
/// pair of deterministic answer tables. Shared randomness is a convex
/// combination of these, so it cannot do better.
pub fn classical_value(g: &Game, dist: Option<&InputDistribution>) -> Result<ClassicalValue> {
    let s = *g.scenario();
    s.check_cap(enum_cap())?;
    let uniform;
    let dist = match dist {
        Some(d) => d,
        None => {
            uniform = InputDistribution::uniform(&s);
            &uniform
        }
    };
    dist.check(&s)?;

    // Integer weights over a common denominator keep the inner loop exact.
    let denom = dist
        .weights()
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let weights: Vec<i128> = dist
        .weights()
        .iter()
        .map(|w| {
            (w * Rational::from_integer(denom.clone()))
                .to_integer()
                .to_i128()
        })
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Error::InvalidArgument("input distribution denominators too large".into())
        })?;

    let mut map_a = vec![0usize; s.inputs_a];
    let mut best: Option<(i128, DeterministicStrategy)> = None;
    loop {
        let mut map_b = vec![0usize; s.inputs_b];
        loop {
            let mut score = 0i128;
            for x in 0..s.inputs_a {
                for y in 0..s.inputs_b {
                    if g.wins(x, y, map_a[x], map_b[y]) {
                        score += weights[x * s.inputs_b + y];
                    }
                }
            }
            if best.as_ref().is_none_or(|(b, _)| score > *b) {
                best = Some((
                    score,
                    DeterministicStrategy {
                        map_a: map_a.clone(),
                        map_b: map_b.clone(),
                    },
                ));
            }
            if !advance(&mut map_b, s.outputs_b) {
                break;
            }
        }
        if !advance(&mut map_a, s.outputs_a) {
            break;
        }
    }
    let (score, strategy) = best.expect("at least one strategy");
    Ok(ClassicalValue {
        value: Rational::new(BigInt::from(score), denom),
        strategy,
    })
}

/// Coefficient `dist(x,y)` on every accepted tuple, zero elsewhere. Its
/// local bound is the classical value and its value on a winning quantum
/// behavior is the algebraic maximum 1.
pub fn game_to_bell_expression(
    g: &Game,
    dist: Option<&InputDistribution>,
) -> Result<BellExpression> {
    let s = *g.scenario();
    let uniform = InputDistribution::uniform(&s);
    let dist = dist.unwrap_or(&uniform);
    dist.check(&s)?;
    let coeffs = (0..s.table_len())
        .map(|i| {
            let (x, y, _, _) = s.coords(i);
            if g.accepted[i] {
                dist.weights()[x * s.inputs_b + y].clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    BellExpression::new(s, coeffs, format!("winning probability of {}", g.name()))
}

/// A shared state with one measurement per input for each player; outcome
/// `k` of a measurement is the player's `k`-th output label.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumStrategy {
    pub shared_state: StateVector,
    pub meas_a: Vec<ProjectiveMeasurement>,
    pub meas_b: Vec<ProjectiveMeasurement>,
}

impl QuantumStrategy {
    pub fn new(
        shared_state: StateVector,
        meas_a: Vec<ProjectiveMeasurement>,
        meas_b: Vec<ProjectiveMeasurement>,
    ) -> Result<Self> {
        if shared_state.dims().len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: shared_state.dims().len(),
            });
        }
        for (party, meas) in [&meas_a, &meas_b].into_iter().enumerate() {
            let d = shared_state.dims()[party];
            if let Some(m) = meas.iter().find(|m| m.dim() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: m.dim(),
                });
            }
        }
        Ok(Self {
            shared_state,
            meas_a,
            meas_b,
        })
    }

    /// Deterministic answers realized as trivial measurements on `|0⟩|0⟩`.
    pub fn from_deterministic(g: &Game, d: &DeterministicStrategy) -> Result<Self> {
        let s = g.scenario();
        let d = DeterministicStrategy::new(s, d.map_a.clone(), d.map_b.clone())?;
        let meas_a = d
            .map_a
            .iter()
            .map(|&a| ProjectiveMeasurement::deterministic(1, s.outputs_a, a))
            .collect::<Result<_>>()?;
        let meas_b = d
            .map_b
            .iter()
            .map(|&b| ProjectiveMeasurement::deterministic(1, s.outputs_b, b))
            .collect::<Result<_>>()?;
        Self::new(StateVector::basis(vec![1, 1], 0)?, meas_a, meas_b)
    }

    fn check_game(&self, g: &Game) -> Result<()> {
        let s = g.scenario();
        if self.meas_a.len() != s.inputs_a || self.meas_b.len() != s.inputs_b {
            return Err(Error::ScenarioMismatch(format!(
                "strategy has {}x{} measurements, game has {}x{} inputs",
                self.meas_a.len(),
                self.meas_b.len(),
                s.inputs_a,
                s.inputs_b
            )));
        }
        if self.meas_a.iter().any(|m| m.outcome_count() != s.outputs_a)
            || self.meas_b.iter().any(|m| m.outcome_count() != s.outputs_b)
        {
            return Err(Error::ScenarioMismatch(
                "measurement outcomes do not match game outputs".into(),
            ));
        }
        Ok(())
    }

    /// Probability of each accepted answer pair, per input pair.
    pub fn behavior(&self) -> Result<Behavior> {
        behavior_from_quantum(&self.shared_state, &self.meas_a, &self.meas_b)
    }

    /// Probability mass on rejected answers for each input pair.
    pub fn losing_mass(&self, g: &Game) -> Result<Vec<f64>> {
        self.check_game(g)?;
        let s = g.scenario();
        let mut out = Vec::with_capacity(s.setting_pairs());
        for x in 0..s.inputs_a {
            for y in 0..s.inputs_b {
                let mut lose = 0.0;
                for a in 0..s.outputs_a {
                    for b in 0..s.outputs_b {
                        if !g.wins(x, y, a, b) {
                            lose += outcome_probability_by_index(
                                &self.shared_state,
                                &[&self.meas_a[x], &self.meas_b[y]],
                                &[a, b],
                            )?;
                        }
                    }
                }
                out.push(lose);
            }
        }
        Ok(out)
    }
}

pub fn quantum_win_probability(
    g: &Game,
    qs: &QuantumStrategy,
    dist: Option<&InputDistribution>,
) -> Result<f64> {
    qs.check_game(g)?;
    let s = *g.scenario();
    let uniform = InputDistribution::uniform(&s);
    let dist = dist.unwrap_or(&uniform);
    dist.check(&s)?;
    let mut total = 0.0;
    for x in 0..s.inputs_a {
        for y in 0..s.inputs_b {
            let w = rational::to_f64(&dist.weights()[x * s.inputs_b + y]);
            if w == 0.0 {
                continue;
            }
            let mut win = 0.0;
            for a in 0..s.outputs_a {
                for b in 0..s.outputs_b {
                    if g.wins(x, y, a, b) {
                        win += outcome_probability_by_index(
                            &qs.shared_state,
                            &[&qs.meas_a[x], &qs.meas_b[y]],
                            &[a, b],
                        )?;
                    }
                }
            }
            total += w * win;
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// True iff every input pair puts less than `eps` on rejected answers.
pub fn is_winning_strategy(g: &Game, qs: &QuantumStrategy, eps: f64) -> Result<bool> {
    Ok(qs.losing_mass(g)?.iter().all(|&m| m < eps))
}

/// The two-qubit observable square: every row multiplies to `+I`, every
/// column to `−I`.
fn observable_square() -> [[Operator; 3]; 3] {
    let (i, x, y, z) = (
        Operator::identity(2),
        Operator::pauli_x(),
        Operator::pauli_y(),
        Operator::pauli_z(),
    );
    let t = |a: &Operator, b: &Operator| tensor_op(a, b).expect("4x4");
    [
        [t(&x, &i), t(&i, &x), t(&x, &x)],
        [t(&i, &z), t(&z, &i), t(&z, &z)],
        [t(&x, &z).scaled(-1.0), t(&z, &x).scaled(-1.0), t(&y, &y)],
    ]
}

/// Joint measurement of three commuting `±1` observables; answer bit `k` is
/// 0 for eigenvalue `+1` of `observables[k]` and 1 for `−1`.
fn three_bit_measurement(observables: [&Operator; 3]) -> ProjectiveMeasurement {
    let d = observables[0].dim();
    let id = Operator::identity(d);
    let projectors = (0..8)
        .map(|o| {
            observables
                .iter()
                .enumerate()
                .fold(Operator::identity(d), |acc, (k, obs)| {
                    let sign = if answer_bit(o, k) == 0 { 1.0 } else { -1.0 };
                    let factor = id.plus(&obs.scaled(sign)).scaled(0.5);
                    acc.matmul(&factor).expect("same dimension")
                })
        })
        .collect();
    ProjectiveMeasurement::new(projectors, (0..8).collect()).expect("commuting observables")
}

/// Two shared Bell pairs; Alice measures the observables of her row and
/// Bob those of his column. The state `Σ|i⟩|i⟩/2` on 4×4 is the pair of
/// Bell states `|Φ⁺⟩_{A1B1}|Φ⁺⟩_{A2B2}` with each player's qubits grouped.
pub fn magic_square_quantum() -> QuantumStrategy {
    let sq = observable_square();
    let meas_a = (0..3)
        .map(|r| three_bit_measurement([&sq[r][0], &sq[r][1], &sq[r][2]]))
        .collect();
    let meas_b = (0..3)
        .map(|c| three_bit_measurement([&sq[0][c], &sq[1][c], &sq[2][c]]))
        .collect();
    QuantumStrategy::new(
        StateVector::maximally_entangled(4).expect("4x4"),
        meas_a,
        meas_b,
    )
    .expect("matching dims")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityTableCounts {
    pub rows_even: usize,
    pub cols_odd: usize,
    pub both: usize,
}

/// Counts 3×3 binary tables with even rows, odd columns, and both, over
/// all 512 tables.
pub fn parity_table_counts() -> ParityTableCounts {
    let mut counts = ParityTableCounts {
        rows_even: 0,
        cols_odd: 0,
        both: 0,
    };
    for bits in 0u32..512 {
        let cell = |r: u32, c: u32| (bits >> (3 * r + c)) & 1;
        let rows_even = (0..3).all(|r| (0..3).map(|c| cell(r, c)).sum::<u32>() % 2 == 0);
        let cols_odd = (0..3).all(|c| (0..3).map(|r| cell(r, c)).sum::<u32>() % 2 == 1);
        counts.rows_even += rows_even as usize;
        counts.cols_odd += cols_odd as usize;
        counts.both += (rows_even && cols_odd) as usize;
    }
    counts
}

/// Number of 3×3 binary tables with every row even and every column odd.
pub fn parity_table_search() -> usize {
    parity_table_counts().both
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameValueReport {
    pub classical_value: Rational,
    pub best_classical_strategy: DeterministicStrategy,
    pub quantum_win_probability: f64,
    pub is_quantum_winning: bool,
}

pub fn game_value_report(
    g: &Game,
    qs: &QuantumStrategy,
    dist: Option<&InputDistribution>,
    eps: f64,
) -> Result<GameValueReport> {
    let classical = classical_value(g, dist)?;
    Ok(GameValueReport {
        classical_value: classical.value,
        best_classical_strategy: classical.strategy,
        quantum_win_probability: quantum_win_probability(g, qs, dist)?,
        is_quantum_winning: is_winning_strategy(g, qs, eps)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::{evaluate_expression, lhv_bound, support_of, DEFAULT_EPS_SUPPORT};
    use crate::classifier::is_pseudotelepathic;
    use crate::rational::{int, ratio};

    fn constant_game(value: bool) -> Game {
        Game::from_predicate(
            "const",
            (labels("x", 2), labels("y", 3)),
            (labels("a", 2), labels("b", 2)),
            move |_, _, _, _| value,
        )
        .unwrap()
    }

    #[test]
    fn magic_square_relation_by_hand() {
        let g = magic_square();
        // 000 is even; 100 is odd; cell (0,0): Alice bit 0 = 0, Bob bit 0 = 1.
        assert!(!g.wins(0, 0, 0b000, 0b100));
        // Alice 011 (even), Bob 001 (odd); row 1, col 2: Alice bit 2 = 1, Bob bit 1 = 0.
        assert!(!g.wins(1, 2, 0b011, 0b001));
        // Alice 011, Bob 010; row 1, col 2: Alice bit 2 = 1, Bob bit 1 = 1.
        assert!(g.wins(1, 2, 0b011, 0b010));
        for a in [0b001, 0b010, 0b100, 0b111] {
            for x in 0..3 {
                for y in 0..3 {
                    for b in 0..8 {
                        assert!(!g.wins(x, y, a, b));
                    }
                }
            }
        }
    }

    // 4 even answers × 4 odd answers, of which half agree on the shared cell.
    #[test]
    fn magic_square_accept_counts_are_uniform() {
        let g = magic_square();
        for x in 0..3 {
            for y in 0..3 {
                let n = (0..8)
                    .flat_map(|a| (0..8).map(move |b| (a, b)))
                    .filter(|&(a, b)| g.wins(x, y, a, b))
                    .count();
                assert_eq!(n, 8);
            }
        }
    }

    #[test]
    fn magic_square_classical_value() {
        let v = classical_value(&magic_square(), None).unwrap();
        assert_eq!(v.value, ratio(8, 9));
        let g = magic_square();
        let wins: usize = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&(x, y)| g.wins(x, y, v.strategy.map_a[x], v.strategy.map_b[y]))
            .count();
        assert_eq!(wins, 8);
    }

    #[test]
    fn constant_games() {
        assert_eq!(
            classical_value(&constant_game(true), None).unwrap().value,
            int(1)
        );
        assert_eq!(
            classical_value(&constant_game(false), None).unwrap().value,
            int(0)
        );
        let e = game_to_bell_expression(&constant_game(true), None).unwrap();
        assert_eq!(lhv_bound(&e).unwrap().value, int(1));
    }

    #[test]
    fn chsh_game_value() {
        let g = chsh_game();
        assert_eq!(classical_value(&g, None).unwrap().value, ratio(3, 4));
        let e = game_to_bell_expression(&g, None).unwrap();
        assert_eq!(lhv_bound(&e).unwrap().value, ratio(3, 4));
    }

    #[test]
    fn weighted_distribution() {
        let g = chsh_game();
        let d = InputDistribution::new(vec![ratio(1, 2), ratio(1, 6), ratio(1, 6), ratio(1, 6)])
            .unwrap();
        let v = classical_value(&g, Some(&d)).unwrap().value;
        let e = game_to_bell_expression(&g, Some(&d)).unwrap();
        assert_eq!(lhv_bound(&e).unwrap().value, v);
        assert_eq!(v, ratio(5, 6));
        assert!(InputDistribution::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(InputDistribution::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
    }

    #[test]
    fn magic_square_quantum_wins() {
        let g = magic_square();
        let qs = magic_square_quantum();
        let p = quantum_win_probability(&g, &qs, None).unwrap();
        assert!((p - 1.0).abs() < 1e-9);
        assert!(is_winning_strategy(&g, &qs, 1e-9).unwrap());
        for m in qs.losing_mass(&g).unwrap() {
            assert!(m < 1e-9);
        }
    }

    #[test]
    fn magic_square_marginals_uniform_on_valid_answers() {
        let b = magic_square_quantum().behavior().unwrap();
        let s = *b.scenario();
        for x in 0..3 {
            for y in 0..3 {
                for a in 0..8 {
                    let marginal: f64 = (0..8).map(|bb| b.p(x, y, a, bb)).sum();
                    let even = (0..3).map(|k| answer_bit(a, k)).sum::<usize>() % 2 == 0;
                    let want = if even { 0.25 } else { 0.0 };
                    assert!(
                        (marginal - want).abs() < 1e-12,
                        "x={x} y={y} a={a}: {marginal}"
                    );
                }
            }
        }
        assert_eq!(s.outputs_a, 8);
    }

    #[test]
    fn magic_square_support_is_pseudotelepathic() {
        let b = magic_square_quantum().behavior().unwrap();
        let s = support_of(&b, DEFAULT_EPS_SUPPORT).unwrap();
        assert!(is_pseudotelepathic(&s).unwrap().holds);
        let e = game_to_bell_expression(&magic_square(), None).unwrap();
        assert!((evaluate_expression(&e, &b).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(lhv_bound(&e).unwrap().value, ratio(8, 9));
    }

    #[test]
    fn lifted_classical_optimum_is_not_winning() {
        let g = magic_square();
        let best = classical_value(&g, None).unwrap();
        let qs = QuantumStrategy::from_deterministic(&g, &best.strategy).unwrap();
        assert!(!is_winning_strategy(&g, &qs, 1e-9).unwrap());
        let p = quantum_win_probability(&g, &qs, None).unwrap();
        assert!((p - 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_games_and_strategies() {
        let qs = QuantumStrategy::from_deterministic(
            &constant_game(true),
            &DeterministicStrategy {
                map_a: vec![0, 1],
                map_b: vec![1, 1, 0],
            },
        )
        .unwrap();
        assert!(
            (quantum_win_probability(&constant_game(true), &qs, None).unwrap() - 1.0).abs() < 1e-12
        );
        assert_eq!(
            quantum_win_probability(&constant_game(false), &qs, None).unwrap(),
            0.0
        );
        assert!(is_winning_strategy(&constant_game(true), &qs, 1e-9).unwrap());
        assert!(quantum_win_probability(&chsh_game(), &qs, None).is_err());
    }

    #[test]
    fn parity_tables() {
        assert_eq!(parity_table_search(), 0);
        let counts = parity_table_counts();
        assert_eq!(counts.rows_even, 64);
        assert_eq!(counts.cols_odd, 64);
    }

    #[test]
    fn relabeling_inputs_preserves_quantum_value() {
        let g = magic_square();
        let qs = magic_square_quantum();
        let (pa, pb) = ([2usize, 0, 1], [1usize, 2, 0]);
        let relabeled = Game::from_predicate(
            "permuted",
            (g.inputs_a().to_vec(), g.inputs_b().to_vec()),
            (g.outputs_a().to_vec(), g.outputs_b().to_vec()),
            |x, y, a, b| g.wins(pa[x], pb[y], a, b),
        )
        .unwrap();
        let permuted = QuantumStrategy::new(
            qs.shared_state.clone(),
            pa.iter().map(|&x| qs.meas_a[x].clone()).collect(),
            pb.iter().map(|&y| qs.meas_b[y].clone()).collect(),
        )
        .unwrap();
        let p0 = quantum_win_probability(&g, &qs, None).unwrap();
        let p1 = quantum_win_probability(&relabeled, &permuted, None).unwrap();
        assert!((p0 - p1).abs() < 1e-12);
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(builtin("magic-square").unwrap().name(), "magic-square");
        assert_eq!(
            builtin("chsh-game").unwrap().scenario(),
            &Scenario::binary_2x2()
        );
        assert!(builtin("nope").is_none());
    }
}
