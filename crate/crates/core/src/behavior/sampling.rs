use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Behavior, Scenario};
use crate::{Error, Result};

/// Outcome of repeated rounds: setting pairs drawn at random, outcomes
/// drawn from the behavior.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    scenario: Scenario,
    rounds: u64,
    counts: Vec<u64>,
    setting_counts: Vec<u64>,
}

impl Simulation {
    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// Raw counts indexed `(x, y, a, b)`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Rounds per setting pair, indexed `x * inputs_b + y`.
    pub fn setting_counts(&self) -> &[u64] {
        &self.setting_counts
    }

    /// Conditional frequencies; setting pairs never drawn stay at zero.
    pub fn frequencies(&self) -> Vec<f64> {
        let width = self.scenario.outcome_pairs();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let n = self.setting_counts[i / width];
                if n == 0 {
                    0.0
                } else {
                    c as f64 / n as f64
                }
            })
            .collect()
    }

    /// The empirical table as a behavior; fails if some setting pair was
    /// never drawn.
    pub fn empirical_behavior(&self) -> Result<Behavior> {
        if let Some(pair) = self.setting_counts.iter().position(|&n| n == 0) {
            return Err(Error::InvalidBehavior {
                x: pair / self.scenario.inputs_b,
                y: pair % self.scenario.inputs_b,
                reason: "setting pair never sampled".into(),
            });
        }
        Behavior::new(self.scenario, self.frequencies())
    }

    /// Empirical correlator and its binomial standard error `√((1−E²)/n)`.
    pub fn correlator(&self, x: usize, y: usize) -> Result<(f64, f64)> {
        let s = &self.scenario;
        if !s.is_binary() {
            return Err(Error::NotBinary);
        }
        let n = self.setting_counts[x * s.inputs_b + y];
        if n == 0 {
            return Err(Error::InvalidBehavior {
                x,
                y,
                reason: "setting pair never sampled".into(),
            });
        }
        let c = |a, b| self.counts[s.index(x, y, a, b)] as f64;
        let e = (c(0, 0) + c(1, 1) - c(0, 1) - c(1, 0)) / n as f64;
        Ok((e, ((1.0 - e * e) / n as f64).sqrt()))
    }

    /// Empirical CHSH value `E00 + E01 + E10 − E11` with its standard error.
    pub fn chsh_estimate(&self) -> Result<(f64, f64)> {
        if self.scenario != Scenario::binary_2x2() {
            return Err(Error::ScenarioMismatch(
                "CHSH needs a 2x2 binary scenario".into(),
            ));
        }
        let mut value = 0.0;
        let mut var = 0.0;
        for (x, y, sign) in [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)] {
            let (e, se) = self.correlator(x, y)?;
            value += sign * e;
            var += se * se;
        }
        Ok((value, var.sqrt()))
    }

    /// Mean over setting pairs of `½ Σ |f − p|`.
    pub fn total_variation(&self, b: &Behavior) -> Result<f64> {
        if *b.scenario() != self.scenario {
            return Err(Error::ScenarioMismatch(format!(
                "{} vs {}",
                b.scenario(),
                self.scenario
            )));
        }
        let l1: f64 = self
            .frequencies()
            .iter()
            .zip(b.table())
            .map(|(f, p)| (f - p).abs())
            .sum();
        Ok(0.5 * l1 / self.scenario.setting_pairs() as f64)
    }
}

/// Samples `rounds` rounds with a ChaCha8 generator seeded from `seed`.
/// `input_dist` weights setting pairs (`x * inputs_b + y`); `None` is uniform.
pub fn simulate_rounds(
    b: &Behavior,
    rounds: u64,
    seed: u64,
    input_dist: Option<&[f64]>,
) -> Result<Simulation> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be at least 1".into()));
    }
    let s = *b.scenario();
    let pairs = s.setting_pairs();
    let uniform = vec![1.0; pairs];
    let weights = input_dist.unwrap_or(&uniform);
    if weights.len() != pairs {
        return Err(Error::DimensionMismatch {
            expected: pairs,
            found: weights.len(),
        });
    }
    let settings = WeightedIndex::new(weights)
        .map_err(|e| Error::InvalidArgument(format!("input distribution: {e}")))?;
    let width = s.outcome_pairs();
    let outcomes = b
        .table()
        .chunks(width)
        .map(|block| {
            let clipped: Vec<f64> = block.iter().map(|p| p.max(0.0)).collect();
            WeightedIndex::new(clipped)
                .map_err(|e| Error::InvalidArgument(format!("behavior row: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; s.table_len()];
    let mut setting_counts = vec![0u64; pairs];
    for _ in 0..rounds {
        let pair = settings.sample(&mut rng);
        let outcome = outcomes[pair].sample(&mut rng);
        setting_counts[pair] += 1;
        counts[pair * width + outcome] += 1;
    }
    Ok(Simulation {
        scenario: s,
        rounds,
        counts,
        setting_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios;

    #[test]
    fn zero_rounds_rejected() {
        let b = scenarios::chsh_quantum_behavior();
        assert!(simulate_rounds(&b, 0, 1, None).is_err());
    }

    #[test]
    fn single_round() {
        let b = scenarios::chsh_quantum_behavior();
        let sim = simulate_rounds(&b, 1, 3, None).unwrap();
        let f = sim.frequencies();
        assert_eq!(f.iter().filter(|&&v| v == 1.0).count(), 1);
        assert_eq!(f.iter().filter(|&&v| v == 0.0).count(), 15);
        assert!(sim.empirical_behavior().is_err());
    }

    #[test]
    fn seeded_runs_are_identical() {
        let b = scenarios::hardy_behavior();
        let a = simulate_rounds(&b, 5000, 42, None).unwrap();
        let c = simulate_rounds(&b, 5000, 42, None).unwrap();
        assert_eq!(a.counts(), c.counts());
        let d = simulate_rounds(&b, 5000, 43, None).unwrap();
        assert_ne!(a.counts(), d.counts());
    }

    #[test]
    fn forbidden_outcomes_never_sampled() {
        let b = scenarios::hardy_behavior();
        let sim = simulate_rounds(&b, 20_000, 9, None).unwrap();
        let s = sim.scenario();
        assert_eq!(sim.counts()[s.index(0, 0, 0, 0)], 0);
        assert_eq!(sim.counts()[s.index(0, 1, 1, 1)], 0);
        assert_eq!(sim.counts()[s.index(1, 0, 1, 1)], 0);
        assert!(sim.counts()[s.index(1, 1, 1, 1)] > 0);
    }

    #[test]
    fn input_distribution_is_respected() {
        let b = scenarios::chsh_quantum_behavior();
        let sim = simulate_rounds(&b, 1000, 5, Some(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(sim.setting_counts(), &[1000, 0, 0, 0]);
        assert!(simulate_rounds(&b, 10, 5, Some(&[1.0, 0.0])).is_err());
        assert!(simulate_rounds(&b, 10, 5, Some(&[0.0; 4])).is_err());
    }

    #[test]
    fn chsh_estimate_near_tsirelson() {
        let b = scenarios::chsh_quantum_behavior();
        let sim = simulate_rounds(&b, 100_000, 7, None).unwrap();
        let (v, se) = sim.chsh_estimate().unwrap();
        assert!((v - 2.0 * 2f64.sqrt()).abs() < 3.0 * se, "{v} ± {se}");
        assert!(v > 2.0);
    }

    // Median over ten seeds of the total-variation distance shrinks with rounds.
    #[test]
    fn empirical_table_converges() {
        let b = scenarios::hardy_behavior();
        let median_tv = |rounds: u64| {
            let mut tv: Vec<f64> = (0..10)
                .map(|seed| {
                    simulate_rounds(&b, rounds, 1000 + seed, None)
                        .unwrap()
                        .total_variation(&b)
                        .unwrap()
                })
                .collect();
            tv.sort_by(f64::total_cmp);
            (tv[4] + tv[5]) / 2.0
        };
        let (t2, t4, t6) = (median_tv(100), median_tv(10_000), median_tv(1_000_000));
        assert!(t2 > t4 && t4 > t6, "{t2} {t4} {t6}");
    }
}
