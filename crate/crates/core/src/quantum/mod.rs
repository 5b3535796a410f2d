//! Dense complex linear algebra for small pure states.
//!
//! Basis convention: index 0 is `|+⟩` (the `σ_z = +1` eigenvector) and
//! index 1 is `|−⟩`. The `σ_x` eigenvectors are `(|+⟩ ± |−⟩)/√2` with
//! labels `±1`. Party A is the slow (leftmost) tensor index, so for two
//! qubits the amplitude order is `++, +−, −+, −−`.

mod measurement;
mod operator;
mod state;

pub use measurement::ProjectiveMeasurement;
pub use operator::{bloch_observable, tensor_op, Operator};
pub use state::{tensor_state, StateVector};

use crate::{Error, Result};

pub type Complex = num::complex::Complex64;

/// Hard cap on the product of all party dimensions.
pub const MAX_TOTAL_DIM: usize = 81;
/// Tolerance for state normalization.
pub const EPS_NORM: f64 = 1e-9;
/// Tolerance for Hermiticity and projector identities.
pub const EPS_HERM: f64 = 1e-9;

pub(crate) fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub(crate) fn check_total(total: usize) -> Result<()> {
    if total > MAX_TOTAL_DIM {
        return Err(Error::DimensionOverflow {
            total,
            max: MAX_TOTAL_DIM,
        });
    }
    Ok(())
}

/// Applies `op` to the tensor factor of `party`, leaving the others alone.
fn apply_local(amps: &[Complex], dims: &[usize], party: usize, op: &Operator) -> Vec<Complex> {
    let d = dims[party];
    let inner: usize = dims[party + 1..].iter().product();
    let outer: usize = dims[..party].iter().product();
    let mut out = vec![Complex::new(0.0, 0.0); amps.len()];
    for o in 0..outer {
        for r in 0..d {
            for c in 0..d {
                let m = op.entry(r, c);
                if m.re == 0.0 && m.im == 0.0 {
                    continue;
                }
                let dst = (o * d + r) * inner;
                let src = (o * d + c) * inner;
                for i in 0..inner {
                    out[dst + i] += m * amps[src + i];
                }
            }
        }
    }
    out
}

fn check_parties(state: &StateVector, dims: impl Iterator<Item = usize>, n: usize) -> Result<()> {
    if n != state.dims().len() {
        return Err(Error::DimensionMismatch {
            expected: state.dims().len(),
            found: n,
        });
    }
    for (party_dim, d) in state.dims().iter().zip(dims) {
        if *party_dim != d {
            return Err(Error::DimensionMismatch {
                expected: *party_dim,
                found: d,
            });
        }
    }
    Ok(())
}

fn local_product_expectation(state: &StateVector, ops: &[&Operator]) -> f64 {
    let mut phi = state.amplitudes().to_vec();
    for (party, op) in ops.iter().enumerate() {
        phi = apply_local(&phi, state.dims(), party, op);
    }
    state
        .amplitudes()
        .iter()
        .zip(&phi)
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

/// Born-rule probability of the joint outcome `outcome` (one label per
/// party) when party `i` performs `per_party[i]`.
pub fn outcome_probability(
    state: &StateVector,
    per_party: &[&ProjectiveMeasurement],
    outcome: &[i32],
) -> Result<f64> {
    if outcome.len() != per_party.len() {
        return Err(Error::DimensionMismatch {
            expected: per_party.len(),
            found: outcome.len(),
        });
    }
    let mut indices = Vec::with_capacity(outcome.len());
    for (party, (m, &label)) in per_party.iter().zip(outcome).enumerate() {
        indices.push(
            m.index_of(label)
                .ok_or(Error::UnknownLabel { party, label })?,
        );
    }
    outcome_probability_by_index(state, per_party, &indices)
}

/// As [`outcome_probability`], addressing outcomes by their position in
/// each measurement rather than by label.
pub fn outcome_probability_by_index(
    state: &StateVector,
    per_party: &[&ProjectiveMeasurement],
    indices: &[usize],
) -> Result<f64> {
    check_parties(state, per_party.iter().map(|m| m.dim()), per_party.len())?;
    if indices.len() != per_party.len() {
        return Err(Error::DimensionMismatch {
            expected: per_party.len(),
            found: indices.len(),
        });
    }
    let mut ops = Vec::with_capacity(indices.len());
    for (m, &i) in per_party.iter().zip(indices) {
        let p = m
            .projectors()
            .get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("outcome index {i} out of range")))?;
        ops.push(p);
    }
    Ok(local_product_expectation(state, &ops).clamp(0.0, 1.0))
}

/// `⟨ψ| O₁ ⊗ O₂ ⊗ … |ψ⟩`, applying each observable on its own factor.
pub fn expectation(state: &StateVector, observables: &[Operator]) -> Result<f64> {
    check_parties(
        state,
        observables.iter().map(|o| o.dim()),
        observables.len(),
    )?;
    let ops: Vec<&Operator> = observables.iter().collect();
    Ok(local_product_expectation(state, &ops))
}

/// Expectation of the product of outcome labels, summed over the Born
/// distribution of the joint measurement.
pub fn expectation_from_measurements(
    state: &StateVector,
    per_party: &[&ProjectiveMeasurement],
) -> Result<f64> {
    check_parties(state, per_party.iter().map(|m| m.dim()), per_party.len())?;
    let counts: Vec<usize> = per_party.iter().map(|m| m.outcome_count()).collect();
    let total: usize = counts.iter().product();
    let mut indices = vec![0usize; counts.len()];
    let mut acc = 0.0;
    for mut flat in 0..total {
        for k in (0..counts.len()).rev() {
            indices[k] = flat % counts[k];
            flat /= counts[k];
        }
        let value: f64 = per_party
            .iter()
            .zip(&indices)
            .map(|(m, &i)| m.labels()[i] as f64)
            .product();
        if value != 0.0 {
            acc += value * outcome_probability_by_index(state, per_party, &indices)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn singlet() -> StateVector {
        StateVector::new(
            vec![2, 2],
            vec![c(0.0, 0.0), c(H, 0.0), c(-H, 0.0), c(0.0, 0.0)],
        )
        .unwrap()
    }

    fn hardy() -> StateVector {
        let a = 1.0 / 3f64.sqrt();
        StateVector::new(
            vec![2, 2],
            vec![c(0.0, 0.0), c(a, 0.0), c(a, 0.0), c(a, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn hardy_probabilities() {
        let (z, x) = (
            ProjectiveMeasurement::sigma_z(),
            ProjectiveMeasurement::sigma_x(),
        );
        let psi = hardy();
        let p = outcome_probability(&psi, &[&x, &x], &[-1, -1]).unwrap();
        assert!((p - 1.0 / 12.0).abs() < 1e-12);
        let p = outcome_probability(&psi, &[&z, &z], &[1, 1]).unwrap();
        assert!(p.abs() < 1e-12);
        let p = outcome_probability(&psi, &[&x, &z], &[-1, -1]).unwrap();
        assert!(p.abs() < 1e-12);
    }

    #[test]
    fn completeness() {
        let psi = hardy();
        let m = ProjectiveMeasurement::bloch(0.6, 0.0, 0.8).unwrap();
        let x = ProjectiveMeasurement::sigma_x();
        let total: f64 = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .iter()
            .map(|&(a, b)| outcome_probability(&psi, &[&m, &x], &[a, b]).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_expectations() {
        let s = singlet();
        let (z, x) = (Operator::pauli_z(), Operator::pauli_x());
        assert!((expectation(&s, &[z.clone(), z.clone()]).unwrap() + 1.0).abs() < 1e-12);
        assert!(expectation(&s, &[z.clone(), x.clone()]).unwrap().abs() < 1e-12);
        assert!((expectation(&s, &[x.clone(), x]).unwrap() + 1.0).abs() < 1e-12);
        let pp = StateVector::basis(vec![2, 2], 0).unwrap();
        assert!((expectation(&pp, &[z.clone(), z]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let s = singlet();
        let z = ProjectiveMeasurement::sigma_z();
        assert!(matches!(
            outcome_probability(&s, &[&z, &z], &[1, 0]),
            Err(Error::UnknownLabel { party: 1, label: 0 })
        ));
        let big = ProjectiveMeasurement::deterministic(3, 2, 0).unwrap();
        assert!(matches!(
            outcome_probability(&s, &[&z, &big], &[1, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(expectation(&s, &[Operator::pauli_z()]).is_err());
    }

    fn arb_unit() -> impl Strategy<Value = (f64, f64, f64)> {
        (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
            .prop_map(|(t, p)| (t.sin() * p.cos(), t.sin() * p.sin(), t.cos()))
    }

    fn arb_two_qubit() -> impl Strategy<Value = StateVector> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4)
            .prop_filter("nonzero", |v| {
                v.iter().any(|(r, i)| r.abs() + i.abs() > 1e-3)
            })
            .prop_map(|v| {
                StateVector::normalized(vec![2, 2], v.into_iter().map(|(r, i)| c(r, i)).collect())
                    .unwrap()
            })
    }

    proptest! {
        #[test]
        fn born_rule_is_a_distribution(psi in arb_two_qubit(), a in arb_unit(), b in arb_unit()) {
            let ma = ProjectiveMeasurement::bloch(a.0, a.1, a.2).unwrap();
            let mb = ProjectiveMeasurement::bloch(b.0, b.1, b.2).unwrap();
            let mut total = 0.0;
            for la in [1, -1] {
                for lb in [1, -1] {
                    let p = outcome_probability(&psi, &[&ma, &mb], &[la, lb]).unwrap();
                    prop_assert!((-1e-9..=1.0 + 1e-9).contains(&p));
                    total += p;
                }
            }
            prop_assert!((total - 1.0).abs() < 1e-9);
        }

        // Projector route against the full 4x4 matrix ⟨ψ|A⊗B|ψ⟩.
        #[test]
        fn expectation_routes_agree(psi in arb_two_qubit(), a in arb_unit(), b in arb_unit()) {
            let oa = bloch_observable(a.0, a.1, a.2).unwrap();
            let ob = bloch_observable(b.0, b.1, b.2).unwrap();
            let ma = ProjectiveMeasurement::from_pm_observable(&oa).unwrap();
            let mb = ProjectiveMeasurement::from_pm_observable(&ob).unwrap();
            let joint = tensor_op(&oa, &ob).unwrap();
            let applied = joint.apply(psi.amplitudes());
            let direct: f64 = psi.amplitudes().iter().zip(&applied).map(|(x, y)| (x.conj() * y).re).sum();
            let via_projectors = expectation_from_measurements(&psi, &[&ma, &mb]).unwrap();
            let local = expectation(&psi, &[oa, ob]).unwrap();
            prop_assert!((direct - via_projectors).abs() < 1e-9);
            prop_assert!((direct - local).abs() < 1e-9);
            prop_assert!(direct.abs() <= 1.0 + 1e-9);
        }
    }
}
