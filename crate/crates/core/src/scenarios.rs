//! Built-in states, settings and tables for the CHSH and Hardy setups.
//!
//! Hardy tables use setting 0 = `σ_z`, setting 1 = `σ_x` on both sides;
//! outcome 0 = `+`, outcome 1 = `−`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::behavior::{behavior_from_quantum, Behavior};
use crate::quantum::{c, ProjectiveMeasurement, StateVector};
use crate::rational::{rationalize, DEFAULT_RATIONAL_TOL};

pub const HARDY_SETTING_LABELS: [&str; 2] = ["z", "x"];
pub const PM_OUTCOME_LABELS: [&str; 2] = ["+", "-"];

/// `(|+−⟩ − |−+⟩)/√2`.
pub fn singlet() -> StateVector {
    let h = FRAC_1_SQRT_2;
    StateVector::new(
        vec![2, 2],
        vec![c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)],
    )
    .expect("normalized")
}

/// `(|−−⟩ + |−+⟩ + |+−⟩)/√3`.
pub fn hardy_state() -> StateVector {
    let a = 1.0 / 3f64.sqrt();
    StateVector::new(
        vec![2, 2],
        vec![c(0.0, 0.0), c(a, 0.0), c(a, 0.0), c(a, 0.0)],
    )
    .expect("normalized")
}

/// Two `(n_x, n_z)` directions, one per setting.
pub type PartyDirections = [(f64, f64); 2];

/// Unit directions in the x–z plane, as `(n_x, n_z)`: Alice uses `z` and
/// `x`, Bob uses `−(z+x)/√2` and `−(z−x)/√2`. On the singlet every
/// correlator is `±1/√2`, giving a CHSH value of `+2√2`.
pub fn chsh_directions() -> (PartyDirections, PartyDirections) {
    let h = FRAC_1_SQRT_2;
    ([(0.0, 1.0), (1.0, 0.0)], [(-h, -h), (h, -h)])
}

pub fn chsh_measurements() -> (Vec<ProjectiveMeasurement>, Vec<ProjectiveMeasurement>) {
    let (alice, bob) = chsh_directions();
    let build = |dirs: PartyDirections| {
        dirs.iter()
            .map(|&(nx, nz)| ProjectiveMeasurement::bloch(nx, 0.0, nz).expect("unit direction"))
            .collect()
    };
    (build(alice), build(bob))
}

pub fn chsh_quantum_behavior() -> Behavior {
    let (a, b) = chsh_measurements();
    behavior_from_quantum(&singlet(), &a, &b).expect("valid setup")
}

pub fn hardy_measurements() -> Vec<ProjectiveMeasurement> {
    vec![
        ProjectiveMeasurement::sigma_z(),
        ProjectiveMeasurement::sigma_x(),
    ]
}

/// Born-rule table of the Hardy state under `σ_z`/`σ_x` on each side.
pub fn hardy_behavior() -> Behavior {
    let m = hardy_measurements();
    behavior_from_quantum(&hardy_state(), &m, &m).expect("valid setup")
}

/// The Hardy table with every entry replaced by its exact rational value.
pub fn hardy_exact_behavior() -> Behavior {
    let b = hardy_behavior();
    let exact = b
        .table()
        .iter()
        .map(|&p| rationalize(p, DEFAULT_RATIONAL_TOL))
        .collect();
    Behavior::from_exact(*b.scenario(), exact).expect("Hardy entries are rational and normalized")
}
