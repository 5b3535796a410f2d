//! Executable local-hidden-variable no-go theorems.
//!
//! The crate is organised bottom-up:
//!
//! - [`quantum`]: dense complex linear algebra for small multi-party pure
//!   states, projective measurements and the Born rule.
//! - [`behavior`]: conditional outcome tables `p(a,b|x,y)`, Bell expressions,
//!   exact local bounds by deterministic-strategy enumeration, local-polytope
//!   membership by an exact rational simplex, and a seeded round sampler.
//! - [`classifier`]: decision procedures for Bell theorems, Bell theorems
//!   without inequalities and pseudo-telepathy, plus the Hardy argument trace.
//! - [`games`]: nonlocal games, classical and quantum values, the Magic Square
//!   game and its quantum winning strategy.
//! - [`scenarios`]: the built-in CHSH and Hardy setups.
//! - [`json`]: the on-disk schema shared with the command-line tool.
//!
//! Conventions fixed for the whole crate: computational basis index 0 is the
//! `σ_z = +1` eigenvector `|+⟩`, index 1 is `|−⟩`; party A is always the slow
//! (leftmost) tensor index; for two-outcome settings outcome index 0 carries
//! the value `+1` and index 1 the value `−1`.

pub mod behavior;
pub mod classifier;
mod error;
pub mod games;
pub mod json;
pub mod quantum;
pub mod rational;
pub mod scenarios;

pub use error::{Error, Result};
pub use rational::Rational;
