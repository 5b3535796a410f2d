use num::{One, Zero};

use super::simplex::{min_l1_residual, MAX_TABLEAU_CELLS};
use super::support::DEFAULT_EPS_SUPPORT;
use super::{enumerate_deterministic, Behavior, DeterministicStrategy};
use crate::rational::{self, rationalize, Rational, DEFAULT_RATIONAL_TOL};
use crate::{Error, Result};

/// Whether a membership verdict was reached on the behavior's own exact
/// table or on a rationalized copy of floating-point data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    Exact,
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipConfig {
    /// Floating-point entries at or below this are treated as impossible
    /// when pruning strategies.
    pub eps_support: f64,
    /// Largest L1 residual accepted as local in numerical mode.
    pub eps_lp: f64,
    /// Continued-fraction tolerance for rationalizing entries.
    pub rational_tol: f64,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        Self {
            eps_support: DEFAULT_EPS_SUPPORT,
            eps_lp: 1e-9,
            rational_tol: DEFAULT_RATIONAL_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// A local model: nonnegative weights summing to one.
    Local {
        weights: Vec<(DeterministicStrategy, Rational)>,
        residual: Rational,
        arithmetic: Arithmetic,
    },
    /// No local model; `residual` is the least L1 distance achievable by
    /// support-respecting mixtures (the infeasibility certificate).
    Nonlocal {
        residual: Rational,
        candidates: usize,
        arithmetic: Arithmetic,
    },
}

impl Membership {
    pub fn is_local(&self) -> bool {
        matches!(self, Membership::Local { .. })
    }

    pub fn arithmetic(&self) -> Arithmetic {
        match self {
            Membership::Local { arithmetic, .. } | Membership::Nonlocal { arithmetic, .. } => {
                *arithmetic
            }
        }
    }

    pub fn residual(&self) -> &Rational {
        match self {
            Membership::Local { residual, .. } | Membership::Nonlocal { residual, .. } => residual,
        }
    }

    /// Table reproduced by the weights of a local verdict.
    pub fn reconstruct(&self, b: &Behavior) -> Option<Behavior> {
        match self {
            Membership::Local { weights, .. } => Behavior::mixture(*b.scenario(), weights).ok(),
            Membership::Nonlocal { .. } => None,
        }
    }
}

pub fn local_membership(b: &Behavior) -> Result<Membership> {
    local_membership_with(b, &MembershipConfig::default())
}

/// Decides whether `b` is a convex combination of deterministic behaviors.
///
/// Any strategy that puts weight on an impossible outcome cannot appear in
/// an exact decomposition, so only strategies staying inside the support
/// become simplex columns. In exact mode the support is the set of nonzero
/// rationals and the verdict is exact. In numerical mode entries are
/// rationalized and the residual must not exceed
/// `min(eps_lp, eps_support / 2)`; the second bound guarantees that every
/// entry above `eps_support` receives positive mass from some column.
pub fn local_membership_with(b: &Behavior, cfg: &MembershipConfig) -> Result<Membership> {
    if cfg.eps_support.is_nan()
        || cfg.eps_support <= 0.0
        || cfg.eps_lp.is_nan()
        || cfg.eps_lp < 0.0
        || cfg.rational_tol.is_nan()
        || cfg.rational_tol <= 0.0
    {
        return Err(Error::InvalidArgument(
            "membership tolerances must be positive".into(),
        ));
    }
    let s = *b.scenario();
    let (target, possible, arithmetic): (Vec<Rational>, Vec<bool>, Arithmetic) = match b.exact() {
        Some(t) => (
            t.to_vec(),
            t.iter().map(|v| !v.is_zero()).collect(),
            Arithmetic::Exact,
        ),
        None => (
            b.table()
                .iter()
                .map(|&p| rationalize(p, cfg.rational_tol))
                .collect(),
            b.table().iter().map(|&p| p > cfg.eps_support).collect(),
            Arithmetic::Numerical,
        ),
    };

    let candidates: Vec<DeterministicStrategy> = enumerate_deterministic(&s)?
        .filter(|d| d.touched_indices(&s).all(|i| possible[i]))
        .collect();

    let m = s.table_len() + 1;
    let cells = m.saturating_mul(candidates.len() + 2 * m);
    if cells > MAX_TABLEAU_CELLS {
        return Err(Error::ProblemTooLarge {
            rows: m,
            cols: candidates.len() + 2 * m,
        });
    }

    let one = Rational::one();
    let columns: Vec<Vec<(usize, Rational)>> = candidates
        .iter()
        .map(|d| {
            let mut col: Vec<(usize, Rational)> =
                d.touched_indices(&s).map(|i| (i, one.clone())).collect();
            col.push((m - 1, one.clone()));
            col
        })
        .collect();
    let mut rhs = target;
    rhs.push(one.clone());

    let fit = min_l1_residual(&columns, &rhs);
    let accepted = match arithmetic {
        Arithmetic::Exact => fit.residual.is_zero(),
        Arithmetic::Numerical => {
            let threshold = cfg.eps_lp.min(cfg.eps_support / 2.0);
            rational::to_f64(&fit.residual) <= threshold
        }
    };
    if !accepted || candidates.is_empty() {
        return Ok(Membership::Nonlocal {
            residual: fit.residual,
            candidates: candidates.len(),
            arithmetic,
        });
    }
    let total: Rational = fit.weights.iter().sum();
    let weights = candidates
        .into_iter()
        .zip(fit.weights)
        .filter(|(_, w)| !w.is_zero())
        .map(|(d, w)| (d, w / &total))
        .collect();
    Ok(Membership::Local {
        weights,
        residual: fit.residual,
        arithmetic,
    })
}
