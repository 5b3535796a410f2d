//! Exact rational simplex for the L1 residual problem
//!
//! ```text
//! minimize   Σ (r⁺ᵢ + r⁻ᵢ)
//! subject to A w + r⁺ − r⁻ = p,   w, r⁺, r⁻ ≥ 0
//! ```
//!
//! Starting from the all-residual basis the problem is feasible at once, so
//! this is a single phase-1 style run. The optimum is zero exactly when
//! `A w = p` has a nonnegative solution. Bland's rule rules out cycling on
//! the heavily degenerate tables produced by deterministic strategies.

use num::{Signed, Zero};

use crate::rational::Rational;

/// Maximum number of tableau cells before refusing to build the problem.
pub(crate) const MAX_TABLEAU_CELLS: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct L1Fit {
    /// Optimal `Σ |residual|`.
    pub residual: Rational,
    /// Value of each structural column `w`.
    pub weights: Vec<Rational>,
}

/// `columns[j]` lists the nonzero entries `(row, value)` of column `j`.
pub(crate) fn min_l1_residual(columns: &[Vec<(usize, Rational)>], rhs: &[Rational]) -> L1Fit {
    let m = rhs.len();
    let k = columns.len();
    let n = k + 2 * m;
    let zero = Rational::zero();

    let mut rows: Vec<Vec<Rational>> = vec![vec![zero.clone(); n]; m];
    let mut b: Vec<Rational> = rhs.to_vec();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i][j] += v;
        }
    }
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        rows[i][k + i] = Rational::from_integer(1.into());
        rows[i][k + m + i] = Rational::from_integer((-1).into());
        if b[i].is_negative() {
            for v in rows[i].iter_mut() {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
            basis.push(k + m + i);
        } else {
            basis.push(k + i);
        }
    }

    // Reduced costs d_j = c_j − Σ_i c_B(i) T[i][j], with c = 1 on residuals.
    let mut d: Vec<Rational> = (0..n)
        .map(|j| {
            let c = if j >= k {
                Rational::from_integer(1.into())
            } else {
                zero.clone()
            };
            rows.iter().fold(c, |acc, r| acc - &r[j])
        })
        .collect();

    while let Some(enter) = d.iter().position(|v| v.is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let t = &rows[i][enter];
            if !t.is_positive() {
                continue;
            }
            let ratio = &b[i] / t;
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The objective is bounded below by zero, so some row must block.
        let (r, _) = leave.expect("L1 residual problem is bounded");
        pivot(&mut rows, &mut b, &mut d, r, enter);
        basis[r] = enter;
    }

    let mut weights = vec![zero.clone(); k];
    let mut residual = zero;
    for (i, &j) in basis.iter().enumerate() {
        if j < k {
            weights[j] = b[i].clone();
        } else {
            residual += &b[i];
        }
    }
    L1Fit { residual, weights }
}

fn pivot(
    rows: &mut [Vec<Rational>],
    b: &mut [Rational],
    d: &mut [Rational],
    r: usize,
    enter: usize,
) {
    let piv = rows[r][enter].clone();
    for v in rows[r].iter_mut() {
        if !v.is_zero() {
            *v /= &piv;
        }
    }
    b[r] /= &piv;
    let pivot_row = rows[r].clone();
    let nz: Vec<usize> = (0..pivot_row.len())
        .filter(|&j| !pivot_row[j].is_zero())
        .collect();
    let pivot_b = b[r].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[enter].is_zero() {
            continue;
        }
        let f = row[enter].clone();
        for &j in &nz {
            row[j] -= &f * &pivot_row[j];
        }
        b[i] -= &f * &pivot_b;
    }
    if !d[enter].is_zero() {
        let f = d[enter].clone();
        for &j in &nz {
            d[j] -= &f * &pivot_row[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn col(entries: &[(usize, i64)]) -> Vec<(usize, Rational)> {
        entries.iter().map(|&(i, v)| (i, int(v))).collect()
    }

    #[test]
    fn feasible_system() {
        // w0 + w1 = 1, w0 = 1/3
        let cols = vec![col(&[(0, 1), (1, 1)]), col(&[(0, 1)])];
        let fit = min_l1_residual(&cols, &[int(1), ratio(1, 3)]);
        assert_eq!(fit.residual, int(0));
        assert_eq!(fit.weights, vec![ratio(1, 3), ratio(2, 3)]);
    }

    #[test]
    fn infeasible_system_reports_distance() {
        // w0 = 1 and w0 = 2 cannot both hold; best L1 residual is 1.
        let cols = vec![col(&[(0, 1), (1, 1)])];
        let fit = min_l1_residual(&cols, &[int(1), int(2)]);
        assert_eq!(fit.residual, int(1));
    }

    #[test]
    fn negative_rhs_needs_negative_residual() {
        let cols = vec![col(&[(0, 1)])];
        let fit = min_l1_residual(&cols, &[ratio(-1, 2)]);
        assert_eq!(fit.residual, ratio(1, 2));
        assert_eq!(fit.weights, vec![int(0)]);
    }

    #[test]
    fn no_columns() {
        let fit = min_l1_residual(&[], &[int(1), ratio(1, 2)]);
        assert_eq!(fit.residual, ratio(3, 2));
    }
}
