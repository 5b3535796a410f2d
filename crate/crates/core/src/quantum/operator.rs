use super::{c, check_total, Complex, EPS_HERM};
use crate::{Error, Result};

/// A Hermitian matrix acting on one party (or on a joint space after
/// [`tensor_op`]). Stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex>,
}

impl Operator {
    pub fn new(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "operator dimension must be positive".into(),
            ));
        }
        check_total(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("operator entries"));
        }
        let op = Self { dim, entries };
        op.check_hermitian()?;
        Ok(op)
    }

    /// Real symmetric matrix from rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| c(v, 0.0)))
            .collect();
        Self::new(dim, entries)
    }

    pub(crate) fn raw(dim: usize, entries: Vec<Complex>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    fn check_hermitian(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i..self.dim {
                if (self.entry(i, j) - self.entry(j, i).conj()).norm() > EPS_HERM {
                    return Err(Error::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c(1.0, 0.0);
        }
        Self { dim, entries }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![c(0.0, 0.0); dim * dim],
        }
    }

    pub fn pauli_x() -> Self {
        Self::raw(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    pub fn pauli_y() -> Self {
        Self::raw(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
    }

    pub fn pauli_z() -> Self {
        Self::raw(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
    }

    /// `|v⟩⟨v|` for a unit vector `v`.
    pub fn projector_onto(v: &[Complex]) -> Self {
        let dim = v.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in v {
            for b in v {
                entries.push(a * b.conj());
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::raw(self.dim, self.entries.iter().map(|e| e * s).collect())
    }

    /// Entrywise sum. Panics on a dimension mismatch.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        Self::raw(
            self.dim,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Matrix product. The result is Hermitian only when the factors
    /// commute, so it is re-validated.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let m = self.matmul(other)?;
        m.check_hermitian()?;
        Ok(m)
    }

    pub(crate) fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(Self::raw(n, out))
    }

    pub fn apply(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j) * v[j]).sum())
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.entry(j, i).conj());
            }
        }
        Self::raw(n, out)
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }
}

/// Kronecker product `a ⊗ b` with `a` as the slow index.
pub fn tensor_op(a: &Operator, b: &Operator) -> Result<Operator> {
    let n = a.dim.saturating_mul(b.dim);
    check_total(n)?;
    let mut entries = vec![c(0.0, 0.0); n * n];
    for i in 0..a.dim {
        for j in 0..a.dim {
            let x = a.entry(i, j);
            for k in 0..b.dim {
                for l in 0..b.dim {
                    entries[(i * b.dim + k) * n + (j * b.dim + l)] = x * b.entry(k, l);
                }
            }
        }
    }
    Ok(Operator::raw(n, entries))
}

/// `n_x σ_x + n_y σ_y + n_z σ_z` for a unit direction; spectrum `{+1, −1}`.
pub fn bloch_observable(nx: f64, ny: f64, nz: f64) -> Result<Operator> {
    let norm = (nx * nx + ny * ny + nz * nz).sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NonUnitDirection(nx, ny, nz));
    }
    Ok(Operator::pauli_x()
        .scaled(nx)
        .plus(&Operator::pauli_y().scaled(ny))
        .plus(&Operator::pauli_z().scaled(nz)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn z_tensor_identity_is_diagonal() {
        let op = tensor_op(&Operator::pauli_z(), &Operator::identity(2)).unwrap();
        let want = Operator::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, -1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
        ])
        .unwrap();
        assert_eq!(op, want);
    }

    #[test]
    fn bloch_axes() {
        assert_eq!(
            bloch_observable(0.0, 0.0, 1.0).unwrap(),
            Operator::pauli_z()
        );
        assert_eq!(
            bloch_observable(1.0, 0.0, 0.0).unwrap(),
            Operator::pauli_x()
        );
        assert!(matches!(
            bloch_observable(1.0, 1.0, 0.0),
            Err(Error::NonUnitDirection(..))
        ));
    }

    #[test]
    fn rejects_non_hermitian() {
        let e = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(
            Operator::new(2, e),
            Err(Error::NotHermitian { row: 0, col: 1 })
        );
    }

    #[test]
    fn non_commuting_product_is_rejected() {
        assert!(Operator::pauli_x().product(&Operator::pauli_z()).is_err());
        let xx = tensor_op(&Operator::pauli_x(), &Operator::pauli_x()).unwrap();
        let zz = tensor_op(&Operator::pauli_z(), &Operator::pauli_z()).unwrap();
        assert!(xx.product(&zz).is_ok());
    }

    fn arb_unit() -> impl Strategy<Value = (f64, f64, f64)> {
        (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
            .prop_map(|(t, p)| (t.sin() * p.cos(), t.sin() * p.sin(), t.cos()))
    }

    proptest! {
        // Characteristic polynomial of a 2x2 Hermitian matrix:
        // λ² − tr·λ + det; roots ±1 iff tr = 0 and det = −1.
        #[test]
        fn bloch_spectrum_is_pm_one((x, y, z) in arb_unit()) {
            let op = bloch_observable(x, y, z).unwrap();
            let tr = op.trace();
            let det = op.entry(0, 0) * op.entry(1, 1) - op.entry(0, 1) * op.entry(1, 0);
            prop_assert!(tr.norm() < 1e-12);
            prop_assert!((det - c(-1.0, 0.0)).norm() < 1e-12);
        }

        #[test]
        fn tensor_preserves_hermiticity(a in arb_unit(), b in arb_unit()) {
            let oa = bloch_observable(a.0, a.1, a.2).unwrap();
            let ob = bloch_observable(b.0, b.1, b.2).unwrap();
            let t = tensor_op(&oa, &ob).unwrap();
            prop_assert!(t.adjoint().max_abs_diff(&t) < 1e-12);
        }
    }
}
