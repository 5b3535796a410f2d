use super::{check_total, Complex, EPS_NORM};
use crate::{Error, Result};

/// A normalized pure state on a product of finite-dimensional parties.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amplitudes: Vec<Complex>,
}

impl StateVector {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidArgument(
                "every party needs a positive dimension".into(),
            ));
        }
        let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        let total = total.ok_or(Error::DimensionOverflow {
            total: usize::MAX,
            max: super::MAX_TOTAL_DIM,
        })?;
        check_total(total)?;
        if amplitudes.len() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Scales `amplitudes` to unit norm before validating.
    pub fn normalized(dims: Vec<usize>, amplitudes: Vec<Complex>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::NotNormalized {
                norm_sq: norm * norm,
            });
        }
        Self::new(dims, amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Computational basis state; `index` is the flattened (party-A-slow) index.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total: usize = dims.iter().product();
        if index >= total {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {total}"
            )));
        }
        let mut amps = vec![Complex::new(0.0, 0.0); total];
        amps[index] = Complex::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    /// `Σ_i |i⟩|i⟩ / √d` on two parties of dimension `d`.
    pub fn maximally_entangled(d: usize) -> Result<Self> {
        let mut amps = vec![Complex::new(0.0, 0.0); d * d];
        let a = 1.0 / (d as f64).sqrt();
        for i in 0..d {
            amps[i * d + i] = Complex::new(a, 0.0);
        }
        Self::new(vec![d, d], amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn total_dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitude at a multi-index, one coordinate per party.
    pub fn amplitude_at(&self, index: &[usize]) -> Option<Complex> {
        if index.len() != self.dims.len() {
            return None;
        }
        let mut flat = 0;
        for (&i, &d) in index.iter().zip(&self.dims) {
            if i >= d {
                return None;
            }
            flat = flat * d + i;
        }
        Some(self.amplitudes[flat])
    }
}

/// Tensor product `a ⊗ b`; the parties of `a` come first.
pub fn tensor_state(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    let total = a.total_dim().saturating_mul(b.total_dim());
    check_total(total)?;
    let mut amps = Vec::with_capacity(total);
    for x in a.amplitudes() {
        for y in b.amplitudes() {
            amps.push(x * y);
        }
    }
    let mut dims = a.dims().to_vec();
    dims.extend_from_slice(b.dims());
    StateVector::new(dims, amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::c;
    use proptest::prelude::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn plus_minus_basis_case() {
        let plus = StateVector::basis(vec![2], 0).unwrap();
        let minus = StateVector::basis(vec![2], 1).unwrap();
        let t = tensor_state(&plus, &minus).unwrap();
        assert_eq!(t.dims(), &[2, 2]);
        assert_eq!(t.amplitude_at(&[0, 1]), Some(c(1.0, 0.0)));
        assert_eq!(t.norm_sq(), 1.0);
    }

    #[test]
    fn linearity() {
        let sup = StateVector::new(vec![2], vec![c(H, 0.0), c(H, 0.0)]).unwrap();
        let minus = StateVector::basis(vec![2], 1).unwrap();
        let t = tensor_state(&sup, &minus).unwrap();
        let expect = [c(0.0, 0.0), c(H, 0.0), c(0.0, 0.0), c(H, 0.0)];
        for (got, want) in t.amplitudes().iter().zip(expect) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_states() {
        assert!(matches!(
            StateVector::new(vec![2], vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            StateVector::new(vec![2, 2], vec![c(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            StateVector::new(vec![2], vec![c(f64::NAN, 0.0), c(0.0, 0.0)]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn dimension_cap() {
        let q3 = StateVector::basis(vec![3, 3], 0).unwrap();
        let q9 = tensor_state(&q3, &q3).unwrap();
        assert_eq!(q9.total_dim(), 81);
        let q = StateVector::basis(vec![2], 0).unwrap();
        assert!(matches!(
            tensor_state(&q9, &q),
            Err(Error::DimensionOverflow {
                total: 162,
                max: 81
            })
        ));
    }

    fn arb_state(d: usize) -> impl Strategy<Value = StateVector> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
            .prop_filter("nonzero", |v| {
                v.iter().any(|(r, i)| r.abs() + i.abs() > 1e-3)
            })
            .prop_map(move |v| {
                StateVector::normalized(vec![d], v.into_iter().map(|(r, i)| c(r, i)).collect())
                    .unwrap()
            })
    }

    proptest! {
        #[test]
        fn tensor_preserves_norm(a in arb_state(3), b in arb_state(2)) {
            let t = tensor_state(&a, &b).unwrap();
            let direct: f64 = t.amplitudes().iter().map(|z| z.re * z.re + z.im * z.im).sum();
            prop_assert!((direct - 1.0).abs() < 1e-9);
        }

        #[test]
        fn tensor_is_associative(a in arb_state(2), b in arb_state(3), d in arb_state(2)) {
            let left = tensor_state(&tensor_state(&a, &b).unwrap(), &d).unwrap();
            let right = tensor_state(&a, &tensor_state(&b, &d).unwrap()).unwrap();
            prop_assert_eq!(left.dims(), right.dims());
            for (x, y) in left.amplitudes().iter().zip(right.amplitudes()) {
                prop_assert!((x - y).norm() < 1e-12);
            }
        }
    }
}
