use super::{bloch_observable, Complex, Operator, EPS_HERM};
use crate::{Error, Result};

/// A complete set of orthogonal projectors with one label per outcome.
///
/// Zero projectors are allowed; they model outputs a device never emits
/// (the parity-invalid answers of a game, for instance).
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    dim: usize,
    projectors: Vec<Operator>,
    labels: Vec<i32>,
}

impl ProjectiveMeasurement {
    pub fn new(projectors: Vec<Operator>, labels: Vec<i32>) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::InvalidMeasurement("no projectors".into()));
        }
        if projectors.len() != labels.len() {
            return Err(Error::InvalidMeasurement(format!(
                "{} projectors but {} labels",
                projectors.len(),
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidMeasurement(format!("duplicate label {l}")));
            }
        }
        let dim = projectors[0].dim();
        if let Some(p) = projectors.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        let mut sum = Operator::zero(dim);
        for (i, p) in projectors.iter().enumerate() {
            if p.adjoint().max_abs_diff(p) > EPS_HERM {
                return Err(Error::InvalidMeasurement(format!(
                    "projector {i} is not Hermitian"
                )));
            }
            if p.matmul(p)?.max_abs_diff(p) > EPS_HERM {
                return Err(Error::InvalidMeasurement(format!(
                    "projector {i} is not idempotent"
                )));
            }
            for (j, q) in projectors.iter().enumerate().skip(i + 1) {
                if p.matmul(q)?.max_abs_diff(&Operator::zero(dim)) > EPS_HERM {
                    return Err(Error::InvalidMeasurement(format!(
                        "projectors {i} and {j} are not orthogonal"
                    )));
                }
            }
            sum = sum.plus(p);
        }
        if sum.max_abs_diff(&Operator::identity(dim)) > EPS_HERM {
            return Err(Error::InvalidMeasurement(
                "projectors do not sum to identity".into(),
            ));
        }
        Ok(Self {
            dim,
            projectors,
            labels,
        })
    }

    /// Rank-one projectors onto the given orthonormal basis vectors.
    pub fn from_basis(vectors: &[Vec<Complex>], labels: Vec<i32>) -> Result<Self> {
        Self::new(
            vectors
                .iter()
                .map(|v| Operator::projector_onto(v))
                .collect(),
            labels,
        )
    }

    /// The `±1` measurement of `n·σ`: projectors `(I ± n·σ)/2`, labels `(+1, −1)`.
    pub fn bloch(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        let obs = bloch_observable(nx, ny, nz)?;
        Self::from_pm_observable(&obs)
    }

    /// Splits an observable with `O² = I` into `(I ± O)/2`, labels `(+1, −1)`.
    pub fn from_pm_observable(obs: &Operator) -> Result<Self> {
        let id = Operator::identity(obs.dim());
        let plus = id.plus(obs).scaled(0.5);
        let minus = id.plus(&obs.scaled(-1.0)).scaled(0.5);
        Self::new(vec![plus, minus], vec![1, -1])
    }

    pub fn sigma_z() -> Self {
        Self::bloch(0.0, 0.0, 1.0).expect("unit direction")
    }

    pub fn sigma_x() -> Self {
        Self::bloch(1.0, 0.0, 0.0).expect("unit direction")
    }

    /// A measurement that always yields outcome `which` of `outcomes`.
    pub fn deterministic(dim: usize, outcomes: usize, which: usize) -> Result<Self> {
        if which >= outcomes {
            return Err(Error::InvalidArgument(format!(
                "outcome {which} out of range for {outcomes} outcomes"
            )));
        }
        let projectors = (0..outcomes)
            .map(|i| {
                if i == which {
                    Operator::identity(dim)
                } else {
                    Operator::zero(dim)
                }
            })
            .collect();
        Self::new(projectors, (0..outcomes as i32).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projectors(&self) -> &[Operator] {
        &self.projectors
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn outcome_count(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: i32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// `Σ label · P`.
    pub fn observable(&self) -> Operator {
        self.projectors
            .iter()
            .zip(&self.labels)
            .fold(Operator::zero(self.dim), |acc, (p, &l)| {
                acc.plus(&p.scaled(l as f64))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_measurements_are_valid() {
        let z = ProjectiveMeasurement::sigma_z();
        assert_eq!(z.labels(), &[1, -1]);
        assert_eq!(z.observable(), Operator::pauli_z());
        let x = ProjectiveMeasurement::sigma_x();
        assert!(x.observable().max_abs_diff(&Operator::pauli_x()) < 1e-15);
    }

    #[test]
    fn incomplete_set_rejected() {
        let z = ProjectiveMeasurement::sigma_z();
        let err = ProjectiveMeasurement::new(vec![z.projectors()[0].clone()], vec![1]);
        assert!(matches!(err, Err(Error::InvalidMeasurement(_))));
    }

    #[test]
    fn overlapping_projectors_rejected() {
        let z = ProjectiveMeasurement::sigma_z();
        let x = ProjectiveMeasurement::sigma_x();
        let err = ProjectiveMeasurement::new(
            vec![z.projectors()[0].clone(), x.projectors()[1].clone()],
            vec![1, -1],
        );
        assert!(matches!(err, Err(Error::InvalidMeasurement(_))));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let z = ProjectiveMeasurement::sigma_z();
        let err = ProjectiveMeasurement::new(z.projectors().to_vec(), vec![1, 1]);
        assert!(matches!(err, Err(Error::InvalidMeasurement(_))));
    }

    #[test]
    fn deterministic_measurement() {
        let m = ProjectiveMeasurement::deterministic(3, 4, 2).unwrap();
        assert_eq!(m.outcome_count(), 4);
        assert_eq!(m.projectors()[2], Operator::identity(3));
        assert!(ProjectiveMeasurement::deterministic(3, 4, 4).is_err());
    }
}
