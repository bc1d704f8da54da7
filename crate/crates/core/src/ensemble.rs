//! Pure states, priors and their partition into classes `S_1..S_n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{self, ComplexMatrix};

/// Tolerance on `|‖ψ‖ − 1|` for states accepted as normalized.
pub const NORM_TOL: f64 = 1e-6;

/// Tolerance on `|Σ η − 1|`.
pub const PRIOR_SUM_TOL: f64 = 1e-9;

/// A unit-norm state vector. Phases are kept exactly as given.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps `amplitudes`, refusing vectors whose norm is not 1 within
    /// [`NORM_TOL`]. The vector is stored unmodified.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = numerics::norm(&amplitudes);
        if amplitudes.is_empty() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::StateNotNormalized { index: 0, norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = numerics::norm(&amplitudes);
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::StateNotNormalized { index: 0, norm });
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        Self {
            amplitudes: numerics::basis_vector(dim, index),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`
    pub fn overlap(&self, other: &PureState) -> Complex64 {
        numerics::inner(&self.amplitudes, &other.amplitudes)
    }

    /// `U|ψ⟩`; the result is renormalized to absorb rounding.
    pub fn transformed(&self, unitary: &ComplexMatrix) -> Result<Self> {
        Self::normalized(unitary.apply(&self.amplitudes))
    }

    pub fn with_global_phase(&self, angle: f64) -> Self {
        let phase = Complex64::from_polar(1.0, angle);
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }
}

/// One state of the ensemble with its prior and 1-based class label.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub state: PureState,
    pub prior: f64,
    pub class: usize,
}

/// `N` pure states with priors `η`, partitioned into `n ≥ 2` nonempty classes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedEnsemble {
    dim: usize,
    classes: usize,
    members: Vec<Member>,
}

impl ClassifiedEnsemble {
    pub fn new(dim: usize, classes: usize, members: Vec<Member>) -> Result<Self> {
        if classes < 2 {
            return Err(Error::TooFewClasses(classes));
        }
        if dim == 0 {
            return Err(Error::InvalidArgument("dim must be at least 1".into()));
        }
        let mut sizes = vec![0usize; classes];
        for (index, m) in members.iter().enumerate() {
            if m.state.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.state.dim(),
                });
            }
            let norm = numerics::norm(m.state.amplitudes());
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::StateNotNormalized { index, norm });
            }
            if !(m.prior > 0.0 && m.prior <= 1.0) {
                return Err(Error::InvalidPrior {
                    index,
                    value: m.prior,
                });
            }
            if m.class == 0 || m.class > classes {
                return Err(Error::ClassLabelOutOfRange {
                    index,
                    label: m.class,
                    classes,
                });
            }
            sizes[m.class - 1] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::EmptyClass(empty + 1));
        }
        let total: f64 = members.iter().map(|m| m.prior).sum();
        if (total - 1.0).abs() > PRIOR_SUM_TOL {
            return Err(Error::PriorsDoNotSumToOne(total));
        }
        Ok(Self {
            dim,
            classes,
            members,
        })
    }

    /// Builds an ensemble from `(state, prior, class)` triples; `dim` is taken
    /// from the first state.
    pub fn from_parts(classes: usize, parts: Vec<(PureState, f64, usize)>) -> Result<Self> {
        let dim = parts.first().map_or(0, |(s, _, _)| s.dim());
        let members = parts
            .into_iter()
            .map(|(state, prior, class)| Member {
                state,
                prior,
                class,
            })
            .collect();
        Self::new(dim, classes, members)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of classes `n`.
    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Number of states `N`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, index: usize) -> Result<&Member> {
        self.members.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.members.len(),
        })
    }

    /// `m_i`, the size of class `class` (1-based).
    pub fn class_size(&self, class: usize) -> usize {
        self.members.iter().filter(|m| m.class == class).count()
    }

    /// Indices of members in class `class`.
    pub fn class_indices(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(move |(_, m)| m.class == class)
            .map(|(i, _)| i)
    }

    /// Indices of members outside class `class`, i.e. `S \ S_class`.
    pub fn complement_indices(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(move |(_, m)| m.class != class)
            .map(|(i, _)| i)
    }

    /// Amplitude vectors of `S \ S_class`.
    pub fn complement_vectors(&self, class: usize) -> Vec<Vec<Complex64>> {
        self.complement_indices(class)
            .map(|i| self.members[i].state.amplitudes().to_vec())
            .collect()
    }

    /// Applies one unitary to every state.
    pub fn transformed(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| {
                Ok(Member {
                    state: m.state.transformed(unitary)?,
                    prior: m.prior,
                    class: m.class,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, self.classes, members)
    }

    /// Serializes to the JSON ensemble file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&EnsembleFile::from(self)).expect("ensemble serializes")
    }
}

/// Parses and validates the JSON ensemble file format:
///
/// ```json
/// {"dim": 2, "classes": 2, "states": [{"amplitudes": [[1, 0], [0, 0]], "prior": 0.5, "class": 1}, ...]}
/// ```
pub fn parse_ensemble(text: &[u8]) -> Result<ClassifiedEnsemble> {
    let file: EnsembleFile = serde_json::from_slice(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    file.try_into()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnsembleFile {
    dim: usize,
    classes: usize,
    states: Vec<StateEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateEntry {
    amplitudes: Vec<[f64; 2]>,
    prior: f64,
    class: usize,
}

impl From<&ClassifiedEnsemble> for EnsembleFile {
    fn from(e: &ClassifiedEnsemble) -> Self {
        Self {
            dim: e.dim,
            classes: e.classes,
            states: e
                .members
                .iter()
                .map(|m| StateEntry {
                    amplitudes: m.state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
                    prior: m.prior,
                    class: m.class,
                })
                .collect(),
        }
    }
}

impl TryFrom<EnsembleFile> for ClassifiedEnsemble {
    type Error = Error;

    fn try_from(file: EnsembleFile) -> Result<Self> {
        let members = file
            .states
            .into_iter()
            .enumerate()
            .map(|(index, entry)| {
                let amplitudes: Vec<Complex64> = entry
                    .amplitudes
                    .iter()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect();
                if amplitudes.len() != file.dim {
                    return Err(Error::DimensionMismatch {
                        expected: file.dim,
                        found: amplitudes.len(),
                    });
                }
                let state = PureState::new(amplitudes).map_err(|e| match e {
                    Error::StateNotNormalized { norm, .. } => {
                        Error::StateNotNormalized { index, norm }
                    }
                    other => other,
                })?;
                Ok(Member {
                    state,
                    prior: entry.prior,
                    class: entry.class,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ClassifiedEnsemble::new(file.dim, file.classes, members)
    }
}

/// Matrix of pairwise overlaps `G[a][b] = ⟨ψ_a|ψ_b⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(pub ComplexMatrix);

impl GramMatrix {
    pub fn entry(&self, a: usize, b: usize) -> Complex64 {
        self.0[(a, b)]
    }

    /// `|⟨ψ_a|ψ_b⟩|`
    pub fn magnitude(&self, a: usize, b: usize) -> f64 {
        self.0[(a, b)].norm()
    }

    pub fn len(&self) -> usize {
        self.0.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.0.rows() == 0
    }

    /// Numerical rank: number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        numerics::hermitian_eig(&self.0)
            .map(|e| e.eigenvalues.iter().filter(|&&l| l > tol).count())
            .unwrap_or(0)
    }
}

pub fn gram_matrix(e: &ClassifiedEnsemble) -> GramMatrix {
    let n = e.len();
    let mut g = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let v = e.members[a].state.overlap(&e.members[b].state);
            g[(a, b)] = v;
            g[(b, a)] = v.conj();
        }
    }
    GramMatrix(g)
}

/// Ready-made ensembles.
pub mod presets {
    use super::*;

    /// The four BB84 states split by encoded bit:
    /// `S_1 = {|0⟩, |+⟩}` (bit 0) and `S_2 = {|1⟩, |−⟩}` (bit 1), priors ¼.
    pub fn bb84() -> ClassifiedEnsemble {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ClassifiedEnsemble::from_parts(
            2,
            vec![
                (PureState::basis(2, 0), 0.25, 1),
                (PureState::from_real(&[h, h]).unwrap(), 0.25, 1),
                (PureState::basis(2, 1), 0.25, 2),
                (PureState::from_real(&[h, -h]).unwrap(), 0.25, 2),
            ],
        )
        .expect("BB84 ensemble is valid")
    }

    /// Two states in singleton classes: `|0⟩` with prior `p` and
    /// `s|0⟩ + √(1−s²)|1⟩` with prior `1 − p`, so that `⟨ψ_1|ψ_2⟩ = s`.
    pub fn two_states(p: f64, overlap: f64) -> Result<ClassifiedEnsemble> {
        if !(0.0..=1.0).contains(&overlap) {
            return Err(Error::InvalidArgument(format!(
                "overlap {overlap} outside [0, 1]"
            )));
        }
        let second = PureState::from_real(&[overlap, (1.0 - overlap * overlap).max(0.0).sqrt()])?;
        ClassifiedEnsemble::from_parts(
            2,
            vec![(PureState::basis(2, 0), p, 1), (second, 1.0 - p, 2)],
        )
    }

    /// Computational basis states of dimension `dim`, each in its own class,
    /// with uniform priors.
    pub fn orthonormal_singletons(dim: usize) -> ClassifiedEnsemble {
        let prior = 1.0 / dim as f64;
        ClassifiedEnsemble::from_parts(
            dim,
            (0..dim)
                .map(|i| (PureState::basis(dim, i), prior, i + 1))
                .collect(),
        )
        .expect("basis ensemble is valid")
    }

    /// `S_1 = {|+⟩}`, `S_2 = {|0⟩}` with equal priors.
    pub fn plus_vs_zero() -> ClassifiedEnsemble {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ClassifiedEnsemble::from_parts(
            2,
            vec![
                (PureState::from_real(&[h, h]).unwrap(), 0.5, 1),
                (PureState::basis(2, 0), 0.5, 2),
            ],
        )
        .expect("valid ensemble")
    }
}
