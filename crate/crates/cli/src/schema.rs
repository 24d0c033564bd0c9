//! On-disk problem and solution formats.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use udisc::discriminate::{fidelity, SectorInterval, SectorSolution};
use udisc::jordan::Subspace;
use udisc::{ComplexMatrix, ComplexVector, DiscriminationProblem, PovmSolution, Regime};

/// Complex number as `[re, im]`.
pub type ComplexPair = [f64; 2];

/// Either two spanning sets, or the angles alone.
///
/// ```json
/// {"ambient_dim": 4, "s1_basis": [[[1,0],[0,0],[0,0],[0,0]], ...], "s2_basis": [...]}
/// {"cos_angles": [0.5, 0.25], "alpha": [0.5, 0.5], "beta": [0.3, 0.7]}
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s1_basis: Option<Vec<Vec<ComplexPair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2_basis: Option<Vec<Vec<ComplexPair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cos_angles: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
}

/// Reason a problem file was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemFileError {
    Parse(String),
    Form(String),
    Invalid(udisc::Error),
}

impl std::fmt::Display for ProblemFileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProblemFileError::Parse(m) => write!(f, "malformed problem file: {m}"),
            ProblemFileError::Form(m) => write!(f, "problem file form: {m}"),
            ProblemFileError::Invalid(e) => write!(f, "invalid problem: {e}"),
        }
    }
}

impl std::error::Error for ProblemFileError {}

fn vector(pairs: &[ComplexPair]) -> ComplexVector {
    ComplexVector(pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ProblemFileError> {
        serde_json::from_str(text).map_err(|e| ProblemFileError::Parse(e.to_string()))
    }

    pub fn from_subspaces(ambient_dim: usize, s1: &[ComplexVector], s2: &[ComplexVector]) -> Self {
        let enc = |vs: &[ComplexVector]| {
            vs.iter()
                .map(|v| v.as_slice().iter().map(|z| [z.re, z.im]).collect())
                .collect()
        };
        ProblemFile {
            ambient_dim: Some(ambient_dim),
            s1_basis: Some(enc(s1)),
            s2_basis: Some(enc(s2)),
            ..Default::default()
        }
    }

    /// Checks that exactly one form is present and builds the problem.
    pub fn to_problem(&self) -> Result<DiscriminationProblem, ProblemFileError> {
        let has_vectors = self.ambient_dim.is_some() || self.s1_basis.is_some() || self.s2_basis.is_some();
        let alpha = self.alpha.clone();
        let beta = self.beta.clone();
        match (has_vectors, &self.cos_angles) {
            (true, Some(_)) => Err(ProblemFileError::Form(
                "exactly one of the subspace form and the angle form may be given".into(),
            )),
            (false, None) => Err(ProblemFileError::Form(
                "need either {ambient_dim, s1_basis, s2_basis} or {cos_angles}".into(),
            )),
            (false, Some(cos)) => {
                let k = cos.len();
                let alpha = alpha.unwrap_or_else(|| udisc::discriminate::uniform_weights(k));
                let beta = beta.unwrap_or_else(|| udisc::discriminate::uniform_weights(k));
                DiscriminationProblem::from_angles(cos.clone(), alpha, beta).map_err(ProblemFileError::Invalid)
            }
            (true, None) => {
                let (Some(n), Some(b1), Some(b2)) = (self.ambient_dim, &self.s1_basis, &self.s2_basis) else {
                    return Err(ProblemFileError::Form(
                        "subspace form needs all of ambient_dim, s1_basis and s2_basis".into(),
                    ));
                };
                let s1 = Subspace::new(n, b1.iter().map(|v| vector(v)).collect()).map_err(ProblemFileError::Invalid)?;
                let s2 = Subspace::new(n, b2.iter().map(|v| vector(v)).collect()).map_err(ProblemFileError::Invalid)?;
                DiscriminationProblem::from_subspaces(&s1, &s2, alpha, beta).map_err(ProblemFileError::Invalid)
            }
        }
    }
}

/// Dense complex matrix as rows of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<ComplexPair>>;

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Option<ComplexMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let data: Vec<Complex64> = rows.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect();
    ComplexMatrix::from_row_major(r, c, data).ok()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorRecord {
    pub index: usize,
    pub regime: Regime,
    pub q1_bar: f64,
    pub q2_bar: f64,
    pub lambda: f64,
    pub interval: [f64; 2],
}

impl From<&SectorSolution> for SectorRecord {
    fn from(s: &SectorSolution) -> Self {
        SectorRecord {
            index: s.index,
            regime: s.regime,
            q1_bar: s.q1_bar,
            q2_bar: s.q2_bar,
            lambda: s.lambda,
            interval: [s.interval.c, s.interval.d],
        }
    }
}

/// Output of `solve`. The matrices are present only when the problem carries
/// explicit subspaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub eta: f64,
    pub sectors: Vec<SectorRecord>,
    pub q_total: f64,
    pub fidelity: f64,
    pub fidelity_bound: f64,
    pub saturates: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi0: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi1: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi2: Option<MatrixJson>,
}

impl SolutionFile {
    pub fn from_povm(problem: &DiscriminationProblem, sol: &PovmSolution) -> Self {
        SolutionFile {
            eta: sol.eta,
            sectors: sol.sectors.iter().map(SectorRecord::from).collect(),
            q_total: sol.q_total,
            fidelity: fidelity(problem),
            fidelity_bound: sol.fidelity_bound,
            saturates: sol.saturates_bound,
            pi0: Some(matrix_to_json(&sol.pi0)),
            pi1: Some(matrix_to_json(&sol.pi1)),
            pi2: Some(matrix_to_json(&sol.pi2)),
        }
    }

    /// Angle-only solution: scalars and sector records, no matrices.
    pub fn from_profile(
        problem: &DiscriminationProblem,
        eta: f64,
        sectors: &[SectorSolution],
        q_total: f64,
        fidelity_bound: f64,
        saturates: bool,
    ) -> Self {
        SolutionFile {
            eta,
            sectors: sectors.iter().map(SectorRecord::from).collect(),
            q_total,
            fidelity: fidelity(problem),
            fidelity_bound,
            saturates,
            pi0: None,
            pi1: None,
            pi2: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalsReport {
    pub intervals: Vec<SectorInterval>,
    pub intersection: Option<SectorInterval>,
}
