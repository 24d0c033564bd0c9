//! Optimal unambiguous discrimination of two Jordan-diagonal states.
//!
//! The states are `rho1 = sum_i alpha_i |psi_i><psi_i|` and
//! `rho2 = sum_i beta_i |psi_{k+i}><psi_{k+i}|` over a pair of Jordan bases.
//! Both are block diagonal over the sectors `T_i = span{psi_i, psi_{k+i}}`,
//! so the optimal measurement splits into `k` independent two-state problems.
//! In sector `i` the failure probability of `psi_i` is
//!
//! ```text
//! q_i(eta) = 1                                         eta <= c_i
//!          = sqrt((1 - eta) beta_i / (eta alpha_i)) cos   eta in [c_i, d_i]
//!          = cos^2                                     eta >= d_i
//! ```
//!
//! with `c_i = beta cos^2 / (alpha + beta cos^2)`, `d_i = beta / (beta + alpha cos^2)`,
//! and `q_{k+i} = cos^2 / q_i`. The fidelity bound `2 sqrt(eta (1 - eta)) F` is
//! attained exactly when `eta` lies in every interval.

mod povm;

use serde::{Deserialize, Serialize};

use crate::jordan::{check_cos_angles, jordan_decompose, sin_from_cos, JordanDecomposition, Subspace};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::{Error, Result};

pub use povm::{build_povm, validate_povm, Check, PovmSolution, ValidationReport};

/// Tolerance on the weight sums.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Angles plus spectral weights, optionally with the explicit Jordan frames.
#[derive(Debug, Clone)]
pub struct DiscriminationProblem {
    k: usize,
    cos_angles: Vec<f64>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    jordan: Option<JordanDecomposition>,
}

impl DiscriminationProblem {
    /// Scalar-only problem; no operators can be assembled from it.
    pub fn from_angles(cos_angles: Vec<f64>, alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        check_cos_angles(&cos_angles)?;
        let k = cos_angles.len();
        check_weights("alpha", &alpha, k)?;
        check_weights("beta", &beta, k)?;
        Ok(Self {
            k,
            cos_angles,
            alpha,
            beta,
            jordan: None,
        })
    }

    /// Uniformly mixed states `P1 / k` and `P2 / k`, angles only.
    pub fn uniform_from_angles(cos_angles: Vec<f64>) -> Result<Self> {
        let k = cos_angles.len();
        let w = uniform_weights(k);
        Self::from_angles(cos_angles, w.clone(), w)
    }

    /// Problem over the Jordan bases of two explicit subspaces. Missing
    /// weights default to uniform, which is plain subspace discrimination.
    pub fn from_subspaces(
        s1: &Subspace,
        s2: &Subspace,
        alpha: Option<Vec<f64>>,
        beta: Option<Vec<f64>>,
    ) -> Result<Self> {
        let jd = jordan_decompose(s1, s2)?;
        Self::from_jordan(jd, alpha, beta)
    }

    pub fn from_jordan(
        jd: JordanDecomposition,
        alpha: Option<Vec<f64>>,
        beta: Option<Vec<f64>>,
    ) -> Result<Self> {
        let k = jd.k;
        let alpha = alpha.unwrap_or_else(|| uniform_weights(k));
        let beta = beta.unwrap_or_else(|| uniform_weights(k));
        let mut p = Self::from_angles(jd.cos_angles.clone(), alpha, beta)?;
        p.jordan = Some(jd);
        Ok(p)
    }

    /// Angles and weights realized on the canonical frames of [`JordanDecomposition::canonical`].
    pub fn canonical(cos_angles: Vec<f64>, alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        let jd = JordanDecomposition::canonical(&cos_angles)?;
        Self::from_jordan(jd, Some(alpha), Some(beta))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cos_angles(&self) -> &[f64] {
        &self.cos_angles
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn jordan(&self) -> Option<&JordanDecomposition> {
        self.jordan.as_ref()
    }

    pub fn is_uniform(&self) -> bool {
        let u = 1.0 / self.k as f64;
        self.alpha
            .iter()
            .chain(&self.beta)
            .all(|&w| (w - u).abs() <= WEIGHT_SUM_TOL)
    }

    /// Same angles with the two hypotheses' weights exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            k: self.k,
            cos_angles: self.cos_angles.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            jordan: self.jordan.as_ref().map(|jd| JordanDecomposition {
                k: jd.k,
                basis1: jd.basis2.clone(),
                basis2: jd.basis1.clone(),
                cos_angles: jd.cos_angles.clone(),
                z_frame: jd.y_frame.clone(),
                y_frame: jd.z_frame.clone(),
            }),
        }
    }

    pub fn sector(&self, i: usize) -> SectorParams {
        SectorParams {
            cos_angle: self.cos_angles[i],
            alpha: self.alpha[i],
            beta: self.beta[i],
        }
    }

    /// `rho1 = sum_i alpha_i |psi_i><psi_i|`
    pub fn rho1(&self) -> Result<ComplexMatrix> {
        let jd = self.jordan.as_ref().ok_or(Error::MissingFrames)?;
        Ok(weighted_projector(&jd.basis1, &self.alpha))
    }

    /// `rho2 = sum_i beta_i |psi_{k+i}><psi_{k+i}|`
    pub fn rho2(&self) -> Result<ComplexMatrix> {
        let jd = self.jordan.as_ref().ok_or(Error::MissingFrames)?;
        Ok(weighted_projector(&jd.basis2, &self.beta))
    }
}

fn weighted_projector(basis: &[ComplexVector], weights: &[f64]) -> ComplexMatrix {
    let n = basis[0].len();
    let mut m = ComplexMatrix::zeros(n, n);
    for (v, &w) in basis.iter().zip(weights) {
        m.add_outer(num_complex::Complex64::new(w, 0.0), v, v);
    }
    m
}

pub fn uniform_weights(k: usize) -> Vec<f64> {
    vec![1.0 / k as f64; k]
}

fn check_weights(name: &str, w: &[f64], k: usize) -> Result<()> {
    if w.len() != k {
        return Err(Error::InvalidWeights(format!(
            "{name} has {} entries, expected {k}",
            w.len()
        )));
    }
    if let Some(x) = w.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::InvalidWeights(format!("{name} entry {x} is not strictly positive")));
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::InvalidWeights(format!("{name} sums to {sum}, expected 1")));
    }
    Ok(())
}

pub(crate) fn check_prior(eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::InvalidPrior(eta))
    }
}

/// Scalar data of one sector.
#[derive(Debug, Clone, Copy)]
pub struct SectorParams {
    pub cos_angle: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SectorParams {
    pub fn cos2(&self) -> f64 {
        self.cos_angle * self.cos_angle
    }

    pub fn interval(&self) -> SectorInterval {
        let c2 = self.cos2();
        SectorInterval {
            c: self.beta * c2 / (self.alpha + self.beta * c2),
            d: self.beta / (self.beta + self.alpha * c2),
        }
    }

    pub fn regime(&self, eta: f64) -> Regime {
        let iv = self.interval();
        if eta < iv.c || (eta == 0.0 && iv.c == 0.0) {
            Regime::Below
        } else if eta > iv.d || (eta == 1.0 && iv.d == 1.0) {
            Regime::Above
        } else {
            Regime::Interior
        }
    }

    /// `(q_i, q_{k+i})` for prior `eta`.
    pub fn failure_pair(&self, eta: f64) -> (Regime, f64, f64) {
        let c = self.cos_angle;
        let c2 = self.cos2();
        let regime = self.regime(eta);
        let (q1, q2) = match regime {
            Regime::Below => (1.0, c2),
            Regime::Above => (c2, 1.0),
            Regime::Interior => {
                let ratio = (1.0 - eta) * self.beta / (eta * self.alpha);
                // Closed-interval endpoints can overshoot [cos^2, 1] by an ulp.
                let q1 = (ratio.sqrt() * c).clamp(c2, 1.0);
                let q2 = ((1.0 / ratio).sqrt() * c).clamp(c2, 1.0);
                (q1, q2)
            }
        };
        (regime, q1, q2)
    }

    /// Contribution `eta alpha q_i + (1 - eta) beta q_{k+i}` to the average failure.
    pub fn failure_contribution(&self, eta: f64) -> f64 {
        let (_, q1, q2) = self.failure_pair(eta);
        eta * self.alpha * q1 + (1.0 - eta) * self.beta * q2
    }
}

/// Closed interval of priors on which a sector needs a genuine three-outcome POVM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorInterval {
    pub c: f64,
    pub d: f64,
}

impl SectorInterval {
    pub fn contains(&self, eta: f64) -> bool {
        self.c <= eta && eta <= self.d
    }

    pub fn intersect(&self, other: &SectorInterval) -> Option<SectorInterval> {
        let c = self.c.max(other.c);
        let d = self.d.min(other.d);
        (c <= d).then_some(SectorInterval { c, d })
    }

    pub fn width(&self) -> f64 {
        self.d - self.c
    }
}

/// Which branch of the piecewise optimum a sector is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `eta <= c`: project onto the complement of `S1` only.
    Below,
    /// `eta` in `[c, d]`: three-outcome POVM.
    Interior,
    /// `eta >= d`: project onto the complement of `S2` only.
    Above,
}

impl Regime {
    pub fn is_projective(self) -> bool {
        !matches!(self, Regime::Interior)
    }
}

/// Optimal sector record for a given prior.
#[derive(Debug, Clone, Serialize)]
pub struct SectorSolution {
    pub index: usize,
    pub regime: Regime,
    pub interval: SectorInterval,
    /// Failure probability of `psi_i`.
    pub q1_bar: f64,
    /// Failure probability of `psi_{k+i}`.
    pub q2_bar: f64,
    /// Nonzero eigenvalue of the failure operator restricted to the sector.
    pub lambda: f64,
    /// Unit eigenvector of the failure operator as coefficients on `(psi_i, psi_{k+i})`.
    pub zeta_coords: [f64; 2],
    /// Same eigenvector in the ambient space, when frames are available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ComplexVector>,
    pub sector_prior: f64,
    pub cond_prob1: f64,
    pub cond_prob2: f64,
}

/// Per-interval endpoints `[c_i, d_i]`.
pub fn sector_intervals(problem: &DiscriminationProblem) -> Vec<SectorInterval> {
    (0..problem.k).map(|i| problem.sector(i).interval()).collect()
}

/// Optimal per-sector failure profile at prior `eta`.
pub fn optimal_profile(problem: &DiscriminationProblem, eta: f64) -> Result<Vec<SectorSolution>> {
    check_prior(eta)?;
    Ok((0..problem.k)
        .map(|i| sector_solution(problem, i, eta))
        .collect())
}

fn sector_solution(problem: &DiscriminationProblem, i: usize, eta: f64) -> SectorSolution {
    let sp = problem.sector(i);
    let (regime, q1, q2) = sp.failure_pair(eta);
    let c = sp.cos_angle;
    let c2 = sp.cos2();
    let s = sin_from_cos(c);
    let s2 = s * s;

    let lambda = (q1 + q2 - 2.0 * c2) / s2;

    // Failure operator in the orthonormal sector basis (psi_i, y_i):
    //   [[q1, (1-q1) c/s], [(1-q1) c/s, (q1 c^2 + q2 - 2 c^2)/s^2]]
    // It is rank one; either nonzero column is an eigenvector. The first
    // column reproduces the usual (psi_i, psi_{k+i}) expression, the second
    // is needed when cos = 0 makes the first vanish.
    let off = (1.0 - q1) * c / s;
    let corner = (q1 * c2 + q2 - 2.0 * c2) / s2;
    let col1 = (q1, off);
    let col2 = (off, corner);
    let (a, b) = if col1.0.hypot(col1.1) >= col2.0.hypot(col2.1) {
        col1
    } else {
        col2
    };
    let n = a.hypot(b);
    let (a, b) = if n > 0.0 { (a / n, b / n) } else { (1.0, 0.0) };
    // a psi_i + b y_i with y_i = (psi_{k+i} - c psi_i) / s
    let zeta_coords = [a - b * c / s, b / s];

    let zeta = problem.jordan.as_ref().map(|jd| {
        let mut v = jd.basis1[i].scale_real(zeta_coords[0]);
        v.axpy(num_complex::Complex64::new(zeta_coords[1], 0.0), &jd.basis2[i]);
        v
    });

    let sector_prior = eta * sp.alpha + (1.0 - eta) * sp.beta;
    SectorSolution {
        index: i,
        regime,
        interval: sp.interval(),
        q1_bar: q1,
        q2_bar: q2,
        lambda,
        zeta_coords,
        zeta,
        sector_prior,
        cond_prob1: eta * sp.alpha / sector_prior,
        cond_prob2: (1.0 - eta) * sp.beta / sector_prior,
    }
}

/// Minimal average failure probability at prior `eta`, from angles and weights alone.
pub fn failure_probability(problem: &DiscriminationProblem, eta: f64) -> Result<f64> {
    check_prior(eta)?;
    Ok((0..problem.k)
        .map(|i| problem.sector(i).failure_contribution(eta))
        .sum())
}

/// `F(rho1, rho2) = sum_i sqrt(alpha_i beta_i) cos(theta_i)`.
pub fn fidelity(problem: &DiscriminationProblem) -> f64 {
    (0..problem.k)
        .map(|i| (problem.alpha[i] * problem.beta[i]).sqrt() * problem.cos_angles[i])
        .sum()
}

/// `2 sqrt(eta (1 - eta)) F`.
pub fn fidelity_bound(problem: &DiscriminationProblem, eta: f64) -> Result<f64> {
    check_prior(eta)?;
    Ok(2.0 * (eta * (1.0 - eta)).sqrt() * fidelity(problem))
}

/// Intersection of all sector intervals: the priors at which the fidelity bound is attained.
pub fn saturation_interval(problem: &DiscriminationProblem) -> Option<SectorInterval> {
    let mut ivs = sector_intervals(problem).into_iter();
    let first = ivs.next()?;
    ivs.try_fold(first, |acc, iv| acc.intersect(&iv))
}
