use num_complex::Complex64;
use serde::Serialize;

use super::{
    check_prior, failure_probability, fidelity, optimal_profile, saturation_interval,
    DiscriminationProblem, SectorSolution,
};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::{Error, Result};

/// Eigenvalues above this count toward the rank of the failure operator.
pub const RANK_EIG_TOL: f64 = 1e-8;
pub const COMPLETENESS_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-9;
pub const UNAMBIGUITY_TOL: f64 = 1e-10;
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// Assembled optimal measurement for one prior.
#[derive(Debug, Clone)]
pub struct PovmSolution {
    pub eta: f64,
    pub sectors: Vec<SectorSolution>,
    /// Failure (inconclusive) outcome.
    pub pi0: ComplexMatrix,
    /// Identifies `rho1`; supported on the complement of `S2`.
    pub pi1: ComplexMatrix,
    /// Identifies `rho2`; supported on the complement of `S1`.
    pub pi2: ComplexMatrix,
    pub q_total: f64,
    pub fidelity_bound: f64,
    pub saturates_bound: bool,
}

impl PovmSolution {
    /// Outcome operators in the order identify-1, identify-2, fail.
    pub fn operators(&self) -> [&ComplexMatrix; 3] {
        [&self.pi1, &self.pi2, &self.pi0]
    }
}

/// Builds `Pi1 = sum (1 - q_i)/sin^2 |z_i><z_i|`, `Pi2 = sum (1 - q_{k+i})/sin^2 |y_i><y_i|`
/// and `Pi0 = I - Pi1 - Pi2` from the optimal profile.
pub fn build_povm(problem: &DiscriminationProblem, eta: f64) -> Result<PovmSolution> {
    check_prior(eta)?;
    let jd = problem.jordan().ok_or(Error::MissingFrames)?;
    let sectors = optimal_profile(problem, eta)?;
    let n = jd.ambient_dim();

    let mut pi1 = ComplexMatrix::zeros(n, n);
    let mut pi2 = ComplexMatrix::zeros(n, n);
    for s in &sectors {
        let i = s.index;
        let sin2 = 1.0 - jd.cos_angles[i] * jd.cos_angles[i];
        let a = (1.0 - s.q1_bar) / sin2;
        let b = (1.0 - s.q2_bar) / sin2;
        if a != 0.0 {
            pi1.add_outer(Complex64::new(a, 0.0), &jd.z_frame[i], &jd.z_frame[i]);
        }
        if b != 0.0 {
            pi2.add_outer(Complex64::new(b, 0.0), &jd.y_frame[i], &jd.y_frame[i]);
        }
    }
    let pi0 = &(&ComplexMatrix::identity(n) - &pi1) - &pi2;

    let q_total = failure_probability(problem, eta)?;
    let fidelity_bound = 2.0 * (eta * (1.0 - eta)).sqrt() * fidelity(problem);
    let saturates_bound = saturation_interval(problem).is_some_and(|iv| iv.contains(eta));
    Ok(PovmSolution {
        eta,
        sectors,
        pi0,
        pi1,
        pi2,
        q_total,
        fidelity_bound,
        saturates_bound,
    })
}

/// A named check with its measured residual and pass threshold.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub rank_pi0: usize,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn upper(name: &'static str, value: f64, threshold: f64) -> Check {
    Check {
        name,
        value,
        threshold,
        passed: value <= threshold,
    }
}

fn lower(name: &'static str, value: f64, threshold: f64) -> Check {
    Check {
        name,
        value,
        threshold,
        passed: value >= threshold,
    }
}

/// Re-derives every defining property of the measurement from its matrices.
///
/// Failures are reported as entries, never as errors, except when the
/// problem carries no frames to build the density operators from.
pub fn validate_povm(sol: &PovmSolution, problem: &DiscriminationProblem) -> Result<ValidationReport> {
    let rho1 = problem.rho1()?;
    let rho2 = problem.rho2()?;
    let n = rho1.rows();
    let k = problem.k();
    let mut checks = Vec::new();

    let sum = &(&sol.pi0 + &sol.pi1) + &sol.pi2;
    checks.push(upper(
        "completeness",
        sum.max_abs_diff(&ComplexMatrix::identity(n)),
        COMPLETENESS_TOL,
    ));

    let mut rank_pi0 = n;
    for (name, herm_name, op) in [
        ("min_eig_pi0", "hermitian_pi0", &sol.pi0),
        ("min_eig_pi1", "hermitian_pi1", &sol.pi1),
        ("min_eig_pi2", "hermitian_pi2", &sol.pi2),
    ] {
        checks.push(upper(herm_name, op.hermitian_residual(), COMPLETENESS_TOL));
        match hermitian_eig(op) {
            Ok(es) => {
                checks.push(lower(name, es.min_eigenvalue(), -POSITIVITY_TOL));
                if name == "min_eig_pi0" {
                    rank_pi0 = es.count_above(RANK_EIG_TOL);
                }
            }
            Err(_) => checks.push(lower(name, f64::NEG_INFINITY, -POSITIVITY_TOL)),
        }
    }

    checks.push(upper(
        "unambiguity_pi1_rho2",
        sol.pi1.trace_product(&rho2).norm(),
        UNAMBIGUITY_TOL,
    ));
    checks.push(upper(
        "unambiguity_pi2_rho1",
        sol.pi2.trace_product(&rho1).norm(),
        UNAMBIGUITY_TOL,
    ));
    checks.push(upper("rank_pi0", rank_pi0 as f64, k as f64));

    let eta = sol.eta;
    let q_matrix = eta * sol.pi0.trace_product(&rho1).re + (1.0 - eta) * sol.pi0.trace_product(&rho2).re;
    checks.push(upper(
        "q_consistency",
        (q_matrix - sol.q_total).abs(),
        CONSISTENCY_TOL,
    ));
    checks.push(lower(
        "bound_dominance",
        sol.q_total - sol.fidelity_bound,
        -1e-12,
    ));

    Ok(ValidationReport { checks, rank_pi0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::Subspace;
    use crate::linalg::ComplexVector;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn example() -> (DiscriminationProblem, Subspace, Subspace) {
        let h = FRAC_1_SQRT_2;
        let s1 = Subspace::new(4, vec![ComplexVector::basis(4, 0), ComplexVector::basis(4, 1)]).unwrap();
        let s2 = Subspace::new(
            4,
            vec![
                ComplexVector::from_real(&[h, 0.0, h, 0.0]),
                ComplexVector::from_real(&[0.0, h, 0.0, h]),
            ],
        )
        .unwrap();
        let p = DiscriminationProblem::from_subspaces(&s1, &s2, None, None).unwrap();
        (p, s1, s2)
    }

    #[test]
    fn example_half_prior() {
        let (p, s1, s2) = example();
        let sol = build_povm(&p, 0.5).unwrap();
        let expect1 = s2.complement_projector().scale_real(2.0 - SQRT_2);
        let expect2 = s1.complement_projector().scale_real(2.0 - SQRT_2);
        assert!(sol.pi1.max_abs_diff(&expect1) < 1e-12);
        assert!(sol.pi2.max_abs_diff(&expect2) < 1e-12);
        assert!(sol.saturates_bound);

        let report = validate_povm(&sol, &p).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.rank_pi0, 2);
    }

    #[test]
    fn example_low_prior_is_projective() {
        let (p, s1, _) = example();
        let sol = build_povm(&p, 0.25).unwrap();
        assert!(sol.pi1.max_abs() < 1e-15);
        assert!(sol.pi2.max_abs_diff(&s1.complement_projector()) < 1e-12);
        assert!(!sol.saturates_bound);
        assert!(validate_povm(&sol, &p).unwrap().all_passed());
    }

    #[test]
    fn orthogonal_subspaces_are_perfectly_distinguished() {
        let e = |i| ComplexVector::basis(4, i);
        let s1 = Subspace::new(4, vec![e(0), e(1)]).unwrap();
        let s2 = Subspace::new(4, vec![e(2), e(3)]).unwrap();
        let p = DiscriminationProblem::from_subspaces(&s1, &s2, None, None).unwrap();
        let sol = build_povm(&p, 0.4).unwrap();
        assert!(sol.pi1.max_abs_diff(s1.projector()) < 1e-15);
        assert!(sol.pi2.max_abs_diff(s2.projector()) < 1e-15);
        assert!(sol.pi0.max_abs() < 1e-15);
        assert_eq!(sol.q_total, 0.0);
    }

    #[test]
    fn corrupted_operator_is_flagged() {
        let (p, _, _) = example();
        let mut sol = build_povm(&p, 0.5).unwrap();
        let norm = sol.pi1.max_abs();
        sol.pi1 = sol.pi1.scale_real(1.1);
        let report = validate_povm(&sol, &p).unwrap();
        let c = report.get("completeness").unwrap();
        assert!(!c.passed);
        assert!((c.value - 0.1 * norm).abs() < 1e-12);
    }

    #[test]
    fn zero_prior() {
        let (p, _, _) = example();
        let sol = build_povm(&p, 0.0).unwrap();
        let report = validate_povm(&sol, &p).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert!(report.get("q_consistency").unwrap().value <= 1e-12);
        assert!((sol.q_total - 0.5).abs() < 1e-15);
    }

    #[test]
    fn needs_frames() {
        let p = DiscriminationProblem::uniform_from_angles(vec![0.5]).unwrap();
        assert_eq!(build_povm(&p, 0.5).unwrap_err(), Error::MissingFrames);
    }
}
