use num_complex::Complex64;

use super::{ComplexMatrix, ComplexVector};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<ComplexVector>,
}

impl EigenSystem {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// Number of eigenvalues strictly above `threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > threshold).count()
    }

    /// `V diag(f(lambda)) V^H`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (&l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let w = f(l);
            if w != 0.0 {
                m.add_outer(Complex64::new(w, 0.0), v, v);
            }
        }
        m
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot entry with a diagonal
/// unitary, then applies the classical real Jacobi rotation.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenSystem> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::InvalidArgument("non-finite matrix entry".into()));
    }
    let scale = a.max_abs();
    let residual = a.hermitian_residual();
    if residual > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { residual });
    }

    let n = a.rows();
    // Symmetrize so that tiny anti-Hermitian noise does not leak into the rotations.
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = 0.5 * (a[(i, j)] + a[(j, i)].conj());
        }
        m[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);

    let total = m.frobenius_norm();
    let mut converged = n <= 1 || total == 0.0;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
        }
        sweep += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        converged = off <= 1e-15 * total;
    }

    let mut pairs: Vec<(f64, ComplexVector)> =
        (0..n).map(|i| (m[(i, i)].re, v.column(i))).collect();
    // Stable sort keeps the rotation order among exactly equal eigenvalues.
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    if r == 0.0 || r <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = Complex64::new(0.0, 0.0);
        m[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // R = diag(1, conj(phase)) * [[c, s], [-s, c]]
    let r00 = Complex64::new(c, 0.0);
    let r01 = Complex64::new(s, 0.0);
    let r10 = -s * phase.conj();
    let r11 = c * phase.conj();

    let n = m.rows();
    // A <- A R
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * r00 + akq * r10;
        m[(k, q)] = akp * r01 + akq * r11;
    }
    // A <- R^H A
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = r00.conj() * apk + r10.conj() * aqk;
        m[(q, k)] = r01.conj() * apk + r11.conj() * aqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
    // V <- V R
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * r00 + vkq * r10;
        v[(k, q)] = vkp * r01 + vkq * r11;
    }
}

/// Square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues below `rel_tol * max_eigenvalue` are treated as exact zeros;
/// rounding noise on the kernel would otherwise enter as `sqrt(eps)`.
pub fn psd_sqrt(a: &ComplexMatrix, rel_tol: f64) -> Result<ComplexMatrix> {
    let es = hermitian_eig(a)?;
    let cutoff = rel_tol * es.max_eigenvalue().abs();
    Ok(es.reconstruct_with(|l| if l > cutoff { l.sqrt() } else { 0.0 }))
}
