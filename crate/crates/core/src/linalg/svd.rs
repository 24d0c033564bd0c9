use super::{complete_basis, hermitian_eig, ComplexMatrix, ComplexVector};
use crate::Result;

/// Thin singular value decomposition `M = U diag(sigma) V^H`.
///
/// For an `m x n` input, `U` is `m x r` and `V` is `n x r` with
/// `r = min(m, n)`; both have orthonormal columns.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let s = ComplexMatrix::diagonal_real(&self.sigma);
        &(&self.u * &s) * &self.v.adjoint()
    }
}

/// SVD through the Hermitian eigenproblem of `M^H M`.
///
/// Right singular vectors come from the eigenvectors of `M^H M`. Singular
/// values are taken as the norms of `M v_i` rather than square roots of the
/// eigenvalues, which keeps small singular values accurate to rounding level.
/// Left vectors are `M v_i / sigma_i`, re-orthogonalized in descending order
/// and completed with axis vectors where `sigma_i` is numerically zero.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.rows() < m.cols() {
        let t = svd(&m.adjoint())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }
    let (rows, cols) = (m.rows(), m.cols());
    let gram = &m.adjoint() * m;
    let es = hermitian_eig(&gram)?;

    let images: Vec<ComplexVector> = es.eigenvectors.iter().map(|v| m.matvec(v)).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = images.iter().map(ComplexVector::norm).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let largest = norms.iter().copied().fold(0.0, f64::max);
    let cutoff = largest * 1e-13;

    let mut sigma = Vec::with_capacity(cols);
    let mut vs = Vec::with_capacity(cols);
    let mut us: Vec<ComplexVector> = Vec::with_capacity(cols);
    for &i in &order {
        sigma.push(norms[i]);
        vs.push(es.eigenvectors[i].clone());
        if norms[i] > cutoff {
            let mut w = images[i].clone();
            for _ in 0..2 {
                for q in &us {
                    let c = q.inner(&w);
                    w.axpy(-c, q);
                }
            }
            if let Some(u) = w.normalized() {
                us.push(u);
            }
        }
    }
    // Vanishing singular values sit at the tail, so completing the family
    // keeps columns aligned with sigma.
    let us = complete_basis(us, rows, cols);

    Ok(Svd {
        u: ComplexMatrix::from_columns(&us),
        sigma,
        v: ComplexMatrix::from_columns(&vs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn diagonal_input_sorted() {
        let m = ComplexMatrix::diagonal_real(&[0.3, 0.9]);
        let s = svd(&m).unwrap();
        assert!((s.sigma[0] - 0.9).abs() < 1e-15);
        assert!((s.sigma[1] - 0.3).abs() < 1e-15);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn scaled_identity() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::diagonal_real(&[h, h]);
        let s = svd(&m).unwrap();
        assert_eq!(s.sigma, vec![std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2]);
    }

    #[test]
    fn zero_matrix_has_orthonormal_factors() {
        let m = ComplexMatrix::zeros(3, 2);
        let s = svd(&m).unwrap();
        assert_eq!(s.sigma, vec![0.0, 0.0]);
        let utu = &s.u.adjoint() * &s.u;
        assert!(utu.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn wide_matrix() {
        let m = ComplexMatrix::from_row_major(
            2,
            3,
            vec![
                Complex64::new(1.0, 0.5),
                Complex64::new(0.0, 2.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.3, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(2.0, -1.0),
            ],
        )
        .unwrap();
        let s = svd(&m).unwrap();
        assert_eq!(s.u.rows(), 2);
        assert_eq!(s.v.rows(), 3);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-13);
    }
}
