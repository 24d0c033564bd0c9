//! Dense complex linear algebra for small matrices.
//!
//! Everything here is sized for `2k x 2k` problems with `k` in the tens at
//! most, so the routines favour clarity and accuracy over blocking or
//! cache tuning: a cyclic Jacobi eigensolver for Hermitian matrices, an SVD
//! built on top of it, and a re-orthogonalizing Gram-Schmidt.

mod eig;
mod svd;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use eig::{hermitian_eig, psd_sqrt, EigenSystem};
pub use svd::{svd, Svd};

/// Default relative rank threshold used by [`orthonormalize`].
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A column vector of complex amplitudes.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexVector(pub Vec<Complex64>);

impl ComplexVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![ZERO; len])
    }

    /// Unit vector along axis `index`.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[index] = ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Complex64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> ComplexVector {
        ComplexVector(self.0.iter().map(|z| z * factor).collect())
    }

    pub fn scale_real(&self, factor: f64) -> ComplexVector {
        ComplexVector(self.0.iter().map(|z| z * factor).collect())
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: Complex64, other: &ComplexVector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += factor * b;
        }
    }

    pub fn normalized(&self) -> Option<ComplexVector> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale_real(1.0 / n))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &ComplexVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl Add for &ComplexVector {
    type Output = ComplexVector;
    fn add(self, rhs: &ComplexVector) -> ComplexVector {
        ComplexVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ComplexVector {
    type Output = ComplexVector;
    fn sub(self, rhs: &ComplexVector) -> ComplexVector {
        ComplexVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[ComplexVector]) -> Self {
        let rows = columns.first().map_or(0, ComplexVector::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    pub fn diagonal_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|u><v|`
    pub fn outer(u: &ComplexVector, v: &ComplexVector) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for i in 0..u.len() {
            for j in 0..v.len() {
                m[(i, j)] = u[i] * v[j].conj();
            }
        }
        m
    }

    /// Orthogonal projector onto the span of an orthonormal family.
    pub fn projector(basis: &[ComplexVector]) -> Self {
        let n = basis.first().map_or(0, ComplexVector::len);
        let mut p = Self::zeros(n, n);
        for v in basis {
            p.add_outer(ONE, v, v);
        }
        p
    }

    /// `self += weight * |u><v|`
    pub fn add_outer(&mut self, weight: Complex64, u: &ComplexVector, v: &ComplexVector) {
        for i in 0..self.rows {
            let ui = weight * u[i];
            for j in 0..self.cols {
                self.data[i * self.cols + j] += ui * v[j].conj();
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn columns(&self) -> Vec<ComplexVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matvec(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        ComplexVector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `<u|self|v>`
    pub fn sandwich(&self, u: &ComplexVector, v: &ComplexVector) -> Complex64 {
        u.inner(&self.matvec(v))
    }

    /// Real part of `<v|self|v>`; the imaginary part vanishes for Hermitian input.
    pub fn expectation(&self, v: &ComplexVector) -> f64 {
        self.sandwich(v, v).re
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A - A^H|`, or infinity for non-square input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Orthonormal basis of the span of `vectors`.
///
/// Modified Gram-Schmidt with one re-orthogonalization pass. A residual whose
/// norm falls below `tol` times the largest input norm is dropped, so the
/// output length is the numerical rank.
pub fn orthonormalize(vectors: &[ComplexVector], tol: f64) -> Result<Vec<ComplexVector>> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let dim = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} among vectors of length {dim}",
            bad.len()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("rank tolerance {tol} must be positive")));
    }
    if vectors.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite vector entry".into()));
    }

    let scale = vectors.iter().map(ComplexVector::norm).fold(0.0, f64::max);
    let mut basis: Vec<ComplexVector> = Vec::new();
    if scale == 0.0 {
        return Ok(basis);
    }
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = q.inner(&w);
                w.axpy(-c, q);
            }
        }
        let n = w.norm();
        if n > tol * scale {
            basis.push(w.scale_real(1.0 / n));
        }
        if basis.len() == dim {
            break;
        }
    }
    Ok(basis)
}

/// Extends an orthonormal family to `target` vectors by orthogonalizing
/// standard basis vectors against it.
pub(crate) fn complete_basis(mut family: Vec<ComplexVector>, dim: usize, target: usize) -> Vec<ComplexVector> {
    let mut axis = 0;
    while family.len() < target && axis < dim {
        let mut w = ComplexVector::basis(dim, axis);
        for _ in 0..2 {
            for q in &family {
                let c = q.inner(&w);
                w.axpy(-c, q);
            }
        }
        let n = w.norm();
        if n > 1e-6 {
            family.push(w.scale_real(1.0 / n));
        }
        axis += 1;
    }
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn orthonormalize_axis_pair() {
        let vs = [
            ComplexVector::from_real(&[1.0, 0.0]),
            ComplexVector::from_real(&[1.0, 1.0]),
        ];
        let q = orthonormalize(&vs, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(q.len(), 2);
        assert!((q[0].inner(&ComplexVector::basis(2, 0)).norm() - 1.0).abs() < 1e-15);
        assert!((q[1].inner(&ComplexVector::basis(2, 1)).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn orthonormalize_already_orthonormal() {
        let e0 = ComplexVector::basis(4, 0);
        let q = orthonormalize(std::slice::from_ref(&e0), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(q, vec![e0]);
    }

    #[test]
    fn orthonormalize_collapses_rank() {
        let v = ComplexVector(vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.5)]);
        let q = orthonormalize(&[v.clone(), v.scale_real(2.0)], DEFAULT_RANK_TOL).unwrap();
        assert_eq!(q.len(), 1);
        assert!((q[0].inner(&v).norm() - v.norm()).abs() < 1e-12);
    }

    #[test]
    fn orthonormalize_errors() {
        assert_eq!(orthonormalize(&[], 1e-10), Err(Error::EmptyInput));
        let r = orthonormalize(
            &[ComplexVector::zeros(2), ComplexVector::zeros(3)],
            1e-10,
        );
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn trace_product_matches_product_trace() {
        let a = ComplexMatrix::from_row_major(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0)]).unwrap();
        let b = a.adjoint();
        assert!((a.trace_product(&b) - (&a * &b).trace()).norm() < 1e-14);
    }

    #[test]
    fn projector_from_orthonormal_family() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let basis = [
            ComplexVector::from_real(&[s, 0.0, s, 0.0]),
            ComplexVector::from_real(&[0.0, s, 0.0, s]),
        ];
        let p = ComplexMatrix::projector(&basis);
        assert!((&p * &p).max_abs_diff(&p) < 1e-15);
        assert!((p.trace().re - 2.0).abs() < 1e-15);
    }
}
