#![allow(dead_code)]

pub mod frozen;

use num_complex::Complex64;
use proptest::prelude::*;
use udisc::jordan::{JordanDecomposition, Subspace};
use udisc::linalg::{orthonormalize, psd_sqrt, svd};
use udisc::{ComplexMatrix, ComplexVector, DiscriminationProblem};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn vectors_from(entries: &[(f64, f64)], n: usize, count: usize) -> Vec<ComplexVector> {
    (0..count)
        .map(|j| ComplexVector(entries[j * n..(j + 1) * n].iter().map(|&(a, b)| c(a, b)).collect()))
        .collect()
}

/// Unitary from Gram-Schmidt on `n` generic columns; identity if they are dependent.
pub fn unitary_from(entries: &[(f64, f64)], n: usize) -> ComplexMatrix {
    match orthonormalize(&vectors_from(entries, n, n), 1e-6) {
        Ok(cols) if cols.len() == n => ComplexMatrix::from_columns(&cols),
        _ => ComplexMatrix::identity(n),
    }
}

pub fn hermitian_from(entries: &[(f64, f64)], n: usize) -> ComplexMatrix {
    let b = ComplexMatrix::from_row_major(n, n, entries.iter().map(|&(a, b)| c(a, b)).collect()).unwrap();
    (&b + &b.adjoint()).scale_real(0.5)
}

pub fn complex_entries(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len)
}

pub fn normalized(raw: &[f64]) -> Vec<f64> {
    let s: f64 = raw.iter().sum();
    raw.iter().map(|w| w / s).collect()
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Angles, weights and a random orientation of the canonical frames.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub cos: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub rotation: Vec<(f64, f64)>,
}

impl ProblemSpec {
    pub fn k(&self) -> usize {
        self.cos.len()
    }

    pub fn scalar(&self) -> DiscriminationProblem {
        DiscriminationProblem::from_angles(self.cos.clone(), self.alpha.clone(), self.beta.clone()).unwrap()
    }

    pub fn framed(&self) -> DiscriminationProblem {
        let u = unitary_from(&self.rotation, 2 * self.k());
        let jd = JordanDecomposition::canonical(&self.cos).unwrap().rotated(&u);
        DiscriminationProblem::from_jordan(jd, Some(self.alpha.clone()), Some(self.beta.clone())).unwrap()
    }
}

pub fn problem_spec(max_k: usize) -> impl Strategy<Value = ProblemSpec> {
    (1..=max_k).prop_flat_map(|k| {
        (
            prop::collection::vec(0.0..0.98f64, k),
            prop::collection::vec(0.05..1.0f64, k),
            prop::collection::vec(0.05..1.0f64, k),
            complex_entries(4 * k * k),
        )
            .prop_map(|(cos, a, b, rotation)| ProblemSpec {
                cos: sorted_desc(cos),
                alpha: normalized(&a),
                beta: normalized(&b),
                rotation,
            })
    })
}

pub type Entries = Vec<(f64, f64)>;

/// Two generic `k`-dimensional subspaces of a `2k`-dimensional space.
pub fn subspace_pair(max_k: usize) -> impl Strategy<Value = (usize, Entries, Entries)> {
    (1..=max_k).prop_flat_map(|k| (Just(k), complex_entries(2 * k * k), complex_entries(2 * k * k)))
}

pub fn make_subspaces(k: usize, e1: &[(f64, f64)], e2: &[(f64, f64)]) -> (Subspace, Subspace) {
    let n = 2 * k;
    (
        Subspace::new(n, vectors_from(e1, n, k)).unwrap(),
        Subspace::new(n, vectors_from(e2, n, k)).unwrap(),
    )
}

/// `Tr sqrt(sqrt(r1) r2 sqrt(r1))`, evaluated as the nuclear norm of `sqrt(r1) sqrt(r2)`.
pub fn numerical_fidelity(r1: &ComplexMatrix, r2: &ComplexMatrix) -> f64 {
    let a = psd_sqrt(r1, 1e-12).unwrap();
    let b = psd_sqrt(r2, 1e-12).unwrap();
    svd(&(&a * &b)).unwrap().sigma.iter().sum()
}

/// Minimum of the sector objective over an evenly spaced grid of `q` in `[cos^2, 1]`.
pub fn grid_sector_min(eta: f64, alpha: f64, beta: f64, cos2: f64, points: usize) -> f64 {
    let mut best = f64::INFINITY;
    for j in 0..points {
        let q = cos2 + (1.0 - cos2) * j as f64 / (points - 1) as f64;
        let f = eta * alpha * q + (1.0 - eta) * beta * cos2 / q;
        best = best.min(f);
    }
    best
}

/// Interval-comparison region oracle for two sectors, ties to the lower region.
pub fn region_oracle(x1: f64, x2: f64, alpha: f64, beta: f64) -> usize {
    let iv = |x: f64, a: f64, b: f64| (b * x / (a + b * x), b / (b + a * x));
    let (c1, d1) = iv(x1, alpha, beta);
    let (c2, d2) = iv(x2, 1.0 - alpha, 1.0 - beta);
    if d1 <= c2 {
        0
    } else if c1 <= c2 {
        1
    } else if d1 <= d2 {
        2
    } else if c1 <= d2 {
        3
    } else {
        4
    }
}
