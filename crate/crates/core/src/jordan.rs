//! Subspaces, Jordan bases and principal angles.
//!
//! Two `k`-dimensional subspaces `S1`, `S2` of a `2k`-dimensional space in
//! general position admit orthonormal bases `{psi_i}` of `S1` and
//! `{psi_{k+i}}` of `S2` with `<psi_i|psi_{k+j}> = delta_ij cos(theta_i)`.
//! They come out of the SVD of the cross-Gram matrix of any two orthonormal
//! bases. Every pair spans a two-dimensional sector `T_i`, and the sectors
//! are mutually orthogonal.

use crate::linalg::{orthonormalize, svd, ComplexMatrix, ComplexVector, DEFAULT_RANK_TOL};
use crate::{Error, Result};

/// Largest admissible `cos(theta)`; above it the subspaces share a direction.
pub const GENERAL_POSITION_TOL: f64 = 1e-8;
/// Smallest admissible `sin(theta)` when building the complement frames.
pub const MIN_SECTOR_SIN: f64 = 1e-8;

/// A subspace given by spanning vectors, with derived orthonormal basis and projector.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    spanning_vectors: Vec<ComplexVector>,
    orthonormal_basis: Vec<ComplexVector>,
    projector: ComplexMatrix,
}

impl Subspace {
    pub fn new(ambient_dim: usize, spanning_vectors: Vec<ComplexVector>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::DimensionMismatch("ambient dimension must be positive".into()));
        }
        if spanning_vectors.is_empty() {
            return Err(Error::ZeroSubspace);
        }
        if let Some(v) = spanning_vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        let orthonormal_basis = orthonormalize(&spanning_vectors, DEFAULT_RANK_TOL)?;
        if orthonormal_basis.is_empty() {
            return Err(Error::ZeroSubspace);
        }
        let projector = ComplexMatrix::projector(&orthonormal_basis);
        Ok(Self {
            ambient_dim,
            spanning_vectors,
            orthonormal_basis,
            projector,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.orthonormal_basis.len()
    }

    pub fn spanning_vectors(&self) -> &[ComplexVector] {
        &self.spanning_vectors
    }

    pub fn orthonormal_basis(&self) -> &[ComplexVector] {
        &self.orthonormal_basis
    }

    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }

    /// Projector onto the orthogonal complement, `I - P`.
    pub fn complement_projector(&self) -> ComplexMatrix {
        &ComplexMatrix::identity(self.ambient_dim) - &self.projector
    }
}

/// Functional alias for [`Subspace::new`].
pub fn make_subspace(ambient_dim: usize, spanning_vectors: Vec<ComplexVector>) -> Result<Subspace> {
    Subspace::new(ambient_dim, spanning_vectors)
}

/// Paired Jordan bases, angles and complement frames of two subspaces.
#[derive(Debug, Clone)]
pub struct JordanDecomposition {
    pub k: usize,
    /// `psi_1 .. psi_k`, orthonormal basis of `S1`.
    pub basis1: Vec<ComplexVector>,
    /// `psi_{k+1} .. psi_{2k}`, orthonormal basis of `S2`.
    pub basis2: Vec<ComplexVector>,
    /// `cos(theta_i)`, descending.
    pub cos_angles: Vec<f64>,
    /// `z_i`, orthonormal basis of the complement of `S2`.
    pub z_frame: Vec<ComplexVector>,
    /// `y_i`, orthonormal basis of the complement of `S1`.
    pub y_frame: Vec<ComplexVector>,
}

impl JordanDecomposition {
    pub fn ambient_dim(&self) -> usize {
        2 * self.k
    }

    pub fn sin_angle(&self, i: usize) -> f64 {
        sin_from_cos(self.cos_angles[i])
    }

    /// Canonical realization of given angles in the standard basis:
    /// `psi_i = e_i` and `psi_{k+i} = cos e_i + sin e_{k+i}`.
    pub fn canonical(cos_angles: &[f64]) -> Result<Self> {
        check_cos_angles(cos_angles)?;
        let k = cos_angles.len();
        let n = 2 * k;
        let basis1: Vec<_> = (0..k).map(|i| ComplexVector::basis(n, i)).collect();
        let basis2: Vec<_> = cos_angles
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut v = ComplexVector::zeros(n);
                v[i].re = c;
                v[k + i].re = sin_from_cos(c);
                v
            })
            .collect();
        let mut jd = Self {
            k,
            basis1,
            basis2,
            cos_angles: cos_angles.to_vec(),
            z_frame: Vec::new(),
            y_frame: Vec::new(),
        };
        let (z, y) = complement_frames(&jd)?;
        jd.z_frame = z;
        jd.y_frame = y;
        Ok(jd)
    }

    /// Applies a unitary `u` to every stored vector.
    pub fn rotated(&self, u: &ComplexMatrix) -> Self {
        let map = |vs: &[ComplexVector]| vs.iter().map(|v| u.matvec(v)).collect::<Vec<_>>();
        Self {
            k: self.k,
            basis1: map(&self.basis1),
            basis2: map(&self.basis2),
            cos_angles: self.cos_angles.clone(),
            z_frame: map(&self.z_frame),
            y_frame: map(&self.y_frame),
        }
    }
}

pub(crate) fn sin_from_cos(c: f64) -> f64 {
    (1.0 - c * c).max(0.0).sqrt()
}

pub(crate) fn check_cos_angles(cos_angles: &[f64]) -> Result<()> {
    if cos_angles.is_empty() {
        return Err(Error::InvalidAngles("at least one angle is required".into()));
    }
    for &c in cos_angles {
        if !(0.0..1.0).contains(&c) {
            return Err(Error::InvalidAngles(format!("cos angle {c} outside [0, 1)")));
        }
        if c > 1.0 - GENERAL_POSITION_TOL {
            return Err(Error::NotGeneralPosition { cos_angle: c });
        }
    }
    if cos_angles.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidAngles("cos angles must be sorted descending".into()));
    }
    Ok(())
}

/// Jordan decomposition of two `k`-dimensional subspaces of a `2k`-dimensional space.
///
/// With orthonormal bases `e_a` of `S1` and `f_b` of `S2`, the cross-Gram
/// `M_ab = <e_a|f_b>` factors as `U diag(cos) V^H`; rotating `e` by `U` and
/// `f` by `V` yields the Jordan bases with real nonnegative overlaps.
pub fn jordan_decompose(s1: &Subspace, s2: &Subspace) -> Result<JordanDecomposition> {
    let k = s1.dim();
    if s1.ambient_dim() != s2.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {} differ",
            s1.ambient_dim(),
            s2.ambient_dim()
        )));
    }
    if s2.dim() != k || s1.ambient_dim() != 2 * k {
        return Err(Error::DimensionMismatch(format!(
            "need two k-dimensional subspaces of a 2k-dimensional space, got dims {} and {} in {}",
            s1.dim(),
            s2.dim(),
            s1.ambient_dim()
        )));
    }
    let e = s1.orthonormal_basis();
    let f = s2.orthonormal_basis();
    let mut gram = ComplexMatrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            gram[(a, b)] = e[a].inner(&f[b]);
        }
    }
    let dec = svd(&gram)?;
    if let Some(&top) = dec.sigma.first() {
        if top > 1.0 - GENERAL_POSITION_TOL {
            return Err(Error::NotGeneralPosition { cos_angle: top });
        }
    }

    let combine = |basis: &[ComplexVector], coeffs: &ComplexMatrix, col: usize| {
        let mut v = ComplexVector::zeros(2 * k);
        for (a, b) in basis.iter().enumerate() {
            v.axpy(coeffs[(a, col)], b);
        }
        v
    };
    let basis1: Vec<_> = (0..k).map(|i| combine(e, &dec.u, i)).collect();
    let basis2: Vec<_> = (0..k).map(|i| combine(f, &dec.v, i)).collect();
    let cos_angles: Vec<f64> = dec.sigma.iter().map(|&s| s.min(1.0)).collect();

    let mut jd = JordanDecomposition {
        k,
        basis1,
        basis2,
        cos_angles,
        z_frame: Vec::new(),
        y_frame: Vec::new(),
    };
    let (z, y) = complement_frames(&jd)?;
    jd.z_frame = z;
    jd.y_frame = y;
    Ok(jd)
}

/// `z_i = (psi_i - cos psi_{k+i}) / sin` and `y_i = (psi_{k+i} - cos psi_i) / sin`.
pub fn complement_frames(
    jd: &JordanDecomposition,
) -> Result<(Vec<ComplexVector>, Vec<ComplexVector>)> {
    let mut z = Vec::with_capacity(jd.k);
    let mut y = Vec::with_capacity(jd.k);
    for i in 0..jd.k {
        let c = jd.cos_angles[i];
        let s = sin_from_cos(c);
        if s < MIN_SECTOR_SIN {
            return Err(Error::DegenerateSector { index: i, sin_angle: s });
        }
        let cz = num_complex::Complex64::new(-c, 0.0);
        let mut zi = jd.basis1[i].clone();
        zi.axpy(cz, &jd.basis2[i]);
        let mut yi = jd.basis2[i].clone();
        yi.axpy(cz, &jd.basis1[i]);
        z.push(zi.scale_real(1.0 / s));
        y.push(yi.scale_real(1.0 / s));
    }
    Ok((z, y))
}
