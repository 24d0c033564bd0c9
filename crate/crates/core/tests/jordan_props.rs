mod common;

use common::*;
use proptest::prelude::*;
use udisc::jordan::{jordan_decompose, Subspace};
use udisc::ComplexMatrix;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn paired_overlaps_are_diagonal((k, e1, e2) in subspace_pair(4)) {
        let (s1, s2) = make_subspaces(k, &e1, &e2);
        let jd = jordan_decompose(&s1, &s2).unwrap();
        prop_assert!(jd.cos_angles.windows(2).all(|w| w[0] >= w[1]));
        for i in 0..k {
            for j in 0..k {
                let o = jd.basis1[i].inner(&jd.basis2[j]);
                let expect = if i == j { jd.cos_angles[i] } else { 0.0 };
                prop_assert!((o - c(expect, 0.0)).norm() < 1e-9, "<psi_{}|psi_k+{}> = {}", i, j, o);
                let b1 = jd.basis1[i].inner(&jd.basis1[j]);
                let b2 = jd.basis2[i].inner(&jd.basis2[j]);
                let id = if i == j { 1.0 } else { 0.0 };
                prop_assert!((b1 - c(id, 0.0)).norm() < 1e-9 && (b2 - c(id, 0.0)).norm() < 1e-9);
            }
        }
        // the paired bases span the input subspaces
        prop_assert!(ComplexMatrix::projector(&jd.basis1).max_abs_diff(s1.projector()) < 1e-9);
        prop_assert!(ComplexMatrix::projector(&jd.basis2).max_abs_diff(s2.projector()) < 1e-9);
    }

    #[test]
    fn jordan_vectors_are_eigenvectors_of_p1p2p1((k, e1, e2) in subspace_pair(4)) {
        let (s1, s2) = make_subspaces(k, &e1, &e2);
        let jd = jordan_decompose(&s1, &s2).unwrap();
        let p1 = s1.projector();
        let p2 = s2.projector();
        let m1 = &(p1 * p2) * p1;
        let m2 = &(p2 * p1) * p2;
        for i in 0..k {
            let c2 = jd.cos_angles[i] * jd.cos_angles[i];
            let r1 = &m1.matvec(&jd.basis1[i]) - &jd.basis1[i].scale_real(c2);
            let r2 = &m2.matvec(&jd.basis2[i]) - &jd.basis2[i].scale_real(c2);
            prop_assert!(r1.norm() < 1e-9 && r2.norm() < 1e-9);
        }
    }

    #[test]
    fn frames_span_complements((k, e1, e2) in subspace_pair(4)) {
        let (s1, s2) = make_subspaces(k, &e1, &e2);
        let jd = jordan_decompose(&s1, &s2).unwrap();
        prop_assert!(ComplexMatrix::projector(&jd.z_frame).max_abs_diff(&s2.complement_projector()) < 1e-9);
        prop_assert!(ComplexMatrix::projector(&jd.y_frame).max_abs_diff(&s1.complement_projector()) < 1e-9);
        for i in 0..k {
            prop_assert!((jd.z_frame[i].norm() - 1.0).abs() < 1e-9);
            prop_assert!(jd.z_frame[i].inner(&jd.basis2[i]).norm() < 1e-9);
            prop_assert!(jd.y_frame[i].inner(&jd.basis1[i]).norm() < 1e-9);
        }
    }

    #[test]
    fn sectors_are_mutually_orthogonal((k, e1, e2) in subspace_pair(4)) {
        let (s1, s2) = make_subspaces(k, &e1, &e2);
        let jd = jordan_decompose(&s1, &s2).unwrap();
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                for a in [&jd.basis1[i], &jd.basis2[i]] {
                    for b in [&jd.basis1[j], &jd.basis2[j]] {
                        prop_assert!(a.inner(b).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn angles_independent_of_spanning_set(
        (k, e1, e2) in subspace_pair(4),
        mix1 in complex_entries(16),
        mix2 in complex_entries(16),
    ) {
        let (s1, s2) = make_subspaces(k, &e1, &e2);
        let base = jordan_decompose(&s1, &s2).unwrap();
        let recombine = |s: &Subspace, mix: &[(f64, f64)]| {
            let u = unitary_from(&mix[..k * k], k);
            let vs = s.spanning_vectors();
            let mixed = (0..k)
                .map(|j| {
                    let mut acc = udisc::ComplexVector::zeros(2 * k);
                    for (i, v) in vs.iter().enumerate() {
                        acc.axpy(u[(i, j)], v);
                    }
                    acc
                })
                .collect();
            Subspace::new(2 * k, mixed).unwrap()
        };
        let t1 = recombine(&s1, &mix1);
        let t2 = recombine(&s2, &mix2);
        let other = jordan_decompose(&t1, &t2).unwrap();
        for (a, b) in base.cos_angles.iter().zip(&other.cos_angles) {
            prop_assert!((a - b).abs() < 1e-9, "{:?} vs {:?}", base.cos_angles, other.cos_angles);
        }
    }
}
