mod common;

use mdsep::criteria::{
    bisep_triads, frobenius_bound, l1_raw, l1_svd, l1_svd_best, l2_triads, slice_singular_values, TRIADS,
};
use mdsep::hosvd::{hosvd, hosvd_l1_from};
use mdsep::hs::{
    density_from_mds, mds_from_density, min_pt_eigenvalue, pairing_defect, partial_transpose, spectrum,
    validate_density, MdsTensor,
};
use mdsep::numerics::{eig_hermitian, svd_real, RealMatrix};
use mdsep::unfolding::{fold, unfold};
use mdsep::Qubit;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn orthogonal(m: &RealMatrix<f64>) -> bool {
    m.transpose().matmul(m).max_abs_diff(&RealMatrix::identity(m.rows())) < 1e-9
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn sampler_yields_states(t in common::valid_mds()) {
        let v = validate_density(&density_from_mds(&t)).unwrap();
        prop_assert!(v.is_density() && v.is_mds);
    }

    #[test]
    fn slice_sv_sum_bounded_by_l1(t in common::valid_mds()) {
        for q in Qubit::ALL {
            let s: f64 = slice_singular_values(&t, q).iter().flatten().sum();
            prop_assert!((s - l1_svd(&t, q).value).abs() < 1e-12);
            prop_assert!(s <= l1_raw(&t).value + 1e-12);
        }
    }

    #[test]
    fn l2_between_frobenius_and_l1(t in common::valid_mds()) {
        let root = t.frobenius_sq().sqrt();
        for q in Qubit::ALL {
            let v = l2_triads(&t, q).value;
            prop_assert!(v >= root - 1e-12 && v <= t.l1() + 1e-12);
        }
        let b = bisep_triads(&t).value;
        prop_assert!(b >= root - 1e-12 && b <= t.l1() + 1e-12);
    }

    #[test]
    fn criteria_invariant_under_axis_flips(t in common::valid_mds(), q in 0u8..3, axis in 0usize..3) {
        let q = Qubit::from_mode(q + 1).unwrap();
        let f = t.flip_axis(q, axis);
        prop_assert!((l1_raw(&f).value - l1_raw(&t).value).abs() < 1e-12);
        for m in Qubit::ALL {
            prop_assert!((l1_svd(&f, m).value - l1_svd(&t, m).value).abs() < 1e-9);
            prop_assert!((l2_triads(&f, m).value - l2_triads(&t, m).value).abs() < 1e-12);
        }
        prop_assert!((bisep_triads(&f).value - bisep_triads(&t).value).abs() < 1e-12);
        let (s, sf) = (spectrum(&density_from_mds(&t)).unwrap(), spectrum(&density_from_mds(&f)).unwrap());
        prop_assert!(common::max_abs(&s, &sf) < 1e-9);
    }

    #[test]
    fn spectrum_pairs_and_pt_invariance(t in common::valid_mds()) {
        let rho = density_from_mds(&t);
        let s = spectrum(&rho).unwrap();
        prop_assert!(pairing_defect(&s) < 1e-9);
        prop_assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for q in Qubit::ALL {
            let pt = spectrum(&partial_transpose(&rho, q).unwrap()).unwrap();
            prop_assert!(common::max_abs(&s, &pt) < 1e-9);
            prop_assert!((min_pt_eigenvalue(&rho, q).unwrap() - s[0]).abs() < 1e-9);
        }
        prop_assert!(frobenius_bound(&t).satisfied);
    }

    #[test]
    fn roundtrips(t in common::valid_mds()) {
        prop_assert!(mds_from_density(&density_from_mds(&t)).unwrap().max_abs_diff(&t) < 1e-12);
        for q in Qubit::ALL {
            prop_assert_eq!(fold(&unfold(&t, q)).unwrap(), t);
        }
    }

    #[test]
    fn hosvd_structure(t in common::valid_mds()) {
        let h = hosvd(&t);
        prop_assert!(h.factors.iter().all(orthogonal));
        prop_assert!(h.reconstruct().max_abs_diff(&t) < 1e-12);
        prop_assert!((h.core.frobenius_sq() - t.frobenius_sq()).abs() < 1e-12);
        let [u1, u2, u3] = &h.factors;
        prop_assert!(orthogonal(&u2.kron(u3)));
        prop_assert!(orthogonal(&u1.kron(u2)));
        let via = u1.transpose().matmul(&unfold(&t, Qubit::A).m).matmul(&u2.kron(u3));
        prop_assert!(via.max_abs_diff(&unfold(&h.core, Qubit::A).m) < 1e-12);
    }

    #[test]
    fn hosvd_criterion_invariant_under_factor_sign(t in common::valid_mds(), q in 0u8..3, col in 0usize..3) {
        let q = Qubit::from_mode(q + 1).unwrap();
        let mut h = hosvd(&t);
        let base = hosvd_l1_from(&h, Qubit::A).value;
        for r in 0..3 {
            let u = &mut h.factors[q.index()];
            u[(r, col)] = -u[(r, col)];
        }
        // flipping a factor column flips the matching core slice
        let mut core = *h.core.as_array();
        for (idx, v) in h.core.iter() {
            if idx[q.index()] == col {
                core[idx[0]][idx[1]][idx[2]] = -v;
            }
        }
        h.core = MdsTensor::from_finite(core).unwrap();
        prop_assert!(h.reconstruct().max_abs_diff(&t) < 1e-12);
        prop_assert!((hosvd_l1_from(&h, Qubit::A).value - base).abs() < 1e-9);
    }

    #[test]
    fn svd_and_eig_reconstruct(d in common::direction()) {
        let m = RealMatrix::from_fn(3, 9, |i, j| d[9 * i + j]);
        let s = svd_real(&m).unwrap();
        prop_assert!(orthogonal(&s.u) && orthogonal(&s.v));
        prop_assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        let rho = density_from_mds(&common::valid_mds_from(&d, 0.5));
        let e = eig_hermitian(&rho).unwrap();
        let tr: f64 = e.values.iter().sum();
        prop_assert!((tr - rho.trace().re).abs() < 1e-12);
    }

    #[test]
    fn best_mode_is_minimum(t in common::valid_mds()) {
        let best = l1_svd_best(&t);
        prop_assert!(Qubit::ALL.into_iter().all(|q| best.value <= l1_svd(&t, q).value));
    }
}

#[test]
fn triads_partition_indices() {
    let mut seen = [[[false; 3]; 3]; 3];
    for triad in TRIADS {
        for [a, b, c] in triad {
            assert!(!seen[a][b][c]);
            seen[a][b][c] = true;
        }
    }
    assert!(seen.iter().flatten().flatten().all(|&s| s));
}
