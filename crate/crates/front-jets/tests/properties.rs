//! Property tests for the plane metric and the jet evaluators.

use front_jets::{
    eval_jet, gauss_plane, jacobian_fd, plane_distance, vertical_defect, FnMap, FoliationSpec,
    JetOrder, LagrangianPlane, SmoothMap, TargetSpace,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn random_frame(dim: usize, n: usize, seed: &[f64]) -> DMatrix<f64> {
    // deterministic pseudo-random entries from the seed floats
    let mut vals = Vec::with_capacity(dim * n);
    let mut s = 0.123_f64;
    for (i, x) in seed.iter().cycle().take(dim * n).enumerate() {
        s = (s * 97.0 + x + i as f64 * 0.618).sin();
        vals.push(s);
    }
    DMatrix::from_vec(dim, n, vals)
}

fn plane(dim: usize, frame: DMatrix<f64>) -> LagrangianPlane {
    LagrangianPlane::from_span(DVector::zeros(dim), frame, false).expect("full rank frame")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plane_distance_is_symmetric_and_triangular(
        a in prop::collection::vec(-1.0_f64..1.0, 4),
        b in prop::collection::vec(-1.0_f64..1.0, 4),
        c in prop::collection::vec(-1.0_f64..1.0, 4),
    ) {
        let dim = 4;
        let n = 2;
        let pa = plane(dim, random_frame(dim, n, &a));
        let pb = plane(dim, random_frame(dim, n, &b));
        let pc = plane(dim, random_frame(dim, n, &c));
        let dab = plane_distance(&pa, &pb).unwrap();
        let dba = plane_distance(&pb, &pa).unwrap();
        let dac = plane_distance(&pa, &pc).unwrap();
        let dcb = plane_distance(&pc, &pb).unwrap();
        prop_assert!((dab - dba).abs() < 1e-12);
        prop_assert!(dab <= dac + dcb + 1e-12);
    }

    #[test]
    fn span_invariance_under_recombination(
        entries in prop::collection::vec(-1.0_f64..1.0, 4),
        mix in 0.1_f64..2.0,
    ) {
        // the same 2-plane presented by two different spanning sets
        let dim = 4;
        let f = random_frame(dim, 2, &entries);
        let svd = f.clone().svd(false, false);
        prop_assume!(svd.singular_values.min() > 0.05 * svd.singular_values.max());
        let mut g = f.clone();
        let c0 = g.column(0).into_owned();
        let c1 = g.column(1).into_owned();
        g.set_column(0, &(&c0 * mix + &c1 * 0.25));
        g.set_column(1, &(&c1 * (1.0 + mix)));
        let pf = plane(dim, f);
        let pg = plane(dim, g);
        prop_assert!(plane_distance(&pf, &pg).unwrap() < 1e-12);
    }

    #[test]
    fn fd_matches_analytic_for_polynomial_graph(
        q1 in -0.9_f64..0.9,
        q2 in -0.9_f64..0.9,
    ) {
        // graph of dh for h = q1^3 q2 + q2^2, with hand-written jacobian
        let m = FnMap::with_jet(
            "dh-graph",
            2,
            TargetSpace::Cotangent { n: 2 },
            |q| DVector::from_vec(vec![
                q[0], q[1],
                3.0 * q[0] * q[0] * q[1],
                q[0] * q[0] * q[0] + 2.0 * q[1],
            ]),
            |q, _| {
                let jac = DMatrix::from_row_slice(4, 2, &[
                    1.0, 0.0,
                    0.0, 1.0,
                    6.0 * q[0] * q[1], 3.0 * q[0] * q[0],
                    3.0 * q[0] * q[0], 2.0,
                ]);
                front_jets::Jet2::order1(
                    DVector::from_vec(vec![
                        q[0], q[1],
                        3.0 * q[0] * q[0] * q[1],
                        q[0] * q[0] * q[0] + 2.0 * q[1],
                    ]),
                    jac,
                )
            },
        );
        let q = [q1, q2];
        let a = eval_jet(&m, &q, JetOrder::One).unwrap();
        let fd = jacobian_fd(&|x| m.value(x), &q);
        prop_assert!((a.jacobian - fd).abs().max() < 1e-6);
    }
}

/// Defect of the Gauss plane never increases under grid refinement away from
/// the singular locus: sampled here for the cusp model on two dyadic grids.
#[test]
fn vertical_defect_upper_semicontinuous_under_refinement() {
    let m = FnMap::value_only("c2", 2, TargetSpace::Cotangent { n: 2 }, |q| {
        DVector::from_vec(vec![q[0], q[1] * q[1], 0.0, q[1] * q[1] * q[1]])
    });
    let fol = FoliationSpec::cotangent(2);
    for level in [8usize, 16, 32] {
        for i in 0..level {
            for j in 0..level {
                let q = [
                    -1.0 + 2.0 * (i as f64 + 0.5) / level as f64,
                    -1.0 + 2.0 * (j as f64 + 0.5) / level as f64,
                ];
                if q[1].abs() < 0.05 {
                    continue; // singular locus collar
                }
                let p = gauss_plane(&m, &q).unwrap();
                assert_eq!(vertical_defect(&p, &fol, 1e-6).unwrap(), 0);
            }
        }
    }
}

/// One-sided limiting planes agree with the two-sided rule at a fold point
/// of the one-dimensional Lagrangian wrinkle profile.
#[test]
fn one_sided_limit_matches_bilateral_at_wrinkle_fold() {
    // L_1: q -> (q^3 - 3q, h(q)) with h' = (q^2 - 1)^2; fold at q = 1
    let m = FnMap::value_only("l1", 1, TargetSpace::Cotangent { n: 1 }, |q| {
        let x = q[0];
        let h = x * x * x * x * x / 5.0 - 2.0 * x * x * x / 3.0 + x;
        DVector::from_vec(vec![x * x * x - 3.0 * x, h])
    });
    let two = front_jets::gauss_plane_limit(&m, &[1.0]).unwrap();
    for side in [-1.0, 1.0] {
        let one = front_jets::gauss_plane_one_sided(&m, &[1.0], side).unwrap();
        let d = plane_distance(&two, &one).unwrap();
        assert!(d < 1e-6, "side {side}: disagreement {d}");
    }
}
