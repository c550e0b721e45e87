//! Frame brackets and the symmetry actions on the group.

use cartan_sr::group::{dilate, frame_field, invariant_coords, rotate, GroupPoint};
use proptest::prelude::*;
use std::f64::consts::PI;

fn point() -> impl Strategy<Value = GroupPoint> {
    prop::array::uniform5(-2.0..2.0f64).prop_map(GroupPoint::from_array)
}

fn field(i: usize, a: [f64; 5]) -> [f64; 5] {
    frame_field(i, GroupPoint::from_array(a)).unwrap()
}

/// `[X_i, X_j]` at `g` from central differences of the fields.
fn bracket(i: usize, j: usize, g: GroupPoint) -> [f64; 5] {
    let h = 1e-6;
    let a = g.to_array();
    let (xi, xj) = (field(i, a), field(j, a));
    let deriv = |f: usize, dir: [f64; 5]| {
        let mut p = a;
        let mut q = a;
        for n in 0..5 {
            p[n] += h * dir[n];
            q[n] -= h * dir[n];
        }
        let (fp, fq) = (field(f, p), field(f, q));
        let mut out = [0.0; 5];
        for n in 0..5 {
            out[n] = (fp[n] - fq[n]) / (2.0 * h);
        }
        out
    };
    let (dj, di) = (deriv(j, xi), deriv(i, xj));
    let mut out = [0.0; 5];
    for n in 0..5 {
        out[n] = dj[n] - di[n];
    }
    out
}

fn close(a: [f64; 5], b: [f64; 5], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frame_brackets(g in point()) {
        prop_assert!(close(bracket(1, 2, g), field(3, g.to_array()), 1e-8));
        prop_assert!(close(bracket(1, 3, g), field(4, g.to_array()), 1e-8));
        prop_assert!(close(bracket(2, 3, g), field(5, g.to_array()), 1e-8));
        prop_assert!(close(bracket(1, 4, g), [0.0; 5], 1e-8));
        prop_assert!(close(bracket(2, 5, g), [0.0; 5], 1e-8));
    }

    #[test]
    fn invariants_are_symmetric(g in point(), s in -PI..PI, r0 in -1.0..1.0f64) {
        prop_assume!(g.r2() > 0.01);
        let a = invariant_coords(g).unwrap();
        for h in [rotate(g, s), dilate(g, r0)] {
            let b = invariant_coords(h).unwrap();
            prop_assert!((a.p - b.p).abs() < 1e-10 * (1.0 + a.p.abs()));
            prop_assert!((a.q - b.q).abs() < 1e-10 * (1.0 + a.q.abs()));
            prop_assert!((a.r_inv - b.r_inv).abs() < 1e-10 * (1.0 + a.r_inv.abs()));
        }
    }

    #[test]
    fn symmetries_move_the_polar_coordinates(g in point(), s in -PI..PI, r0 in -1.0..1.0f64) {
        prop_assume!(g.r2() > 0.01);
        let a = invariant_coords(g).unwrap();
        let b = invariant_coords(rotate(g, s)).unwrap();
        let d = (b.chi - a.chi - s).rem_euclid(2.0 * PI);
        prop_assert!(d.min(2.0 * PI - d) < 1e-12);
        prop_assert!((b.r - a.r).abs() < 1e-12);
        let c = invariant_coords(dilate(g, r0)).unwrap();
        prop_assert!((c.r - a.r * r0.exp()).abs() < 1e-12 * c.r);
        prop_assert!((c.chi - a.chi).abs() < 1e-12);
    }

    #[test]
    fn rotation_is_generated_by_x0(g in point()) {
        let h = 1e-6;
        let (p, q) = (rotate(g, h).to_array(), rotate(g, -h).to_array());
        let x0 = field(0, g.to_array());
        for n in 0..5 {
            prop_assert!(((p[n] - q[n]) / (2.0 * h) - x0[n]).abs() < 1e-8);
        }
    }

    #[test]
    fn symmetries_compose(g in point(), s in -PI..PI, t in -PI..PI, r0 in -1.0..1.0f64) {
        prop_assert!(rotate(rotate(g, s), t).max_abs_diff(rotate(g, s + t)) < 1e-12);
        prop_assert!(dilate(dilate(g, r0), -r0).max_abs_diff(g) < 1e-12);
        prop_assert!(rotate(dilate(g, r0), s).max_abs_diff(dilate(rotate(g, s), r0)) < 1e-11);
    }
}

#[test]
fn axis_points_have_no_invariants() {
    assert!(invariant_coords(GroupPoint::new(0.0, 0.0, 1.0, 2.0, 3.0).unwrap()).is_err());
}
