//! Properties of the extremal flow, the exponential map and its Jacobian.

use cartan_sr::conjugate;
use cartan_sr::flow::{
    classify, dilate_covector, exp_map, extremal, from_elliptic, pendulum_flow, reflect3,
    rotate_covector, to_elliptic, Covector, EllipticCoord, Stratum,
};
use cartan_sr::group::{dilate, invariant_coords, rotate, GroupPoint};
use nalgebra::{Matrix3, Matrix5};
use proptest::prelude::*;
use std::f64::consts::PI;

fn covector() -> impl Strategy<Value = Covector> {
    (-PI..PI, -3.0..3.0f64, 0.0..3.0f64, -PI..PI)
        .prop_map(|(th, c, a, b)| Covector::new(th, c, a, b).unwrap())
}

fn casimirs(h: &[f64]) -> [f64; 3] {
    [h[3], h[4], 0.5 * h[2] * h[2] + h[0] * h[4] - h[1] * h[3]]
}

fn scale(g: GroupPoint) -> f64 {
    1.0 + g.to_array().iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn casimirs_are_conserved(l in covector(), t in 1.0..20.0f64) {
        let sol = extremal(&l, t).unwrap();
        let c0 = casimirs(&sol.eval(0.0));
        for i in 1..=10 {
            let c = casimirs(&sol.eval(t * i as f64 / 10.0));
            for n in 0..3 {
                prop_assert!((c[n] - c0[n]).abs() < 1e-9, "{n}: {} vs {}", c[n], c0[n]);
            }
        }
    }

    #[test]
    fn extremals_have_unit_speed(l in covector(), t in 0.5..10.0f64) {
        let sol = extremal(&l, t).unwrap();
        let h = 1e-4;
        let mut s = 0.0;
        let n = 2000;
        let mut prev = sol.eval(0.0);
        for i in 1..=n {
            let y = sol.eval(t * i as f64 / n as f64);
            s += (y[5] - prev[5]).hypot(y[6] - prev[6]);
            prev = y;
        }
        prop_assert!((s - t).abs() < 1e-5 * t, "length {s} over {t}");
        let tm = 0.5 * t;
        let (a, b) = (sol.eval(tm + h), sol.eval(tm - h));
        let v = ((a[5] - b[5]) / (2.0 * h)).hypot((a[6] - b[6]) / (2.0 * h));
        prop_assert!((v - 1.0).abs() < 1e-7);
    }

    #[test]
    fn exponential_map_commutes_with_rotation(l in covector(), t in 0.5..8.0f64, s in -PI..PI) {
        let a = rotate(exp_map(&l, t).unwrap(), s);
        let b = exp_map(&rotate_covector(&l, s), t).unwrap();
        prop_assert!(a.max_abs_diff(b) < 1e-9 * scale(a));
    }

    #[test]
    fn exponential_map_commutes_with_dilation(l in covector(), t in 0.5..6.0f64, r in -0.7..0.7f64) {
        let a = dilate(exp_map(&l, t).unwrap(), r);
        let (ld, e) = dilate_covector(&l, r);
        let b = exp_map(&ld, t * e).unwrap();
        prop_assert!(a.max_abs_diff(b) < 1e-9 * scale(a));
    }

    #[test]
    fn symmetries_preserve_the_stratum(l in covector(), s in -PI..PI, r in -1.0..1.0f64) {
        let st = classify(&l);
        prop_assert_eq!(classify(&rotate_covector(&l, s)), st);
        prop_assert_eq!(classify(&dilate_covector(&l, r).0), st);
        prop_assert_eq!(classify(&reflect3(&l)), st);
        prop_assert!(reflect3(&reflect3(&l)).max_abs_diff(&l) < 1e-15);
    }

    #[test]
    fn elliptic_coordinates_round_trip(l in covector()) {
        prop_assume!(matches!(classify(&l), Stratum::C1 | Stratum::C2));
        let e = to_elliptic(&l).unwrap();
        let back = from_elliptic(&e).unwrap();
        prop_assert!(back.max_abs_diff(&l) < 1e-10, "{:?} vs {:?}", back, l);
    }

    #[test]
    fn pendulum_time_is_the_phase(l in covector(), dt in 0.0..5.0f64) {
        prop_assume!(matches!(classify(&l), Stratum::C1 | Stratum::C2));
        prop_assume!(l.alpha > 0.05);
        let e = to_elliptic(&l).unwrap();
        let moved = from_elliptic(&EllipticCoord { phi: e.phi + dt, ..e }).unwrap();
        let flowed = pendulum_flow(&l, dt).unwrap();
        prop_assert!(moved.max_abs_diff(&flowed) < 1e-9);
    }

    #[test]
    fn circles_have_radius_one_over_c(theta in -PI..PI, c in 0.2..3.0f64, sgn in prop::bool::ANY, t in 0.1..10.0f64) {
        let c = if sgn { c } else { -c };
        let l = Covector::new(theta, c, 0.0, 0.0).unwrap();
        prop_assert_eq!(classify(&l), Stratum::C6);
        let g = exp_map(&l, t).unwrap();
        let (cx, cy) = (-theta.sin() / c, theta.cos() / c);
        prop_assert!(((g.x - cx).hypot(g.y - cy) - 1.0 / c.abs()).abs() < 1e-10);
    }
}

/// `Exp` in the chart `(t, φ, k, α, β)` of one stratum.
fn exp_chart(stratum: Stratum, v: [f64; 5]) -> GroupPoint {
    let e = match stratum {
        Stratum::C1 => EllipticCoord::c1(v[1], v[2], v[3], v[4]),
        _ => EllipticCoord::c2(v[1], v[2], v[3], v[4], 1.0),
    };
    exp_map(&from_elliptic(&e).unwrap(), v[0]).unwrap()
}

fn chart_derivatives(stratum: Stratum, v0: [f64; 5]) -> (Matrix5<f64>, Matrix3<f64>) {
    let h = 1e-5;
    let mut jm = Matrix5::zeros();
    let mut pm = Matrix3::zeros();
    for j in 0..5 {
        let (mut a, mut b) = (v0, v0);
        a[j] += h;
        b[j] -= h;
        let (ga, gb) = (exp_chart(stratum, a), exp_chart(stratum, b));
        let (xa, xb) = (ga.to_array(), gb.to_array());
        for i in 0..5 {
            jm[(i, j)] = (xa[i] - xb[i]) / (2.0 * h);
        }
        if j < 3 {
            let (ia, ib) = (invariant_coords(ga).unwrap(), invariant_coords(gb).unwrap());
            pm[(0, j)] = (ia.p - ib.p) / (2.0 * h);
            pm[(1, j)] = (ia.q - ib.q) / (2.0 * h);
            pm[(2, j)] = (ia.r_inv - ib.r_inv) / (2.0 * h);
        }
    }
    (jm, pm)
}

fn chart_point() -> impl Strategy<Value = [f64; 5]> {
    (0.8..3.0f64, 0.0..2.0f64, 0.3..0.9f64, 0.5..2.0f64, -PI..PI)
        .prop_map(|(t, phi, k, a, b)| [t, phi, k, a, b])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jacobian_factors_through_the_invariants(v in chart_point()) {
        let (jm, pm) = chart_derivatives(Stratum::C1, v);
        let g = exp_chart(Stratum::C1, v);
        let r = g.r2().sqrt();
        prop_assume!(r > 0.3);
        let lhs = jm.determinant();
        let rhs = -(r.powi(10) / v[3]) * pm.determinant();
        prop_assert!((lhs - rhs).abs() < 1e-4 * lhs.abs().max(rhs.abs()) + 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn oscillating_jacobian_prefactor(v in chart_point()) {
        let (jm, _) = chart_derivatives(Stratum::C1, v);
        let [t, phi, k, a, b] = v;
        let f = conjugate::j1(&EllipticCoord::c1(phi, k, a, b), t).unwrap();
        let want = -16.0 * k * f.j1 / (3.0 * (1.0 - k * k) * a.powi(5) * f.delta * f.delta);
        let got = jm.determinant();
        prop_assert!((got - want).abs() < 1e-4 * want.abs() + 1e-10, "{got} vs {want}");
    }

    #[test]
    fn rotating_jacobian_prefactor(v in chart_point()) {
        let [t, phi, k, a, b] = v;
        let v = [0.5 * t, 0.3 * phi, k, a, b];
        let (jm, _) = chart_derivatives(Stratum::C2, v);
        let f = conjugate::j1(&EllipticCoord::c2(v[1], k, a, b, 1.0), v[0]).unwrap();
        let want =
            -64.0 * f.j1 / (3.0 * k.powi(5) * (1.0 - k * k) * a.powi(5) * f.delta * f.delta);
        let got = jm.determinant();
        prop_assert!((got - want).abs() < 1e-4 * want.abs() + 1e-10, "{got} vs {want}");
    }
}
