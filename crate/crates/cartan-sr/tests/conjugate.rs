//! Properties of the Jacobian factorization and the first conjugate time.

use cartan_sr::closed_form::{self, Evaluator};
use cartan_sr::conjugate::{self, first_conjugate_time, two_sided_check, ConjugateOptions, Method};
use cartan_sr::elliptic::Modulus;
use cartan_sr::flow::{dilate_covector, from_elliptic, EllipticCoord, Stratum};
use cartan_sr::maxwell::{self, p1_v, p1_z};
use cartan_sr::qd::Qd;
use proptest::prelude::*;
use std::f64::consts::PI;

fn m(k: f64) -> Modulus {
    Modulus::new(k).unwrap()
}

fn analytic() -> ConjugateOptions {
    ConjugateOptions {
        cross_validate: false,
        ..ConjugateOptions::default()
    }
}

/// Central difference of a quad-double function of `p`.
fn derivative(ev: &Evaluator, p: f64, f: impl Fn(&closed_form::Args<Qd>) -> Qd) -> f64 {
    let h = 1e-6;
    ((f(&ev.args(p + h)) - f(&ev.args(p - h))) / Qd::from(2.0 * h)).to_f64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn certificates_are_nonnegative(k in 0.0..0.999f64, p in 0.0..30.0f64) {
        let a = Evaluator::new(k).args(p);
        prop_assert!(closed_form::certificate_x1_c1(&a).to_f64() >= 0.0);
        prop_assert!(closed_form::certificate_x2_c1(&a).to_f64() >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn certificate_x2_is_the_derivative_of_a01_over_fz(k in 0.05..0.95f64, p in 0.2..12.0f64) {
        let ev = Evaluator::new(k);
        let a = ev.args(p);
        let fz = closed_form::fz_c1(&a).to_f64();
        prop_assume!(fz.abs() > 1e-2);
        let d = derivative(&ev, p, |a| closed_form::a01_c1(a) / closed_form::fz_c1(a));
        let lhs = d * fz * fz;
        let rhs = 0.75 * closed_form::certificate_x2_c1(&a).to_f64();
        prop_assert!((lhs - rhs).abs() < 1e-5 * rhs.abs().max(1e-6), "{lhs} vs {rhs}");
    }

    #[test]
    fn certificate_x1_is_the_derivative_of_a21_over_fv(k in 0.05..0.95f64, p in 0.2..12.0f64) {
        let ev = Evaluator::new(k);
        let a = ev.args(p);
        let fv = closed_form::fv_c1(&a).to_f64();
        prop_assume!(fv.abs() > 1e-2);
        let d = derivative(&ev, p, |a| closed_form::a21_c1(a) / closed_form::fv_c1(a));
        let lhs = d * fv * fv;
        let rhs = -4.0 / 3.0 * k * k * closed_form::certificate_x1_c1(&a).to_f64();
        prop_assert!((lhs - rhs).abs() < 1e-5 * rhs.abs().max(1e-6), "{lhs} vs {rhs}");
    }

    #[test]
    fn oscillating_coefficient_signs(k in 0.05..0.98f64, s in 0.01..1.0f64) {
        let pz = p1_z(m(k)).unwrap().x;
        let pv = p1_v(m(k), Stratum::C1).unwrap().x;
        let p = s * pz.min(pv);
        let a = Evaluator::new(k).args(p);
        prop_assume!(p > 0.05);
        let (a0, a2) = conjugate::outer_coefficients(Stratum::C1, &a).unwrap();
        let (a0, a2) = (a0.to_f64(), a2.to_f64());
        let a1 = -a0 - a2 / (k * k);
        prop_assert!(a0 < 0.0, "a0 = {a0}");
        prop_assert!(a2 > 0.0, "a2 = {a2}");
        prop_assert!(a0 + a1 + a2 < 0.0);
    }

    #[test]
    fn rotating_jacobian_at_the_maxwell_root(k in 0.05..0.95f64, phi in 0.0..3.0f64) {
        let e = EllipticCoord::c2(phi, k, 1.0, 0.0, 1.0);
        let t = conjugate::time_scale(&e) * p1_v(m(k), Stratum::C2).unwrap().x;
        let f = conjugate::j1(&e, t).unwrap();
        let want = -f.a2 * f.xi * (1.0 - f.xi);
        prop_assert!((f.j1 - want).abs() < 1e-9 * f.a2.abs(), "{} vs {want}", f.j1);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn bound_flags_are_dilation_invariant(k in 0.05..0.95f64, phi in 0.0..3.0f64, r in -1.0..1.0f64, rot in prop::bool::ANY) {
        let e = if rot {
            EllipticCoord::c2(phi, k, 1.0, 0.3, 1.0)
        } else {
            EllipticCoord::c1(phi, k, 1.0, 0.3)
        };
        let l = from_elliptic(&e).unwrap();
        let a = two_sided_check(&l).unwrap();
        let (ld, f) = dilate_covector(&l, r);
        let b = two_sided_check(&ld).unwrap();
        prop_assert!(a.lower_ok && a.upper_ok);
        prop_assert_eq!((a.lower_ok, a.upper_ok), (b.lower_ok, b.upper_ok));
        prop_assert!((b.t_conj - f * a.t_conj).abs() < 1e-8 * b.t_conj);
    }
}

#[test]
fn limit_coefficients_are_negative() {
    for i in 1..=200 {
        let u = 0.75 * PI * i as f64 / 200.0;
        assert!(closed_form::a010(Qd::from(u)) < Qd::ZERO, "a010({u})");
        let u = 10.0 * i as f64 / 200.0;
        assert!(closed_form::a210(Qd::from(u)) < Qd::ZERO, "a210({u})");
    }
    assert!(closed_form::a010(PI) > 0.0);
}

/// Small oscillations whose midpoint sits at `cn τ = 0` at the Maxwell root
/// have a finite limit as `k → 0`, while the equilibrium itself has none.
#[test]
fn small_oscillations_approach_the_circle_limit() {
    let pz0 = p1_z(m(0.0)).unwrap().x;
    for alpha in [0.5f64, 1.0, 2.0] {
        let want = 2.0 * pz0 / alpha.sqrt();
        let mut last = f64::INFINITY;
        for k in [1e-2, 1e-3, 1e-4] {
            let kk = cartan_sr::elliptic::complete_k(m(k)).unwrap();
            let pz = p1_z(m(k)).unwrap().x;
            let phi = (5.0 * kk - pz) / alpha.sqrt();
            let l = from_elliptic(&EllipticCoord::c1(phi, k, alpha, 0.0)).unwrap();
            let t = first_conjugate_time(&l, &analytic()).unwrap().t_conj;
            assert!(
                (t - 2.0 * pz / alpha.sqrt()).abs() < 1e-9 * t,
                "k = {k}: {t}"
            );
            let err = (t - want).abs();
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-6 * want, "alpha = {alpha}: off by {last}");
    }
    let eq = cartan_sr::flow::Covector::new(0.0, 0.0, 1.0, 0.0).unwrap();
    assert_eq!(
        first_conjugate_time(&eq, &analytic()).unwrap().t_conj,
        f64::INFINITY
    );
}

#[test]
fn conjugate_time_grows_near_the_separatrix() {
    let mut last = 0.0;
    for k in [0.9, 0.99, 0.999, 0.9999] {
        let l = from_elliptic(&EllipticCoord::c1(0.2, k, 1.0, 0.0)).unwrap();
        let t = first_conjugate_time(&l, &analytic()).unwrap().t_conj;
        let kk = cartan_sr::elliptic::complete_k(m(k)).unwrap();
        assert!(t > 2.0 * kk, "k = {k}: {t}");
        assert!(t > last);
        last = t;
    }
}

#[test]
fn solvers_agree_on_sample_points() {
    for e in [
        EllipticCoord::c1(0.3, 0.6, 1.2, 0.1),
        EllipticCoord::c1(1.7, 0.85, 0.7, -1.0),
        EllipticCoord::c2(0.5, 0.5, 1.0, 2.0, -1.0),
        EllipticCoord::c2(0.1, 0.9, 2.5, 0.0, 1.0),
    ] {
        let l = from_elliptic(&e).unwrap();
        let a = first_conjugate_time(&l, &analytic()).unwrap();
        let v = first_conjugate_time(
            &l,
            &ConjugateOptions {
                method: Method::Variational,
                ..analytic()
            },
        )
        .unwrap();
        assert!((a.t_conj - v.t_conj).abs() < conjugate::CROSS_CHECK_TOL * a.t_conj);
        assert!(a.t_conj >= maxwell::t_max1(&l).unwrap().t_max - conjugate::BOUND_TOL);
    }
}
