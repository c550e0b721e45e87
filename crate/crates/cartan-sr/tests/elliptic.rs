//! Properties of the elliptic kernel over random moduli and arguments.

use cartan_sr::elliptic::{self, Landen, Modulus};
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

fn m(k: f64) -> Modulus {
    Modulus::new(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn jacobi_identities(k in 0.0..0.999f64, u in -20.0..20.0f64) {
        let j = elliptic::jacobi(u, m(k)).unwrap();
        prop_assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-14);
        prop_assert!((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs() < 1e-14);
        prop_assert!((j.am.sin() - j.sn).abs() < 1e-13);
        prop_assert!((j.am.cos() - j.cn).abs() < 1e-13);
    }

    #[test]
    fn epsilon_derivative_is_dn_squared(k in 0.0..0.99f64, u in -10.0..10.0f64) {
        let h = 1e-5;
        let hi = elliptic::jacobi(u + h, m(k)).unwrap().e;
        let lo = elliptic::jacobi(u - h, m(k)).unwrap().e;
        let dn = elliptic::jacobi(u, m(k)).unwrap().dn;
        prop_assert!(((hi - lo) / (2.0 * h) - dn * dn).abs() < 1e-8);
    }

    #[test]
    fn first_kind_integral_inverts_amplitude(k in 0.0..0.999f64, s in -3.0..3.0f64) {
        let kk = elliptic::complete_k(m(k)).unwrap();
        let u = s * kk;
        let am = elliptic::jacobi(u, m(k)).unwrap().am;
        let back = elliptic::incomplete_f(am, m(k)).unwrap();
        prop_assert!((back - u).abs() < 1e-11 * kk.max(1.0), "{back} vs {u}");
    }

    #[test]
    fn quarter_period_shifts(k in 0.0..0.99f64, u in -5.0..5.0f64) {
        let kk = elliptic::complete_k(m(k)).unwrap();
        let a = elliptic::jacobi(u, m(k)).unwrap();
        let b = elliptic::jacobi(u + 4.0 * kk, m(k)).unwrap();
        prop_assert!((a.sn - b.sn).abs() < 1e-10);
        prop_assert!((a.cn - b.cn).abs() < 1e-10);
        prop_assert!((b.am - a.am - 2.0 * PI).abs() < 1e-10);
        let h = elliptic::jacobi(u + 2.0 * kk, m(k)).unwrap();
        prop_assert!((a.sn + h.sn).abs() < 1e-10);
        prop_assert!((a.dn - h.dn).abs() < 1e-10);
    }

    #[test]
    fn second_kind_matches_epsilon(k in 0.0..0.99f64, u in -6.0..6.0f64) {
        let j = elliptic::jacobi(u, m(k)).unwrap();
        let e = elliptic::incomplete_e(j.am, m(k)).unwrap();
        prop_assert!((e - j.e).abs() < 1e-11);
    }

    #[test]
    fn landen_table_matches_direct(k in 0.01..0.99f64, u in -8.0..8.0f64) {
        let l = Landen::new(k);
        let a = l.eval(u);
        let b = elliptic::jacobi(u, m(k)).unwrap();
        prop_assert!((a.sn - b.sn).abs() < 1e-15);
        prop_assert!((a.e - b.e).abs() < 1e-14);
    }
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn complete_integral_matches_quadrature() {
    let k = 0.8;
    let q = simpson(
        |t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        2000,
    );
    assert!((elliptic::complete_k(m(k)).unwrap() - q).abs() < 1e-12);
}

#[test]
fn e2_at_half_period() {
    let k = 0.5;
    let kk = elliptic::complete_k(m(k)).unwrap();
    let e = elliptic::complete_e(m(k));
    let want = 4.0 * e - 2.0 * kk;
    assert!((elliptic::e2(2.0 * kk, m(k)).unwrap() - want).abs() < 1e-13);
}

#[test]
fn invalid_moduli_are_rejected() {
    for k in [-0.1, 1.1, f64::NAN] {
        assert!(Modulus::new(k).is_err());
    }
    assert!(elliptic::complete_k(m(1.0)).is_err());
}
