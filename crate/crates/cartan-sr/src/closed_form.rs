//! Closed-form functions of `(p, k)` entering the Maxwell times and the
//! Jacobian factorization: `f_z`, `f_V`, `a₀₁`, `a₂₁` on the oscillating
//! (`C₁`) and rotating (`C₂`) strata, the sum-of-squares certificates, and
//! the `k → 0` limit functions.
//!
//! Everything is generic over [`Real`]; near `p = 0` and, on `C₂`, near
//! `k = 0` the leading orders cancel and [`crate::qd::Qd`] is needed.

use crate::elliptic::{Jacobi, Landen};
use crate::qd::Qd;
use crate::real::Real;

#[inline]
fn n<R: Real>(x: f64) -> R {
    R::of(x)
}

/// Jacobi data at the argument `p` for modulus `k`.
#[derive(Debug, Clone, Copy)]
pub struct Args<R> {
    pub p: R,
    pub sn: R,
    pub cn: R,
    pub dn: R,
    /// `E(p, k)`.
    pub e: R,
    pub k: R,
    pub k2: R,
}

impl<R: Real> Args<R> {
    pub fn new(l: &Landen<R>, p: R) -> Args<R> {
        Args::from_jacobi(p, l.k(), &l.eval(p))
    }

    pub fn from_jacobi(p: R, k: R, j: &Jacobi<R>) -> Args<R> {
        Args {
            p,
            sn: j.sn,
            cn: j.cn,
            dn: j.dn,
            e: j.e,
            k,
            k2: k * k,
        }
    }

    /// `E₂(p) = 2E(p) − p`.
    pub fn e2(&self) -> R {
        n::<R>(2.0) * self.e - self.p
    }
}

/// Quad-double evaluation of [`Args`] at one modulus.
#[derive(Debug, Clone)]
pub struct Evaluator {
    landen: Landen<Qd>,
    k: f64,
}

impl Evaluator {
    /// Requires `0 ≤ k < 1`.
    pub fn new(k: f64) -> Evaluator {
        Evaluator {
            landen: Landen::new(Qd::from(k)),
            k,
        }
    }

    /// Modulus carried to quad-double precision.
    pub fn with_modulus(k: Qd) -> Evaluator {
        Evaluator {
            landen: Landen::new(k),
            k: k.to_f64(),
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn modulus(&self) -> Qd {
        self.landen.k()
    }

    pub fn big_k(&self) -> f64 {
        self.landen.big_k().to_f64()
    }

    pub fn args(&self, p: f64) -> Args<Qd> {
        Args::new(&self.landen, Qd::from(p))
    }
}

pub fn fz_c1<R: Real>(a: &Args<R>) -> R {
    a.sn * a.dn - a.e2() * a.cn
}

pub fn fv_c1<R: Real>(a: &Args<R>) -> R {
    let (sn, cn, dn, p, k2) = (a.sn, a.cn, a.dn, a.p, a.k2);
    let e = a.e2();
    let one = R::one();
    n::<R>(4.0 / 3.0)
        * sn
        * dn
        * (-p - n::<R>(2.0) * (one - n::<R>(2.0) * k2 + n::<R>(6.0) * k2 * cn * cn) * e
            + e * e * e
            + n::<R>(8.0) * k2 * cn * sn * dn)
        + n::<R>(4.0) * cn * (one - n::<R>(2.0) * k2 * sn * sn) * e * e
}

pub fn a01_c1<R: Real>(a: &Args<R>) -> R {
    let (sn, cn, dn, p, k2) = (a.sn, a.cn, a.dn, a.p, a.k2);
    let e = a.e2();
    let s2 = sn * sn;
    let k4 = k2 * k2;
    let c = n::<R>;
    let t1 = c(3.0)
        * cn
        * (c(-3.0) * e * e + c(4.0) * e * p - c(8.0) * e * k2 * p - p * p
            + c(2.0)
                * k2
                * (c(-4.0) + c(3.0) * e * e + c(4.0) * e * (c(-1.0) + c(2.0) * k2) * p + p * p)
                * s2
            + c(8.0) * k4 * s2 * s2);
    let t2 = c(3.0)
        * dn
        * sn
        * (-(e * e * e) - c(2.0) * p
            + e * e * (c(2.0) - c(4.0) * k2) * p
            + c(8.0) * k2 * p * (R::one() + (R::one() - c(2.0) * k2) * s2)
            - e * (c(-2.0) + p * p + c(4.0) * k2 * (c(-2.0) + c(3.0) * s2)));
    (t1 + t2) * c(0.25)
}

pub fn a21_c1<R: Real>(a: &Args<R>) -> R {
    let (sn, cn, dn, p, k2) = (a.sn, a.cn, a.dn, a.p, a.k2);
    let e = a.e2();
    let k4 = k2 * k2;
    let c = n::<R>;
    let e2 = e * e;
    let e3 = e2 * e;
    let g = c(5.0) * e - c(2.0) * p + c(4.0) * k2 * p;
    let t1 = cn
        * (-(e3 * e2) + e2 * e2 * (c(2.0) - c(4.0) * k2) * p
            - e2 * (c(9.0) - c(64.0) * k2 + c(64.0) * k4) * p
            + p * p * p
            - e3 * (c(-8.0) + c(16.0) * k2 + p * p));
    let t2 = dn
        * (e2 * (c(-4.0) + c(5.0) * e2 + c(48.0) * k2)
            + c(2.0)
                * e
                * (R::one() - c(4.0) * e2 + c(8.0) * (c(-6.0) + e2) * k2 + c(64.0) * k4)
                * p
            + (c(2.0) + c(3.0) * e2) * p * p)
        * sn;
    let t3 = -c(16.0) * k2 * cn * g * sn * sn;
    let t4 = -c(4.0)
        * k2
        * dn
        * (c(-12.0) + c(10.0) * e2 + c(8.0) * e * (c(-1.0) + c(2.0) * k2) * p + p * p)
        * sn.powi(3);
    let t5 = c(16.0) * k4 * cn * g * sn.powi(4);
    let t6 = -c(48.0) * k4 * dn * sn.powi(5);
    -(k2 * (t1 + t2 + t3 + t4 + t5 + t6))
}

/// `C₂` factor `f_z` in terms of `u₁ = am(p)`: `sin u₁ = sn p`,
/// `cos u₁ = cn p`, `√(1 − k² sin² u₁) = dn p`, `F(u₁) = p`, `E(u₁) = E(p)`.
pub fn fz_c2<R: Real>(a: &Args<R>) -> R {
    let (s, c, d, f, e, k, k2) = (a.sn, a.cn, a.dn, a.p, a.e, a.k, a.k2);
    n::<R>(2.0) / k * (d * ((n::<R>(2.0) - k2) * f - n::<R>(2.0) * e) + k2 * c * s)
}

pub fn fv_c2<R: Real>(a: &Args<R>) -> R {
    let (s, c, d, f, e, k2) = (a.sn, a.cn, a.dn, a.p, a.e, a.k2);
    let n = n::<R>;
    let m = n(2.0) - k2;
    let g = n(2.0) * e - m * f;
    let k4 = k2 * k2;
    let bracket = n(8.0) * e * e * e - n(4.0) * e * (n(4.0) + k2) - n(12.0) * e * e * m * f
        + n(6.0) * e * m * m * f * f
        + f * (n(16.0) - n(4.0) * k2 - n(3.0) * k4 - m * m * m * f * f);
    n(4.0 / 3.0)
        * (n(3.0) * d * g * g + c * bracket * s
            - n(2.0) * d * (n(-4.0) * k2 + n(3.0) * g * g) * s * s
            + n(12.0) * k2 * c * g * s.powi(3)
            - n(8.0) * k2 * s.powi(4) * d)
}

/// `C₂` coefficient `a₀₁`: twelve times the double sum over
/// [`crate::tables::a01_coefficient`].
pub fn a01_c2<R: Real>(a: &Args<R>) -> R {
    n::<R>(12.0) * crate::tables::a01_sum(a)
}

pub fn a21_c2<R: Real>(a: &Args<R>) -> R {
    crate::tables::a21_sum(a)
}

/// `E₄(p) = cn p·E₂(p) − 2 sn p dn p`.
pub fn e4<R: Real>(a: &Args<R>) -> R {
    a.cn * a.e2() - n::<R>(2.0) * a.sn * a.dn
}

/// Sum of squares `x₂` with `∂/∂p (a₀₁/f_z)·f_z² = (3/4)·x₂` on `C₁`.
pub fn certificate_x2_c1<R: Real>(a: &Args<R>) -> R {
    let (sn, cn, dn, p, k2) = (a.sn, a.cn, a.dn, a.p, a.k2);
    let e = a.e2();
    let s2 = sn * sn;
    let n = n::<R>;
    let csd = cn * sn * dn;
    let alpha0 = (R::one() + s2 - n(2.0) * k2 * s2) * e * e
        - n(4.0) * (n(2.0) * k2 - R::one()) * csd * e
        + n(4.0) * (n(2.0) * k2 - R::one()) * s2 * dn * dn;
    let beta0 =
        (n(2.0) * k2 * s2 - R::one()) * e * e + n(8.0) * k2 * csd * e - n(8.0) * k2 * s2 * dn * dn;
    let u = cn * e4(a) * p + alpha0;
    let v = e * p + beta0;
    k2 * u * u + (R::one() - k2) * v * v
}

/// The two squared quantities of `x₁`, so that
/// `x₁ = k²·first² + (1 − k²)·second²`.
pub fn certificate_x1_parts<R: Real>(a: &Args<R>) -> (R, R) {
    let (sn, cn, dn, p, k2) = (a.sn, a.cn, a.dn, a.p, a.k2);
    let e = a.e2();
    let n = n::<R>;
    let one = R::one();
    let s2 = sn * sn;
    let c2 = cn * cn;
    let csd = cn * sn * dn;
    let k4 = k2 * k2;
    let e2 = e * e;
    let e3 = e2 * e;
    let e4 = e2 * e2;
    let beta1 = -c2 * e3 + n(6.0) * csd * e2
        - (n(8.0) - n(10.0) * c2 - n(4.0) * k2 * s2 * (n(2.0) - n(3.0) * c2)) * e
        + n(4.0) * csd * (n(2.0) * k2 * s2 - one);
    let gamma1 = n(8.0) * cn * dn * e3 * (n(-1.0) + n(2.0) * k2) * sn
        + e4 * (n(3.0) - s2 + n(2.0) * k2 * (n(-2.0) + s2))
        - n(4.0)
            * dn
            * dn
            * s2
            * (n(3.0) + n(8.0) * k4 * (n(2.0) + s2) - n(4.0) * k2 * (n(5.0) + s2))
        - n(4.0)
            * cn
            * dn
            * e
            * sn
            * (n(-7.0) + n(8.0) * k2 * (n(5.0) + s2 - n(2.0) * k2 * (n(2.0) + s2)))
        + e2 * (n(-15.0)
            + n(23.0) * s2
            + n(8.0)
                * k2
                * (n(10.0) - n(10.0) * s2 - n(3.0) * s2 * s2
                    + k2 * (n(-8.0) + n(4.0) * s2 + n(6.0) * s2 * s2)));
    let delta1 = -e3 - (n(2.0) - n(4.0) * k2 * s2) * e;
    let w = n(-3.0) + n(2.0) * k2 * (n(2.0) + s2);
    let eps1 = n(16.0) * cn * dn * e3 * k2 * sn
        + e4 * (one + n(2.0) * k2 * (n(-2.0) + s2))
        + n(32.0) * cn * dn * e * k2 * sn * w
        - n(16.0) * dn * dn * k2 * s2 * w
        + e2 * (one
            + n(16.0)
                * k2
                * (n(3.0) - n(4.0) * s2 + k2 * (n(-4.0) + n(2.0) * s2 + n(3.0) * s2 * s2)));
    (c2 * p * p + beta1 * p + gamma1, p * p + delta1 * p + eps1)
}

/// Sum of squares `x₁` with `∂/∂p (a₂₁/f_V)·f_V² = −(4/3)k²·x₁` on `C₁`.
pub fn certificate_x1_c1<R: Real>(a: &Args<R>) -> R {
    let (u, v) = certificate_x1_parts(a);
    a.k2 * u * u + (R::one() - a.k2) * v * v
}

/// `f_z⁰(p) = (4p − sin 4p)/16`.
pub fn fz0(p: f64) -> f64 {
    (4.0 * p - (4.0 * p).sin()) / 16.0
}

/// Unnormalized `f_V⁰(u) = (32u² − 1) cos 2u + cos 6u − 8u sin 2u`; the
/// displayed limit function carries an extra factor `1/512`.
pub fn fv0<R: Real>(u: R) -> R {
    let n = n::<R>;
    let (s2, c2) = (n(2.0) * u).sin_cos();
    (n(32.0) * u * u - R::one()) * c2 + (n(6.0) * u).cos() - n(8.0) * u * s2
}

/// `a₀₁⁰(u) = 64u³ sin 2u + 48u² cos 2u − 44u sin 2u − 4u cos 4u sin 2u
/// + 3 cos 2u − 3 cos 6u`.
pub fn a010<R: Real>(u: R) -> R {
    let n = n::<R>;
    let (s2, c2) = (n(2.0) * u).sin_cos();
    let c4 = (n(4.0) * u).cos();
    let c6 = (n(6.0) * u).cos();
    n(64.0) * u.powi(3) * s2 + n(48.0) * u * u * c2 - n(44.0) * u * s2 - n(4.0) * u * c4 * s2
        + n(3.0) * c2
        - n(3.0) * c6
}

/// `a₂₁⁰(u) = 45u + 608u³ − 512u⁵ + 16u(28u² − 3) cos 4u + 3u cos 8u
/// + 12 sin 4u − 432u² sin 4u + 256u⁴ sin 4u − 6 sin 8u`.
pub fn a210<R: Real>(u: R) -> R {
    let n = n::<R>;
    let (s4, c4) = (n(4.0) * u).sin_cos();
    let (s8, c8) = (n(8.0) * u).sin_cos();
    let u2 = u * u;
    n(45.0) * u + n(608.0) * u2 * u - n(512.0) * u2 * u2 * u
        + n(16.0) * u * (n(28.0) * u2 - n(3.0)) * c4
        + n(3.0) * u * c8
        + n(12.0) * s4
        - n(432.0) * u2 * s4
        + n(256.0) * u2 * u2 * s4
        - n(6.0) * s8
}
