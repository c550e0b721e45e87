//! Coefficient tables of the rotating-stratum functions `a₀₁` and `a₂₁` as
//! double sums `Σ c_{ij}(s, c, d, k)·Fⁱ Eʲ`, written with `s = sin u₁`,
//! `c = cos u₁`, `d = √(1 − k² sin² u₁)`, `F = F(u₁)` and `E = E(u₁)`.

use crate::closed_form::Args;
use crate::real::Real;

/// Exponents `(i, j)` of `Fⁱ Eʲ` in the `a₀₁` table.
pub const A01_TERMS: [(u32, u32); 10] = [
    (0, 0),
    (0, 1),
    (1, 0),
    (0, 2),
    (1, 1),
    (2, 0),
    (0, 3),
    (1, 2),
    (2, 1),
    (3, 0),
];

/// Exponents `(i, j)` of `Fⁱ Eʲ` in the `a₂₁` table.
pub const A21_TERMS: [(u32, u32); 21] = [
    (0, 0),
    (0, 1),
    (1, 0),
    (0, 2),
    (1, 1),
    (2, 0),
    (0, 3),
    (1, 2),
    (2, 1),
    (3, 0),
    (0, 4),
    (1, 3),
    (2, 2),
    (3, 1),
    (4, 0),
    (0, 5),
    (1, 4),
    (2, 3),
    (3, 2),
    (4, 1),
    (5, 0),
];

/// Trigonometric data of the amplitude `u₁`.
#[derive(Debug, Clone, Copy)]
pub struct Trig<R> {
    pub s: R,
    pub c: R,
    pub d: R,
    pub k: R,
}

impl<R: Real> Trig<R> {
    pub fn from_args(a: &Args<R>) -> Trig<R> {
        Trig {
            s: a.sn,
            c: a.cn,
            d: a.dn,
            k: a.k,
        }
    }
}

#[inline]
fn n<R: Real>(x: f64) -> R {
    R::of(x)
}

/// Coefficient of `Fⁱ Eʲ` in `a₀₁`; zero outside [`A01_TERMS`].
pub fn a01_coefficient<R: Real>(i: u32, j: u32, t: &Trig<R>) -> R {
    let Trig { s, c, d, k } = *t;
    let k2 = k * k;
    let s2 = s * s;
    let one = R::one();
    let m = n::<R>(2.0) - k2;
    let kp = one - k2;
    match (i, j) {
        (0, 0) => -n::<R>(2.0) * k2 * s2 * c * c * d,
        (0, 1) => c * s * (n::<R>(4.0) + k2 * (one - n::<R>(6.0) * s2)),
        (1, 0) => -c * s * (n::<R>(4.0) - n::<R>(3.0) * k2 - k2 * m * s2),
        (0, 2) => -n::<R>(3.0) * d * (one - n::<R>(2.0) * s2),
        (1, 1) => m * d * (one - n::<R>(2.0) * s2),
        (2, 0) => kp * d * (one - n::<R>(2.0) * s2),
        (0, 3) => -n::<R>(2.0) * c * s,
        (1, 2) => m * c * s,
        (2, 1) => n::<R>(2.0) * kp * c * s,
        (3, 0) => -kp * m * c * s,
        _ => R::zero(),
    }
}

/// Coefficient of `Fⁱ Eʲ` in `a₂₁`; zero outside [`A21_TERMS`].
pub fn a21_coefficient<R: Real>(i: u32, j: u32, t: &Trig<R>) -> R {
    let Trig { s, c, d, k } = *t;
    let k2 = k * k;
    let k3 = k2 * k;
    let k4 = k2 * k2;
    let k6 = k4 * k2;
    let s2 = s * s;
    let sc = s * c;
    let one = R::one();
    let m = n::<R>(2.0) - k2;
    let kp = one - k2;
    let half = n::<R>(0.5);
    match (i, j) {
        (0, 0) => -n::<R>(6.0) * k3 * k4 * sc * sc * sc,
        (0, 1) => n::<R>(20.0) * k4 * k * s2 * c * c * d,
        (1, 0) => -n::<R>(6.0) * k4 * k * m * s2 * c * c * d,
        (0, 2) => -n::<R>(2.0) * k3 * sc * (n::<R>(12.0) - k2 * (one + n::<R>(10.0) * s2)),
        (1, 1) => {
            half * k3
                * sc
                * (n::<R>(32.0) - n::<R>(8.0) * k2 * (one + n::<R>(6.0) * s2)
                    + n::<R>(3.0) * k4 * (one + n::<R>(8.0) * s2))
        }
        (2, 0) => {
            half * k3
                * sc
                * (n::<R>(16.0) + n::<R>(3.0) * k6 * s2 + k4 * (n::<R>(9.0) - n::<R>(8.0) * s2)
                    - n::<R>(4.0) * k2 * (n::<R>(7.0) - n::<R>(2.0) * s2))
        }
        (0, 3) => n::<R>(8.0) * k * m * d,
        (1, 2) => -half * k * (n::<R>(32.0) - n::<R>(32.0) * k2 + n::<R>(15.0) * k4) * d,
        (2, 1) => {
            -half
                * k
                * (n::<R>(32.0) - n::<R>(48.0) * k2 + n::<R>(10.0) * k4 + n::<R>(3.0) * k6)
                * d
        }
        (3, 0) => {
            half * k * (n::<R>(32.0) - n::<R>(64.0) * k2 + n::<R>(41.0) * k4 - n::<R>(9.0) * k6) * d
        }
        (0, 4) => -n::<R>(10.0) * k3 * sc,
        (1, 3) => n::<R>(12.0) * k3 * m * sc,
        (2, 2) => -n::<R>(1.5) * k3 * (n::<R>(8.0) - n::<R>(8.0) * k2 + n::<R>(3.0) * k4) * sc,
        (3, 1) => -half * k3 * (n::<R>(16.0) - n::<R>(24.0) * k2 + n::<R>(6.0) * k4 + k6) * sc,
        (4, 0) => n::<R>(1.5) * k3 * kp * m * m * sc,
        (0, 5) => n::<R>(4.0) * k * d,
        (1, 4) => -n::<R>(6.0) * k * m * d,
        (2, 3) => k * (n::<R>(8.0) - n::<R>(8.0) * k2 + n::<R>(3.0) * k4) * d,
        (3, 2) => half * k * (n::<R>(16.0) - n::<R>(24.0) * k2 + n::<R>(6.0) * k4 + k6) * d,
        (4, 1) => -n::<R>(3.0) * k * kp * m * m * d,
        (5, 0) => half * k * kp * m * m * m * d,
        _ => R::zero(),
    }
}

fn double_sum<R: Real>(a: &Args<R>, terms: &[(u32, u32)], coef: fn(u32, u32, &Trig<R>) -> R) -> R {
    let t = Trig::from_args(a);
    let mut fp = [R::one(); 6];
    let mut ep = [R::one(); 6];
    for i in 1..6 {
        fp[i] = fp[i - 1] * a.p;
        ep[i] = ep[i - 1] * a.e;
    }
    let mut sum = R::zero();
    for &(i, j) in terms {
        sum += coef(i, j, &t) * fp[i as usize] * ep[j as usize];
    }
    sum
}

/// `Σ c_{ij} Fⁱ Eʲ` over the `a₀₁` table.
pub fn a01_sum<R: Real>(a: &Args<R>) -> R {
    double_sum(a, &A01_TERMS, a01_coefficient)
}

/// `Σ d_{ij} Fⁱ Eʲ` over the `a₂₁` table.
pub fn a21_sum<R: Real>(a: &Args<R>) -> R {
    double_sum(a, &A21_TERMS, a21_coefficient)
}
