//! Scalar abstraction so the elliptic kernel and the Jacobian formulas run in
//! both `f64` and [`Qd`].

use crate::qd::Qd;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Relative rounding unit.
    const EPS: f64;

    fn of(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;
    fn sqrt(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn asin(self) -> Self;
    fn atan2(self, x: Self) -> Self;
    fn exp(self) -> Self;
    fn round(self) -> Self;

    fn zero() -> Self {
        Self::of(0.0)
    }
    fn one() -> Self {
        Self::of(1.0)
    }
    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn sqr(self) -> Self {
        self * self
    }
    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc *= self;
        }
        acc
    }
    fn tanh(self) -> Self {
        let e = (self + self).exp();
        (e - Self::one()) / (e + Self::one())
    }
    fn sech(self) -> Self {
        let e = self.exp();
        Self::of(2.0) / (e + Self::one() / e)
    }
}

impl Real for f64 {
    const EPS: f64 = f64::EPSILON;
    fn of(x: f64) -> f64 {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn pi() -> f64 {
        std::f64::consts::PI
    }
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn sin_cos(self) -> (f64, f64) {
        f64::sin_cos(self)
    }
    fn asin(self) -> f64 {
        f64::asin(self)
    }
    fn atan2(self, x: f64) -> f64 {
        f64::atan2(self, x)
    }
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    fn round(self) -> f64 {
        f64::round(self)
    }
    fn tanh(self) -> f64 {
        f64::tanh(self)
    }
    fn sech(self) -> f64 {
        1.0 / f64::cosh(self)
    }
}

impl Real for Qd {
    const EPS: f64 = Qd::EPSILON;
    fn of(x: f64) -> Qd {
        Qd::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        Qd::to_f64(self)
    }
    fn pi() -> Qd {
        Qd::PI
    }
    fn sqrt(self) -> Qd {
        Qd::sqrt(self)
    }
    fn sin_cos(self) -> (Qd, Qd) {
        Qd::sin_cos(self)
    }
    fn asin(self) -> Qd {
        Qd::asin(self)
    }
    fn atan2(self, x: Qd) -> Qd {
        Qd::atan2(self, x)
    }
    fn exp(self) -> Qd {
        Qd::exp(self)
    }
    fn round(self) -> Qd {
        Qd::round(self)
    }
}
