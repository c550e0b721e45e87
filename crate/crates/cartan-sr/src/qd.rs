//! Quad-double arithmetic: an unevaluated sum of four `f64` limbs, about 212
//! bits of significand.
//!
//! The closed-form Jacobian factors cancel dozens of leading digits near
//! `p -> 0` and `k -> 0`, so they are evaluated in this type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Qd(pub [f64; 4]);

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0;
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

#[inline]
fn three_sum(a: f64, b: f64, c: f64) -> (f64, f64, f64) {
    let (t1, t2) = two_sum(a, b);
    let (a, t3) = two_sum(c, t1);
    let (b, c) = two_sum(t2, t3);
    (a, b, c)
}

#[inline]
fn three_sum2(a: f64, b: f64, c: f64) -> (f64, f64) {
    let (t1, t2) = two_sum(a, b);
    let (a, t3) = two_sum(c, t1);
    (a, t2 + t3)
}

fn renorm(c0: f64, c1: f64, c2: f64, c3: f64, c4: f64) -> Qd {
    if !c0.is_finite() {
        return Qd([c0, 0.0, 0.0, 0.0]);
    }
    let (s0, c4) = quick_two_sum(c3, c4);
    let (s0, c3) = quick_two_sum(c2, s0);
    let (s0, c2) = quick_two_sum(c1, s0);
    let (c0, c1) = quick_two_sum(c0, s0);

    let mut s0 = c0;
    let mut s1 = c1;
    let mut s2 = 0.0;
    let mut s3 = 0.0;
    if s1 != 0.0 {
        (s1, s2) = quick_two_sum(s1, c2);
        if s2 != 0.0 {
            (s2, s3) = quick_two_sum(s2, c3);
            if s3 != 0.0 {
                s3 += c4;
            } else {
                s2 += c4;
            }
        } else {
            (s1, s2) = quick_two_sum(s1, c3);
            if s2 != 0.0 {
                (s2, s3) = quick_two_sum(s2, c4);
            } else {
                (s1, s2) = quick_two_sum(s1, c4);
            }
        }
    } else {
        (s0, s1) = quick_two_sum(s0, c2);
        if s1 != 0.0 {
            (s1, s2) = quick_two_sum(s1, c3);
            if s2 != 0.0 {
                (s2, s3) = quick_two_sum(s2, c4);
            } else {
                (s1, s2) = quick_two_sum(s1, c4);
            }
        } else {
            (s0, s1) = quick_two_sum(s0, c3);
            if s1 != 0.0 {
                (s1, s2) = quick_two_sum(s1, c4);
            } else {
                (s0, s1) = quick_two_sum(s0, c4);
            }
        }
    }
    Qd([s0, s1, s2, s3])
}

impl Qd {
    pub const ZERO: Qd = Qd([0.0; 4]);
    pub const ONE: Qd = Qd([1.0, 0.0, 0.0, 0.0]);
    pub const PI: Qd = Qd([
        std::f64::consts::PI,
        1.2246467991473532e-16,
        -2.9947698097183397e-33,
        1.1124542208633653e-49,
    ]);
    pub const FRAC_PI_2: Qd = Qd([
        std::f64::consts::FRAC_PI_2,
        6.123233995736766e-17,
        -1.4973849048591698e-33,
        5.562271104316826e-50,
    ]);
    pub const LN_2: Qd = Qd([
        std::f64::consts::LN_2,
        2.3190468138462996e-17,
        5.707708438416212e-34,
        -3.5824322106018114e-50,
    ]);
    /// 2^-209, roughly one unit in the last limb for numbers near 1.
    pub const EPSILON: f64 = 1.215_432_671_457_254_2e-63;

    pub const fn from_f64(x: f64) -> Qd {
        Qd([x, 0.0, 0.0, 0.0])
    }

    pub fn hi(self) -> f64 {
        self.0[0]
    }

    /// The four limbs; their exact sum is the value.
    pub fn limbs(self) -> [f64; 4] {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0[0] + self.0[1]
    }

    pub fn is_finite(self) -> bool {
        self.0[0].is_finite()
    }

    pub fn abs(self) -> Qd {
        if self.0[0] < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Exact multiplication by a power of two.
    pub fn ldexp(self, e: i32) -> Qd {
        let f = 2f64.powi(e);
        Qd([self.0[0] * f, self.0[1] * f, self.0[2] * f, self.0[3] * f])
    }

    pub fn sqr(self) -> Qd {
        self * self
    }

    pub fn recip(self) -> Qd {
        Qd::ONE / self
    }

    pub fn floor(self) -> Qd {
        let x0 = self.0[0].floor();
        if x0 != self.0[0] {
            return Qd::from_f64(x0);
        }
        let x1 = self.0[1].floor();
        if x1 != self.0[1] {
            return renorm(x0, x1, 0.0, 0.0, 0.0);
        }
        let x2 = self.0[2].floor();
        if x2 != self.0[2] {
            return renorm(x0, x1, x2, 0.0, 0.0);
        }
        renorm(x0, x1, x2, self.0[3].floor(), 0.0)
    }

    pub fn round(self) -> Qd {
        (self + Qd::from_f64(0.5)).floor()
    }

    pub fn powi(self, n: i32) -> Qd {
        if n == 0 {
            return Qd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Qd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn sqrt(self) -> Qd {
        if self.0[0] == 0.0 {
            return Qd::ZERO;
        }
        if self.0[0] < 0.0 {
            return Qd::from_f64(f64::NAN);
        }
        // Newton on 1/sqrt(a), three steps from the f64 seed.
        let mut x = Qd::from_f64(1.0 / self.0[0].sqrt());
        let half = Qd::from_f64(0.5);
        for _ in 0..3 {
            x += x * (half - half * self * x.sqr());
        }
        self * x
    }

    /// sin and cos together.
    pub fn sin_cos(self) -> (Qd, Qd) {
        if self.0[0] == 0.0 {
            return (Qd::ZERO, Qd::ONE);
        }
        let n = (self / Qd::FRAC_PI_2).round();
        let r = self - n * Qd::FRAC_PI_2;
        let quadrant = (n.0[0].rem_euclid(4.0) + n.0[1].rem_euclid(4.0)).rem_euclid(4.0) as i32;

        const HALVINGS: i32 = 5;
        let s = r.ldexp(-HALVINGS);
        let s2 = s.sqr();
        // Taylor series on |s| <= pi/128, Horner in s².
        let inv = inverse_odd_factorials();
        let mut acc = inv[inv.len() - 1];
        for c in inv[..inv.len() - 1].iter().rev() {
            acc = *c - s2 * acc;
        }
        let mut sin = s * acc;
        let mut cos = (Qd::ONE - sin.sqr()).sqrt();
        for _ in 0..HALVINGS {
            let s_new = (sin * cos).ldexp(1);
            cos = Qd::ONE - sin.sqr().ldexp(1);
            sin = s_new;
        }
        match quadrant {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }

    pub fn sin(self) -> Qd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Qd {
        self.sin_cos().1
    }

    /// Quadrant-aware arctangent of y/x.
    pub fn atan2(y: Qd, x: Qd) -> Qd {
        if x.0[0] == 0.0 && y.0[0] == 0.0 {
            return Qd::ZERO;
        }
        let r = (x.sqr() + y.sqr()).sqrt();
        let xx = x / r;
        let yy = y / r;
        let mut z = Qd::from_f64(y.0[0].atan2(x.0[0]));
        for _ in 0..3 {
            let (s, c) = z.sin_cos();
            if xx.0[0].abs() > yy.0[0].abs() {
                z += (yy - s) / c;
            } else {
                z -= (xx - c) / s;
            }
        }
        z
    }

    pub fn asin(self) -> Qd {
        let c = (Qd::ONE - self.sqr()).sqrt();
        Qd::atan2(self, c)
    }

    pub fn exp(self) -> Qd {
        if self.0[0] > 709.0 {
            return Qd::from_f64(f64::INFINITY);
        }
        if self.0[0] < -745.0 {
            return Qd::ZERO;
        }
        let m = (self / Qd::LN_2).round();
        let r = self - m * Qd::LN_2;
        const SQUARINGS: i32 = 10;
        let s = r.ldexp(-SQUARINGS);
        // exp(s) - 1 by Taylor, then square back up.
        let mut term = s;
        let mut em1 = s;
        let mut i = 2.0;
        while term.0[0].abs() > 1e-70 && i < 40.0 {
            term = term * s / Qd::from_f64(i);
            em1 += term;
            i += 1.0;
        }
        for _ in 0..SQUARINGS {
            em1 = em1.ldexp(1) + em1.sqr();
        }
        (em1 + Qd::ONE).ldexp(m.0[0] as i32)
    }
}

/// `1/(2m + 1)!` for `m = 0, 1, …, 13`.
fn inverse_odd_factorials() -> &'static [Qd; 14] {
    static TABLE: OnceLock<[Qd; 14]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [Qd::ONE; 14];
        let mut f = Qd::ONE;
        for (m, slot) in t.iter_mut().enumerate().skip(1) {
            let a = (2 * m) as f64;
            f /= Qd::from_f64(a * (a + 1.0));
            *slot = f;
        }
        t
    })
}

impl From<f64> for Qd {
    fn from(x: f64) -> Qd {
        Qd::from_f64(x)
    }
}

impl Neg for Qd {
    type Output = Qd;
    fn neg(self) -> Qd {
        Qd([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }
}

impl Add for Qd {
    type Output = Qd;
    fn add(self, b: Qd) -> Qd {
        let a = self.0;
        let b = b.0;
        let (s0, t0) = two_sum(a[0], b[0]);
        let (s1, t1) = two_sum(a[1], b[1]);
        let (s2, t2) = two_sum(a[2], b[2]);
        let (s3, t3) = two_sum(a[3], b[3]);

        let (s1, t0) = two_sum(s1, t0);
        let (s2, t0, t1) = three_sum(s2, t0, t1);
        let (s3, t0) = three_sum2(s3, t0, t2);
        let t0 = t0 + t1 + t3;
        renorm(s0, s1, s2, s3, t0)
    }
}

impl Sub for Qd {
    type Output = Qd;
    fn sub(self, b: Qd) -> Qd {
        self + (-b)
    }
}

impl Mul for Qd {
    type Output = Qd;
    fn mul(self, b: Qd) -> Qd {
        let a = self.0;
        let b = b.0;
        let (p0, q0) = two_prod(a[0], b[0]);
        let (p1, q1) = two_prod(a[0], b[1]);
        let (p2, q2) = two_prod(a[1], b[0]);
        let (p3, q3) = two_prod(a[0], b[2]);
        let (p4, q4) = two_prod(a[1], b[1]);
        let (p5, q5) = two_prod(a[2], b[0]);

        let (p1, p2, q0) = three_sum(p1, p2, q0);

        let (p2, q1, q2) = three_sum(p2, q1, q2);
        let (p3, p4, p5) = three_sum(p3, p4, p5);
        let (s0, t0) = two_sum(p2, p3);
        let (s1, t1) = two_sum(q1, p4);
        let mut s2 = q2 + p5;
        let (mut s1, t0) = two_sum(s1, t0);
        s2 += t0 + t1;

        s1 += a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0] + q0 + q3 + q4 + q5;
        renorm(p0, p1, s0, s1, s2)
    }
}

impl Div for Qd {
    type Output = Qd;
    fn div(self, b: Qd) -> Qd {
        let q0 = self.0[0] / b.0[0];
        let mut r = self - b * Qd::from_f64(q0);
        let q1 = r.0[0] / b.0[0];
        r -= b * Qd::from_f64(q1);
        let q2 = r.0[0] / b.0[0];
        r -= b * Qd::from_f64(q2);
        let q3 = r.0[0] / b.0[0];
        r -= b * Qd::from_f64(q3);
        let q4 = r.0[0] / b.0[0];
        renorm(q0, q1, q2, q3, q4)
    }
}

macro_rules! assign_op {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Qd {
            fn $f(&mut self, rhs: Qd) {
                *self = *self $op rhs;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);

impl PartialOrd for Qd {
    fn partial_cmp(&self, other: &Qd) -> Option<Ordering> {
        for i in 0..4 {
            match self.0[i].partial_cmp(&other.0[i])? {
                Ordering::Equal => continue,
                o => return Some(o),
            }
        }
        Some(Ordering::Equal)
    }
}

impl fmt::Debug for Qd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Qd({:e}, {:e}, {:e}, {:e})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

impl fmt::Display for Qd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}
