//! Jacobi elliptic functions and elliptic integrals of real modulus `k`.
//!
//! `sn`, `cn`, `dn`, `am` and Jacobi's `E(u, k)` come from the AGM with the
//! descending Landen recurrence; `k = 0` and `k = 1` are closed-form branches.
//! Incomplete integrals of an amplitude use Carlson's symmetric forms.

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(k: f64) -> Result<Modulus> {
        if k.is_nan() || !(0.0..=1.0).contains(&k) {
            return Err(Error::InvalidModulus(k));
        }
        Ok(Modulus(k))
    }

    pub fn k(self) -> f64 {
        self.0
    }
}

/// Values of the Jacobi functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi<R> {
    pub sn: R,
    pub cn: R,
    pub dn: R,
    pub am: R,
    /// Jacobi's epsilon function `E(u, k) = ∫₀ᵘ dn²`.
    pub e: R,
}

pub type EllipticValues = Jacobi<f64>;

const MAX_LEVELS: usize = 32;

/// AGM table for a fixed modulus; evaluating many arguments at one `k`
/// reuses it.
#[derive(Debug, Clone)]
pub struct Landen<R: Real> {
    k: R,
    a: [R; MAX_LEVELS],
    c: [R; MAX_LEVELS],
    levels: usize,
    kp2: R,
    big_k: R,
    big_e: R,
}

impl<R: Real> Landen<R> {
    /// Requires `0 < k < 1`.
    pub fn new(k: R) -> Landen<R> {
        let one = R::one();
        let mut a = [R::zero(); MAX_LEVELS];
        let mut c = [R::zero(); MAX_LEVELS];
        a[0] = one;
        let kp2 = (one - k) * (one + k);
        let mut b = kp2.sqrt();
        c[0] = k;
        let mut n = 0;
        while n + 1 < MAX_LEVELS {
            let an = a[n];
            a[n + 1] = (an + b) * R::of(0.5);
            c[n + 1] = c[n].sqr() / (a[n + 1] * R::of(4.0));
            b = (an * b).sqrt();
            n += 1;
            if c[n].abs().to_f64() <= R::EPS * a[n].to_f64() * 0.25 {
                break;
            }
        }
        let big_k = R::pi() / (a[n] * R::of(2.0));
        let mut sum = R::zero();
        let mut w = R::of(0.5);
        for ci in c.iter().take(n + 1) {
            sum += w * ci.sqr();
            w *= R::of(2.0);
        }
        let big_e = big_k * (one - sum);
        Landen {
            k,
            a,
            c,
            levels: n,
            kp2,
            big_k,
            big_e,
        }
    }

    pub fn k(&self) -> R {
        self.k
    }

    /// Complete integral of the first kind.
    pub fn big_k(&self) -> R {
        self.big_k
    }

    /// Complete integral of the second kind.
    pub fn big_e(&self) -> R {
        self.big_e
    }

    /// Descending Landen recurrence carried on `(sin φᵢ, cos φᵢ)`: one
    /// `sin_cos` at the top level, then addition and half-angle formulas. An
    /// `f64` shadow of the angles fixes the half-angle signs.
    pub fn eval(&self, u: R) -> Jacobi<R> {
        let two_k = self.big_k * R::of(2.0);
        let shift = (u / two_k).round();
        let r = u - shift * two_k;
        let n = self.levels;
        let half = R::of(0.5);

        let mut scale = R::one();
        for _ in 0..n {
            scale *= R::of(2.0);
        }
        let top = scale * self.a[n] * r;
        let mut phi_f = top.to_f64();
        let (mut s, mut c) = top.sin_cos();
        let mut zeta = R::zero();
        for i in (1..=n).rev() {
            zeta += self.c[i] * s;
            let ratio = self.c[i] / self.a[i];
            let x = ratio * s;
            let cx = (R::one() - x * x).sqrt();
            let sp = s * cx + c * x;
            let cp = c * cx - s * x;
            phi_f = 0.5 * (phi_f + (ratio.to_f64() * s.to_f64()).clamp(-1.0, 1.0).asin());
            let (sf, cf) = phi_f.sin_cos();
            if cf.abs() >= sf.abs() {
                c = ((R::one() + cp) * half).sqrt();
                if cf < 0.0 {
                    c = -c;
                }
                s = sp * half / c;
            } else {
                s = ((R::one() - cp) * half).sqrt();
                if sf < 0.0 {
                    s = -s;
                }
                c = sp * half / s;
            }
        }
        let (mut sn, mut cn) = (s, c);
        let dn = (cn.sqr() + self.kp2 * sn.sqr()).sqrt();
        let mut e = self.big_e / self.big_k * r + zeta;
        let (sf, cf) = R::of(phi_f).sin_cos();
        let t = (sn * cf - cn * sf) / (cn * cf + sn * sf);
        let mut am = R::of(phi_f) + t - t * t * t / R::of(3.0);

        let m = shift.to_f64();
        if m != 0.0 {
            am += shift * R::pi();
            e += shift * two_k / self.big_k * self.big_e;
            if (m as i64).rem_euclid(2) == 1 {
                sn = -sn;
                cn = -cn;
            }
        }
        Jacobi { sn, cn, dn, am, e }
    }
}

/// Jacobi functions for any `k ∈ [0, 1]` in the scalar type `R`.
pub fn jacobi_r<R: Real>(u: R, k: R) -> Jacobi<R> {
    if k == R::zero() {
        let (sn, cn) = u.sin_cos();
        return Jacobi {
            sn,
            cn,
            dn: R::one(),
            am: u,
            e: u,
        };
    }
    if k == R::one() {
        let sn = u.tanh();
        let sech = u.sech();
        return Jacobi {
            sn,
            cn: sech,
            dn: sech,
            am: sn.atan2(sech),
            e: sn,
        };
    }
    Landen::new(k).eval(u)
}

pub fn jacobi(u: f64, k: Modulus) -> Result<EllipticValues> {
    if !u.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(jacobi_r(u, k.k()))
}

pub fn complete_k(k: Modulus) -> Result<f64> {
    if k.k() == 1.0 {
        return Err(Error::DivergentPeriod);
    }
    if k.k() == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    Ok(Landen::new(k.k()).big_k())
}

pub fn complete_e(k: Modulus) -> f64 {
    match k.k() {
        1.0 => 1.0,
        0.0 => std::f64::consts::FRAC_PI_2,
        x => Landen::new(x).big_e(),
    }
}

/// `E₂(p, k) = 2E(p, k) − p`.
pub fn e2(p: f64, k: Modulus) -> Result<f64> {
    let j = jacobi(p, k)?;
    Ok(2.0 * j.e - p)
}

/// Carlson's symmetric integral `R_F(x, y, z)`.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..100 {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + z) / 3.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mu.sqrt();
        }
    }
    f64::NAN
}

/// Carlson's symmetric integral `R_D(x, y, z)`.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let mut sum = 0.0;
    let mut fac = 1.0;
    for _ in 0..100 {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + 3.0 * z) / 5.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
                + dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
            return 3.0 * sum + fac * (1.0 + s) / (mu * mu.sqrt());
        }
    }
    f64::NAN
}

fn reduce_amplitude(u1: f64) -> (f64, f64) {
    let n = (u1 / std::f64::consts::PI).round();
    (n, u1 - n * std::f64::consts::PI)
}

/// Incomplete integral of the first kind `F(u₁, k)` of an amplitude.
pub fn incomplete_f(u1: f64, k: Modulus) -> Result<f64> {
    if !u1.is_finite() {
        return Err(Error::NonFinite);
    }
    let k = k.k();
    if k == 1.0 {
        if u1.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::AmplitudeOutOfRange(u1));
        }
        return Ok(u1.sin().atanh());
    }
    let (n, r) = reduce_amplitude(u1);
    let (s, c) = r.sin_cos();
    let f = s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0);
    let kk = if n != 0.0 {
        complete_k(Modulus(k))?
    } else {
        0.0
    };
    Ok(2.0 * n * kk + f)
}

/// Incomplete integral of the second kind `E(u₁, k)` of an amplitude.
pub fn incomplete_e(u1: f64, k: Modulus) -> Result<f64> {
    if !u1.is_finite() {
        return Err(Error::NonFinite);
    }
    let k = k.k();
    let (n, r) = reduce_amplitude(u1);
    let (s, c) = r.sin_cos();
    let m = k * k;
    let q = 1.0 - m * s * s;
    let e = s * carlson_rf(c * c, q, 1.0) - m * s * s * s * carlson_rd(c * c, q, 1.0) / 3.0;
    Ok(2.0 * n * complete_e(Modulus(k)) + e)
}
