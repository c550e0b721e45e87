//! The phase cylinder, its stratification, elliptic coordinates, the
//! exponential map and its Jacobian along an extremal.

use crate::elliptic::{self, jacobi_r, Landen, Modulus};
use crate::error::{Error, Result};
use crate::group::GroupPoint;
use crate::ode::{self, DenseSolution, OdeOptions};
use crate::roots::{self, Root};
use nalgebra::Matrix5;
use std::f64::consts::{PI, TAU};

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduce an angle to `(−π, π]`.
pub fn wrap_pi(a: f64) -> f64 {
    let r = normalize_angle(a);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// A covector on the level surface `H = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Covector {
    pub theta: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Covector {
    pub fn new(theta: f64, c: f64, alpha: f64, beta: f64) -> Result<Covector> {
        if ![theta, c, alpha, beta].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if alpha < 0.0 {
            return Err(Error::InvalidModulus(alpha));
        }
        Ok(Covector {
            theta: normalize_angle(theta),
            c,
            alpha,
            beta: normalize_angle(beta),
        })
    }

    pub fn energy(&self) -> f64 {
        0.5 * self.c * self.c - self.alpha * (self.theta - self.beta).cos()
    }

    /// Components `(h₁, …, h₅)`.
    pub fn h(&self) -> [f64; 5] {
        let (s, c) = self.theta.sin_cos();
        let (sb, cb) = self.beta.sin_cos();
        [c, s, self.c, self.alpha * sb, -self.alpha * cb]
    }

    /// Inverse of [`Covector::h`] given `h₁² + h₂² = 1`.
    pub fn from_h(h: [f64; 5]) -> Result<Covector> {
        let alpha = h[3].hypot(h[4]);
        let beta = if alpha == 0.0 { 0.0 } else { h[3].atan2(-h[4]) };
        Covector::new(h[1].atan2(h[0]), h[2], alpha, beta)
    }

    pub fn max_abs_diff(&self, o: &Covector) -> f64 {
        wrap_pi(self.theta - o.theta)
            .abs()
            .max((self.c - o.c).abs())
            .max((self.alpha - o.alpha).abs())
            .max(wrap_pi(self.beta - o.beta).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

impl Stratum {
    pub fn name(self) -> &'static str {
        match self {
            Stratum::C1 => "C1",
            Stratum::C2 => "C2",
            Stratum::C3 => "C3",
            Stratum::C4 => "C4",
            Stratum::C5 => "C5",
            Stratum::C6 => "C6",
            Stratum::C7 => "C7",
        }
    }

    pub fn parse(s: &str) -> Option<Stratum> {
        Some(match s.trim().to_ascii_uppercase().as_str() {
            "C1" => Stratum::C1,
            "C2" => Stratum::C2,
            "C3" => Stratum::C3,
            "C4" => Stratum::C4,
            "C5" => Stratum::C5,
            "C6" => Stratum::C6,
            "C7" => Stratum::C7,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Relative width of the band around `E = ±α` that counts as the boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

pub fn classify(l: &Covector) -> Stratum {
    if l.alpha == 0.0 {
        return if l.c == 0.0 { Stratum::C7 } else { Stratum::C6 };
    }
    let e = l.energy();
    let tol = BOUNDARY_TOL * l.alpha.max(1.0);
    if (e + l.alpha).abs() <= tol {
        Stratum::C4
    } else if (e - l.alpha).abs() <= tol {
        if (wrap_pi(l.theta - l.beta).abs() - PI).abs() <= 1e-6 {
            Stratum::C5
        } else {
            Stratum::C3
        }
    } else if e < l.alpha {
        Stratum::C1
    } else {
        Stratum::C2
    }
}

/// Rectifying coordinates on `C₁ ∪ C₂ ∪ C₃`. `phi` is pendulum time;
/// `sign` is the direction of rotation (the sign of `c`) on `C₂` and `C₃` and
/// `+1` on `C₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticCoord {
    pub stratum: Stratum,
    pub phi: f64,
    pub k: f64,
    pub alpha: f64,
    pub beta: f64,
    pub sign: f64,
}

impl EllipticCoord {
    /// Period of the pendulum in `phi` (infinite on `C₃`).
    pub fn period(&self) -> f64 {
        match self.stratum {
            Stratum::C1 => 4.0 * Landen::new(self.k).big_k() / self.alpha.sqrt(),
            Stratum::C2 => 2.0 * self.k * Landen::new(self.k).big_k() / self.alpha.sqrt(),
            _ => f64::INFINITY,
        }
    }

    /// The phase `ψ = √α·φ/k` used for `C₂` (and `√α·φ` otherwise).
    pub fn psi(&self) -> f64 {
        match self.stratum {
            Stratum::C2 => self.alpha.sqrt() * self.phi / self.k,
            _ => self.alpha.sqrt() * self.phi,
        }
    }

    pub fn c1(phi: f64, k: f64, alpha: f64, beta: f64) -> EllipticCoord {
        EllipticCoord {
            stratum: Stratum::C1,
            phi,
            k,
            alpha,
            beta,
            sign: 1.0,
        }
    }

    pub fn c2(phi: f64, k: f64, alpha: f64, beta: f64, sign: f64) -> EllipticCoord {
        EllipticCoord {
            stratum: Stratum::C2,
            phi,
            k,
            alpha,
            beta,
            sign,
        }
    }

    /// `C₂` point given its phase `ψ` rather than `φ`.
    pub fn c2_from_psi(psi: f64, k: f64, alpha: f64, beta: f64, sign: f64) -> EllipticCoord {
        EllipticCoord::c2(psi * k / alpha.sqrt(), k, alpha, beta, sign)
    }
}

pub fn to_elliptic(l: &Covector) -> Result<EllipticCoord> {
    let st = classify(l);
    let alpha = l.alpha;
    let sa = alpha.sqrt();
    let d = wrap_pi(l.theta - l.beta);
    match st {
        Stratum::C1 => {
            let k = ((l.energy() + alpha) / (2.0 * alpha)).sqrt().min(1.0);
            let km = Modulus::new(k)?;
            let am = ((0.5 * d).sin() / k).atan2(l.c / (2.0 * k * sa));
            let u = elliptic::incomplete_f(am, km)?;
            let period = 4.0 * elliptic::complete_k(km)?;
            Ok(EllipticCoord::c1(
                u.rem_euclid(period) / sa,
                k,
                alpha,
                l.beta,
            ))
        }
        Stratum::C2 => {
            let k = (2.0 * alpha / (l.energy() + alpha)).sqrt();
            let km = Modulus::new(k)?;
            let sign = if l.c >= 0.0 { 1.0 } else { -1.0 };
            let am = sign * 0.5 * d;
            let u = elliptic::incomplete_f(am, km)?;
            let period = 2.0 * elliptic::complete_k(km)?;
            Ok(EllipticCoord::c2(
                k * u.rem_euclid(period) / sa,
                k,
                alpha,
                l.beta,
                sign,
            ))
        }
        Stratum::C3 => {
            let sign = if l.c >= 0.0 { 1.0 } else { -1.0 };
            let am = sign * 0.5 * d;
            let u = am.sin().atanh();
            Ok(EllipticCoord {
                stratum: Stratum::C3,
                phi: u / sa,
                k: 1.0,
                alpha,
                beta: l.beta,
                sign,
            })
        }
        found => Err(Error::WrongStratum {
            found,
            expected: "C1, C2 or C3",
        }),
    }
}

pub fn from_elliptic(e: &EllipticCoord) -> Result<Covector> {
    let sa = e.alpha.sqrt();
    match e.stratum {
        Stratum::C1 => {
            let j = jacobi_r(sa * e.phi, e.k);
            let half = (e.k * j.sn).atan2(j.dn);
            Covector::new(e.beta + 2.0 * half, 2.0 * e.k * sa * j.cn, e.alpha, e.beta)
        }
        Stratum::C2 => {
            let j = jacobi_r(sa * e.phi / e.k, e.k);
            Covector::new(
                e.beta + 2.0 * e.sign * j.am,
                2.0 * e.sign * sa * j.dn / e.k,
                e.alpha,
                e.beta,
            )
        }
        Stratum::C3 => {
            let j = jacobi_r(sa * e.phi, 1.0);
            Covector::new(
                e.beta + 2.0 * e.sign * j.am,
                2.0 * e.sign * sa * j.dn,
                e.alpha,
                e.beta,
            )
        }
        found => Err(Error::WrongStratum {
            found,
            expected: "C1, C2 or C3",
        }),
    }
}

pub fn ode_options() -> OdeOptions {
    OdeOptions::default()
}

/// Advance `(θ, c)` by `dt` under `θ̈ = −α sin(θ − β)`.
pub fn pendulum_flow(l: &Covector, dt: f64) -> Result<Covector> {
    if l.alpha == 0.0 {
        return Covector::new(l.theta + l.c * dt, l.c, 0.0, l.beta);
    }
    let (a, b) = (l.alpha, l.beta);
    let rhs = move |_: f64, y: &[f64; 2]| [y[1], -a * (y[0] - b).sin()];
    let y = if dt >= 0.0 {
        ode::integrate_to(rhs, 0.0, [l.theta, l.c], dt, &ode_options())?
    } else {
        let back = move |_: f64, y: &[f64; 2]| [-y[1], a * (y[0] - b).sin()];
        ode::integrate_to(back, 0.0, [l.theta, l.c], -dt, &ode_options())?
    };
    Covector::new(y[0], y[1], l.alpha, l.beta)
}

/// Right-hand side of the normal Hamiltonian system on `(h₁, …, h₅, g)`.
pub fn hamiltonian_rhs(y: &[f64; 10]) -> [f64; 10] {
    let [h1, h2, h3, h4, h5, x, yy, ..] = *y;
    let r2h = 0.5 * (x * x + yy * yy);
    [
        -h2 * h3,
        h1 * h3,
        h1 * h4 + h2 * h5,
        0.0,
        0.0,
        h1,
        h2,
        0.5 * (h2 * x - h1 * yy),
        h2 * r2h,
        -h1 * r2h,
    ]
}

/// The full extremal `(h(t), g(t))` on `[0, t]` with dense output.
pub fn extremal(l: &Covector, t: f64) -> Result<DenseSolution<10>> {
    extremal_with(l, t, &ode_options())
}

pub fn extremal_with(l: &Covector, t: f64, opts: &OdeOptions) -> Result<DenseSolution<10>> {
    if !(t >= 0.0) {
        return Err(Error::Integrator(format!("negative time {t}")));
    }
    let h = l.h();
    let y0 = [h[0], h[1], h[2], h[3], h[4], 0.0, 0.0, 0.0, 0.0, 0.0];
    ode::integrate(|_, y| hamiltonian_rhs(y), 0.0, y0, t, opts, true)
}

/// Covector, group point and time along an extremal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalState {
    pub covector: Covector,
    pub point: GroupPoint,
    pub t: f64,
}

pub fn extremal_state(l: &Covector, t: f64) -> Result<ExtremalState> {
    extremal_state_with(l, t, &ode_options())
}

pub fn extremal_state_with(l: &Covector, t: f64, opts: &OdeOptions) -> Result<ExtremalState> {
    let h = l.h();
    let y0 = [h[0], h[1], h[2], h[3], h[4], 0.0, 0.0, 0.0, 0.0, 0.0];
    if !(t >= 0.0) {
        return Err(Error::Integrator(format!("negative time {t}")));
    }
    let y = ode::integrate_to(|_, y| hamiltonian_rhs(y), 0.0, y0, t, opts)?;
    let n = y[0].hypot(y[1]);
    let covector = Covector::from_h([y[0] / n, y[1] / n, y[2], y[3], y[4]])?;
    Ok(ExtremalState {
        covector,
        point: GroupPoint::from_array([y[5], y[6], y[7], y[8], y[9]]),
        t,
    })
}

/// `Exp(λ, t)` from the identity.
pub fn exp_map(l: &Covector, t: f64) -> Result<GroupPoint> {
    Ok(extremal_state(l, t)?.point)
}

pub fn exp_map_with(l: &Covector, t: f64, opts: &OdeOptions) -> Result<GroupPoint> {
    Ok(extremal_state_with(l, t, opts)?.point)
}

/// Extremal in `(θ, c, x, y, z, v, w)` together with its four Jacobi fields
/// for the directions `θ₀, c₀, α, β`.
fn variational_rhs(alpha: f64, beta: f64, s: &[f64; 35]) -> [f64; 35] {
    let th = s[0];
    let c = s[1];
    let (x, y) = (s[2], s[3]);
    let (sn, cs) = th.sin_cos();
    let (sd, cd) = (th - beta).sin_cos();
    let r2h = 0.5 * (x * x + y * y);
    let mut out = [0.0; 35];
    out[0] = c;
    out[1] = -alpha * sd;
    out[2] = cs;
    out[3] = sn;
    out[4] = 0.5 * (x * sn - y * cs);
    out[5] = r2h * sn;
    out[6] = -r2h * cs;
    for j in 0..4 {
        let b = 7 + 7 * j;
        let d_th = s[b];
        let d_c = s[b + 1];
        let (dx, dy) = (s[b + 2], s[b + 3]);
        let src = match j {
            2 => -sd,
            3 => alpha * cd,
            _ => 0.0,
        };
        let xd = x * dx + y * dy;
        out[b] = d_c;
        out[b + 1] = -alpha * cd * d_th + src;
        out[b + 2] = -sn * d_th;
        out[b + 3] = cs * d_th;
        out[b + 4] = 0.5 * (dx * sn + x * cs * d_th - dy * cs + y * sn * d_th);
        out[b + 5] = xd * sn + r2h * cs * d_th;
        out[b + 6] = -xd * cs + r2h * sn * d_th;
    }
    out
}

fn variational_initial(l: &Covector) -> [f64; 35] {
    let mut s = [0.0; 35];
    s[0] = l.theta;
    s[1] = l.c;
    s[7] = 1.0;
    s[7 + 7 + 1] = 1.0;
    s
}

/// `det ∂(x, y, z, v, w)/∂(θ, c, α, β, t)` from a variational state.
pub fn jacobian_from_state(alpha: f64, beta: f64, s: &[f64; 35]) -> f64 {
    jacobian_matrix(alpha, beta, s).determinant()
}

pub fn jacobian_matrix(alpha: f64, beta: f64, s: &[f64; 35]) -> Matrix5<f64> {
    let d = variational_rhs(alpha, beta, s);
    Matrix5::from_fn(|i, j| {
        if j < 4 {
            s[7 + 7 * j + 2 + i]
        } else {
            d[2 + i]
        }
    })
}

/// Extremal with Jacobi fields on `[0, t]`, dense.
pub fn variational_trajectory(l: &Covector, t: f64) -> Result<DenseSolution<35>> {
    variational_trajectory_with(l, t, &ode_options())
}

pub fn variational_trajectory_with(
    l: &Covector,
    t: f64,
    opts: &OdeOptions,
) -> Result<DenseSolution<35>> {
    let (a, b) = (l.alpha, l.beta);
    ode::integrate(
        move |_, s| variational_rhs(a, b, s),
        0.0,
        variational_initial(l),
        t,
        opts,
        true,
    )
}

/// `J₀(λ, t) = det ∂(x, y, z, v, w)/∂(θ, c, α, β, t)`.
pub fn exp_jacobian(l: &Covector, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Integrator(format!("Jacobian needs t > 0, got {t}")));
    }
    let (a, b) = (l.alpha, l.beta);
    let s = ode::integrate_to(
        move |_, s| variational_rhs(a, b, s),
        0.0,
        variational_initial(l),
        t,
        &ode_options(),
    )?;
    Ok(jacobian_from_state(a, b, &s))
}

/// First sign change of `J₀` on `[t_lo, t_hi]`, refined on the dense
/// interpolant. Each accepted step is sampled at `per_step` interior points.
pub fn first_jacobian_zero(l: &Covector, t_lo: f64, t_hi: f64) -> Result<Option<Root>> {
    first_jacobian_zero_with(l, t_lo, t_hi, &ode_options())
}

pub fn first_jacobian_zero_with(
    l: &Covector,
    t_lo: f64,
    t_hi: f64,
    opts: &OdeOptions,
) -> Result<Option<Root>> {
    let sol = variational_trajectory_with(l, t_hi, opts)?;
    let (a, b) = (l.alpha, l.beta);
    let j0 = |t: f64| jacobian_from_state(a, b, &sol.eval(t));
    const PER_STEP: usize = 4;
    let mut t_prev = t_lo;
    let mut f_prev = j0(t_lo);
    for st in &sol.steps {
        if st.t1() <= t_lo {
            continue;
        }
        for i in 1..=PER_STEP {
            let t = st.t0 + st.h * i as f64 / PER_STEP as f64;
            if t <= t_prev {
                continue;
            }
            let f = jacobian_from_state(a, b, &st.eval(t));
            if f_prev == 0.0 || f.signum() != f_prev.signum() {
                let root = roots::brent(j0, t_prev, t, 1e-13, "J0")?;
                return Ok(Some(root));
            }
            t_prev = t;
            f_prev = f;
        }
    }
    Ok(None)
}

/// `ε³(θ, c, α, β) = (−θ, −c, α, −β)`.
pub fn reflect3(l: &Covector) -> Covector {
    Covector {
        theta: normalize_angle(-l.theta),
        c: -l.c,
        alpha: l.alpha,
        beta: normalize_angle(-l.beta),
    }
}

/// Lift of the rotation `e^{sX₀}`: shifts `θ` and `β` together.
pub fn rotate_covector(l: &Covector, s: f64) -> Covector {
    Covector {
        theta: normalize_angle(l.theta + s),
        c: l.c,
        alpha: l.alpha,
        beta: normalize_angle(l.beta + s),
    }
}

/// Lift of the dilation `e^{rY}`; the returned factor `eʳ` rescales time.
pub fn dilate_covector(l: &Covector, r: f64) -> (Covector, f64) {
    let e = r.exp();
    (
        Covector {
            theta: l.theta,
            c: l.c / e,
            alpha: l.alpha / (e * e),
            beta: l.beta,
        },
        e,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(theta: f64, c: f64, alpha: f64, beta: f64) -> Covector {
        Covector::new(theta, c, alpha, beta).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&cv(0.4, 0.0, 1.0, 0.4)), Stratum::C4);
        assert_eq!(classify(&cv(0.0, 1.0, 0.0, 0.0)), Stratum::C6);
        assert_eq!(classify(&cv(0.0, 0.0, 0.0, 0.0)), Stratum::C7);
        assert_eq!(classify(&cv(0.7, 3.0, 1.0, 0.7)), Stratum::C2);
        assert_eq!(classify(&cv(0.0, 1.0, 1.0, 0.0)), Stratum::C1);
        assert_eq!(classify(&cv(PI, 0.0, 1.0, 0.0)), Stratum::C5);
        assert_eq!(classify(&cv(0.0, 2.0, 1.0, 0.0)), Stratum::C3);
    }

    #[test]
    fn to_elliptic_examples() {
        let k: f64 = 0.2;
        let e = to_elliptic(&cv(0.3, 2.0 * k, 1.0, 0.3)).unwrap();
        assert!(e.phi.abs() < 1e-14 || (e.phi - e.period()).abs() < 1e-12);
        let e = to_elliptic(&cv(0.0, 2f64.sqrt(), 1.0, 0.0)).unwrap();
        assert_eq!(e.stratum, Stratum::C1);
        assert!((e.k - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            to_elliptic(&cv(PI, 0.0, 1.0, 0.0)),
            Err(Error::WrongStratum {
                found: Stratum::C5,
                ..
            })
        ));
    }

    #[test]
    fn elliptic_round_trip() {
        for l in [
            cv(0.3, 0.8, 1.3, 1.1),
            cv(2.0, -0.4, 0.5, 5.0),
            cv(1.0, 3.0, 0.7, 0.2),
            cv(1.0, -3.0, 0.7, 0.2),
        ] {
            let e = to_elliptic(&l).unwrap();
            let back = from_elliptic(&e).unwrap();
            assert!(back.max_abs_diff(&l) < 1e-10, "{l:?} {back:?}");
        }
    }

    #[test]
    fn separatrix_round_trip() {
        let l = cv(0.0, 2.0, 1.0, 0.0);
        let e = to_elliptic(&l).unwrap();
        assert_eq!(e.stratum, Stratum::C3);
        assert!(from_elliptic(&e).unwrap().max_abs_diff(&l) < 1e-12);
    }

    #[test]
    fn pendulum_flow_examples() {
        let eq = cv(0.5, 0.0, 2.0, 0.5);
        assert!(pendulum_flow(&eq, 3.0).unwrap().max_abs_diff(&eq) < 1e-15);
        let free = cv(0.1, 0.7, 0.0, 0.0);
        assert!((pendulum_flow(&free, 2.0).unwrap().theta - 1.5).abs() < 1e-14);
        let l = cv(0.2, 0.9, 1.4, 0.6);
        let period = to_elliptic(&l).unwrap().period();
        assert!(pendulum_flow(&l, period).unwrap().max_abs_diff(&l) < 1e-9);
    }

    #[test]
    fn exp_map_examples() {
        let l = cv(0.3, 0.2, 1.0, 0.1);
        assert_eq!(exp_map(&l, 0.0).unwrap(), GroupPoint::IDENTITY);
        let g = exp_map(&cv(0.0, 0.0, 0.0, 0.0), 2.5).unwrap();
        // Along X₁ from the identity the w-component is −t³/6.
        let w = -2.5f64.powi(3) / 6.0;
        assert!(
            g.max_abs_diff(GroupPoint::from_array([2.5, 0.0, 0.0, 0.0, w])) < 1e-12,
            "{g:?}"
        );
    }

    #[test]
    fn reflection_examples() {
        let l = cv(0.3, 1.2, 1.0, 0.5);
        let r = reflect3(&l);
        assert!(r.max_abs_diff(&cv(-0.3, -1.2, 1.0, -0.5)) < 1e-15);
        assert!(reflect3(&r).max_abs_diff(&l) < 1e-15);
        assert_eq!(classify(&r), classify(&l));
    }

    #[test]
    fn full_turn_rotation_is_identity() {
        let l = cv(0.3, 1.2, 1.0, 0.5);
        assert!(rotate_covector(&l, TAU).max_abs_diff(&l) < 1e-12);
    }

    #[test]
    fn jacobian_nonzero_for_short_arcs() {
        let l = cv(0.3, 0.5, 1.0, 0.0);
        for &t in &[0.05, 0.2, 1.0] {
            assert!(exp_jacobian(&l, t).unwrap() != 0.0);
        }
    }
}
