//! The first conjugate time `t¹_conj(λ)` from the factorization
//! `J₁ = a₀ + a₁ξ + a₂ξ²`, where `ξ = sn²τ` and `a₀, a₁, a₂` depend on
//! `(p, k)` alone. Zeros are located on a grid in `p` and refined by Brent;
//! the variational Jacobian `J₀` provides an independent cross-check.

use crate::closed_form::{self, Args, Evaluator};
use crate::elliptic::{jacobi_r, Modulus};
use crate::error::{Error, Result};
use crate::flow::{
    classify, first_jacobian_zero_with, to_elliptic, Covector, EllipticCoord, Stratum,
};
use crate::maxwell::{self, K_MAX};
use crate::ode::OdeOptions;
use crate::qd::Qd;
use crate::roots::{self, Root};

/// Largest accepted gap between the analytic and the variational zero.
pub const CROSS_CHECK_TOL: f64 = 1e-4;
pub const ROOT_TOL: f64 = 1e-13;
/// Slack on the inequalities `t¹_max ≤ t¹_conj ≤ upper`.
pub const BOUND_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianFactors {
    pub stratum: Stratum,
    pub p: f64,
    pub tau: f64,
    pub xi: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    /// `Δ = 1 − k² sn²p sn²τ`.
    pub delta: f64,
    pub j1: f64,
}

/// `(a₀, a₂)` at `p`; `a₁` follows from `a₀ + a₁ + a₂ = 0` on `C₁`
/// (after the `ξ = 1/k²` substitution) and from `k²a₀ + a₁ + a₂ = 0` on `C₂`.
pub fn outer_coefficients(stratum: Stratum, a: &Args<Qd>) -> Result<(Qd, Qd)> {
    match stratum {
        Stratum::C1 => Ok((
            closed_form::fv_c1(a) * closed_form::a01_c1(a),
            closed_form::fz_c1(a) * closed_form::a21_c1(a),
        )),
        Stratum::C2 => Ok((
            closed_form::fv_c2(a) * closed_form::a01_c2(a) / Qd::from(16.0),
            closed_form::fz_c2(a) * closed_form::a21_c2(a),
        )),
        found => Err(Error::WrongStratum {
            found,
            expected: "C1 or C2",
        }),
    }
}

fn middle_coefficient(stratum: Stratum, k2: Qd, a0: Qd, a2: Qd) -> Qd {
    match stratum {
        Stratum::C1 => -a0 - a2 / k2,
        _ => -k2 * a0 - a2,
    }
}

/// `J₁` written without cancellation between its terms:
/// `(1 − ξ)a₀ − ξ(1 − k²ξ)a₂/k²` on `C₁` and `(1 − k²ξ)a₀ − ξ(1 − ξ)a₂` on `C₂`.
pub fn j1_from_factors(stratum: Stratum, k2: f64, a0: f64, a2: f64, xi: f64) -> f64 {
    match stratum {
        Stratum::C1 => (1.0 - xi) * a0 - xi * (1.0 - k2 * xi) * a2 / k2,
        _ => (1.0 - k2 * xi) * a0 - xi * (1.0 - xi) * a2,
    }
}

/// Time scale `t = scale·p` of the stratum.
pub fn time_scale(e: &EllipticCoord) -> f64 {
    match e.stratum {
        Stratum::C2 => 2.0 * e.k / e.alpha.sqrt(),
        _ => 2.0 / e.alpha.sqrt(),
    }
}

/// The phase `τ₀ = τ − p`: `√α·φ` on `C₁` and `ψ` on `C₂`.
pub fn phase(e: &EllipticCoord) -> f64 {
    e.psi()
}

/// `J₁(λ, t)` with its factors.
pub fn j1(e: &EllipticCoord, t: f64) -> Result<JacobianFactors> {
    if !matches!(e.stratum, Stratum::C1 | Stratum::C2) {
        return Err(Error::WrongStratum {
            found: e.stratum,
            expected: "C1 or C2",
        });
    }
    Modulus::new(e.k)?;
    let p = t / time_scale(e);
    let tau = phase(e) + p;
    let xi = jacobi_r(tau, e.k).sn.powi(2);
    let ev = Evaluator::new(e.k);
    let a = ev.args(p);
    let (a0, a2) = outer_coefficients(e.stratum, &a)?;
    let a1 = middle_coefficient(e.stratum, a.k2, a0, a2);
    let xq = Qd::from(xi);
    let j = match e.stratum {
        Stratum::C1 => (Qd::ONE - xq) * a0 - xq * (Qd::ONE - a.k2 * xq) * a2 / a.k2,
        _ => (Qd::ONE - a.k2 * xq) * a0 - xq * (Qd::ONE - xq) * a2,
    };
    let sn_p = a.sn.to_f64();
    Ok(JacobianFactors {
        stratum: e.stratum,
        p,
        tau,
        xi,
        a0: a0.to_f64(),
        a1: a1.to_f64(),
        a2: a2.to_f64(),
        delta: 1.0 - e.k * e.k * sn_p * sn_p * xi,
        j1: j.to_f64(),
    })
}

/// `J₁` on `C₁ ∪ C₂` for a covector.
pub fn j1_covector(l: &Covector, t: f64) -> Result<JacobianFactors> {
    j1(&to_elliptic(l)?, t)
}

/// Tabulated `(a₀, a₂)` on the grid `p = h, 2h, …` for one stratum and
/// modulus, reusable across phases.
#[derive(Debug, Clone)]
pub struct ConjugateSolver {
    stratum: Stratum,
    k: f64,
    k2: f64,
    step: f64,
    ev: Evaluator,
    table: Vec<(f64, f64)>,
    /// Brent tolerance in `p`.
    pub root_tol: f64,
}

impl ConjugateSolver {
    pub fn new(stratum: Stratum, k: f64) -> Result<ConjugateSolver> {
        ConjugateSolver::with_evaluator(stratum, Evaluator::new(k))
    }

    /// Solver whose factors `(a₀, a₂)` are evaluated at the modulus of `ev`,
    /// which may carry more precision than `f64`.
    pub fn with_evaluator(stratum: Stratum, ev: Evaluator) -> Result<ConjugateSolver> {
        if !matches!(stratum, Stratum::C1 | Stratum::C2) {
            return Err(Error::WrongStratum {
                found: stratum,
                expected: "C1 or C2",
            });
        }
        let k = ev.k();
        let m = Modulus::new(k)?;
        if m.k() == 0.0 || m.k() >= 1.0 {
            return Err(Error::InvalidModulus(k));
        }
        let step = (2.0 * ev.big_k() / 200.0).min(0.01);
        Ok(ConjugateSolver {
            stratum,
            k,
            k2: k * k,
            step,
            ev,
            table: Vec::new(),
            root_tol: ROOT_TOL,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    fn outer(&self, p: f64) -> (f64, f64) {
        let (a0, a2) = outer_coefficients(self.stratum, &self.ev.args(p)).expect("stratum checked");
        (a0.to_f64(), a2.to_f64())
    }

    fn ensure(&mut self, n: usize) {
        while self.table.len() < n {
            let p = (self.table.len() + 1) as f64 * self.step;
            let v = self.outer(p);
            self.table.push(v);
        }
    }

    fn xi(&self, tau: f64) -> f64 {
        jacobi_r(tau, self.k).sn.powi(2)
    }

    /// `J₁` at `p` for the phase `τ₀`.
    pub fn j1_at(&self, tau0: f64, p: f64) -> f64 {
        let (a0, a2) = self.outer(p);
        j1_from_factors(self.stratum, self.k2, a0, a2, self.xi(tau0 + p))
    }

    /// First sign change of `J₁` in `p ∈ (0, p_cap]`.
    pub fn first_zero(&mut self, tau0: f64, p_cap: f64) -> Result<Option<Root>> {
        let n = (p_cap / self.step).ceil() as usize;
        self.ensure(n);
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..n {
            let p = (i + 1) as f64 * self.step;
            let (a0, a2) = self.table[i];
            let f = j1_from_factors(self.stratum, self.k2, a0, a2, self.xi(tau0 + p));
            if let Some((p0, f0)) = prev {
                if f == 0.0 || f.signum() != f0.signum() {
                    let r = roots::brent(|q| self.j1_at(tau0, q), p0, p, self.root_tol, "J1")?;
                    return Ok(Some(r));
                }
            }
            prev = Some((p, f));
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Variational,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Variational => "variational",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateResult {
    pub t_conj: f64,
    pub bracket: Option<(f64, f64)>,
    pub method: Method,
    pub residual: f64,
    /// The variational zero, when the cross-check ran.
    pub t_variational: Option<f64>,
}

impl ConjugateResult {
    fn infinite() -> ConjugateResult {
        ConjugateResult {
            t_conj: f64::INFINITY,
            bracket: None,
            method: Method::Analytic,
            residual: 0.0,
            t_variational: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateOptions {
    /// Search horizon; defaults to `3·t¹_max`.
    pub t_cap: Option<f64>,
    pub cross_validate: bool,
    /// Primary solver on `C₁ ∪ C₂`.
    pub method: Method,
    /// Integrator settings of the variational Jacobian.
    pub ode: OdeOptions,
    /// Brent tolerance in `p` for zeros of `J₁`.
    pub root_tol: f64,
}

impl Default for ConjugateOptions {
    fn default() -> Self {
        ConjugateOptions {
            t_cap: None,
            cross_validate: true,
            method: Method::Analytic,
            ode: OdeOptions::default(),
            root_tol: ROOT_TOL,
        }
    }
}

/// Start of the variational search as a fraction of `t¹_max`; closer to
/// `t = 0` the determinant is below the integration noise.
pub const VARIATIONAL_START: f64 = 0.05;

/// First zero of `J₀` on `[VARIATIONAL_START·t¹_max, t_hi]`.
pub fn variational_zero(l: &Covector, t_hi: f64) -> Result<Option<Root>> {
    let t_max = maxwell::t_max1(l)?.t_max;
    variational_zero_with(l, t_max, t_hi, &OdeOptions::default())
}

fn variational_zero_with(
    l: &Covector,
    t_max: f64,
    t_hi: f64,
    ode: &OdeOptions,
) -> Result<Option<Root>> {
    let t_lo = if t_max.is_finite() {
        VARIATIONAL_START * t_max
    } else {
        VARIATIONAL_START * t_hi
    };
    first_jacobian_zero_with(l, t_lo, t_hi, ode)
}

/// Analytic search on `C₁ ∪ C₂` with an existing solver.
pub fn first_zero_with(
    solver: &mut ConjugateSolver,
    e: &EllipticCoord,
    t_cap: f64,
) -> Result<Option<ConjugateResult>> {
    let scale = time_scale(e);
    let root = solver.first_zero(phase(e), t_cap / scale)?;
    Ok(root.map(|r| ConjugateResult {
        t_conj: scale * r.x,
        bracket: Some((scale * r.lo, scale * r.hi)),
        method: Method::Analytic,
        residual: r.residual,
        t_variational: None,
    }))
}

/// `t¹_conj(λ)`: `+∞` on `C₃, C₄, C₅, C₇` and when `J₁` has no zero up to
/// the horizon, `t¹_max` on `C₆`, the first zero of `J₁` on `C₁ ∪ C₂`.
pub fn first_conjugate_time(l: &Covector, opts: &ConjugateOptions) -> Result<ConjugateResult> {
    let st = classify(l);
    match st {
        Stratum::C6 => {
            let m = maxwell::t_max1(l)?;
            return Ok(ConjugateResult {
                t_conj: m.t_max,
                bracket: m
                    .bracket
                    .map(|(a, b)| (4.0 / l.c.abs() * a, 4.0 / l.c.abs() * b)),
                method: Method::Analytic,
                residual: m.residual,
                t_variational: None,
            });
        }
        Stratum::C1 | Stratum::C2 => {}
        _ => return Ok(ConjugateResult::infinite()),
    }
    let e = to_elliptic(l)?;
    if e.k > K_MAX {
        return Ok(ConjugateResult::infinite());
    }
    let t_max = maxwell::t_max1(l)?.t_max;
    let t_cap = opts.t_cap.unwrap_or(3.0 * t_max);
    if opts.method == Method::Variational {
        return Ok(match variational_zero_with(l, t_max, t_cap, &opts.ode)? {
            Some(r) => ConjugateResult {
                t_conj: r.x,
                bracket: Some((r.lo, r.hi)),
                method: Method::Variational,
                residual: r.residual,
                t_variational: Some(r.x),
            },
            None => ConjugateResult::infinite(),
        });
    }
    let mut solver = ConjugateSolver::new(st, e.k)?;
    solver.root_tol = opts.root_tol;
    let Some(mut res) = first_zero_with(&mut solver, &e, t_cap)? else {
        return Ok(ConjugateResult::infinite());
    };
    if opts.cross_validate {
        let v = variational_zero_with(l, t_max, 1.25 * res.t_conj, &opts.ode)?;
        let tv = v.map(|r| r.x);
        res.t_variational = tv;
        match tv {
            Some(tv) if (tv - res.t_conj).abs() <= CROSS_CHECK_TOL => {}
            _ => {
                return Err(Error::MethodDisagreement {
                    analytic: res.t_conj,
                    variational: tv.unwrap_or(f64::NAN),
                })
            }
        }
    }
    debug_assert!(
        res.t_conj >= t_max - BOUND_TOL,
        "conjugate time {} below the Maxwell time {t_max}",
        res.t_conj
    );
    Ok(res)
}

/// Upper bound for `t¹_conj`: `(2/√α)·max(p₁ᶻ, p₁ⱽ)` on `C₁` and
/// `(4/√α)·kK` on `C₂`.
pub fn upper_bound(e: &EllipticCoord) -> Result<f64> {
    let m = Modulus::new(e.k)?;
    let sa = e.alpha.sqrt();
    match e.stratum {
        Stratum::C1 => {
            let z = maxwell::p1_z(m)?.x;
            let v = maxwell::p1_v(m, Stratum::C1)?.x;
            Ok(2.0 / sa * z.max(v))
        }
        Stratum::C2 => Ok(4.0 / sa * e.k * Evaluator::new(e.k).big_k()),
        found => Err(Error::WrongStratum {
            found,
            expected: "C1 or C2",
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub t_max1: f64,
    pub t_conj: f64,
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// Evaluates `t¹_max ≤ t¹_conj ≤ upper` for a point of `C₁ ∪ C₂`.
pub fn two_sided_check(l: &Covector) -> Result<BoundCheck> {
    let e = to_elliptic(l)?;
    let mut solver = ConjugateSolver::new(e.stratum, e.k)?;
    two_sided_check_with(&mut solver, &e)
}

pub fn two_sided_check_with(solver: &mut ConjugateSolver, e: &EllipticCoord) -> Result<BoundCheck> {
    let l = crate::flow::from_elliptic(e)?;
    let t_max1 = maxwell::t_max1(&l)?.t_max;
    let upper = upper_bound(e)?;
    let t_cap = 1.5 * upper.max(t_max1);
    let t_conj = first_zero_with(solver, e, t_cap)?
        .map(|r| r.t_conj)
        .unwrap_or(f64::INFINITY);
    Ok(BoundCheck {
        t_max1,
        t_conj,
        upper,
        lower_ok: t_conj >= t_max1 - BOUND_TOL,
        upper_ok: t_conj <= upper + BOUND_TOL,
    })
}
