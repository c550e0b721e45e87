//! The first Maxwell time `t¹_max(λ)` on every stratum, with the root
//! functions `f_z` and `f_V` that define it on the oscillating and rotating
//! strata.

use crate::closed_form::{self, Evaluator};
use crate::elliptic::{self, Modulus};
use crate::error::{Error, Result};
use crate::flow::{classify, to_elliptic, Covector, Stratum};
use crate::qd::Qd;
use crate::roots::{self, Root};
use std::f64::consts::{FRAC_PI_2, PI};

/// Moduli closer to one than this have an infinite Maxwell time.
pub const K_MAX: f64 = 1.0 - 1e-9;
/// Below this modulus the rotating stratum uses the `k → 0` limit.
pub const K_ROTATING_MIN: f64 = 1e-6;
/// Sign-scan panels per bracket width.
pub const PANELS: usize = 64;
pub const ROOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellResult {
    pub t_max: f64,
    /// The root `p` in the natural argument of the stratum.
    pub root_p: Option<f64>,
    pub bracket: Option<(f64, f64)>,
    pub residual: f64,
}

impl MaxwellResult {
    pub const INFINITE: MaxwellResult = MaxwellResult {
        t_max: f64::INFINITY,
        root_p: None,
        bracket: None,
        residual: 0.0,
    };

    fn from_root(scale: f64, r: &Root) -> MaxwellResult {
        MaxwellResult {
            t_max: scale * r.x,
            root_p: Some(r.x),
            bracket: Some((r.lo, r.hi)),
            residual: r.residual,
        }
    }
}

/// `f_z(p) = sn p dn p − E₂(p) cn p` on `C₁`.
pub fn f_z(p: f64, k: Modulus) -> f64 {
    closed_form::fz_c1(&Evaluator::new(k.k()).args(p)).to_f64()
}

/// `f_V(p)` on `C₁`.
pub fn f_v(p: f64, k: Modulus) -> f64 {
    closed_form::fv_c1(&Evaluator::new(k.k()).args(p)).to_f64()
}

/// `f_z` on `C₂` as a function of the amplitude `u₁`.
pub fn f_z_c2(u1: f64, k: Modulus) -> Result<f64> {
    let p = elliptic::incomplete_f(u1, k)?;
    Ok(closed_form::fz_c2(&Evaluator::new(k.k()).args(p)).to_f64())
}

/// `f_V` on `C₂` as a function of the amplitude `u₁`.
pub fn f_v_c2(u1: f64, k: Modulus) -> Result<f64> {
    let p = elliptic::incomplete_f(u1, k)?;
    Ok(closed_form::fv_c2(&Evaluator::new(k.k()).args(p)).to_f64())
}

/// First positive root of `f` on `(lo, hi]`, scanned with [`PANELS`]
/// panels per `width`.
fn scan<F: FnMut(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    width: f64,
    what: &'static str,
) -> Result<Root> {
    let panels = ((hi - lo) / width * PANELS as f64).ceil().max(1.0) as usize;
    roots::first_root(f, lo, hi, panels, ROOT_TOL, what)
}

fn check_open(k: Modulus) -> Result<()> {
    if k.k() >= 1.0 {
        return Err(Error::DivergentPeriod);
    }
    Ok(())
}

/// First positive root of `f_z` on `C₁`, expected in `(K, 3K)`.
pub fn p1_z(k: Modulus) -> Result<Root> {
    check_open(k)?;
    p1_z_in(&Evaluator::new(k.k()))
}

/// [`p1_z`] at the modulus of an evaluator.
pub fn p1_z_in(ev: &Evaluator) -> Result<Root> {
    let kk = ev.big_k();
    scan(
        |p| closed_form::fz_c1(&ev.args(p)).to_f64(),
        0.02 * kk,
        3.05 * kk,
        2.0 * kk,
        "p1z",
    )
}

/// First positive root of `f_V` in the argument `p`: on `C₁` expected in
/// `[2K, 4K)`, on `C₂` in `(K, 2K)`.
pub fn p1_v(k: Modulus, stratum: Stratum) -> Result<Root> {
    check_open(k)?;
    p1_v_in(&Evaluator::new(k.k()), stratum)
}

/// [`p1_v`] at the modulus of an evaluator.
pub fn p1_v_in(ev: &Evaluator, stratum: Stratum) -> Result<Root> {
    let kk = ev.big_k();
    match stratum {
        Stratum::C1 => scan(
            |p| closed_form::fv_c1(&ev.args(p)).to_f64(),
            0.02 * kk,
            4.05 * kk,
            2.0 * kk,
            "p1V",
        ),
        Stratum::C2 => scan(
            |p| closed_form::fv_c2(&ev.args(p)).to_f64(),
            0.02 * kk,
            2.05 * kk,
            kk,
            "p1V",
        ),
        found => Err(Error::WrongStratum {
            found,
            expected: "C1 or C2",
        }),
    }
}

/// First positive root of `f_V⁰`, in `(π/2, π)`.
pub fn p1_v0() -> f64 {
    roots::brent(closed_form::fv0::<f64>, FRAC_PI_2, PI, 1e-15, "p1V0")
        .map(|r| r.x)
        .unwrap_or(f64::NAN)
}

/// The moduli `k₁ < k₀` in `(0, 1)` at which `p₁ᶻ = p₁ⱽ` on `C₁`.
///
/// Near either modulus the root that switches moves like a cube root of
/// `k − k₁`, so an `f64` modulus leaves `|p₁ᶻ − p₁ⱽ|` near `1e-5`. The
/// quad-double values pin the gap below [`CRITICAL_GAP_TOL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalModuli {
    pub k1: f64,
    pub k0: f64,
    pub k1_qd: Qd,
    pub k0_qd: Qd,
}

/// Target `|p₁ᶻ − p₁ⱽ|` for the quad-double refinement.
pub const CRITICAL_GAP_TOL: f64 = 1e-10;

fn gap_in(ev: &Evaluator) -> f64 {
    match (p1_z_in(ev), p1_v_in(ev, Stratum::C1)) {
        (Ok(z), Ok(v)) => z.x - v.x,
        _ => f64::NAN,
    }
}

fn gap(k: f64) -> f64 {
    gap_in(&Evaluator::new(k))
}

/// Bisection in quad-double on `[lo, hi]`, which must bracket a sign
/// change of the gap.
fn refine(lo: f64, hi: f64) -> Result<Qd> {
    let (mut lo, mut hi) = (Qd::from(lo), Qd::from(hi));
    let g_lo = gap_in(&Evaluator::with_modulus(lo));
    if g_lo.signum() == gap_in(&Evaluator::with_modulus(hi)).signum() {
        return Err(Error::NoBracket {
            what: "critical modulus",
            lo: lo.to_f64(),
            hi: hi.to_f64(),
        });
    }
    for _ in 0..160 {
        let mid = (lo + hi) * Qd::from(0.5);
        let g = gap_in(&Evaluator::with_modulus(mid));
        if g.abs() < CRITICAL_GAP_TOL {
            return Ok(mid);
        }
        if g.signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * Qd::from(0.5))
}

pub fn critical_moduli() -> Result<CriticalModuli> {
    let mut found = Vec::new();
    let grid: Vec<f64> = (5..=99).map(|i| i as f64 * 0.01).collect();
    let mut prev = (grid[0], gap(grid[0]));
    for &k in &grid[1..] {
        let g = gap(k);
        if prev.1.signum() != g.signum() {
            let k = roots::brent(gap, prev.0, k, 1e-11, "critical modulus")?.x;
            let q = refine(k - 1e-10, k + 1e-10)?;
            found.push((q.to_f64(), q));
        }
        prev = (k, g);
    }
    match found.as_slice() {
        [(k1, k1_qd), (k0, k0_qd)] => Ok(CriticalModuli {
            k1: *k1,
            k0: *k0,
            k1_qd: *k1_qd,
            k0_qd: *k0_qd,
        }),
        _ => Err(Error::NoBracket {
            what: "critical moduli",
            lo: 0.05,
            hi: 0.99,
        }),
    }
}

/// `t¹_max(λ)`; `+∞` off `C₁ ∪ C₂ ∪ C₆` and as `k → 1`.
pub fn t_max1(l: &Covector) -> Result<MaxwellResult> {
    match classify(l) {
        Stratum::C1 => {
            let e = to_elliptic(l)?;
            if e.k > K_MAX {
                return Ok(MaxwellResult::INFINITE);
            }
            let m = Modulus::new(e.k)?;
            let z = p1_z(m)?;
            let v = p1_v(m, Stratum::C1)?;
            let r = if z.x <= v.x { z } else { v };
            Ok(MaxwellResult::from_root(2.0 / e.alpha.sqrt(), &r))
        }
        Stratum::C2 => {
            let e = to_elliptic(l)?;
            if e.k > K_MAX {
                return Ok(MaxwellResult::INFINITE);
            }
            if e.k < K_ROTATING_MIN {
                let p = p1_v0();
                return Ok(MaxwellResult {
                    t_max: 2.0 * e.k / e.alpha.sqrt() * p,
                    root_p: Some(p),
                    bracket: None,
                    residual: 0.0,
                });
            }
            let v = p1_v(Modulus::new(e.k)?, Stratum::C2)?;
            Ok(MaxwellResult::from_root(2.0 * e.k / e.alpha.sqrt(), &v))
        }
        Stratum::C6 => {
            let p = p1_v0();
            Ok(MaxwellResult {
                t_max: 4.0 / l.c.abs() * p,
                root_p: Some(p),
                bracket: Some((FRAC_PI_2, PI)),
                residual: closed_form::fv0(p).abs(),
            })
        }
        _ => Ok(MaxwellResult::INFINITE),
    }
}
