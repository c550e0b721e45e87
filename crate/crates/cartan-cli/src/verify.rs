//! Seeded invariant suites of every module, one line per invariant with the
//! worst residual found.

use cartan_sr::closed_form::{self, Evaluator};
use cartan_sr::conjugate::{self, first_conjugate_time, two_sided_check, ConjugateOptions, Method};
use cartan_sr::elliptic::{self, Modulus};
use cartan_sr::flow::{
    classify, dilate_covector, exp_map, extremal, from_elliptic, rotate_covector, to_elliptic,
    Covector, EllipticCoord, Stratum,
};
use cartan_sr::group::{dilate, rotate};
use cartan_sr::maxwell;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Elliptic,
    Flow,
    Maxwell,
    Conjugate,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "elliptic" => Suite::Elliptic,
            "flow" => Suite::Flow,
            "maxwell" => Suite::Maxwell,
            "conjugate" => Suite::Conjugate,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub worst: f64,
    pub tol: f64,
    /// Set when the check could not be evaluated.
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.worst <= self.tol
    }
}

type Probe = fn(&mut ChaCha8Rng) -> cartan_sr::Result<f64>;

fn m(k: f64) -> cartan_sr::Result<Modulus> {
    Modulus::new(k)
}

fn jacobi_identities(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let k = rng.gen_range(0.0..0.999);
        let u = rng.gen_range(-20.0..20.0);
        let j = elliptic::jacobi(u, m(k)?)?;
        worst = worst
            .max((j.sn * j.sn + j.cn * j.cn - 1.0).abs())
            .max((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs())
            .max((j.am.sin() - j.sn).abs());
    }
    Ok(worst)
}

fn amplitude_inversion(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let k = rng.gen_range(0.0..0.999);
        let kk = elliptic::complete_k(m(k)?)?;
        let u = rng.gen_range(-3.0..3.0) * kk;
        let am = elliptic::jacobi(u, m(k)?)?.am;
        worst = worst.max((elliptic::incomplete_f(am, m(k)?)? - u).abs() / kk.max(1.0));
    }
    Ok(worst)
}

fn periodicity(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let k = rng.gen_range(0.0..0.99);
        let u = rng.gen_range(-5.0..5.0);
        let kk = elliptic::complete_k(m(k)?)?;
        let a = elliptic::jacobi(u, m(k)?)?;
        let b = elliptic::jacobi(u + 4.0 * kk, m(k)?)?;
        worst = worst
            .max((a.sn - b.sn).abs())
            .max((b.am - a.am - 2.0 * PI).abs());
    }
    Ok(worst)
}

fn covector(rng: &mut ChaCha8Rng) -> cartan_sr::Result<Covector> {
    Covector::new(
        rng.gen_range(-PI..PI),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(0.0..3.0),
        rng.gen_range(-PI..PI),
    )
}

fn casimirs(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let cas = |h: &[f64]| [h[3], h[4], 0.5 * h[2] * h[2] + h[0] * h[4] - h[1] * h[3]];
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let l = covector(rng)?;
        let sol = extremal(&l, 20.0)?;
        let c0 = cas(&sol.eval(0.0));
        for i in 1..=20 {
            let c = cas(&sol.eval(i as f64));
            for n in 0..3 {
                worst = worst.max((c[n] - c0[n]).abs());
            }
        }
    }
    Ok(worst)
}

fn scale(a: [f64; 5]) -> f64 {
    1.0 + a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn equivariance(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let l = covector(rng)?;
        let t = rng.gen_range(0.5..6.0);
        let s = rng.gen_range(-PI..PI);
        let r = rng.gen_range(-0.7..0.7);
        let g = exp_map(&l, t)?;
        let a = rotate(g, s).max_abs_diff(exp_map(&rotate_covector(&l, s), t)?);
        let (ld, e) = dilate_covector(&l, r);
        let d = dilate(g, r);
        let b = d.max_abs_diff(exp_map(&ld, t * e)?);
        worst = worst
            .max(a / scale(g.to_array()))
            .max(b / scale(d.to_array()));
    }
    Ok(worst)
}

fn elliptic_round_trip(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let l = covector(rng)?;
        if !matches!(classify(&l), Stratum::C1 | Stratum::C2) {
            continue;
        }
        n += 1;
        worst = worst.max(from_elliptic(&to_elliptic(&l)?)?.max_abs_diff(&l));
    }
    Ok(worst)
}

fn elliptic_point(rng: &mut ChaCha8Rng) -> EllipticCoord {
    let phi = rng.gen_range(0.0..4.0);
    let k = rng.gen_range(0.05..0.95);
    let a = rng.gen_range(0.2..3.0);
    let b = rng.gen_range(-PI..PI);
    if rng.gen_bool(0.5) {
        EllipticCoord::c1(phi, k, a, b)
    } else {
        EllipticCoord::c2(phi, k, a, b, if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
    }
}

fn maxwell_residual(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let r = maxwell::t_max1(&from_elliptic(&elliptic_point(rng))?)?;
        worst = worst.max(r.residual);
    }
    Ok(worst)
}

fn maxwell_dilation(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let l = from_elliptic(&elliptic_point(rng))?;
        let r = rng.gen_range(-1.0..1.0);
        let (ld, e) = dilate_covector(&l, r);
        let t = maxwell::t_max1(&l)?.t_max;
        worst = worst.max((maxwell::t_max1(&ld)?.t_max - e * t).abs() / (e * t));
    }
    Ok(worst)
}

fn critical_gap(_: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let c = maxwell::critical_moduli()?;
    let mut worst = 0.0f64;
    for q in [c.k1_qd, c.k0_qd] {
        let ev = Evaluator::with_modulus(q);
        let gap = maxwell::p1_z_in(&ev)?.x - maxwell::p1_v_in(&ev, Stratum::C1)?.x;
        worst = worst.max(gap.abs());
    }
    Ok(worst)
}

fn certificates(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let a = Evaluator::new(rng.gen_range(0.0..0.999)).args(rng.gen_range(0.0..30.0));
        let x1 = closed_form::certificate_x1_c1(&a).to_f64();
        let x2 = closed_form::certificate_x2_c1(&a).to_f64();
        worst = worst.max(-x1).max(-x2);
    }
    Ok(worst)
}

/// Largest violation of `t¹_MAX ≤ t¹_conj ≤ upper`, relative to `t¹_MAX`.
fn bounds(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..40 {
        let b = two_sided_check(&from_elliptic(&elliptic_point(rng))?)?;
        let low = (b.t_max1 - b.t_conj).max(0.0);
        let high = (b.t_conj - b.upper).max(0.0);
        worst = worst.max(low.max(high) / b.t_max1);
    }
    Ok(worst)
}

fn solver_agreement(rng: &mut ChaCha8Rng) -> cartan_sr::Result<f64> {
    let mut worst = 0.0f64;
    let opts = ConjugateOptions {
        cross_validate: false,
        ..ConjugateOptions::default()
    };
    for _ in 0..8 {
        let l = from_elliptic(&elliptic_point(rng))?;
        let a = first_conjugate_time(&l, &opts)?.t_conj;
        let v = first_conjugate_time(
            &l,
            &ConjugateOptions {
                method: Method::Variational,
                ..opts
            },
        )?
        .t_conj;
        worst = worst.max((a - v).abs());
    }
    Ok(worst)
}

const CHECKS: &[(&str, &str, f64, Probe)] = &[
    ("elliptic", "jacobi identities", 1e-13, jacobi_identities),
    ("elliptic", "F(am u) = u", 1e-11, amplitude_inversion),
    ("elliptic", "4K periodicity", 1e-10, periodicity),
    ("flow", "casimir drift", 1e-9, casimirs),
    (
        "flow",
        "rotation and dilation equivariance",
        1e-9,
        equivariance,
    ),
    (
        "flow",
        "elliptic chart round trip",
        1e-10,
        elliptic_round_trip,
    ),
    ("maxwell", "root residual", 1e-10, maxwell_residual),
    ("maxwell", "dilation scaling", 1e-9, maxwell_dilation),
    (
        "maxwell",
        "critical moduli gap",
        maxwell::CRITICAL_GAP_TOL,
        critical_gap,
    ),
    ("conjugate", "certificates nonnegative", 0.0, certificates),
    (
        "conjugate",
        "two-sided bounds",
        conjugate::BOUND_TOL,
        bounds,
    ),
    (
        "conjugate",
        "analytic vs variational",
        conjugate::CROSS_CHECK_TOL,
        solver_agreement,
    ),
];

/// Runs the selected suites; each check gets its own generator derived
/// from `seed` so suites are reproducible in isolation.
pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    CHECKS
        .iter()
        .enumerate()
        .filter(|(_, (s, ..))| suite == Suite::All || Suite::parse(s) == Some(suite))
        .map(|(i, &(s, name, tol, probe))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let (worst, error) = match probe(&mut rng) {
                Ok(w) => (w, None),
                Err(e) => (f64::NAN, Some(e.to_string())),
            };
            Check {
                suite: s,
                name,
                worst,
                tol,
                error,
            }
        })
        .collect()
}

pub fn report(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        match &c.error {
            Some(e) => writeln!(out, "{:<10} {:<36} {status}  error: {e}", c.suite, c.name),
            None => writeln!(
                out,
                "{:<10} {:<36} {status}  worst {:.2e} (tol {:.0e})",
                c.suite, c.name, c.worst, c.tol
            ),
        }
        .unwrap();
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "{} checks, {failed} failed", checks.len()).unwrap();
    out
}
