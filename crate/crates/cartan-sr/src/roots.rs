//! Bracketed scalar root finding.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
    pub residual: f64,
}

/// Brent's method on a bracket with `f(a)·f(b) ≤ 0`.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    what: &'static str,
) -> Result<Root> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    let (lo0, hi0) = (a.min(b), a.max(b));
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            lo: lo0,
            hi: hi0,
            residual: 0.0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            lo: lo0,
            hi: hi0,
            residual: 0.0,
        });
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NoBracket {
            what,
            lo: lo0,
            hi: hi0,
        });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            let (lo, hi) = (b.min(c), b.max(c));
            return Ok(Root {
                x: b,
                lo,
                hi,
                residual: fb.abs(),
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    let (lo, hi) = (b.min(c), b.max(c));
    Ok(Root {
        x: b,
        lo,
        hi,
        residual: fb.abs(),
    })
}

/// First sub-interval of `[a, b]` (split into `panels` pieces) on which `f`
/// changes sign.
pub fn first_sign_change<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
) -> Option<(f64, f64)> {
    let h = (b - a) / panels as f64;
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=panels {
        let x1 = if i == panels { b } else { a + i as f64 * h };
        let f1 = f(x1);
        if f0 == 0.0 || f0.signum() != f1.signum() {
            return Some((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    None
}

/// Sign-scan followed by Brent: the first root of `f` in `[a, b]`.
pub fn first_root<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    tol: f64,
    what: &'static str,
) -> Result<Root> {
    let (lo, hi) =
        first_sign_change(&mut f, a, b, panels).ok_or(Error::NoBracket { what, lo: a, hi: b })?;
    brent(f, lo, hi, tol, what)
}
