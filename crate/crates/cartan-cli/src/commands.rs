//! Single-point queries: `exp`, `conj` and `maxwell`.

use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::format::{json_num, json_opt, num};
use cartan_sr::conjugate::{self, first_conjugate_time, ConjugateResult, Method};
use cartan_sr::flow::{classify, extremal_with, to_elliptic, Covector, Stratum};
use cartan_sr::maxwell::{self, MaxwellResult, K_MAX};
use serde_json::{json, Value};
use std::fmt::Write;

/// `x y z v w` at `t`, or with `trace` the CSV rows `t,x,y,z,v,w` at
/// `steps + 1` equally spaced instants.
pub fn exp(l: &Covector, t: f64, trace: bool, steps: usize, s: &Settings) -> Result<String> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(CliError::usage(format!(
            "--t must be finite and nonnegative, got {t}"
        )));
    }
    if steps == 0 {
        return Err(CliError::usage("--steps must be positive"));
    }
    let sol = extremal_with(l, t, &s.ode)?;
    let mut out = String::new();
    if trace {
        out.push_str("t,x,y,z,v,w\n");
        for i in 0..=steps {
            let ti = t * i as f64 / steps as f64;
            let y = sol.eval(ti);
            let row: Vec<String> = std::iter::once(ti)
                .chain(y[5..].iter().copied())
                .map(num)
                .collect();
            writeln!(out, "{}", row.join(",")).unwrap();
        }
    } else {
        let y = sol.eval(t);
        let row: Vec<String> = y[5..].iter().map(|&x| num(x)).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    Ok(out)
}

/// Upper bound of `t¹_conj` per stratum; `t¹_MAX` on `C₆` and `+∞` where
/// both times are infinite.
fn upper_bound(l: &Covector, t_max: f64) -> Result<f64> {
    match classify(l) {
        Stratum::C1 | Stratum::C2 => {
            let e = to_elliptic(l)?;
            if e.k > K_MAX {
                Ok(f64::INFINITY)
            } else {
                Ok(conjugate::upper_bound(&e)?)
            }
        }
        Stratum::C6 => Ok(t_max),
        _ => Ok(f64::INFINITY),
    }
}

/// The conjugate-time report of one covector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjReport {
    pub stratum: Stratum,
    pub maxwell: MaxwellResult,
    pub conj: ConjugateResult,
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

pub fn conj_report(l: &Covector, method: Method, s: &Settings) -> Result<ConjReport> {
    let m = maxwell::t_max1(l)?;
    let c = first_conjugate_time(l, &s.conjugate_options(method))?;
    let upper = upper_bound(l, m.t_max)?;
    Ok(ConjReport {
        stratum: classify(l),
        maxwell: m,
        conj: c,
        upper,
        lower_ok: c.t_conj >= m.t_max - conjugate::BOUND_TOL,
        upper_ok: c.t_conj <= upper + conjugate::BOUND_TOL,
    })
}

fn bracket(b: Option<(f64, f64)>) -> Value {
    match b {
        Some((lo, hi)) => json!([json_num(lo), json_num(hi)]),
        None => Value::Null,
    }
}

pub fn conj_json(r: &ConjReport) -> Value {
    json!({
        "stratum": r.stratum.name(),
        "t_max1": json_num(r.maxwell.t_max),
        "t_conj": json_num(r.conj.t_conj),
        "upper": json_num(r.upper),
        "lower_ok": r.lower_ok,
        "upper_ok": r.upper_ok,
        "method": r.conj.method.name(),
        "residual": json_num(r.conj.residual),
        "bracket": bracket(r.conj.bracket),
        "t_variational": json_opt(r.conj.t_variational),
    })
}

pub fn conj(l: &Covector, method: Method, s: &Settings) -> Result<String> {
    Ok(format!("{}\n", conj_json(&conj_report(l, method, s)?)))
}

pub fn maxwell(l: &Covector) -> Result<String> {
    let m = maxwell::t_max1(l)?;
    let v = json!({
        "stratum": classify(l).name(),
        "t_max1": json_num(m.t_max),
        "root_p": json_opt(m.root_p),
        "bracket": bracket(m.bracket),
        "residual": json_num(m.residual),
    });
    Ok(format!("{v}\n"))
}

pub fn critical() -> Result<String> {
    let c = maxwell::critical_moduli()?;
    let v = json!({
        "k1": json_num(c.k1),
        "k0": json_num(c.k0),
    });
    Ok(format!("{v}\n"))
}
