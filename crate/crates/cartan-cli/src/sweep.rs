//! Grid sweeps over the elliptic chart of `C₁` or `C₂`.
//!
//! Rows are ordered by `k`, then phase, then `α`, then `β`. CSV columns:
//! `stratum,k,phi,alpha,beta,c,t_max1,t_conj,lower_ok,upper_ok,error`, where
//! `phi` is the phase as given (`φ`, or `ψ` with `--psi`). A failed node
//! keeps its parameters and carries the message in `error`.

use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::format::{json_num, num};
use cartan_sr::conjugate::{first_zero_with, upper_bound, ConjugateSolver, BOUND_TOL};
use cartan_sr::flow::{from_elliptic, EllipticCoord, Stratum};
use cartan_sr::maxwell;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::str::FromStr;

/// `value` or `lo:hi:n` with `n ≥ 2` evenly spaced nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range {
    pub fn nodes(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        (0..self.n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Range, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let f = |x: &str| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("not a finite number: {x:?}"))
        };
        match parts.as_slice() {
            [v] => {
                let v = f(v)?;
                Ok(Range { lo: v, hi: v, n: 1 })
            }
            [lo, hi, n] => {
                let n: usize = n.trim().parse().map_err(|_| format!("bad count {n:?}"))?;
                if n < 2 {
                    return Err(format!("grid count must be at least 2, got {n}"));
                }
                Ok(Range {
                    lo: f(lo)?,
                    hi: f(hi)?,
                    n,
                })
            }
            _ => Err(format!("expected VALUE or LO:HI:N, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub stratum: Stratum,
    pub k: Range,
    pub phase: Range,
    /// The phase is `ψ` rather than `φ`.
    pub psi: bool,
    pub alpha: Range,
    pub beta: Range,
    pub sign: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.stratum, Stratum::C1 | Stratum::C2) {
            return Err(CliError::usage("sweeps cover C1 and C2"));
        }
        let inside = |r: &Range, ok: &dyn Fn(f64) -> bool| ok(r.lo) && ok(r.hi);
        if !inside(&self.k, &|k| 0.0 < k && k < 1.0) {
            return Err(CliError::usage("k range must lie in (0, 1)"));
        }
        if !inside(&self.alpha, &|a| a > 0.0) {
            return Err(CliError::usage("alpha range must be positive"));
        }
        if self.sign != 1.0 && self.sign != -1.0 {
            return Err(CliError::usage("--sign must be 1 or -1"));
        }
        Ok(())
    }

    fn coord(&self, k: f64, phase: f64, alpha: f64, beta: f64) -> EllipticCoord {
        let phi = if self.psi {
            match self.stratum {
                Stratum::C2 => phase * k / alpha.sqrt(),
                _ => phase / alpha.sqrt(),
            }
        } else {
            phase
        };
        match self.stratum {
            Stratum::C2 => EllipticCoord::c2(phi, k, alpha, beta, self.sign),
            _ => EllipticCoord::c1(phi, k, alpha, beta),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub stratum: Stratum,
    pub k: f64,
    pub phase: f64,
    pub alpha: f64,
    pub beta: f64,
    pub c: Option<f64>,
    pub outcome: std::result::Result<Outcome, String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub t_max1: f64,
    pub t_conj: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

fn node(
    solver: &mut ConjugateSolver,
    e: &EllipticCoord,
    s: &Settings,
) -> cartan_sr::Result<(f64, Outcome)> {
    let l = from_elliptic(e)?;
    let t_max1 = maxwell::t_max1(&l)?.t_max;
    let upper = upper_bound(e)?;
    let t_cap = s.horizon.unwrap_or(1.5 * upper.max(t_max1));
    let t_conj = first_zero_with(solver, e, t_cap)?
        .map(|r| r.t_conj)
        .unwrap_or(f64::INFINITY);
    Ok((
        l.c,
        Outcome {
            t_max1,
            t_conj,
            lower_ok: t_conj >= t_max1 - BOUND_TOL,
            upper_ok: t_conj <= upper + BOUND_TOL,
        },
    ))
}

fn rows_for_k(spec: &SweepSpec, k: f64, s: &Settings) -> Vec<Row> {
    let mut solver = ConjugateSolver::new(spec.stratum, k).map(|mut sv| {
        sv.root_tol = s.root_tol;
        sv
    });
    let mut rows = Vec::new();
    for phase in spec.phase.nodes() {
        for alpha in spec.alpha.nodes() {
            for beta in spec.beta.nodes() {
                let e = spec.coord(k, phase, alpha, beta);
                let res = match &mut solver {
                    Ok(sv) => node(sv, &e, s),
                    Err(err) => Err(err.clone()),
                };
                let (c, outcome) = match res {
                    Ok((c, o)) => (Some(c), Ok(o)),
                    Err(err) => (from_elliptic(&e).ok().map(|l| l.c), Err(err.to_string())),
                };
                rows.push(Row {
                    stratum: spec.stratum,
                    k,
                    phase,
                    alpha,
                    beta,
                    c,
                    outcome,
                });
            }
        }
    }
    rows
}

/// All grid nodes in the fixed order; `k` values run in parallel.
pub fn run(spec: &SweepSpec, s: &Settings) -> Result<Vec<Row>> {
    spec.validate()?;
    let chunks: Vec<Vec<Row>> = spec
        .k
        .nodes()
        .par_iter()
        .map(|&k| rows_for_k(spec, k, s))
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

pub const CSV_HEADER: &str = "stratum,k,phi,alpha,beta,c,t_max1,t_conj,lower_ok,upper_ok,error";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let mut f = vec![
            r.stratum.name().to_string(),
            num(r.k),
            num(r.phase),
            num(r.alpha),
            num(r.beta),
            r.c.map(num).unwrap_or_default(),
        ];
        match &r.outcome {
            Ok(o) => f.extend([
                num(o.t_max1),
                num(o.t_conj),
                o.lower_ok.to_string(),
                o.upper_ok.to_string(),
                String::new(),
            ]),
            Err(e) => f.extend([
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                csv_field(e),
            ]),
        }
        out.push_str(&f.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(rows: &[Row]) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let (t_max1, t_conj, lower_ok, upper_ok, error) = match &r.outcome {
                Ok(o) => (
                    json_num(o.t_max1),
                    json_num(o.t_conj),
                    Value::Bool(o.lower_ok),
                    Value::Bool(o.upper_ok),
                    Value::Null,
                ),
                Err(e) => (
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::String(e.clone()),
                ),
            };
            json!({
                "stratum": r.stratum.name(),
                "k": json_num(r.k),
                "phi": json_num(r.phase),
                "alpha": json_num(r.alpha),
                "beta": json_num(r.beta),
                "c": r.c.map(json_num).unwrap_or(Value::Null),
                "t_max1": t_max1,
                "t_conj": t_conj,
                "lower_ok": lower_ok,
                "upper_ok": upper_ok,
                "error": error,
            })
        })
        .collect();
    format!("{}\n", Value::Array(rows))
}
