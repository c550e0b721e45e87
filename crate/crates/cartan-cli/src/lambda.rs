//! Covector input in either the `(θ, c, α, β)` chart or the elliptic chart
//! `(stratum, φ or ψ, k, α, β, sign)`.

use crate::error::{CliError, Result};
use cartan_sr::flow::{from_elliptic, Covector, EllipticCoord, Stratum};
use clap::Args;

#[derive(Debug, Clone, Default, Args)]
pub struct LambdaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Elliptic chart: C1 or C2 (C3 accepts `--phi` only).
    #[arg(long)]
    pub stratum: Option<String>,
    /// Pendulum time.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Phase `√α·φ/k` on C2.
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    /// Direction of rotation on C2 and C3.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub sign: f64,
}

fn need(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| CliError::usage(format!("--{name} is required")))
}

pub fn parse_stratum(s: &str) -> Result<Stratum> {
    Stratum::parse(s).ok_or_else(|| CliError::usage(format!("unknown stratum {s:?}")))
}

impl LambdaArgs {
    pub fn covector(&self) -> Result<Covector> {
        let alpha = need(self.alpha, "alpha")?;
        if !(alpha >= 0.0) {
            return Err(CliError::usage("--alpha must be nonnegative"));
        }
        let beta = self.beta.unwrap_or(0.0);
        let Some(name) = &self.stratum else {
            if self.k.is_some() || self.phi.is_some() || self.psi.is_some() {
                return Err(CliError::usage("--k, --phi and --psi need --stratum"));
            }
            let l = Covector::new(need(self.theta, "theta")?, need(self.c, "c")?, alpha, beta)?;
            return Ok(l);
        };
        if self.theta.is_some() || self.c.is_some() {
            return Err(CliError::usage(
                "--theta and --c cannot be combined with --stratum",
            ));
        }
        let st = parse_stratum(name)?;
        let k = need(self.k, "k")?;
        if !(alpha > 0.0) {
            return Err(CliError::usage(
                "--alpha must be positive in the elliptic chart",
            ));
        }
        if self.sign != 1.0 && self.sign != -1.0 {
            return Err(CliError::usage("--sign must be 1 or -1"));
        }
        let e = match (st, self.phi, self.psi) {
            (_, Some(_), Some(_)) => return Err(CliError::usage("give --phi or --psi, not both")),
            (Stratum::C1, Some(phi), None) => EllipticCoord::c1(phi, k, alpha, beta),
            (Stratum::C1, None, Some(psi)) => EllipticCoord::c1(psi / alpha.sqrt(), k, alpha, beta),
            (Stratum::C2, Some(phi), None) => EllipticCoord::c2(phi, k, alpha, beta, self.sign),
            (Stratum::C2, None, Some(psi)) => {
                EllipticCoord::c2_from_psi(psi, k, alpha, beta, self.sign)
            }
            (Stratum::C1 | Stratum::C2, None, None) => {
                return Err(CliError::usage("--phi or --psi is required"))
            }
            (other, _, _) => {
                return Err(CliError::usage(format!(
                    "the elliptic chart covers C1 and C2, not {other}"
                )))
            }
        };
        if !(0.0 < k && k < 1.0) {
            return Err(CliError::usage(format!("--k must lie in (0, 1), got {k}")));
        }
        Ok(from_elliptic(&e)?)
    }
}
