//! Numerical settings from an optional flat `key = value` file, overridden
//! by command-line flags.
//!
//! Recognized keys: `rtol`, `atol`, `max_steps`, `h_min`, `root_tol`,
//! `horizon`, `cross_validate`. Blank lines and lines starting with `#` are
//! ignored.

use crate::error::{CliError, Result};
use cartan_sr::conjugate::{self, ConjugateOptions, Method};
use cartan_sr::ode::OdeOptions;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub ode: OdeOptions,
    pub root_tol: f64,
    pub horizon: Option<f64>,
    pub cross_validate: bool,
}

impl Default for Settings {
    fn default() -> Settings {
        Settings {
            ode: OdeOptions::default(),
            root_tol: conjugate::ROOT_TOL,
            horizon: None,
            cross_validate: true,
        }
    }
}

/// Flag overrides; `None` keeps the configured value.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub max_steps: Option<usize>,
    pub root_tol: Option<f64>,
    pub horizon: Option<f64>,
}

fn positive(key: &str, v: &str) -> Result<f64> {
    match v.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(CliError::usage(format!(
            "{key}: expected a positive number, got {v:?}"
        ))),
    }
}

impl Settings {
    pub fn parse(text: &str) -> Result<Settings> {
        let mut s = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "config line {}: expected key = value",
                    n + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "rtol" => s.ode.rtol = positive(key, value)?,
                "atol" => s.ode.atol = positive(key, value)?,
                "h_min" => s.ode.h_min = positive(key, value)?,
                "max_steps" => {
                    s.ode.max_steps = value.parse().map_err(|_| {
                        CliError::usage(format!("max_steps: expected an integer, got {value:?}"))
                    })?
                }
                "root_tol" => s.root_tol = positive(key, value)?,
                "horizon" => s.horizon = Some(positive(key, value)?),
                "cross_validate" => {
                    s.cross_validate = value.parse().map_err(|_| {
                        CliError::usage(format!(
                            "cross_validate: expected true or false, got {value:?}"
                        ))
                    })?
                }
                other => {
                    return Err(CliError::usage(format!(
                        "config line {}: unknown key {other:?}",
                        n + 1
                    )))
                }
            }
        }
        Ok(s)
    }

    pub fn load(path: Option<&Path>, o: &Overrides) -> Result<Settings> {
        let mut s = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                    path: p.display().to_string(),
                    source,
                })?;
                Settings::parse(&text)?
            }
            None => Settings::default(),
        };
        s.ode.rtol = o.rtol.unwrap_or(s.ode.rtol);
        s.ode.atol = o.atol.unwrap_or(s.ode.atol);
        s.ode.max_steps = o.max_steps.unwrap_or(s.ode.max_steps);
        s.root_tol = o.root_tol.unwrap_or(s.root_tol);
        s.horizon = o.horizon.or(s.horizon);
        for (name, v) in [
            ("rtol", s.ode.rtol),
            ("atol", s.ode.atol),
            ("root_tol", s.root_tol),
        ] {
            if !(v > 0.0) {
                return Err(CliError::usage(format!("{name} must be positive")));
            }
        }
        Ok(s)
    }

    pub fn conjugate_options(&self, method: Method) -> ConjugateOptions {
        ConjugateOptions {
            t_cap: self.horizon,
            cross_validate: self.cross_validate,
            method,
            ode: self.ode,
            root_tol: self.root_tol,
        }
    }
}
