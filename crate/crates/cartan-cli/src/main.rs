//! `cartan`: geodesics, Maxwell times and conjugate times on the Cartan group.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 numerical or I/O failure.

mod commands;
mod config;
mod elastica;
mod error;
mod format;
mod lambda;
mod sweep;
mod verify;

use crate::config::{Overrides, Settings};
use crate::error::{CliError, Result};
use crate::lambda::{parse_stratum, LambdaArgs};
use crate::sweep::{Range, SweepSpec};
use cartan_sr::conjugate::Method;
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "cartan",
    version,
    about = "Sub-Riemannian geodesics on the Cartan group"
)]
struct Cli {
    /// Flat `key = value` file of numerical settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    rtol: Option<f64>,
    #[arg(long, global = true)]
    atol: Option<f64>,
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    #[arg(long, global = true)]
    root_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Analytic,
    Variational,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlotFormat {
    Svg,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Elliptic,
    Flow,
    Maxwell,
    Conjugate,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Endpoint `x y z v w` of the extremal at time `t`.
    Exp {
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long)]
        t: f64,
        /// Emit CSV rows `t,x,y,z,v,w` instead of the endpoint.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// First Maxwell and conjugate times with the bound flags, as JSON.
    Conj {
        #[command(flatten)]
        lambda: LambdaArgs,
        /// Search horizon for the conjugate time.
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, value_enum, default_value = "analytic")]
        method: MethodArg,
        /// Skip the variational cross-check.
        #[arg(long)]
        no_cross_check: bool,
    },
    /// First Maxwell time, as JSON.
    Maxwell {
        #[command(flatten)]
        lambda: LambdaArgs,
        /// Print the critical moduli instead.
        #[arg(long, exclusive = true)]
        critical: bool,
    },
    /// Grid of Maxwell and conjugate times over the elliptic chart.
    Sweep {
        #[arg(long)]
        stratum: String,
        /// VALUE or LO:HI:N.
        #[arg(long)]
        k: Range,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "psi")]
        phi: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<Range>,
        #[arg(long, default_value = "1")]
        alpha: Range,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        beta: Range,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        sign: f64,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planar elastica, optionally with its reflected family.
    Elastica {
        #[command(flatten)]
        lambda: LambdaArgs,
        /// End time; defaults to the first Maxwell time.
        #[arg(long)]
        t_end: Option<f64>,
        /// Largest time step between samples; defaults to t_end/400.
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long)]
        reflections: bool,
        /// Defaults to the extension of `--out`, else SVG.
        #[arg(long, value_enum)]
        format: Option<PlotFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded invariant suites; exit 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes())
                .and_then(|_| o.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Analytic => Method::Analytic,
        MethodArg::Variational => Method::Variational,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let overrides = Overrides {
        rtol: cli.rtol,
        atol: cli.atol,
        max_steps: cli.max_steps,
        root_tol: cli.root_tol,
        horizon: match &cli.command {
            Command::Conj { horizon, .. } | Command::Sweep { horizon, .. } => *horizon,
            _ => None,
        },
    };
    let mut settings = Settings::load(cli.config.as_deref(), &overrides)?;
    match cli.command {
        Command::Exp {
            lambda,
            t,
            trace,
            steps,
        } => emit(
            &commands::exp(&lambda.covector()?, t, trace, steps, &settings)?,
            None,
        )?,
        Command::Conj {
            lambda,
            method: m,
            no_cross_check,
            ..
        } => {
            settings.cross_validate &= !no_cross_check;
            emit(
                &commands::conj(&lambda.covector()?, method(m), &settings)?,
                None,
            )?
        }
        Command::Maxwell { lambda, critical } => {
            let text = if critical {
                commands::critical()?
            } else {
                commands::maxwell(&lambda.covector()?)?
            };
            emit(&text, None)?
        }
        Command::Sweep {
            stratum,
            k,
            phi,
            psi,
            alpha,
            beta,
            sign,
            format,
            out,
            ..
        } => {
            let spec = SweepSpec {
                stratum: parse_stratum(&stratum)?,
                k,
                psi: psi.is_some(),
                phase: psi.or(phi).unwrap_or(Range {
                    lo: 0.0,
                    hi: 0.0,
                    n: 1,
                }),
                alpha,
                beta,
                sign,
            };
            let rows = sweep::run(&spec, &settings)?;
            let text = match format {
                TableFormat::Csv => sweep::to_csv(&rows),
                TableFormat::Json => sweep::to_json(&rows),
            };
            emit(&text, out.as_deref())?
        }
        Command::Elastica {
            lambda,
            t_end,
            resolution,
            reflections,
            format,
            out,
        } => {
            let l = lambda.covector()?;
            let r = commands::conj_report(
                &l,
                Method::Analytic,
                &Settings {
                    cross_validate: false,
                    ..settings
                },
            )?;
            let (t_max, t_conj) = (r.maxwell.t_max, r.conj.t_conj);
            let t_end = match t_end {
                Some(t) => t,
                None if t_max.is_finite() => t_max,
                None => {
                    return Err(CliError::usage(
                        "--t-end is required when t_max1 is infinite",
                    ))
                }
            };
            let resolution = resolution.unwrap_or(t_end / 400.0);
            let plot = elastica::build(
                &l,
                t_end,
                resolution,
                reflections,
                &[("t_max1", t_max), ("t_conj", t_conj)],
                &settings.ode,
            )?;
            let format = format.unwrap_or_else(|| match out.as_ref().and_then(|p| p.extension()) {
                Some(e) if e.eq_ignore_ascii_case("csv") => PlotFormat::Csv,
                _ => PlotFormat::Svg,
            });
            let text = match format {
                PlotFormat::Svg => elastica::to_svg(&plot),
                PlotFormat::Csv => elastica::to_csv(&plot),
            };
            emit(&text, out.as_deref())?
        }
        Command::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Elliptic => verify::Suite::Elliptic,
                SuiteArg::Flow => verify::Suite::Flow,
                SuiteArg::Maxwell => verify::Suite::Maxwell,
                SuiteArg::Conjugate => verify::Suite::Conjugate,
                SuiteArg::All => verify::Suite::All,
            };
            let checks = verify::run(suite, seed);
            emit(&verify::report(&checks), None)?;
            if !checks.iter().all(verify::Check::passed) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
