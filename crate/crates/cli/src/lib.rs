//! Command-line front-end for the `myller` library.
//!
//! Curves travel as `s,rx,ry,rz,xix,xiy,xiz` text, invariant
//! specifications as TOML, and reports as JSON with fixed-precision floats.
//! Exit codes: 0 on success, 1 when the input violates an invariant, 2 on
//! I/O, parse or usage failures.

// `!(x >= floor)` is deliberate: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod curve_file;
pub mod error;
pub mod report;
pub mod spec_file;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::{Rotation3, Vector3};

use myller::classify::DEFAULT_TOL;
use myller::residuals::{Mode, OdeKind};
use myller::{FramePose, RigidMotion};

pub use error::{CliError, CliResult};

/// Default normalized residual tolerance in exact-substitution mode.
pub const EXACT_RESIDUAL_TOL: f64 = 1e-6;
/// Default normalized residual tolerance in finite-difference mode.
pub const FD_RESIDUAL_TOL: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(
    name = "myller",
    version,
    about = "Versor fields along curves: invariants, helix tests, synthesis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Finite differences of the sampled target.
    Fd,
    /// Derivatives through the moving equations.
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fd => Mode::FiniteDifference,
            ModeArg::Exact => Mode::ExactSubstitution,
        }
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"))?;
        if !o.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(out)
}

fn parse_kind(s: &str) -> Result<OdeKind, String> {
    s.parse().map_err(|e: myller::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frenet-type and alternative invariants of a sampled curve.
    Analyze {
        /// Curve file.
        input: PathBuf,
        /// Directory receiving one `s,value` file per invariant.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Helix verdicts, angles and axes.
    Classify {
        input: PathBuf,
        /// Constancy tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrates a curve from its invariants.
    Synthesize {
        /// Specification file; alternatively use --preset.
        #[arg(required_unless_present = "preset")]
        spec: Option<PathBuf>,
        /// Named preset such as "slant P=1 Q=0.25", on the default grid.
        #[arg(long, conflicts_with = "spec")]
        preset: Option<String>,
        /// Curve output path; a report is written to `<out>.report.json`.
        #[arg(long)]
        out: PathBuf,
        /// Initial point `x,y,z`.
        #[arg(long, value_parser = parse_triple)]
        origin: Option<[f64; 3]>,
        /// Rotation of the initial frame as an axis-angle vector `x,y,z` in radians.
        #[arg(long, value_parser = parse_triple)]
        rotation: Option<[f64; 3]>,
    },
    /// Residuals of the characterizing third-order equations.
    Residuals {
        input: PathBuf,
        /// Comma-separated kinds; all twelve when absent.
        #[arg(long, value_delimiter = ',', value_parser = parse_kind)]
        kinds: Vec<OdeKind>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Normalized residual tolerance; 1e-6 for exact, 1e-3 for fd.
        #[arg(long)]
        tol: Option<f64>,
        /// Constancy tolerance for the verdicts compared against.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        classify_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn pose(origin: Option<[f64; 3]>, rotation: Option<[f64; 3]>) -> FramePose {
    let rot = Rotation3::new(Vector3::from(rotation.unwrap_or_default()));
    let g = RigidMotion::new(rot, Vector3::from(origin.unwrap_or_default()));
    FramePose::identity().moved(&g)
}

/// Executes one parsed command line.
pub fn run(cli: &Cli) -> CliResult<()> {
    let digits = report::digits_from_env()?;
    match &cli.command {
        Command::Analyze { input, plot, out } => commands::analyze(input, plot.as_deref(), out.as_deref(), digits),
        Command::Classify { input, tol, out } => commands::classify_cmd(input, *tol, out.as_deref(), digits),
        Command::Synthesize {
            spec,
            preset,
            out,
            origin,
            rotation,
        } => {
            let source = match (spec, preset) {
                (Some(path), _) => commands::SpecSource::File(path.clone()),
                (None, Some(p)) => commands::SpecSource::Preset(p.clone()),
                (None, None) => return Err(CliError::Usage("give a spec file or --preset".into())),
            };
            commands::synthesize_cmd(&source, &pose(*origin, *rotation), out, digits)
        }
        Command::Residuals {
            input,
            kinds,
            mode,
            tol,
            classify_tol,
            out,
        } => {
            let kinds: Vec<OdeKind> = if kinds.is_empty() {
                OdeKind::ALL.to_vec()
            } else {
                kinds.clone()
            };
            let residual_tol = tol.unwrap_or(match mode {
                ModeArg::Exact => EXACT_RESIDUAL_TOL,
                ModeArg::Fd => FD_RESIDUAL_TOL,
            });
            let args = commands::ResidualArgs {
                kinds: &kinds,
                mode: (*mode).into(),
                residual_tol,
                classify_tol: *classify_tol,
            };
            commands::residuals_cmd(input, &args, out.as_deref(), digits)
        }
    }
}
