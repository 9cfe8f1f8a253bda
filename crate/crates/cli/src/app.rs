//! Argument parsing and dispatch, separated from process I/O so that exit
//! codes and output can be tested in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use nalgebra::Vector3;
use statsym_core::qubit::BlochVector;

use crate::{
    run_check, run_scenario_file, run_spin, run_tetrahedron, run_triangle, CliError, ScenarioReport, SpinConfig,
    TetrahedronConfig,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Result of one invocation: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "statsym",
    version,
    about = "Finite statistical-symmetry checks for qubit quantum mechanics"
)]
struct Args {
    /// Print the report as JSON instead of a table
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every random input
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Tolerance for closed-form comparisons in `spin` and `tetrahedron`
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Permissible parameters of the two-coloured triangle
    Triangle,
    /// Born probabilities and a noisy spin measurement
    Spin {
        /// Prepared direction (normalized)
        #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
        a: Option<BlochVector>,
        /// Measured direction (normalized)
        #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
        b: Option<BlochVector>,
        /// Level of the test
        #[arg(long)]
        alpha: Option<f64>,
        /// Power of the test
        #[arg(long)]
        beta: Option<f64>,
        /// Posterior error probability after a reported +1
        #[arg(long)]
        p1: Option<f64>,
    },
    /// Decision probability between faces of a regular tetrahedron
    Tetrahedron {
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Full invariant suite
    Check,
    /// Checks for a JSON file with optional group, model and effect sections
    Scenario { file: PathBuf },
}

fn parse_direction(s: &str) -> Result<BlochVector, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [x, y, z] = parts[..] else {
        return Err(format!("expected x,y,z, got {} components", parts.len()));
    };
    BlochVector::normalized(Vector3::new(x, y, z)).map_err(|e| e.to_string())
}

fn run(args: &Args) -> Result<ScenarioReport, CliError> {
    match &args.command {
        Command::Triangle => Ok(run_triangle()),
        Command::Spin { a, b, alpha, beta, p1 } => {
            let d = SpinConfig::default();
            let cfg = SpinConfig {
                a: a.unwrap_or(d.a),
                b: b.unwrap_or(d.b),
                alpha: alpha.unwrap_or(d.alpha),
                beta: beta.unwrap_or(d.beta),
                p1: *p1,
                tol: args.tol.unwrap_or(d.tol),
            };
            Ok(run_spin(&cfg)?)
        }
        Command::Tetrahedron { alpha, beta } => {
            let cfg = TetrahedronConfig {
                alpha: *alpha,
                beta: *beta,
                seed: args.seed,
                tol: args.tol.unwrap_or(TetrahedronConfig::default().tol),
            };
            Ok(run_tetrahedron(&cfg)?)
        }
        Command::Check => Ok(run_check(args.seed)),
        Command::Scenario { file } => run_scenario_file(file, args.seed),
    }
}

pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let usage = |stderr: String| Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr,
    };
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) if e.use_stderr() => return usage(e.render().to_string()),
        Err(e) => {
            return Outcome {
                code: EXIT_PASS,
                stdout: e.render().to_string(),
                stderr: String::new(),
            }
        }
    };
    if let Some(t) = args.tol {
        if !(t.is_finite() && t >= 0.0) {
            return usage("error: --tol must be a nonnegative number\n".into());
        }
    }
    match run(&args) {
        Ok(report) => {
            let stdout = if args.json {
                format!("{}\n", report.to_json())
            } else {
                report.to_table()
            };
            let code = if report.all_passed() { EXIT_PASS } else { EXIT_FAIL };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => usage(format!("error: {e}\n")),
    }
}
