// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eitfwm_cli::scenario::ValidateBlock;
use eitfwm_cli::validate::{reference_cases, validate_cases};
use eitfwm_cli::{load_preset, load_scenario, run, CliError, Overrides, Result, Scenario};

#[derive(Parser)]
#[command(
    name = "eitfwm",
    version,
    about = "Double-lambda EIT with four-wave mixing: spectra, pulses, checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a built-in preset.
    Run(RunArgs),
    /// Compare the closed-form solution with direct integration.
    Validate {
        #[arg(long, default_value_t = eitfwm_cli::scenario::DEFAULT_VALIDATE_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = eitfwm_cli::scenario::DEFAULT_VALIDATE_TOL)]
        tol: f64,
    },
    /// Print the derived parameters of a scenario.
    Derive {
        #[arg(required_unless_present = "preset")]
        scenario: Option<PathBuf>,
        #[arg(long, conflicts_with = "scenario")]
        preset: Option<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(required_unless_present = "preset")]
    scenario: Option<PathBuf>,
    #[arg(long, conflicts_with = "scenario")]
    preset: Option<String>,
    /// Replace the seed fraction list with a single value.
    #[arg(long)]
    seed_fraction: Option<f64>,
    /// Optical depth 2d.
    #[arg(long)]
    two_d: Option<f64>,
    /// Control Rabi frequency Ω/2π in Hz.
    #[arg(long)]
    rabi_hz: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(path: Option<PathBuf>, preset: Option<String>, overrides: &Overrides) -> Result<Scenario> {
    match (path, preset) {
        (Some(p), _) => load_scenario(&p, overrides),
        (None, Some(name)) => load_preset(&name, overrides),
        (None, None) => Err(CliError::config("give a scenario file or --preset NAME")),
    }
}

fn execute(cli: Cli) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Run(a) => {
            let overrides = Overrides {
                seed_fraction: a.seed_fraction,
                two_d: a.two_d,
                rabi_hz: a.rabi_hz,
                out: a.out,
            };
            let scenario = load(a.scenario, a.preset, &overrides)?;
            run(&scenario, &mut out)?;
        }
        Command::Validate { steps, tol } => {
            let block = ValidateBlock {
                steps,
                tol,
                ..ValidateBlock::default()
            };
            if steps < eitfwm_core::propagation::MIN_STEPS || !(tol > 0.0) {
                return Err(CliError::config(format!(
                    "--steps must be at least {} and --tol positive",
                    eitfwm_core::propagation::MIN_STEPS
                )));
            }
            let report = validate_cases(&reference_cases(), &block)?;
            if let Some(w) = report.worst() {
                let _ = writeln!(
                    out,
                    "{} points, max relative error {:.3e} at 2d = {}, f = {:.4}, δ/2π = {:.1} Hz, ω/2π = {:.1} Hz (tolerance {:.1e})",
                    report.points.len(),
                    report.max_error,
                    w.case.medium.two_d,
                    w.case.seed_fraction,
                    eitfwm_core::to_hz(w.delta),
                    eitfwm_core::to_hz(w.omega),
                    report.tol
                );
            }
            report.into_result()?;
        }
        Command::Derive { scenario, preset } => {
            let s = load(scenario, preset, &Overrides::default())?;
            let d = s.derived().map_err(|source| CliError::Compute {
                context: "derived parameters".into(),
                source,
            })?;
            let text =
                toml::to_string(&eitfwm_cli::runner::derived_table(&d)).map_err(|e| CliError::config(e.to_string()))?;
            let _ = write!(out, "{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eitfwm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
