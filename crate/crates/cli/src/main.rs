//! Command-line surface for the twistbeam model: single-point reports,
//! `(beta, t)` sweeps to CSV, the randomized verification suite, and
//! mixture Monte Carlo experiments.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
//! 3 decomposition infeasible, 4 config parse error.

// `!(x > 0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod decompose;
mod point;
mod sweep;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use point::{evaluate_point, Physical};
use sweep::{GridSpec, SweepSpec};

#[derive(Debug)]
pub enum CliError {
    /// Invalid physical parameters or grids (exit 2).
    Invalid(String),
    /// Symmetric-waist decomposition infeasible (exit 3).
    Infeasible(String),
    /// Config file unreadable or unparsable (exit 4).
    Config(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Infeasible(m) | CliError::Config(m) => {
                write!(f, "{m}")
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Config(_) => 4,
        }
    }
}

/// Gaussian model of SPDC pumped by twisted Gaussian Schell-model beams.
#[derive(Parser)]
#[command(name = "twistbeam", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Physical parameters shared by all subcommands; defaults are the
/// reference configuration (400 nm pump, 50 um waist, 1 cm crystal, flat
/// phase front).
#[derive(Args, Debug, Clone, Copy)]
struct PhysicalArgs {
    /// Pump wavelength, m
    #[arg(long = "wavelength-m", default_value_t = 400e-9)]
    wavelength_m: f64,
    /// Pump beam waist sigma, m
    #[arg(long = "sigma-m", default_value_t = 50e-6)]
    sigma_m: f64,
    /// Crystal length L, m
    #[arg(long = "length-m", default_value_t = 1e-2)]
    length_m: f64,
    /// Reciprocal curvature radius 1/R, m^-1 (0 = flat)
    #[arg(long = "inv-curvature-m", default_value_t = 0.0)]
    inv_curvature_m: f64,
}

impl From<PhysicalArgs> for Physical {
    fn from(a: PhysicalArgs) -> Self {
        Physical {
            wavelength_m: a.wavelength_m,
            sigma_m: a.sigma_m,
            crystal_length_m: a.length_m,
            curvature_inv_m: a.inv_curvature_m,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement report for one (beta, twist) point as flat JSON.
    Report {
        /// Normalized pump coherence, in (0, 1]
        #[arg(long)]
        beta: f64,
        /// Normalized twist |u| k delta^2, in [0, 1]
        #[arg(long)]
        twist: f64,
        /// Sign of the twist phase
        #[arg(long = "twist-sign", default_value_t = 1.0, allow_hyphen_values = true)]
        twist_sign: f64,
        #[command(flatten)]
        phys: PhysicalArgs,
    },
    /// Sweep a (beta, t) grid and write one CSV row per point.
    Sweep {
        /// JSON config file (SweepSpec schema); overrides the grid flags
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path (overrides the config's output_path)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "beta-min", default_value_t = 0.01)]
        beta_min: f64,
        #[arg(long = "beta-max", default_value_t = 1.0)]
        beta_max: f64,
        #[arg(long = "beta-count", default_value_t = 200)]
        beta_count: usize,
        #[arg(long = "twist-min", default_value_t = 0.0)]
        twist_min: f64,
        #[arg(long = "twist-max", default_value_t = 1.0)]
        twist_max: f64,
        #[arg(long = "twist-count", default_value_t = 200)]
        twist_count: usize,
        /// Recorded in the spec for reproducibility bookkeeping
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        phys: PhysicalArgs,
    },
    /// Run the randomized invariant suite; exit 0 iff every check passes.
    Verify {
        /// Number of random parameter points
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Relative tolerance for the closed-form vs oracle comparison
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Build an incoherent mixture of the pump and validate it by Monte
    /// Carlo sampling; prints a JSON report.
    Decompose {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        twist: f64,
        #[arg(long = "twist-sign", default_value_t = 1.0, allow_hyphen_values = true)]
        twist_sign: f64,
        /// Number of Monte Carlo samples (at least 100)
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Decomposition mode: "williamson" or "symmetric-waist"
        #[arg(long, default_value = "williamson")]
        mode: String,
        /// Component waist for symmetric-waist mode, m (default sigma sqrt(beta))
        #[arg(long = "waist-m")]
        waist_m: Option<f64>,
        #[command(flatten)]
        phys: PhysicalArgs,
    },
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Report { beta, twist, twist_sign, phys } => {
            let report = evaluate_point(beta, twist, twist_sign, &phys.into())
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            println!("{json}");
            Ok(())
        }
        Command::Sweep {
            config,
            out,
            beta_min,
            beta_max,
            beta_count,
            twist_min,
            twist_max,
            twist_count,
            seed,
            phys,
        } => {
            let mut spec = match config {
                Some(path) => SweepSpec::load(&path)?,
                None => SweepSpec {
                    wavelength_m: phys.wavelength_m,
                    sigma_m: phys.sigma_m,
                    crystal_length_m: phys.length_m,
                    curvature_inv_m: phys.inv_curvature_m,
                    beta_grid: GridSpec { min: beta_min, max: beta_max, count: beta_count },
                    twist_grid: GridSpec { min: twist_min, max: twist_max, count: twist_count },
                    output_path: "sweep.csv".to_string(),
                    seed,
                },
            };
            if let Some(path) = out {
                spec.output_path = path.display().to_string();
            }
            let rows = sweep::run_sweep(&spec)?;
            let path = PathBuf::from(&spec.output_path);
            sweep::write_csv(&rows, &path)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
            Ok(())
        }
        Command::Verify { trials, seed, tolerance } => {
            if trials < 1 {
                return Err(CliError::Invalid("trials must be at least 1".into()));
            }
            if verify::run_verify(trials, seed, tolerance) {
                Ok(())
            } else {
                // Dedicated exit code for "suite ran and found violations".
                std::process::exit(1);
            }
        }
        Command::Decompose {
            beta,
            twist,
            twist_sign,
            samples,
            seed,
            mode,
            waist_m,
            phys,
        } => {
            let result = decompose::run_decompose(
                beta,
                twist,
                twist_sign,
                &phys.into(),
                &mode,
                waist_m,
                samples,
                seed,
            );
            match result {
                Ok(report) => {
                    let json = serde_json::to_string_pretty(&report)
                        .map_err(|e| CliError::Invalid(e.to_string()))?;
                    println!("{json}");
                    Ok(())
                }
                Err(e @ CliError::Infeasible(_)) => {
                    // Report the infeasibility as JSON, then exit 3.
                    println!(
                        "{}",
                        serde_json::json!({ "feasible": false, "error": e.to_string() })
                    );
                    Err(e)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
