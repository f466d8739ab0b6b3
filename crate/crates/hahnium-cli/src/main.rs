//! `hahnium`: hydrogen-like expectation values, levels and screening potentials.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Overrides, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "hahnium", version, about = "Coulomb-problem expectation values and checks")]
struct Cli {
    /// TOML file with `units`, `rel_tol`, `format` and `budget` keys.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// hartree_bohr, natural_compton or cgs. Defaults to hartree_bohr for --nr
    /// and natural_compton for --rel.
    #[arg(long, global = true)]
    units: Option<String>,
    /// json (one object per line) or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Relative tolerance of the quadrature oracle.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy level of a state.
    Energy(StateArgs),
    /// Table of <r^p>.
    Expectation(ExpectationArgs),
    /// Potential of nucleus plus electron cloud on a radius grid.
    Screening(ScreeningArgs),
    /// Run the self-check suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    /// l = j + 1/2 (kappa > 0)
    Plus,
    /// l = j - 1/2 (kappa < 0)
    Minus,
}

#[derive(Debug, Clone, Args)]
#[group(id = "model", required = true, multiple = false)]
pub struct ModelArgs {
    /// Schrödinger–Coulomb states.
    #[arg(long)]
    pub nr: bool,
    /// Dirac–Coulomb states.
    #[arg(long)]
    pub rel: bool,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Nuclear charge.
    #[arg(short = 'Z', long = "charge", value_name = "Z")]
    pub z: f64,
    /// Principal quantum number.
    #[arg(short = 'n')]
    pub n: Option<u64>,
    /// Orbital quantum number (--nr).
    #[arg(short = 'l')]
    pub l: Option<u64>,
    /// Magnetic quantum number (--nr).
    #[arg(short = 'm', allow_negative_numbers = true)]
    pub m: Option<i64>,
    /// Radial quantum number n_r (--rel).
    #[arg(long)]
    pub nr_quantum: Option<u64>,
    /// Dirac quantum number kappa (--rel).
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<i64>,
    /// Twice the total angular momentum, with --branch (--rel).
    #[arg(long)]
    pub two_j: Option<i64>,
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    /// Twice the projection m_j (--rel screening).
    #[arg(long, allow_negative_numbers = true)]
    pub two_m: Option<i64>,
}

#[derive(Debug, Clone, Args)]
#[group(id = "powers", required = true, multiple = false, args = ["p", "p_range"])]
pub struct ExpectationArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Power p of <r^p>.
    #[arg(short = 'p', allow_negative_numbers = true)]
    pub p: Option<i32>,
    /// Inclusive range `lo:hi` of powers.
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI")]
    pub p_range: Option<String>,
    /// Add the quadrature value and the relative difference.
    #[arg(long)]
    pub with_oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScreeningArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Comma-separated radii in the length unit of --units.
    #[arg(long = "r", value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub radii: Vec<f64>,
    /// Polar angle in radians.
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// Add a quadrature column (spherical states only).
    #[arg(long)]
    pub with_oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// nr-oracle, nr-exact, rel-oracle, rel-special-cases, sommerfeld,
    /// nonrel-limit, identities, angular, screening or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// small or full.
    #[arg(long, env = "HAHNIUM_BUDGET")]
    pub budget: Option<String>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut overrides = Overrides {
        units: cli.units,
        rel_tol: cli.rel_tol,
        format: cli.format,
        budget: None,
    };
    if let Command::Verify(v) = &cli.command {
        overrides.budget = v.budget.clone();
    }
    let cfg = RunConfig::resolve(cli.config.as_deref(), &overrides)?;
    let stdout = std::io::stdout().lock();
    match cli.command {
        Command::Energy(a) => commands::energy(&a, &cfg, stdout),
        Command::Expectation(a) => commands::expectation(&a, &cfg, stdout),
        Command::Screening(a) => commands::screening(&a, &cfg, stdout),
        Command::Verify(a) => commands::verify(&a, &cfg, stdout),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
