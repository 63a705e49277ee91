use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "qes",
    version,
    about = "Exact sextic-oscillator spectra around a screw dislocation, with a finite-difference cross-check"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Tabulate the coupling λ_{n,l} that makes the Heun series terminate.
    Lambda(Overrides),
    /// Tabulate the allowed energies and their radial node counts.
    Energies(Overrides),
    /// Run every consistency check and the oracle comparison; exit 1 on any failure.
    Verify(Overrides),
    /// Sample one normalized radial function on a uniform grid.
    Wavefunction(Overrides),
    /// Energies over a list of χ values (degeneracy under l → −l).
    Scan(Overrides),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Lambda(_) => "lambda",
            Command::Energies(_) => "energies",
            Command::Verify(_) => "verify",
            Command::Wavefunction(_) => "wavefunction",
            Command::Scan(_) => "scan",
        }
    }

    pub fn overrides(&self) -> &Overrides {
        match self {
            Command::Lambda(o) | Command::Energies(o) | Command::Verify(o) | Command::Wavefunction(o) | Command::Scan(o) => o,
        }
    }
}

/// Command-line values; each one replaces the matching config key.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Flat TOML config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dislocation parameter; a comma list for `scan`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub chi: Vec<f64>,
    /// Momentum values along the dislocation, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub k: Vec<f64>,
    /// Angular range `lo:hi` (inclusive) or a single l.
    #[arg(long = "l-range", allow_hyphen_values = true)]
    pub l_range: Option<String>,
    /// Polynomial levels, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u32>,
    /// Oracle grid size (verify) or sample count (wavefunction).
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Oracle box or sample range; per-state WKB rule when absent.
    #[arg(long = "r-max", allow_negative_numbers = true)]
    pub r_max: Option<f64>,
    /// Root to sample: minus, plus or rootN.
    #[arg(long)]
    pub branch: Option<String>,
    /// Hand-set quartic coupling for `verify` instead of λ_{n,l}.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
}
