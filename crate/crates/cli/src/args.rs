use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqtele_core::C64;

/// Truncated-Fock-space simulator of squeezed-state teleportation and
/// entanglement concentration.
#[derive(Debug, Parser)]
#[command(name = "sqtele", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Teleport a superposition c₊|ξ⟩ + c₋|−ξ⟩ through a Φ₋ channel.
    Teleport(TeleportArgs),
    /// Concentrate two partially entangled channels into one Φ₋ pair.
    Concentrate(ConcentrateArgs),
    /// Entanglement entropy of the four squeezed entangled families over an r grid.
    Entropy(EntropyArgs),
    /// Beam-splitter fidelities for equal and opposite squeezing over an (r, φ) grid.
    BsDemo(BsDemoArgs),
    /// Run teleportation or concentration over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Protocol {
    Teleport,
    Concentrate,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Photon-number cutoff per mode (default: chosen from r, or $SQTELE_N_MAX).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Largest norm a truncated squeezed vacuum may lose above the cutoff.
    #[arg(long, default_value_t = 1e-10)]
    pub tail_tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Accepted for forward compatibility; the pipeline is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct TeleportArgs {
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    /// Coefficient of |ξ⟩, as "re,im" or "mag@phase".
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    pub c_plus: ComplexArg,
    /// Coefficient of |−ξ⟩, as "re,im" or "mag@phase".
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub c_minus: ComplexArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ConcentrateArgs {
    /// Partial-entanglement angle, strictly inside (0, π/2).
    #[arg(long, allow_hyphen_values = true)]
    pub eta: f64,
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct EntropyArgs {
    /// Squeezing amplitudes to tabulate (all > 0).
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2")]
    pub r_grid: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct BsDemoArgs {
    #[arg(long, value_delimiter = ',', default_value = "0,0.2,0.4,0.6,0.8,1.0")]
    pub r_grid: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,1.0471975511965976,-1.5707963267948966",
        allow_hyphen_values = true
    )]
    pub phi_grid: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub protocol: Protocol,
    /// Squeezing amplitudes (default 0.3,0.5,0.7,0.9 for teleportation and
    /// 0.3,0.5 for the four-mode concentration).
    #[arg(long, value_delimiter = ',')]
    pub r_grid: Option<Vec<f64>>,
    /// Concentration angles; ignored for teleportation.
    #[arg(long, value_delimiter = ',', default_value = "0.39269908169872414,0.5235987755982988,0.7853981633974483")]
    pub eta_grid: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value = "0.6,0", allow_hyphen_values = true)]
    pub c_plus: ComplexArg,
    #[arg(long, default_value = "0,0.8", allow_hyphen_values = true)]
    pub c_minus: ComplexArg,
    #[command(flatten)]
    pub common: Common,
}

/// A complex number given as `re,im` or `mag@phase` (phase in radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub C64);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |part: &str| -> Result<f64, String> {
            let v: f64 = part.trim().parse().map_err(|_| format!("`{part}` is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("`{part}` is not finite"))
            }
        };
        let value = if let Some((mag, phase)) = s.split_once('@') {
            let mag = num(mag)?;
            if mag < 0.0 {
                return Err(format!("magnitude must be ≥ 0 in `{s}`"));
            }
            C64::from_polar(mag, num(phase)?)
        } else if let Some((re, im)) = s.split_once(',') {
            C64::new(num(re)?, num(im)?)
        } else {
            return Err(format!("expected `re,im` or `mag@phase`, got `{s}`"));
        };
        Ok(ComplexArg(value))
    }
}
