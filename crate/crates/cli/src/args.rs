//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "eqone",
    version,
    about = "Spin-projection-noise sensitivity limits: formulas, Monte Carlo protocol simulation, and an optical-rotation magnetometer model",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// RNG seed. Precedence: this flag, then the config file, then the
    /// EQONE_SEED environment variable, then the built-in default.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Unit system for formula evaluation and field conversion.
    #[arg(long, global = true, value_enum)]
    pub units: Option<Units>,

    /// JSON config file (units, seed, physical constants).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write output to this path instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for Monte Carlo campaigns (default: all cores).
    /// Results are bit-identical for any value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    Natural,
    Si,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the closed-form sensitivity limits.
    Formula(FormulaArgs),
    /// Run one Monte Carlo pump-precession-probe campaign.
    Simulate(SimulateArgs),
    /// Sweep a parameter and tabulate the sensitivity.
    Sweep(SweepArgs),
    /// Evaluate the Faraday-rotation magnetometer model.
    Faraday(FaradayArgs),
    /// Find the optimal optical depth of the rotation magnetometer.
    Optimize(OptimizeArgs),
    /// Compare Monte Carlo, optical, and formula sensitivities on matched
    /// parameter triples.
    Equivalence(EquivalenceArgs),
}

#[derive(Args, Debug)]
pub struct FormulaArgs {
    /// Spin quantum number J (half-integer).
    #[arg(long, default_value_t = 0.5)]
    pub j: f64,
    /// Spin-relaxation rate Gamma.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Number of spins N.
    #[arg(long, default_value_t = 1.0)]
    pub n: f64,
    /// Total measurement time T.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Lande factor.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Effective electric field for the EDM limit.
    #[arg(long)]
    pub e_field: Option<f64>,
    /// Single-shot time for the repeated-measurement estimate.
    #[arg(long)]
    pub t1: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Spin quantum number J (half-integer).
    #[arg(long, default_value_t = 0.5)]
    pub j: f64,
    /// Precession rate omega (the field, in natural units).
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    /// Spin-relaxation rate Gamma; the shot time defaults to 1/Gamma.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Override the single-shot precession time.
    #[arg(long)]
    pub t1: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub n_spins: u64,
    #[arg(long, default_value_t = 100)]
    pub n_reps: u64,
    /// Lande factor used only for field conversion in SI mode.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// What to sweep against: the Monte Carlo protocol, the closed-form
    /// limit, or the optical model.
    #[arg(long, value_enum, default_value_t = SweepTarget::Mc)]
    pub target: SweepTarget,
    /// Swept parameter: n_spins, t_total, gamma, spin_j, optical_depth,
    /// or detuning.
    #[arg(long)]
    pub param: String,
    /// Comma-separated, strictly increasing positive values.
    #[arg(long, value_delimiter = ',')]
    pub values: Vec<f64>,
    /// Monte Carlo campaigns per sweep point.
    #[arg(long, default_value_t = 200)]
    pub campaigns: u64,
    /// Fit a power law to the sweep (forces JSON output).
    #[arg(long)]
    pub fit: bool,
    /// Weight the fit by the per-point error bars.
    #[arg(long)]
    pub weighted: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    // Base configuration, protocol targets.
    #[arg(long, default_value_t = 0.5)]
    pub j: f64,
    #[arg(long, default_value_t = 0.1)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long)]
    pub t1: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub n_spins: u64,
    #[arg(long, default_value_t = 100)]
    pub n_reps: u64,

    // Base configuration, optical target.
    #[arg(long, default_value_t = 2.0)]
    pub depth: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub n_atoms: u64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepTarget {
    /// Monte Carlo protocol sensitivity per point.
    Mc,
    /// Closed-form limit with the swept parameter treated continuously.
    Formula,
    /// Optical-rotation model sensitivity per point.
    Faraday,
}

#[derive(Args, Debug)]
pub struct FaradayArgs {
    /// Natural linewidth Gamma.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Optical depth x = l/l0.
    #[arg(long, default_value_t = 2.0)]
    pub depth: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub n_atoms: u64,
    /// Measurement time T.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Probe field (precession rate) for the rotation angle.
    #[arg(long, default_value_t = 0.01)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0)]
    pub doppler_width: f64,
    #[arg(long, default_value_t = 1.0)]
    pub saturation: f64,
    #[arg(long, default_value_t = 0.0)]
    pub detuning: f64,
    /// Scan deltaB over depths, "min:max:points"; emits CSV.
    #[arg(long)]
    pub scan: Option<String>,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub n_atoms: u64,
    #[arg(long, default_value_t = 0.0)]
    pub doppler_width: f64,
    #[arg(long, default_value_t = 1.0)]
    pub saturation: f64,
    #[arg(long, default_value_t = 0.0)]
    pub detuning: f64,
}

#[derive(Args, Debug)]
pub struct EquivalenceArgs {
    /// Monte Carlo campaigns per matched triple.
    #[arg(long, default_value_t = 200)]
    pub campaigns: u64,
}
