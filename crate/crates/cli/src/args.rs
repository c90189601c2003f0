use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nongauss", version, about = "Photon-subtracted squeezed vacuum: sweeps, figure data and oracle checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep a quantity over a lambda grid.
    Scan(ScanArgs),
    /// Tabulate the Wigner function of the single-mode conditional state.
    Wigner(WignerArgs),
    /// Compare the closed forms with the truncated Fock-space engine.
    OracleCheck(OracleArgs),
    /// Write the data behind one figure with its default parameters.
    Repro(ReproArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Variance,
    Mi,
    Pdet,
    MeanPhoton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Single,
    Two,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Physical parameters shared by every command. Unset values fall back to
/// the `--config` file, then to the built-in defaults.
#[derive(Clone, Debug, Default, Args)]
pub struct PhysicsArgs {
    /// Squeezing `lambda = tanh r`: a single value or `min:max:points`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Tap beam-splitter transmittance.
    #[arg(long = "T")]
    pub t: Option<f64>,
    /// Path transmittance.
    #[arg(long = "TL")]
    pub tl: Option<f64>,
    /// Detector quantum efficiency.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Mean dark counts per gate.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Signal amplitude of the dense-coding alphabet.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Local-oscillator phase in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phase: Option<f64>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    /// Lossless setup with perfect detectors (T_L = 1, eta = 1, nu = 0).
    #[arg(long)]
    pub ideal: bool,
    /// `key=value` file with defaults for the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Record the wall-clock time in JSON metadata.
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// `min:max:points`, used for both axes.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Print the deviation of the trapezoid integral from 1.
    #[arg(long)]
    pub verify: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Photons per mode kept by the Fock-space engine; automatic when absent.
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Permit lambda above 0.6.
    #[arg(long)]
    pub allow_heavy: bool,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(long)]
    pub figure: String,
    #[arg(long, default_value = ".")]
    pub outdir: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub stamp: bool,
}
