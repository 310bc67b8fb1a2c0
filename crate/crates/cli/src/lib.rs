//! Command-line front end: every computation lands in a CSV or JSON file with
//! a `<file>.meta.json` sidecar that echoes everything needed to rerun it.
//!
//! Times are given in units of `1/omega0` and frequencies in units of `omega0`.

pub mod commands;
pub mod figures;
pub mod output;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use superosc::spectrum::Method;
use superosc::SignalParams;

#[derive(Debug, Parser)]
#[command(name = "superosc", version, about = "Damped APR superoscillation laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample f_n(t) on a time grid.
    Signal(SignalArgs),
    /// Fourier spectrum of f_n on a frequency grid.
    Spectrum(SpectrumArgs),
    /// Delta-dependent energy yield for a sweep of orders and tolerances.
    Yield(YieldArgs),
    /// Data and SVG renderings for the three standard figures.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Quadrature,
    Discrete,
    #[value(name = "gaussian_sum")]
    GaussianSum,
    Airy,
    All,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Quadrature => vec![Method::Quadrature],
            MethodChoice::Discrete => vec![Method::Discrete],
            MethodChoice::GaussianSum => vec![Method::GaussianSum],
            MethodChoice::Airy => vec![Method::Airy],
            MethodChoice::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ParamArgs {
    /// Order n.
    #[arg(long, default_value_t = 16)]
    pub n: u32,
    /// omega1 / omega0.
    #[arg(long, default_value_t = 2.0)]
    pub ratio: f64,
    /// Damping knob; 1 is the critically damped member.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Band limit in rad/s.
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
}

impl ParamArgs {
    pub fn params(&self) -> superosc::Result<SignalParams> {
        SignalParams::new(self.n, self.omega0, self.ratio * self.omega0, self.alpha)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub grid_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub grid_max: Option<f64>,
    #[arg(long)]
    pub grid_count: Option<usize>,
}

impl GridArgs {
    pub fn resolve(&self, min: f64, max: f64, count: usize) -> (f64, f64, usize) {
        (
            self.grid_min.unwrap_or(min),
            self.grid_max.unwrap_or(max),
            self.grid_count.unwrap_or(count),
        )
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output file; the sidecar goes to `<out>.meta.json`.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SignalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Grid in units of omega0 t; defaults to [-40, 40] with 2001 points.
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Grid in units of omega0; defaults to [-3, 4] with 701 points.
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = MethodChoice::All)]
    pub method: MethodChoice,
    /// Mantissa bits for the Gaussian sum; defaults to the cancellation bound.
    #[arg(long)]
    pub precision_bits: Option<usize>,
    /// Relative tolerance of the quadrature route.
    #[arg(long, default_value_t = superosc::spectrum::DEFAULT_FT_REL_TOL)]
    pub rel_tol: f64,
    /// Report the fraction of spectral energy inside [LOW, HIGH] (units of omega0).
    #[arg(long, num_args = 2, value_names = ["LOW", "HIGH"], allow_negative_numbers = true)]
    pub band: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct YieldArgs {
    /// Orders to sweep, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "16")]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 2.0)]
    pub ratio: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Tolerances to sweep, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    pub delta: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FiguresArgs {
    /// Figure id: 1 (modulus squared), 2 (real part) or 3 (spectrum).
    #[arg(long)]
    pub figure: u32,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

/// Runs one command and returns the data files it wrote (sidecars excluded).
pub fn run(cli: &Cli) -> anyhow::Result<Vec<PathBuf>> {
    match &cli.command {
        Command::Signal(args) => commands::signal(args),
        Command::Spectrum(args) => commands::spectrum(args),
        Command::Yield(args) => commands::yield_sweep(args),
        Command::Figures(args) => figures::run(args),
    }
}
