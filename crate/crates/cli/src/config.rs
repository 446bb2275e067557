use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::coeff::parse_complex;

/// Entanglement measures and superposition bounds for tripartite pure states.
#[derive(Debug, Parser)]
#[command(name = "supneg", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every measure of one state.
    Measure(MeasureArgs),
    /// Exact values and both bound families for a two-state superposition.
    Bounds(BoundsArgs),
    /// Bounds along the GHZ/W family, as CSV.
    Sweep(SweepArgs),
    /// Seeded property checks over random ensembles.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["named", "file"])))]
pub struct MeasureArgs {
    /// Named state: ghz, ghz:d=3, w, z:p=0.3,phi=0.0
    #[arg(long)]
    pub named: Option<String>,
    /// State file ({"dims": [...], "amplitudes": [[re, im], ...]}).
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Also report trace-norm negativities and both concurrence routes.
    #[arg(long)]
    pub diagnostics: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// First component: `named:<spec>` or a state file path.
    #[arg(long, required_unless_present = "z")]
    pub s1: Option<String>,
    /// Second component: `named:<spec>` or a state file path.
    #[arg(long, required_unless_present = "z")]
    pub s2: Option<String>,
    /// Coefficient of the first component, `re±imi`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "z")]
    pub a1: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "z")]
    pub a2: Option<Complex64>,
    /// GHZ weight p of the GHZ/W family; replaces --s1/--s2/--a1/--a2.
    #[arg(long, conflicts_with_all = ["s1", "s2", "a1", "a2"])]
    pub z: Option<f64>,
    /// Relative phase on the W component (with --z).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    /// Accept coefficients with |a1|^2 + |a2|^2 != 1.
    #[arg(long)]
    pub no_coeff_check: bool,
    /// Include the cross-term table.
    #[arg(long)]
    pub dump_terms: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub stop: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 21)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    /// CSV destination (stdout when absent).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Fit sidecar destination; defaults to `<output>.fit.json`, or stderr.
    #[arg(long)]
    pub fit_output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    #[default]
    Canonical,
    HalfNormalized,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Local dimensions to cycle through.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub dims: Vec<usize>,
    /// Generator normalization (half-normalized is a deliberate mutation).
    #[arg(long, value_enum, default_value_t)]
    pub generator_scale: ScaleArg,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
