mod commands;
mod error;
mod potential_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

/// Exact series coefficients, graph census and large-order asymptotics
/// for weighted edge-bicolored graphs.
#[derive(Parser, Debug)]
#[command(name = "bicolored", version)]
struct Cli {
    /// Worker threads (default: all available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients A_0 … A_N, exact.
    Expand(ExpandArgs),
    /// Brute-force census of labeled graphs.
    Enumerate(EnumerateArgs),
    /// Leading law A_n ∼ c·Γ(n)·αⁿ at one λ.
    Asympt(AsymptArgs),
    /// Law along a λ grid with transition detection.
    PhaseScan(PhaseScanArgs),
    /// Complex roots of A_N(λ).
    Roots(RootsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum ExpandRoute {
    #[default]
    Auto,
    Recursion,
    Homogeneous,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// Potential file (JSON).
    #[arg(long)]
    potential: PathBuf,
    /// Highest order N.
    #[arg(long)]
    n: usize,
    /// Fix λ to this exact value ("p/q" or a decimal) before expanding.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    route: ExpandRoute,
    /// Default format: json.
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Potential file (JSON); census of graphs with χ = −n.
    #[arg(long, conflicts_with = "generic", required_unless_present = "generic")]
    potential: Option<PathBuf>,
    /// Symbolic census with one weight λ[u,w] per vertex bidegree.
    #[arg(long)]
    generic: bool,
    /// Order n (potential mode).
    #[arg(long, required_unless_present = "generic")]
    n: Option<usize>,
    /// Number of edges (generic mode).
    #[arg(long, required_if_eq("generic", "true"))]
    edges: Option<usize>,
    /// Smallest vertex degree (generic mode).
    #[arg(long, default_value_t = 1)]
    min_degree: u32,
    /// Default format: json.
    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum AsymptRoute {
    /// Circle maxima when homogeneous, critical points of g otherwise.
    #[default]
    Auto,
    Circle,
    CriticalPoints,
}

#[derive(Args, Debug)]
pub struct AsymptArgs {
    #[arg(long)]
    potential: PathBuf,
    /// Parameter value ("p/q" or a decimal); ignored for constant potentials.
    #[arg(long, default_value = "0")]
    lambda: String,
    #[arg(long, value_enum, default_value_t)]
    route: AsymptRoute,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PhaseScanArgs {
    #[arg(long)]
    potential: PathBuf,
    /// Grid a:b:steps with 0 < a < b.
    #[arg(long)]
    range: String,
    /// Flag α kinks whose second difference exceeds this multiple of the median.
    #[arg(long, default_value_t = 10.0)]
    kink_threshold: f64,
    /// Flag c values above this multiple of the median.
    #[arg(long, default_value_t = 10.0)]
    divergence_threshold: f64,
    /// Also fit α and c from the exact series to this order at every node.
    #[arg(long)]
    fit_n: Option<usize>,
    /// Default format: csv (transitions go to standard error).
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    /// Parametric potential file (JSON).
    #[arg(long)]
    potential: PathBuf,
    /// Order N of A_N(λ).
    #[arg(long)]
    n: usize,
    /// Default format: csv.
    #[command(flatten)]
    output: Output,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Validation(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Expand(a) => commands::expand(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Asympt(a) => commands::asympt(a),
        Command::PhaseScan(a) => commands::phase_scan(a),
        Command::Roots(a) => commands::roots(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bicolored: {e}");
            e.exit_code()
        }
    }
}
