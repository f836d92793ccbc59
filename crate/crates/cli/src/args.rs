//! Flag definitions. Every tunable is optional here; defaults and config
//! file values are resolved in `overlay`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "thermoplate",
    version,
    about = "Modal spectral laboratory for thermoelastic plate semigroups",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Optional key=value config file; explicit flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Spectrum of A: power-law:C:P, list:V1,V2,..., or file:PATH
    #[arg(long, global = true)]
    pub model: Option<String>,

    /// RNG seed recorded in every output header
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads (0 = all available cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output path ("-" = stdout)
    #[arg(long, short, global = true)]
    pub output: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep the resolvent norm along the imaginary axis and fit its decay
    /// exponent against the predicted regularity
    ResolventScan(ScanArgs),
    /// Classify and measure a grid of (sigma, omega) points
    RegionMap(RegionMapArgs),
    /// Evaluate the resonant witness sequences and their ratio test
    Witness(WitnessArgs),
    /// Propagate an initial state and fit its decay law
    Evolve(EvolveArgs),
    /// Sup-ratio scans of the lemma estimates
    Inequalities(InequalitiesArgs),
    /// Run the invariant suites and print a pass line per suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SweepFlags {
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub points_per_octave: Option<u32>,
    /// Exponent tolerance for the match verdict
    #[arg(long)]
    pub exponent_tol: Option<f64>,
    /// Tolerance used in the analytic regime
    #[arg(long)]
    pub exponent_tol_analytic: Option<f64>,
    /// Fit raw samples instead of their running-maximum envelope
    #[arg(long)]
    pub raw_fit: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[command(flatten)]
    pub sweep: SweepFlags,
}

#[derive(Args, Debug)]
pub struct RegionMapArgs {
    /// Fixed sigma (alternative to --sigma-grid)
    #[arg(long)]
    pub sigma: Option<f64>,
    /// sigma grid START:END:STEP
    #[arg(long)]
    pub sigma_grid: Option<String>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// omega grid START:END:STEP
    #[arg(long)]
    pub omega_grid: Option<String>,
    #[command(flatten)]
    pub sweep: SweepFlags,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// First index of the geometric ladder
    #[arg(long)]
    pub n_start: Option<u64>,
    /// Last index of the geometric ladder
    #[arg(long)]
    pub n_end: Option<u64>,
    /// Number of ladder points
    #[arg(long)]
    pub n_count: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// Number of modes carried by the initial state
    #[arg(long)]
    pub modes: Option<u64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Time samples per octave of the dyadic grid
    #[arg(long)]
    pub t_points_per_octave: Option<u32>,
    /// Initial data: smoothed or random
    #[arg(long)]
    pub init: Option<String>,
    /// Decay fit: exponential, polynomial, or none
    #[arg(long)]
    pub fit: Option<String>,
}

#[derive(Args, Debug)]
pub struct InequalitiesArgs {
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// Comma-separated item ids (default: all items valid at sigma, omega)
    #[arg(long)]
    pub items: Option<String>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub points_per_octave: Option<u32>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Random draws per identity suite
    #[arg(long)]
    pub draws: Option<usize>,
}
