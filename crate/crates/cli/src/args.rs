//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "vortex-cert",
    version,
    about = "Certified relative equilibria of point vortices on the sphere and their stability"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a relative equilibrium at a single angular velocity.
    Certify(CertifyArgs),
    /// Continue a branch in omega and certify each segment.
    Continue(ContinueArgs),
    /// Stability verdicts for a branch file or a single configuration.
    Stability(StabilityArgs),
    /// Energy-momentum CSV of a branch file.
    Diagram(DiagramArgs),
    /// RK4 trajectory of the full equations of motion.
    Simulate(SimulateArgs),
    /// Built-in fixtures.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

/// Where the configuration comes from.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Built-in fixture name (see `catalog list`).
    #[arg(long, group = "input", value_name = "NAME")]
    pub fixture: Option<String>,
    /// Configuration JSON: `{"m", "n", "p", "generators"}` or `{"vortices"}`.
    #[arg(long, group = "input", value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Analytic one-ring branch `M:P:Z`: a ring of M vortices at height Z
    /// with P poles, at its own angular velocity.
    #[arg(long, group = "input", value_name = "M:P:Z")]
    pub one_ring: Option<String>,
    /// Polygon order of the fixture form to use (largest by default).
    #[arg(long, value_name = "M")]
    pub form: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Artifact path; a run manifest is written next to it. Without it the
    /// artifact goes to stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Manifest path (default: `<out>.manifest.json`).
    #[arg(long, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
    /// Print the summary as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Angular velocity (default: that of the input).
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ContinueArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Start of the range (default: omega of the input).
    #[arg(long, allow_negative_numbers = true)]
    pub omega_from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_to: f64,
    /// Initial and largest continuation step.
    #[arg(long, default_value_t = 1e-2)]
    pub step: f64,
    /// Segment validation threads (default: logical cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Numerical walk only, without validation.
    #[arg(long)]
    pub no_rigor: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct StabilityArgs {
    /// Branch file written by `continue` or `certify`.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["fixture", "config", "one_ring"])]
    pub chain: Option<PathBuf>,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DiagramArgs {
    /// Branch file written by `continue`.
    #[arg(long, value_name = "PATH")]
    pub chain: PathBuf,
    /// Color by existence only, skipping the stability test.
    #[arg(long)]
    pub no_rigor: bool,
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Final time.
    #[arg(long = "t", default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub dt: f64,
    /// Write every k-th step.
    #[arg(long, default_value_t = 1)]
    pub every: usize,
    /// Uniform random perturbation of each coordinate before projecting
    /// back to the sphere; seeded by VORTEX_CERT_SEED.
    #[arg(long, default_value_t = 0.0)]
    pub perturb: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// List the fixtures.
    List {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Configuration of one fixture.
    Show {
        name: String,
        #[arg(long)]
        form: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}
