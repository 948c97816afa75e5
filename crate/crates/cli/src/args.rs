use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qprl_core::harness::PolicyKind;
use qprl_core::AgentVariant;

#[derive(Debug, Parser)]
#[command(name = "qprl", version, about = "Query-process and Markov agents in corridor and labyrinth gridworlds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a multi-run experiment and write its learning curve as CSV.
    Run(RunArgs),
    /// Train in one environment, then keep learning in another.
    Transfer(TransferArgs),
    /// Print a builtin map as ASCII.
    DumpMap(DumpMapArgs),
    /// Print table sizes of a policy over the given state and action counts.
    Complexity(ComplexityArgs),
    /// Render one or more series CSV files as an SVG line chart.
    Chart(ChartArgs),
}

/// Experiment settings. Unset flags fall back to the config file, then to the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ExperimentArgs {
    /// Flat `key = value` file with experiment settings; flags override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Builtin environment (small_corridor, large_corridor, labyrinth) or ASCII map file [default: labyrinth]
    #[arg(long)]
    pub env: Option<String>,
    /// Agent variant [default: subjective_query]
    #[arg(long, value_parser = parse_agent)]
    pub agent: Option<AgentVariant>,
    /// Episodes per run [default: 30]
    #[arg(long)]
    pub episodes: Option<usize>,
    /// Independent runs [default: 20]
    #[arg(long)]
    pub runs: Option<usize>,
    /// Learning rate [default: 0.5]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Discount factor [default: 0.5]
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Exploration rate [default: 0.1]
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Inducibility threshold for query candidates [default: 0.5]
    #[arg(long = "c")]
    pub threshold: Option<f64>,
    /// Initial optimistic value [default: 5]
    #[arg(long, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    /// Step limit per episode [default: 3000]
    #[arg(long)]
    pub step_cap: Option<usize>,
    /// Base seed; falls back to QPRL_SEED, then 0
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// CSV output path; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render the curve as SVG
    #[arg(long)]
    pub chart: Option<PathBuf>,
    /// Write the per-step trace of every run as CSV (subjective_query only)
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransferArgs {
    /// Training settings; `--env` is the training environment [default: small_corridor]
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// Test environment [default: large_corridor]
    #[arg(long)]
    pub test_env: Option<String>,
    /// Test episodes per run [default: same as --episodes]
    #[arg(long)]
    pub test_episodes: Option<usize>,
    /// CSV output path for the test series; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV output path for the training series
    #[arg(long)]
    pub train_out: Option<PathBuf>,
    /// Render both series as SVG
    #[arg(long)]
    pub chart: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DumpMapArgs {
    /// Builtin environment name
    #[arg(long)]
    pub env: String,
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    /// Number of states
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub states: u64,
    /// Number of actions
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub actions: u64,
    /// markov or query
    #[arg(long, value_parser = parse_kind)]
    pub paradigm: PolicyKind,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    /// Series CSV files; each becomes one curve labelled by its file stem
    #[arg(long = "input", required = true)]
    pub inputs: Vec<PathBuf>,
    /// Horizontal reference lines, as `value` or `label=value`
    #[arg(long = "reference", allow_negative_numbers = true)]
    pub references: Vec<String>,
    /// Chart title [default: cumulative reward per episode]
    #[arg(long)]
    pub title: Option<String>,
    /// SVG output path
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_agent(s: &str) -> Result<AgentVariant, String> {
    s.parse().map_err(|e: qprl_core::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<PolicyKind, String> {
    s.parse().map_err(|e: qprl_core::Error| e.to_string())
}
