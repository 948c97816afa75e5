//! Seeded multi-run experiments, aggregation and reporting.

mod chart;
mod complexity;
mod config;
mod convergence;
mod csv_io;
mod experiment;
mod seed;
mod stats;

pub use chart::{render_chart, render_svg, ChartSeries, ReferenceLine};
pub use complexity::{policy_complexity, Complexity, PolicyKind};
pub use config::{AgentVariant, ExperimentConfig};
pub use convergence::{detect_convergence, DEFAULT_TOLERANCE, DEFAULT_WINDOW};
pub use csv_io::{read_series, write_csv, write_series, write_trace, SeriesPoint, TraceRow};
pub use experiment::{
    run_experiment, run_experiment_detailed, run_single, run_transfer, run_transfer_detailed, Agent, Experiment,
    RunOutput, Transfer,
};
pub use seed::run_seed;
pub use stats::{EpisodeStats, SeriesStats};
