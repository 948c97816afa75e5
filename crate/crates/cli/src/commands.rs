use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use qprl_core::gridworld::optimal_objective_return;
use qprl_core::harness::{
    read_series, render_chart, run_experiment_detailed, run_transfer_detailed, write_csv, write_series, write_trace,
    ChartSeries, ReferenceLine, SeriesStats,
};
use qprl_core::{builtin_env, policy_complexity, ExperimentConfig};

use crate::args::{ChartArgs, ComplexityArgs, DumpMapArgs, ExperimentArgs, RunArgs, TransferArgs};
use crate::CliError;

pub const SEED_VAR: &str = "QPRL_SEED";

/// Defaults, then QPRL_SEED, then the config file, then explicit flags; later layers win.
pub fn build_config(args: &ExperimentArgs, default_env: &str) -> Result<ExperimentConfig, CliError> {
    let mut config = ExperimentConfig {
        env: default_env.to_string(),
        ..ExperimentConfig::default()
    };
    if let Ok(value) = std::env::var(SEED_VAR) {
        config.seed = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_VAR} must be an unsigned integer, got {value:?}")))?;
    }
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        config.apply_key_values(&text)?;
    }
    if let Some(v) = &args.env {
        config.env = v.clone();
    }
    if let Some(v) = args.agent {
        config.agent = v;
    }
    if let Some(v) = args.episodes {
        config.episodes = v;
    }
    if let Some(v) = args.runs {
        config.runs = v;
    }
    if let Some(v) = args.alpha {
        config.params.alpha = v;
    }
    if let Some(v) = args.gamma {
        config.params.gamma = v;
    }
    if let Some(v) = args.epsilon {
        config.params.epsilon = v;
    }
    if let Some(v) = args.threshold {
        config.query.threshold = v;
    }
    if let Some(v) = args.v0 {
        config.params.initial_value = v;
    }
    if let Some(v) = args.step_cap {
        config.step_cap = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    config.validate()?;
    Ok(config)
}

fn at<T, E: Into<qprl_core::Error>>(path: &Path, result: Result<T, E>) -> Result<T, CliError> {
    result.map_err(|e| CliError::File {
        path: path.to_path_buf(),
        source: e.into(),
    })
}

fn emit_series(stats: &SeriesStats, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => at(path, write_csv(stats, path))?,
        None => {
            let stdout = io::stdout();
            write_series(stats, stdout.lock())?;
        }
    }
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta");
    PathBuf::from(name)
}

/// Records how the `error` column was computed next to the CSV.
fn write_meta(out: &Path, config: &ExperimentConfig, stats: &SeriesStats) -> Result<(), CliError> {
    let mut text = String::from("# error = sample standard deviation over runs / sqrt(runs)\n");
    text.push_str(&format!("error_kind = standard_error\nruns_aggregated = {}\n", stats.runs));
    text.push_str(&config.to_key_values());
    let path = sidecar_path(out);
    at(&path, std::fs::write(&path, text))?;
    Ok(())
}

fn optimal_line(config: &ExperimentConfig) -> Result<Option<ReferenceLine>, CliError> {
    let map = config.load_map()?;
    Ok(optimal_objective_return(&map, &config.rewards).map(|y| ReferenceLine::new("optimal policy", y)))
}

pub fn run(args: &RunArgs) -> Result<(), CliError> {
    let config = build_config(&args.experiment, "labyrinth")?;
    let experiment = run_experiment_detailed(&config, args.trace.is_some())?;
    emit_series(&experiment.stats, args.out.as_deref())?;
    if let Some(out) = &args.out {
        write_meta(out, &config, &experiment.stats)?;
    }
    if let Some(path) = &args.trace {
        let rows: Vec<_> = experiment.runs.iter().flat_map(|r| r.trace.iter().cloned()).collect();
        let file = at(path, File::create(path))?;
        at(path, write_trace(&rows, BufWriter::new(file)))?;
    }
    if let Some(path) = &args.chart {
        let series = [ChartSeries::from_stats(config.agent.to_string(), &experiment.stats)];
        let references: Vec<_> = optimal_line(&config)?.into_iter().collect();
        at(path, render_chart(&format!("{} in {}", config.agent, config.env), &series, &references, path))?;
    }
    Ok(())
}

pub fn transfer(args: &TransferArgs) -> Result<(), CliError> {
    let train = build_config(&args.experiment, "small_corridor")?;
    let test = ExperimentConfig {
        env: args.test_env.clone().unwrap_or_else(|| "large_corridor".to_string()),
        episodes: args.test_episodes.unwrap_or(train.episodes),
        ..train.clone()
    };
    let result = run_transfer_detailed(&train, &test)?;
    emit_series(&result.test.stats, args.out.as_deref())?;
    if let Some(out) = &args.out {
        write_meta(out, &test, &result.test.stats)?;
    }
    if let Some(out) = &args.train_out {
        at(out, write_csv(&result.train.stats, out))?;
        write_meta(out, &train, &result.train.stats)?;
    }
    if let Some(path) = &args.chart {
        let series = [
            ChartSeries::from_stats(format!("train ({})", train.env), &result.train.stats),
            ChartSeries::from_stats(format!("test ({})", test.env), &result.test.stats),
        ];
        at(path, render_chart(&format!("{} transfer", train.agent), &series, &[], path))?;
    }
    Ok(())
}

pub fn dump_map(args: &DumpMapArgs) -> Result<(), CliError> {
    let map = builtin_env(&args.env).map_err(|e| CliError::Usage(e.to_string()))?;
    print!("{}", map.to_ascii());
    io::stdout().flush()?;
    Ok(())
}

pub fn complexity(args: &ComplexityArgs) -> Result<(), CliError> {
    println!("{}", policy_complexity(args.states, args.actions, args.paradigm));
    Ok(())
}

fn parse_reference(text: &str) -> Result<ReferenceLine, CliError> {
    let (label, value) = match text.split_once('=') {
        Some((label, value)) => (label.to_string(), value),
        None => (format!("y = {text}"), text),
    };
    let y = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid reference line {text:?}")))?;
    Ok(ReferenceLine::new(label, y))
}

pub fn chart(args: &ChartArgs) -> Result<(), CliError> {
    let references = args
        .references
        .iter()
        .map(|r| parse_reference(r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut series = Vec::with_capacity(args.inputs.len());
    for path in &args.inputs {
        let file = at(path, File::open(path))?;
        let points = at(path, read_series(file))?;
        let label = path
            .file_stem()
            .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        series.push(ChartSeries::new(label, points.iter().map(|p| p.reward).collect()));
    }
    let title = args.title.as_deref().unwrap_or("cumulative reward per episode");
    at(&args.out, render_chart(title, &series, &references, &args.out))?;
    Ok(())
}
