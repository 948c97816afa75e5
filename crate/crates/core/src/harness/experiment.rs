use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{AgentVariant, ExperimentConfig};
use super::{run_seed, SeriesStats, TraceRow};
use crate::episode::EpisodeRecord;
use crate::gridworld::{GridMap, RewardSpec};
use crate::paradigm::{Objective, Paradigm, Subjective};
use crate::query::{QueryAgent, QueryParams, StepTrace};
use crate::rl::{AgentParams, MarkovAgent};
use crate::Error;

/// Any of the agent variants, behind one episode interface.
#[derive(Debug, Clone)]
pub enum Agent {
    Objective(MarkovAgent<Objective>),
    Subjective(MarkovAgent<Subjective>),
    Query(QueryAgent),
}

impl Agent {
    pub fn new(variant: AgentVariant, params: AgentParams, query: QueryParams) -> Result<Self, Error> {
        Ok(match (variant.markov_variant(), variant.paradigm()) {
            (Some(v), Paradigm::Objective) => Agent::Objective(MarkovAgent::new(v, params)?),
            (Some(v), Paradigm::Subjective) => Agent::Subjective(MarkovAgent::new(v, params)?),
            (None, _) => Agent::Query(QueryAgent::new(params, query)?),
        })
    }

    pub fn paradigm(&self) -> Paradigm {
        match self {
            Agent::Objective(_) => Paradigm::Objective,
            Agent::Subjective(_) | Agent::Query(_) => Paradigm::Subjective,
        }
    }

    /// Runs one learning episode. Only the query agent records a trace.
    pub fn run_episode(
        &mut self,
        map: &GridMap,
        episode: usize,
        rng: &mut ChaCha8Rng,
        step_cap: usize,
        spec: &RewardSpec,
        trace: Option<&mut Vec<StepTrace>>,
    ) -> Result<EpisodeRecord, Error> {
        match self {
            Agent::Objective(a) => a.run_episode(map, episode, rng, step_cap, spec),
            Agent::Subjective(a) => a.run_episode(map, episode, rng, step_cap, spec),
            Agent::Query(a) => a.run_episode(map, episode, rng, step_cap, spec, trace),
        }
    }

    /// Greedy episode without learning.
    pub fn greedy_rollout(
        &self,
        map: &GridMap,
        rng: &mut ChaCha8Rng,
        step_cap: usize,
        spec: &RewardSpec,
    ) -> Result<EpisodeRecord, Error> {
        match self {
            Agent::Objective(a) => a.greedy_rollout(map, rng, step_cap, spec),
            Agent::Subjective(a) => a.greedy_rollout(map, rng, step_cap, spec),
            Agent::Query(a) => a.greedy_rollout(map, rng, step_cap, spec),
        }
    }
}

/// Everything one run produced.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub run: usize,
    pub records: Vec<EpisodeRecord>,
    pub agent: Agent,
    pub trace: Vec<TraceRow>,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub stats: SeriesStats,
    pub runs: Vec<RunOutput>,
}

/// Train and test series of a transfer experiment.
#[derive(Debug, Clone)]
pub struct Transfer {
    pub train: Experiment,
    pub test: Experiment,
}

fn check_trace(config: &ExperimentConfig, trace: bool) -> Result<(), Error> {
    if trace && config.agent != AgentVariant::SubjectiveQuery {
        return Err(Error::InvalidConfig(format!(
            "step traces are only recorded for {}",
            AgentVariant::SubjectiveQuery
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn phase(
    agent: &mut Agent,
    map: &GridMap,
    run: usize,
    episodes: usize,
    step_cap: usize,
    spec: &RewardSpec,
    rng: &mut ChaCha8Rng,
    trace: Option<&mut Vec<TraceRow>>,
) -> Result<Vec<EpisodeRecord>, Error> {
    let mut steps = Vec::new();
    let mut rows = trace;
    (0..episodes)
        .map(|episode| {
            steps.clear();
            let want = rows.is_some();
            let record = agent.run_episode(map, episode, rng, step_cap, spec, want.then_some(&mut steps))?;
            if let Some(rows) = rows.as_deref_mut() {
                rows.extend(steps.iter().map(|s| TraceRow {
                    run,
                    episode,
                    t: s.t,
                    x: s.state.to_string(),
                    q: s.query.to_string(),
                    success: s.success,
                    reward: s.reward,
                }));
            }
            Ok(record)
        })
        .collect()
}

fn with_run(run: usize) -> impl Fn(Error) -> Error {
    move |source| Error::Run {
        run,
        source: Box::new(source),
    }
}

/// Executes run `run` of `config` on `map`.
pub fn run_single(config: &ExperimentConfig, map: &GridMap, run: usize, trace: bool) -> Result<RunOutput, Error> {
    check_trace(config, trace)?;
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed(config.seed, run));
    let mut agent = Agent::new(config.agent, config.params, config.query)?;
    let mut rows = Vec::new();
    let records = phase(
        &mut agent,
        map,
        run,
        config.episodes,
        config.step_cap,
        &config.rewards,
        &mut rng,
        trace.then_some(&mut rows),
    )
    .map_err(with_run(run))?;
    Ok(RunOutput {
        run,
        records,
        agent,
        trace: rows,
    })
}

fn aggregate(outputs: Vec<RunOutput>) -> Experiment {
    let records: Vec<Vec<EpisodeRecord>> = outputs.iter().map(|o| o.records.clone()).collect();
    Experiment {
        stats: SeriesStats::from_runs(&records),
        runs: outputs,
    }
}

/// Runs every run of `config` in parallel and keeps per-run outputs.
pub fn run_experiment_detailed(config: &ExperimentConfig, trace: bool) -> Result<Experiment, Error> {
    config.validate()?;
    check_trace(config, trace)?;
    let map = config.load_map()?;
    let outputs = (0..config.runs)
        .into_par_iter()
        .map(|run| run_single(config, &map, run, trace))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(aggregate(outputs))
}

/// Per-episode mean reward and standard error over `config.runs` runs.
pub fn run_experiment(config: &ExperimentConfig) -> Result<SeriesStats, Error> {
    Ok(run_experiment_detailed(config, false)?.stats)
}

/// Trains per `train`, then keeps the same agents (and random streams) in
/// `test.env` for `test.episodes` episodes. `train.episodes` may be zero.
pub fn run_transfer_detailed(train: &ExperimentConfig, test: &ExperimentConfig) -> Result<Transfer, Error> {
    if train.agent.paradigm() != test.agent.paradigm() {
        return Err(Error::ParadigmMismatch {
            train: train.agent.to_string(),
            test: test.agent.to_string(),
        });
    }
    if train.agent != test.agent {
        return Err(Error::InvalidConfig(format!(
            "transfer keeps the trained agent; test agent {} differs from {}",
            test.agent, train.agent
        )));
    }
    let train_for_validation = ExperimentConfig {
        episodes: train.episodes.max(1),
        ..train.clone()
    };
    train_for_validation.validate()?;
    test.validate()?;
    let train_map = train.load_map()?;
    let test_map = test.load_map()?;

    let outputs = (0..train.runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(run_seed(train.seed, run));
            let mut agent = Agent::new(train.agent, train.params, train.query)?;
            let train_records = phase(
                &mut agent,
                &train_map,
                run,
                train.episodes,
                train.step_cap,
                &train.rewards,
                &mut rng,
                None,
            )
            .map_err(with_run(run))?;
            let test_records = phase(
                &mut agent,
                &test_map,
                run,
                test.episodes,
                test.step_cap,
                &test.rewards,
                &mut rng,
                None,
            )
            .map_err(with_run(run))?;
            Ok((train_records, test_records, agent))
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut train_runs = Vec::with_capacity(outputs.len());
    let mut test_runs = Vec::with_capacity(outputs.len());
    for (run, (train_records, test_records, agent)) in outputs.into_iter().enumerate() {
        train_runs.push(RunOutput {
            run,
            records: train_records,
            agent: agent.clone(),
            trace: Vec::new(),
        });
        test_runs.push(RunOutput {
            run,
            records: test_records,
            agent,
            trace: Vec::new(),
        });
    }
    Ok(Transfer {
        train: aggregate(train_runs),
        test: aggregate(test_runs),
    })
}

/// Trains per `train_config`, then continues in `test_env` for the same
/// number of episodes. Returns the train and test series.
pub fn run_transfer(train_config: &ExperimentConfig, test_env: &str) -> Result<(SeriesStats, SeriesStats), Error> {
    let test = ExperimentConfig {
        env: test_env.to_string(),
        ..train_config.clone()
    };
    let t = run_transfer_detailed(train_config, &test)?;
    Ok((t.train.stats, t.test.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::write_series;

    fn config(env: &str, agent: AgentVariant, episodes: usize, runs: usize) -> ExperimentConfig {
        ExperimentConfig {
            episodes,
            runs,
            seed: 7,
            ..ExperimentConfig::new(env, agent)
        }
    }

    fn csv(stats: &SeriesStats) -> Vec<u8> {
        let mut buf = Vec::new();
        write_series(stats, &mut buf).unwrap();
        buf
    }

    #[test]
    fn identical_configs_identical_csv() {
        for agent in AgentVariant::ALL {
            let c = config("small_corridor", agent, 4, 3);
            assert_eq!(csv(&run_experiment(&c).unwrap()), csv(&run_experiment(&c).unwrap()), "{agent}");
        }
    }

    #[test]
    fn records_are_consistent() {
        for agent in AgentVariant::ALL {
            let mut c = config("labyrinth", agent, 3, 2);
            c.step_cap = 400;
            let e = run_experiment_detailed(&c, false).unwrap();
            for run in &e.runs {
                assert_eq!(run.records.len(), 3);
                for r in &run.records {
                    assert!(r.steps <= c.step_cap);
                    assert_eq!(r.reward, r.expected_reward(&c.rewards));
                    assert_eq!(r.truncated, r.steps == c.step_cap && r.reward == -(c.step_cap as f64));
                }
            }
        }
    }

    #[test]
    fn single_run_error_is_zero() {
        let s = run_experiment(&config("small_corridor", AgentVariant::SubjectiveQuery, 5, 1)).unwrap();
        assert_eq!(s.len(), 5);
        assert!(s.episodes.iter().all(|e| e.std_error == 0.0));
    }

    #[test]
    fn adding_runs_keeps_earlier_runs() {
        let small = run_experiment_detailed(&config("small_corridor", AgentVariant::SubjectiveSarsa, 5, 2), false).unwrap();
        let large = run_experiment_detailed(&config("small_corridor", AgentVariant::SubjectiveSarsa, 5, 4), false).unwrap();
        for (a, b) in small.runs.iter().zip(&large.runs) {
            assert_eq!(a.records, b.records);
        }
    }

    #[test]
    fn permuted_runs_same_means() {
        let e = run_experiment_detailed(&config("small_corridor", AgentVariant::ObjectiveSarsa, 6, 8), false).unwrap();
        let mut records: Vec<_> = e.runs.iter().map(|r| r.records.clone()).collect();
        records.reverse();
        records.swap(1, 5);
        let permuted = SeriesStats::from_runs(&records);
        for (a, b) in e.stats.episodes.iter().zip(&permuted.episodes) {
            assert!((a.mean_reward - b.mean_reward).abs() <= 1e-9);
            assert!((a.std_error - b.std_error).abs() <= 1e-9);
        }
    }

    #[test]
    fn trace_only_for_query_agent() {
        let c = config("small_corridor", AgentVariant::SubjectiveQuery, 2, 2);
        let e = run_experiment_detailed(&c, true).unwrap();
        for run in &e.runs {
            let steps: usize = run.records.iter().map(|r| r.steps).sum();
            assert_eq!(run.trace.len(), steps);
            assert!(run.trace.iter().all(|t| t.run == run.run));
        }
        let m = config("small_corridor", AgentVariant::SubjectiveSarsa, 2, 2);
        assert!(run_experiment_detailed(&m, true).is_err());
    }

    #[test]
    fn invalid_config_rejected() {
        let mut c = config("small_corridor", AgentVariant::SubjectiveQuery, 2, 2);
        c.runs = 0;
        assert!(run_experiment(&c).is_err());
        let c = config("nowhere", AgentVariant::SubjectiveQuery, 2, 2);
        assert!(run_experiment(&c).is_err());
    }

    #[test]
    fn transfer_without_training_is_a_fresh_run() {
        for agent in [AgentVariant::SubjectiveQuery, AgentVariant::ObjectiveModelBased] {
            let train = config("small_corridor", agent, 0, 3);
            let test = config("large_corridor", agent, 6, 3);
            let t = run_transfer_detailed(&train, &test).unwrap();
            assert!(t.train.stats.is_empty());
            assert_eq!(csv(&t.test.stats), csv(&run_experiment(&test).unwrap()));
        }
    }

    #[test]
    fn transfer_continues_the_agent() {
        let train = config("small_corridor", AgentVariant::SubjectiveQuery, 5, 2);
        let (a, b) = run_transfer(&train, "large_corridor").unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(b.len(), 5);
        // The first test episode differs from what an untrained agent would get.
        let fresh = run_experiment(&config("large_corridor", AgentVariant::SubjectiveQuery, 1, 2)).unwrap();
        assert_ne!(csv(&SeriesStats { runs: 2, episodes: vec![b.episodes[0]] }), csv(&fresh));
    }

    #[test]
    fn transfer_paradigm_mismatch() {
        let train = config("small_corridor", AgentVariant::SubjectiveQuery, 2, 1);
        let test = config("large_corridor", AgentVariant::ObjectiveSarsa, 2, 1);
        assert!(matches!(run_transfer_detailed(&train, &test), Err(Error::ParadigmMismatch { .. })));
        let test = config("large_corridor", AgentVariant::SubjectiveSarsa, 2, 1);
        assert!(matches!(run_transfer_detailed(&train, &test), Err(Error::InvalidConfig(_))));
    }
}
