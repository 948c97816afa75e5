use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::gridworld::{BuiltinEnv, GridMap, RewardSpec};
use crate::paradigm::Paradigm;
use crate::query::QueryParams;
use crate::rl::{AgentParams, MarkovVariant};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgentVariant {
    ObjectiveSarsa,
    ObjectiveModelBased,
    SubjectiveSarsa,
    SubjectiveModelBased,
    SubjectiveQuery,
}

impl AgentVariant {
    pub const ALL: [AgentVariant; 5] = [
        AgentVariant::ObjectiveSarsa,
        AgentVariant::ObjectiveModelBased,
        AgentVariant::SubjectiveSarsa,
        AgentVariant::SubjectiveModelBased,
        AgentVariant::SubjectiveQuery,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AgentVariant::ObjectiveSarsa => "objective_sarsa",
            AgentVariant::ObjectiveModelBased => "objective_model_based",
            AgentVariant::SubjectiveSarsa => "subjective_sarsa",
            AgentVariant::SubjectiveModelBased => "subjective_model_based",
            AgentVariant::SubjectiveQuery => "subjective_query",
        }
    }

    pub fn paradigm(self) -> Paradigm {
        match self {
            AgentVariant::ObjectiveSarsa | AgentVariant::ObjectiveModelBased => Paradigm::Objective,
            _ => Paradigm::Subjective,
        }
    }

    /// The Markov learner behind this variant, `None` for the query agent.
    pub fn markov_variant(self) -> Option<MarkovVariant> {
        match self {
            AgentVariant::ObjectiveSarsa | AgentVariant::SubjectiveSarsa => Some(MarkovVariant::Sarsa),
            AgentVariant::ObjectiveModelBased | AgentVariant::SubjectiveModelBased => {
                Some(MarkovVariant::ModelBased)
            }
            AgentVariant::SubjectiveQuery => None,
        }
    }
}

impl fmt::Display for AgentVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgentVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AgentVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown agent {s:?} (expected one of {})",
                    AgentVariant::ALL.map(AgentVariant::name).join(", ")
                ))
            })
    }
}

/// Everything needed to reproduce an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Builtin environment name or path to an ASCII map file.
    pub env: String,
    pub agent: AgentVariant,
    pub episodes: usize,
    pub runs: usize,
    pub step_cap: usize,
    pub params: AgentParams,
    pub query: QueryParams,
    pub rewards: RewardSpec,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            env: BuiltinEnv::Labyrinth.name().to_string(),
            agent: AgentVariant::SubjectiveQuery,
            episodes: 30,
            runs: 20,
            step_cap: 3000,
            params: AgentParams::default(),
            query: QueryParams::default(),
            rewards: RewardSpec::default(),
            seed: 0,
            output: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, Error> {
    value
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("invalid value {value:?} for {key}")))
}

impl ExperimentConfig {
    pub fn new(env: impl Into<String>, agent: AgentVariant) -> Self {
        ExperimentConfig {
            env: env.into(),
            agent,
            ..ExperimentConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be at least 1".into()));
        }
        if self.episodes == 0 {
            return Err(Error::InvalidConfig("episodes must be at least 1".into()));
        }
        if self.step_cap == 0 {
            return Err(Error::InvalidConfig("step_cap must be at least 1".into()));
        }
        self.params.validate()?;
        self.query.validate()
    }

    /// Resolves `env` to a builtin map or, failing that, a map file.
    pub fn load_map(&self) -> Result<GridMap, Error> {
        load_map(&self.env)
    }

    /// Sets one field from its textual key and value. Keys use `_` or `-`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Error> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "env" => self.env = value.to_string(),
            "agent" => self.agent = value.parse()?,
            "episodes" => self.episodes = parse(key, value)?,
            "runs" => self.runs = parse(key, value)?,
            "step_cap" => self.step_cap = parse(key, value)?,
            "alpha" => self.params.alpha = parse(key, value)?,
            "gamma" => self.params.gamma = parse(key, value)?,
            "epsilon" => self.params.epsilon = parse(key, value)?,
            "c" => self.query.threshold = parse(key, value)?,
            "v0" => self.params.initial_value = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "history" => self.query.history_len = parse(key, value)?,
            "out" => self.output = Some(PathBuf::from(value)),
            "step_reward" => self.rewards.step_reward = parse(key, value)?,
            "goal_reward" => self.rewards.goal_reward = parse(key, value)?,
            other => return Err(Error::InvalidConfig(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file. Blank lines and `#` comments are ignored.
    pub fn apply_key_values(&mut self, text: &str) -> Result<(), Error> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("line {}: expected key = value", n + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_key_values(text: &str) -> Result<Self, Error> {
        let mut config = ExperimentConfig::default();
        config.apply_key_values(text)?;
        Ok(config)
    }

    /// Serialises into the `key = value` format read by [`apply_key_values`](Self::apply_key_values).
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        line("env", self.env.clone());
        line("agent", self.agent.to_string());
        line("episodes", self.episodes.to_string());
        line("runs", self.runs.to_string());
        line("step_cap", self.step_cap.to_string());
        line("alpha", self.params.alpha.to_string());
        line("gamma", self.params.gamma.to_string());
        line("epsilon", self.params.epsilon.to_string());
        line("c", self.query.threshold.to_string());
        line("v0", self.params.initial_value.to_string());
        line("seed", self.seed.to_string());
        line("history", self.query.history_len.to_string());
        line("step_reward", self.rewards.step_reward.to_string());
        line("goal_reward", self.rewards.goal_reward.to_string());
        if let Some(out_path) = &self.output {
            line("out", out_path.display().to_string());
        }
        out
    }
}

pub(crate) fn load_map(env: &str) -> Result<GridMap, Error> {
    if let Ok(builtin) = env.parse::<BuiltinEnv>() {
        return Ok(builtin.map());
    }
    let path = Path::new(env);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map_or_else(|| env.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(GridMap::parse(&text)?.with_name(name));
    }
    Err(crate::gridworld::MapError::UnknownEnv(env.to_string()).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = ExperimentConfig::default();
        assert_eq!(c.params.alpha, 0.5);
        assert_eq!(c.params.gamma, 0.5);
        assert_eq!(c.params.initial_value, 5.0);
        assert_eq!(c.params.epsilon, 0.1);
        assert_eq!(c.query.threshold, 0.5);
        assert_eq!(c.step_cap, 3000);
        assert_eq!(c.runs, 20);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn key_value_round_trip() {
        let mut c = ExperimentConfig::new("small_corridor", AgentVariant::SubjectiveSarsa);
        c.seed = 42;
        c.params.epsilon = 0.05;
        c.output = Some("out.csv".into());
        let parsed = ExperimentConfig::from_key_values(&c.to_key_values()).unwrap();
        assert_eq!(parsed, c);
    }

    #[test]
    fn key_value_errors() {
        assert!(ExperimentConfig::from_key_values("colour = red").is_err());
        assert!(ExperimentConfig::from_key_values("runs = many").is_err());
        assert!(ExperimentConfig::from_key_values("runs").is_err());
        let c = ExperimentConfig::from_key_values("# comment\n\nstep-cap = 10\n").unwrap();
        assert_eq!(c.step_cap, 10);
    }

    #[test]
    fn invalid_counts() {
        for key in ["runs", "episodes", "step_cap"] {
            let mut c = ExperimentConfig::default();
            c.set(key, "0").unwrap();
            assert!(c.validate().is_err(), "{key}");
        }
    }

    #[test]
    fn agent_names_round_trip() {
        for v in AgentVariant::ALL {
            assert_eq!(v.name().parse::<AgentVariant>().unwrap(), v);
        }
        assert!("q_agent".parse::<AgentVariant>().is_err());
    }

    #[test]
    fn map_resolution() {
        assert_eq!(load_map("small_corridor").unwrap().name(), "small_corridor");
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.txt");
        std::fs::write(&path, "####\n#SG#\n####\n").unwrap();
        assert_eq!(load_map(path.to_str().unwrap()).unwrap().name(), "tiny");
        assert!(load_map("no_such_env").is_err());
    }
}
