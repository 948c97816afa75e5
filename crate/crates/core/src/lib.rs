//! Tabular reinforcement learning in gridworlds: query-process agents over
//! sensorimotor states, Markov baselines, and a seeded experiment harness.

pub mod episode;
mod error;
pub mod gridworld;
pub mod harness;
pub mod paradigm;
pub mod query;
pub mod rl;

pub use episode::EpisodeRecord;
pub use error::{Error, Result};
pub use gridworld::{builtin_env, BuiltinEnv, Cell, Direction, GridMap, Motor, Perception, Pose, RewardSpec};
pub use harness::{
    detect_convergence, policy_complexity, run_experiment, run_transfer, AgentVariant, ExperimentConfig,
    SeriesStats,
};
pub use paradigm::{Interaction, Objective, Paradigm, Subjective};
pub use query::{QueryAgent, SensorimotorState};
pub use rl::{AgentParams, MarkovAgent, MarkovVariant};
