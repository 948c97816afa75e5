//! Markov baselines: online SARSA and a model-based planner, usable with
//! either interaction paradigm.

mod agent;
mod planner;
mod select;
mod tables;

pub use agent::{MarkovAgent, MarkovVariant};
pub use planner::{PlanError, Planner};
pub use select::{greedy_action, select_action};
pub(crate) use select::{maximal_by, pick_uniform};
pub use tables::{RewardTable, Successor, TabularValueFunction, TransitionTable};

use crate::Error;

/// Learning parameters shared by every agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentParams {
    /// Learning factor.
    pub alpha: f64,
    /// Discount factor.
    pub gamma: f64,
    /// Exploration probability.
    pub epsilon: f64,
    /// Optimistic value of anything not yet experienced.
    pub initial_value: f64,
}

impl Default for AgentParams {
    fn default() -> Self {
        AgentParams {
            alpha: 0.5,
            gamma: 0.5,
            epsilon: 0.1,
            initial_value: 5.0,
        }
    }
}

impl AgentParams {
    pub fn validate(&self) -> Result<(), Error> {
        for (name, value) in [
            ("alpha", self.alpha),
            ("gamma", self.gamma),
            ("epsilon", self.epsilon),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidParams(format!(
                    "{name} must lie in [0, 1], got {value}"
                )));
            }
        }
        if !self.initial_value.is_finite() {
            return Err(Error::InvalidParams(format!(
                "initial value must be finite, got {}",
                self.initial_value
            )));
        }
        Ok(())
    }
}
