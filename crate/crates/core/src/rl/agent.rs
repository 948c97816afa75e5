use std::fmt;
use std::marker::PhantomData;

use rand::Rng;

use super::{select_action, AgentParams, Planner, RewardTable, Successor, TabularValueFunction, TransitionTable};
use crate::episode::EpisodeRecord;
use crate::gridworld::{GridMap, RewardSpec};
use crate::paradigm::Interaction;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkovVariant {
    /// Model-free online TD learning.
    Sarsa,
    /// Learns transition and reward tables and replans after every step.
    ModelBased,
}

impl fmt::Display for MarkovVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MarkovVariant::Sarsa => "sarsa",
            MarkovVariant::ModelBased => "model_based",
        })
    }
}

/// Tabular agent whose state is the paradigm's observation.
#[derive(Debug, Clone)]
pub struct MarkovAgent<I: Interaction> {
    variant: MarkovVariant,
    params: AgentParams,
    /// Learned values (SARSA) or the latest plan (model-based).
    values: TabularValueFunction<I::Obs, I::Action>,
    transitions: TransitionTable<I::Obs, I::Action>,
    rewards: RewardTable<I::Obs, I::Action>,
    planner: Planner,
    _paradigm: PhantomData<I>,
}

impl<I: Interaction> MarkovAgent<I> {
    pub fn new(variant: MarkovVariant, params: AgentParams) -> Result<Self, Error> {
        params.validate()?;
        Ok(MarkovAgent {
            variant,
            params,
            values: TabularValueFunction::new(params.initial_value),
            transitions: TransitionTable::new(),
            rewards: RewardTable::new(),
            planner: Planner::new(params.gamma, params.initial_value),
            _paradigm: PhantomData,
        })
    }

    pub fn variant(&self) -> MarkovVariant {
        self.variant
    }

    pub fn params(&self) -> &AgentParams {
        &self.params
    }

    /// The table actions are selected from.
    pub fn values(&self) -> &TabularValueFunction<I::Obs, I::Action> {
        &self.values
    }

    pub fn transitions(&self) -> &TransitionTable<I::Obs, I::Action> {
        &self.transitions
    }

    pub fn rewards(&self) -> &RewardTable<I::Obs, I::Action> {
        &self.rewards
    }

    fn act<R: Rng + ?Sized>(&self, obs: &I::Obs, epsilon: f64, rng: &mut R) -> Result<I::Action, Error> {
        select_action(&self.values, obs, I::actions(), epsilon, rng)
    }

    /// Runs one episode from the map's start, learning as it goes.
    pub fn run_episode<R: Rng + ?Sized>(
        &mut self,
        map: &GridMap,
        episode: usize,
        rng: &mut R,
        step_cap: usize,
        spec: &RewardSpec,
    ) -> Result<EpisodeRecord, Error> {
        self.run_episode_with(map, episode, rng, step_cap, spec, self.params.epsilon)
    }

    /// Like [`run_episode`](Self::run_episode) with an explicit exploration rate.
    pub fn run_episode_with<R: Rng + ?Sized>(
        &mut self,
        map: &GridMap,
        episode: usize,
        rng: &mut R,
        step_cap: usize,
        spec: &RewardSpec,
        epsilon: f64,
    ) -> Result<EpisodeRecord, Error> {
        let mut record = EpisodeRecord::empty(episode);
        if step_cap == 0 {
            return Ok(record);
        }
        let AgentParams { alpha, gamma, .. } = self.params;
        let mut state = I::reset(map);
        let mut obs = I::observe(map, &state);
        let mut action = self.act(&obs, epsilon, rng)?;

        loop {
            let outcome = I::step(map, state, action, spec)?;
            record.steps += 1;
            record.reward += outcome.reward;

            let next_obs = outcome.observation;
            let next_action = match self.variant {
                MarkovVariant::Sarsa => {
                    if outcome.done {
                        self.values
                            .sarsa_update(&obs, action, outcome.reward, None, alpha, gamma);
                        None
                    } else {
                        let next_action = self.act(&next_obs, epsilon, rng)?;
                        self.values.sarsa_update(
                            &obs,
                            action,
                            outcome.reward,
                            Some((&next_obs, next_action)),
                            alpha,
                            gamma,
                        );
                        Some(next_action)
                    }
                }
                MarkovVariant::ModelBased => {
                    let successor = if outcome.done {
                        Successor::Terminal
                    } else {
                        Successor::State(next_obs)
                    };
                    self.transitions.observe(&obs, action, successor, alpha);
                    self.rewards.observe(&obs, action, outcome.reward, alpha);
                    self.values = self.planner.plan(&self.transitions, &self.rewards, I::actions())?;
                    if outcome.done {
                        None
                    } else {
                        Some(self.act(&next_obs, epsilon, rng)?)
                    }
                }
            };

            if outcome.done {
                record.truncated = false;
                return Ok(record);
            }
            if record.steps >= step_cap {
                return Ok(record);
            }
            state = outcome.state;
            obs = next_obs;
            action = next_action.expect("non-terminal step selects an action");
        }
    }

    /// Follows the greedy policy without learning; returns the record.
    pub fn greedy_rollout<R: Rng + ?Sized>(
        &self,
        map: &GridMap,
        rng: &mut R,
        step_cap: usize,
        spec: &RewardSpec,
    ) -> Result<EpisodeRecord, Error> {
        let mut record = EpisodeRecord::empty(0);
        let mut state = I::reset(map);
        while record.steps < step_cap {
            let obs = I::observe(map, &state);
            let action = self.act(&obs, 0.0, rng)?;
            let outcome = I::step(map, state, action, spec)?;
            record.steps += 1;
            record.reward += outcome.reward;
            if outcome.done {
                record.truncated = false;
                break;
            }
            state = outcome.state;
        }
        Ok(record)
    }
}
