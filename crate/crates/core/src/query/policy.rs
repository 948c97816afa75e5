use std::fmt;

use indexmap::IndexMap;
use rand::Rng;

use super::SensorimotorState;
use crate::gridworld::{Motor, Perception};
use crate::rl::{maximal_by, pick_uniform, AgentParams};
use crate::Error;

/// Identifier of a latent state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatentId(pub usize);

impl LatentId {
    /// The single latent state grounded directly in sensorimotor interaction.
    pub const GROUND: LatentId = LatentId(0);
}

impl fmt::Display for LatentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

/// Settings specific to query selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryParams {
    /// Minimum inducibility for a query to be considered.
    pub threshold: f64,
    /// Inducibility assumed for never-tried queries.
    pub initial_inducibility: f64,
    /// Length of the recorded model-experience history.
    pub history_len: usize,
}

impl Default for QueryParams {
    fn default() -> Self {
        QueryParams {
            threshold: 0.5,
            initial_inducibility: 0.5,
            history_len: 10,
        }
    }
}

impl QueryParams {
    pub fn validate(&self) -> Result<(), Error> {
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(Error::InvalidParams(format!(
                "threshold c must lie in [0, 1], got {}",
                self.threshold
            )));
        }
        if !(0.0..=1.0).contains(&self.initial_inducibility) {
            return Err(Error::InvalidParams(format!(
                "initial inducibility must lie in [0, 1], got {}",
                self.initial_inducibility
            )));
        }
        Ok(())
    }
}

/// Learned probability that a query succeeds from a given state.
#[derive(Debug, Clone, PartialEq)]
pub struct InducibilityTable {
    entries: IndexMap<(SensorimotorState, SensorimotorState), f64>,
    default: f64,
}

impl InducibilityTable {
    pub fn new(default: f64) -> Self {
        InducibilityTable {
            entries: IndexMap::new(),
            default,
        }
    }

    pub fn get(&self, from: &SensorimotorState, query: &SensorimotorState) -> f64 {
        self.entries
            .get(&(*from, *query))
            .copied()
            .unwrap_or(self.default)
    }

    pub fn set(&mut self, from: SensorimotorState, query: SensorimotorState, value: f64) {
        self.entries.insert((from, query), value);
    }

    /// `I(x, q) += alpha * (s - I(x, q))` with `s` 1 on success, 0 otherwise.
    pub fn update(&mut self, from: &SensorimotorState, query: &SensorimotorState, success: bool, alpha: f64) {
        let target = if success { 1.0 } else { 0.0 };
        let entry = self.entries.entry((*from, *query)).or_insert(self.default);
        *entry += alpha * (target - *entry);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SensorimotorState, &SensorimotorState, f64)> {
        self.entries.iter().map(|((x, q), v)| (x, q, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Policy bundle of a latent state: an abstract value function over
/// sensorimotor states and the inducibility model.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentPolicy {
    id: LatentId,
    values: IndexMap<SensorimotorState, f64>,
    inducibility: InducibilityTable,
    params: AgentParams,
    threshold: f64,
}

impl LatentPolicy {
    pub fn new(id: LatentId, params: AgentParams, query: QueryParams) -> Self {
        LatentPolicy {
            id,
            values: IndexMap::new(),
            inducibility: InducibilityTable::new(query.initial_inducibility),
            params,
            threshold: query.threshold,
        }
    }

    pub fn id(&self) -> LatentId {
        self.id
    }

    pub fn params(&self) -> &AgentParams {
        &self.params
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn inducibility(&self) -> &InducibilityTable {
        &self.inducibility
    }

    pub fn inducibility_mut(&mut self) -> &mut InducibilityTable {
        &mut self.inducibility
    }

    pub fn value(&self, x: &SensorimotorState) -> f64 {
        self.values
            .get(x)
            .copied()
            .unwrap_or(self.params.initial_value)
    }

    pub fn set_value(&mut self, x: SensorimotorState, value: f64) {
        self.values.insert(x, value);
    }

    pub fn values(&self) -> impl Iterator<Item = (&SensorimotorState, f64)> {
        self.values.iter().map(|(x, v)| (x, *v))
    }

    /// Normalised on-policy update of the state's value with the reward that
    /// arrived together with it:
    ///
    /// `V(x) <- (V(x) + alpha * (r + gamma * V(x') - V(x))) / (1 + alpha)`
    ///
    /// `next` is `None` when `x` ended the episode.
    pub fn value_update(&mut self, x: &SensorimotorState, reward: f64, next: Option<&SensorimotorState>) {
        let AgentParams { alpha, gamma, .. } = self.params;
        let current = self.value(x);
        let next_value = next.map_or(0.0, |n| self.value(n));
        let updated = (current + alpha * (reward + gamma * next_value - current)) / (1.0 + alpha);
        self.values.insert(*x, updated);
    }

    pub fn inducibility_update(&mut self, x: &SensorimotorState, query: &SensorimotorState, success: bool) {
        let alpha = self.params.alpha;
        self.inducibility.update(x, query, success, alpha);
    }

    /// Chooses the next query from `x`.
    ///
    /// Greedy: among queries whose inducibility reaches the threshold, the one
    /// with the highest value; if none qualifies, the most inducible one (value,
    /// then uniform, breaks ties). Exploring: a uniformly random motor command
    /// completed with its most inducible perception.
    pub fn select_query<R: Rng + ?Sized>(
        &self,
        x: &SensorimotorState,
        known_perceptions: &[Perception],
        motors: &[Motor],
        epsilon: f64,
        rng: &mut R,
    ) -> Result<SensorimotorState, Error> {
        if motors.is_empty() {
            return Err(Error::EmptyActions);
        }
        if epsilon > 0.0 && rng.gen_bool(epsilon.min(1.0)) {
            let motor = pick_uniform(motors, rng);
            let completions = maximal_by(known_perceptions.iter().copied(), |p| {
                self.inducibility.get(x, &SensorimotorState::new(Some(motor), p))
            });
            let perception = match completions.as_slice() {
                [] => x.perception,
                _ => pick_uniform(&completions, rng),
            };
            return Ok(SensorimotorState::new(Some(motor), perception));
        }
        self.greedy_query(x, known_perceptions, motors, rng)
    }

    pub fn greedy_query<R: Rng + ?Sized>(
        &self,
        x: &SensorimotorState,
        known_perceptions: &[Perception],
        motors: &[Motor],
        rng: &mut R,
    ) -> Result<SensorimotorState, Error> {
        if motors.is_empty() {
            return Err(Error::EmptyActions);
        }
        let perceptions: &[Perception] = if known_perceptions.is_empty() {
            std::slice::from_ref(&x.perception)
        } else {
            known_perceptions
        };
        let queries: Vec<SensorimotorState> = motors
            .iter()
            .flat_map(|&m| perceptions.iter().map(move |&p| SensorimotorState::new(Some(m), p)))
            .collect();

        let candidates: Vec<SensorimotorState> = queries
            .iter()
            .copied()
            .filter(|q| self.inducibility.get(x, q) >= self.threshold)
            .collect();
        let best = if candidates.is_empty() {
            let most_inducible = maximal_by(queries.iter().copied(), |q| self.inducibility.get(x, &q));
            maximal_by(most_inducible, |q| self.value(&q))
        } else {
            maximal_by(candidates, |q| self.value(&q))
        };
        Ok(pick_uniform(&best, rng))
    }
}
