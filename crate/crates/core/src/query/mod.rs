//! Query-process agent grounded in sensorimotor states.
//!
//! The agent never separates perception from action. Its state is the pair of
//! the last motor command and the current perception, and instead of choosing
//! an action it *queries* the sensorimotor state it wants to be in next. The
//! motor half of a query always executes; the query succeeds only if the
//! environment then delivers the queried perception.

mod agent;
mod policy;

use std::collections::VecDeque;
use std::fmt;

pub use agent::{QueryAgent, StepTrace};
pub use policy::{InducibilityTable, LatentId, LatentPolicy, QueryParams};

use crate::gridworld::{Motor, Perception};

/// Last motor command (`None` at episode start) paired with the current perception.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SensorimotorState {
    pub last_action: Option<Motor>,
    pub perception: Perception,
}

impl SensorimotorState {
    pub const fn new(last_action: Option<Motor>, perception: Perception) -> Self {
        SensorimotorState {
            last_action,
            perception,
        }
    }
}

impl fmt::Display for SensorimotorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let motor = self.last_action.map_or('-', Motor::letter);
        write!(f, "{motor}/{}", self.perception)
    }
}

pub fn condense(last_action: Option<Motor>, perception: Perception) -> SensorimotorState {
    SensorimotorState::new(last_action, perception)
}

/// Whether the environment accepted `queried`, given the perception that
/// followed its motor command.
pub fn resolve_query(queried: &SensorimotorState, next_perception: Perception) -> bool {
    debug_assert!(queried.last_action.is_some(), "queries always carry a motor command");
    queried.perception == next_perception
}

/// A sensorimotor state and the reward received with it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueExperience {
    pub state: SensorimotorState,
    pub reward: f64,
}

/// A query issued from `observed` and whether it succeeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelExperience {
    pub observed: SensorimotorState,
    pub queried: SensorimotorState,
    pub success: bool,
}

/// Bounded record of the most recent model experiences, oldest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct History {
    capacity: usize,
    items: VecDeque<ModelExperience>,
}

impl History {
    pub fn new(capacity: usize) -> Self {
        History {
            capacity,
            items: VecDeque::with_capacity(capacity),
        }
    }

    pub fn push(&mut self, experience: ModelExperience) {
        if self.capacity == 0 {
            return;
        }
        if self.items.len() == self.capacity {
            self.items.pop_front();
        }
        self.items.push_back(experience);
    }

    pub fn clear(&mut self) {
        self.items.clear();
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ModelExperience> {
        self.items.iter()
    }
}
