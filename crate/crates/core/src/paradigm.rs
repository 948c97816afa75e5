//! The two interaction paradigms behind a common interface, so Markov agents
//! can be written once for both.

use std::fmt;
use std::hash::Hash;

use crate::gridworld::{
    objective_step, perceive, subjective_step, Cell, Direction, GridMap, Motor, Perception, Pose,
    RewardSpec, StepError, StepOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Paradigm {
    Objective,
    Subjective,
}

impl fmt::Display for Paradigm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Paradigm::Objective => "objective",
            Paradigm::Subjective => "subjective",
        })
    }
}

pub trait Interaction {
    /// Ground-truth state of the agent in the world.
    type State: Copy + fmt::Debug;
    /// What the agent observes; the only key its tables may use.
    type Obs: Copy + Eq + Hash + Ord + fmt::Debug + fmt::Display + 'static;
    type Action: Copy + Eq + Hash + Ord + fmt::Debug + fmt::Display + 'static;

    const PARADIGM: Paradigm;

    fn actions() -> &'static [Self::Action];
    fn reset(map: &GridMap) -> Self::State;
    fn observe(map: &GridMap, state: &Self::State) -> Self::Obs;
    fn step(
        map: &GridMap,
        state: Self::State,
        action: Self::Action,
        spec: &RewardSpec,
    ) -> Result<StepOutcome<Self::State, Self::Obs>, StepError>;
}

/// Absolute position in, compass moves out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Objective;

/// Surrounding cells in, turns and forward moves out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subjective;

impl Interaction for Objective {
    type State = Cell;
    type Obs = Cell;
    type Action = Direction;

    const PARADIGM: Paradigm = Paradigm::Objective;

    fn actions() -> &'static [Direction] {
        &Direction::ALL
    }

    fn reset(map: &GridMap) -> Cell {
        map.start()
    }

    fn observe(_map: &GridMap, state: &Cell) -> Cell {
        *state
    }

    fn step(
        map: &GridMap,
        state: Cell,
        action: Direction,
        spec: &RewardSpec,
    ) -> Result<StepOutcome<Cell, Cell>, StepError> {
        objective_step(map, state, action, spec)
    }
}

impl Interaction for Subjective {
    type State = Pose;
    type Obs = Perception;
    type Action = Motor;

    const PARADIGM: Paradigm = Paradigm::Subjective;

    fn actions() -> &'static [Motor] {
        &Motor::ALL
    }

    fn reset(map: &GridMap) -> Pose {
        map.start_pose()
    }

    fn observe(map: &GridMap, state: &Pose) -> Perception {
        perceive(map, *state)
    }

    fn step(
        map: &GridMap,
        state: Pose,
        action: Motor,
        spec: &RewardSpec,
    ) -> Result<StepOutcome<Pose, Perception>, StepError> {
        subjective_step(map, state, action, spec)
    }
}
