//! Grid environments and the two ways of interacting with them.
//!
//! *Objective* interaction observes the absolute cell and moves in compass
//! directions. *Subjective* interaction observes the four neighbouring cells
//! relative to the agent's heading and acts by turning or moving forward.

mod map;
mod oracle;
mod step;

use std::fmt;

pub use map::{builtin_env, BuiltinEnv, GridMap, MapError};
pub use oracle::{enumerate_perceptions, optimal_objective_return, shortest_path};
pub use step::{objective_step, perceive, subjective_step, StepError, StepOutcome};

/// Grid coordinate `(col, row)`, origin bottom-left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: i32,
    pub row: i32,
}

impl Cell {
    pub const fn new(col: i32, row: i32) -> Self {
        Cell { col, row }
    }

    pub fn offset(self, direction: Direction) -> Cell {
        let (dc, dr) = direction.delta();
        Cell::new(self.col + dc, self.row + dr)
    }

    pub fn neighbors(self) -> [Cell; 4] {
        Direction::ALL.map(|d| self.offset(d))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Occupancy {
    Free,
    Wall,
}

impl Occupancy {
    pub fn symbol(self) -> char {
        match self {
            Occupancy::Free => '.',
            Occupancy::Wall => '#',
        }
    }
}

/// Compass direction. Used both as a heading and as an objective move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    North,
    East,
    South,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::North,
        Direction::East,
        Direction::South,
        Direction::West,
    ];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::North => (0, 1),
            Direction::East => (1, 0),
            Direction::South => (0, -1),
            Direction::West => (-1, 0),
        }
    }

    pub fn turn_right(self) -> Direction {
        match self {
            Direction::North => Direction::East,
            Direction::East => Direction::South,
            Direction::South => Direction::West,
            Direction::West => Direction::North,
        }
    }

    pub fn turn_left(self) -> Direction {
        match self {
            Direction::North => Direction::West,
            Direction::West => Direction::South,
            Direction::South => Direction::East,
            Direction::East => Direction::North,
        }
    }

    pub fn reverse(self) -> Direction {
        self.turn_right().turn_right()
    }

    pub fn letter(self) -> char {
        match self {
            Direction::North => 'N',
            Direction::East => 'E',
            Direction::South => 'S',
            Direction::West => 'W',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Subjective motor command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Motor {
    TurnLeft,
    TurnRight,
    Forward,
}

impl Motor {
    pub const ALL: [Motor; 3] = [Motor::TurnLeft, Motor::TurnRight, Motor::Forward];

    pub fn is_turn(self) -> bool {
        !matches!(self, Motor::Forward)
    }

    pub fn letter(self) -> char {
        match self {
            Motor::TurnLeft => 'L',
            Motor::TurnRight => 'R',
            Motor::Forward => 'F',
        }
    }
}

impl fmt::Display for Motor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Agent position plus heading for subjective interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pose {
    pub position: Cell,
    pub heading: Direction,
}

impl Pose {
    pub const fn new(position: Cell, heading: Direction) -> Self {
        Pose { position, heading }
    }
}

/// Heading every subjective episode starts with.
pub const START_HEADING: Direction = Direction::North;

impl GridMap {
    pub fn start_pose(&self) -> Pose {
        Pose::new(self.start(), START_HEADING)
    }
}

/// Heading-relative occupancy of the four orthogonal neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perception {
    pub front: Occupancy,
    pub right: Occupancy,
    pub back: Occupancy,
    pub left: Occupancy,
}

impl Perception {
    pub const fn new(front: Occupancy, right: Occupancy, back: Occupancy, left: Occupancy) -> Self {
        Perception {
            front,
            right,
            back,
            left,
        }
    }

    pub fn components(self) -> [Occupancy; 4] {
        [self.front, self.right, self.back, self.left]
    }

    /// The same surroundings seen after turning right by 90 degrees.
    pub fn rotated_right(self) -> Perception {
        Perception::new(self.right, self.back, self.left, self.front)
    }

    pub fn free_count(self) -> usize {
        self.components()
            .iter()
            .filter(|&&o| o == Occupancy::Free)
            .count()
    }

    pub fn is_crossroad(self) -> bool {
        self.free_count() == 4
    }
}

impl fmt::Display for Perception {
    /// Four symbols in front/right/back/left order, `.` free and `#` wall.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in self.components() {
            write!(f, "{}", o.symbol())?;
        }
        Ok(())
    }
}

/// Reward scheme: every step costs `step_reward` except the one entering the
/// goal, which pays `goal_reward` instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardSpec {
    pub step_reward: f64,
    pub goal_reward: f64,
}

impl Default for RewardSpec {
    fn default() -> Self {
        RewardSpec {
            step_reward: -1.0,
            goal_reward: 10.0,
        }
    }
}

impl RewardSpec {
    pub fn reward(&self, reached_goal: bool) -> f64 {
        if reached_goal {
            self.goal_reward
        } else {
            self.step_reward
        }
    }

    /// Return of an episode that reaches the goal after `steps` steps.
    pub fn episode_return(&self, steps: usize) -> f64 {
        self.goal_reward + self.step_reward * (steps as f64 - 1.0)
    }
}
