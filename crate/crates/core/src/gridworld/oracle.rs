//! Geometry oracles: shortest paths and the reachable perception alphabet.

use std::collections::BTreeSet;

use super::step::{perceive, StepError};
use super::{Cell, Direction, GridMap, Perception, Pose, RewardSpec};

/// Length in moves of the shortest 4-connected path, `None` if unreachable.
pub fn shortest_path(map: &GridMap, from: Cell, to: Cell) -> Result<Option<usize>, StepError> {
    for cell in [from, to] {
        if !map.is_free(cell) {
            return Err(StepError::NotFree(cell));
        }
    }
    let table = map.distances_from(from);
    Ok(map.distance_lookup(&table, to))
}

/// Return of an optimal objective episode from start to goal.
pub fn optimal_objective_return(map: &GridMap, spec: &RewardSpec) -> Option<f64> {
    shortest_path(map, map.start(), map.goal())
        .ok()
        .flatten()
        .map(|moves| spec.episode_return(moves))
}

/// Every perception produced by some free cell and heading.
pub fn enumerate_perceptions(map: &GridMap) -> BTreeSet<Perception> {
    map.free_cells()
        .flat_map(|cell| Direction::ALL.map(|h| perceive(map, Pose::new(cell, h))))
        .collect()
}
