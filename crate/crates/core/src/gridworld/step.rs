use super::{Cell, Direction, GridMap, Motor, Perception, Pose, RewardSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("position {0} is not a free cell")]
    NotFree(Cell),
}

/// Result of a single environment step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome<S, O> {
    pub state: S,
    pub observation: O,
    pub reward: f64,
    pub done: bool,
}

fn ensure_free(map: &GridMap, cell: Cell) -> Result<(), StepError> {
    if map.is_free(cell) {
        Ok(())
    } else {
        Err(StepError::NotFree(cell))
    }
}

/// Moves one cell in a compass direction unless a wall is in the way.
pub fn objective_step(
    map: &GridMap,
    position: Cell,
    action: Direction,
    spec: &RewardSpec,
) -> Result<StepOutcome<Cell, Cell>, StepError> {
    ensure_free(map, position)?;
    let target = position.offset(action);
    let next = if map.is_free(target) { target } else { position };
    let done = next == map.goal();
    Ok(StepOutcome {
        state: next,
        observation: next,
        reward: spec.reward(done),
        done,
    })
}

/// Turns in place or moves forward unless a wall is in the way.
pub fn subjective_step(
    map: &GridMap,
    pose: Pose,
    action: Motor,
    spec: &RewardSpec,
) -> Result<StepOutcome<Pose, Perception>, StepError> {
    ensure_free(map, pose.position)?;
    let next = match action {
        Motor::TurnLeft => Pose::new(pose.position, pose.heading.turn_left()),
        Motor::TurnRight => Pose::new(pose.position, pose.heading.turn_right()),
        Motor::Forward => {
            let target = pose.position.offset(pose.heading);
            if map.is_free(target) {
                Pose::new(target, pose.heading)
            } else {
                pose
            }
        }
    };
    let done = next.position == map.goal();
    Ok(StepOutcome {
        state: next,
        observation: perceive(map, next),
        reward: spec.reward(done),
        done,
    })
}

/// Occupancy of the four neighbours in the agent's frame.
pub fn perceive(map: &GridMap, pose: Pose) -> Perception {
    let h = pose.heading;
    let at = |d: Direction| map.occupancy(pose.position.offset(d));
    Perception::new(at(h), at(h.turn_right()), at(h.reverse()), at(h.turn_left()))
}
