use crate::gridworld::RewardSpec;

/// Summary of one episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeRecord {
    pub episode: usize,
    pub reward: f64,
    pub steps: usize,
    /// The step cap was hit before the goal.
    pub truncated: bool,
}

impl EpisodeRecord {
    pub(crate) fn empty(episode: usize) -> Self {
        EpisodeRecord {
            episode,
            reward: 0.0,
            steps: 0,
            truncated: true,
        }
    }

    /// Reward expected from the step count alone under `spec`.
    pub fn expected_reward(&self, spec: &RewardSpec) -> f64 {
        if self.truncated {
            spec.step_reward * self.steps as f64
        } else {
            spec.episode_return(self.steps)
        }
    }
}
