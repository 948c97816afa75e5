//! Fixtures shared by the criterion benches.

use qprl_core::harness::Agent;
use qprl_core::query::QueryParams;
use qprl_core::{AgentParams, AgentVariant, GridMap, RewardSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An agent that has already run `episodes` learning episodes on `map`.
pub fn trained(variant: AgentVariant, map: &GridMap, episodes: usize, step_cap: usize) -> Agent {
    let mut agent = Agent::new(variant, AgentParams::default(), QueryParams::default()).expect("default parameters are valid");
    let mut rng = rng(17);
    let spec = RewardSpec::default();
    for episode in 0..episodes {
        agent
            .run_episode(map, episode, &mut rng, step_cap, &spec, None)
            .expect("builtin maps do not fail");
    }
    agent
}
