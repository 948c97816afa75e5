use indexmap::{IndexMap, IndexSet};
use rand::Rng;

use super::{condense, resolve_query, History, LatentId, LatentPolicy, ModelExperience, QueryParams, SensorimotorState};
use crate::episode::EpisodeRecord;
use crate::gridworld::{perceive, subjective_step, GridMap, Motor, Perception, RewardSpec};
use crate::rl::AgentParams;
use crate::Error;

/// One step of a query agent's episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTrace {
    pub t: usize,
    pub state: SensorimotorState,
    pub query: SensorimotorState,
    pub success: bool,
    pub reward: f64,
}

/// Base-layer query-process agent.
///
/// Holds one policy bundle per latent state; only the grounded latent state
/// exists here. The perception alphabet is discovered lazily and queries range
/// over the perceptions seen so far.
#[derive(Debug, Clone)]
pub struct QueryAgent {
    policies: IndexMap<LatentId, LatentPolicy>,
    active: LatentId,
    known_perceptions: IndexSet<Perception>,
    history: History,
}

impl QueryAgent {
    pub fn new(params: AgentParams, query: QueryParams) -> Result<Self, Error> {
        params.validate()?;
        query.validate()?;
        let mut policies = IndexMap::new();
        policies.insert(LatentId::GROUND, LatentPolicy::new(LatentId::GROUND, params, query));
        Ok(QueryAgent {
            policies,
            active: LatentId::GROUND,
            known_perceptions: IndexSet::new(),
            history: History::new(query.history_len),
        })
    }

    /// Policy bundle associated with a latent state.
    pub fn apply_latent(&mut self, id: LatentId) -> Result<&mut LatentPolicy, Error> {
        self.policies
            .get_mut(&id)
            .ok_or_else(|| Error::UnknownLatent(id.to_string()))
    }

    pub fn policy(&self) -> &LatentPolicy {
        &self.policies[&self.active]
    }

    pub fn known_perceptions(&self) -> &IndexSet<Perception> {
        &self.known_perceptions
    }

    pub fn history(&self) -> &History {
        &self.history
    }

    fn discover(&mut self, perception: Perception) {
        self.known_perceptions.insert(perception);
    }

    /// Greedy query from `x` under the current policy.
    pub fn greedy_query<R: Rng + ?Sized>(&self, x: &SensorimotorState, rng: &mut R) -> Result<SensorimotorState, Error> {
        let known: Vec<Perception> = self.known_perceptions.iter().copied().collect();
        self.policy().greedy_query(x, &known, &Motor::ALL, rng)
    }

    pub fn run_episode<R: Rng + ?Sized>(
        &mut self,
        map: &GridMap,
        episode: usize,
        rng: &mut R,
        step_cap: usize,
        spec: &RewardSpec,
        trace: Option<&mut Vec<StepTrace>>,
    ) -> Result<EpisodeRecord, Error> {
        let epsilon = self.policy().params().epsilon;
        self.run_episode_with(map, episode, rng, step_cap, spec, epsilon, trace)
    }

    /// One episode of the base-layer loop: condense, query, execute the motor
    /// half, resolve, then update inducibility and value.
    #[allow(clippy::too_many_arguments)]
    pub fn run_episode_with<R: Rng + ?Sized>(
        &mut self,
        map: &GridMap,
        episode: usize,
        rng: &mut R,
        step_cap: usize,
        spec: &RewardSpec,
        epsilon: f64,
        mut trace: Option<&mut Vec<StepTrace>>,
    ) -> Result<EpisodeRecord, Error> {
        let mut record = EpisodeRecord::empty(episode);
        self.history.clear();
        if step_cap == 0 {
            return Ok(record);
        }
        let active = self.active;
        let mut pose = map.start_pose();
        let first = perceive(map, pose);
        self.discover(first);
        let mut x = condense(None, first);
        // Nothing is received with the very first state.
        let mut reward_at_x = 0.0;
        let mut known: Vec<Perception> = self.known_perceptions.iter().copied().collect();

        loop {
            let policy = &self.policies[&active];
            let query = policy.select_query(&x, &known, &Motor::ALL, epsilon, rng)?;
            let motor = query.last_action.expect("queries carry a motor command");

            let outcome = subjective_step(map, pose, motor, spec)?;
            if !self.known_perceptions.contains(&outcome.observation) {
                self.discover(outcome.observation);
                known.push(outcome.observation);
            }
            let success = resolve_query(&query, outcome.observation);
            let next = condense(Some(motor), outcome.observation);

            let policy = self.apply_latent(active)?;
            policy.inducibility_update(&x, &query, success);
            policy.value_update(&x, reward_at_x, Some(&next));
            if outcome.done {
                policy.value_update(&next, outcome.reward, None);
            }
            self.history.push(ModelExperience {
                observed: x,
                queried: query,
                success,
            });
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(StepTrace {
                    t: record.steps,
                    state: x,
                    query,
                    success,
                    reward: outcome.reward,
                });
            }

            record.steps += 1;
            record.reward += outcome.reward;
            if outcome.done {
                record.truncated = false;
                return Ok(record);
            }
            if record.steps >= step_cap {
                return Ok(record);
            }
            pose = outcome.state;
            x = next;
            reward_at_x = outcome.reward;
        }
    }

    /// Follows greedy queries without learning.
    pub fn greedy_rollout<R: Rng + ?Sized>(
        &self,
        map: &GridMap,
        rng: &mut R,
        step_cap: usize,
        spec: &RewardSpec,
    ) -> Result<EpisodeRecord, Error> {
        let mut record = EpisodeRecord::empty(0);
        let mut pose = map.start_pose();
        let mut x = condense(None, perceive(map, pose));
        while record.steps < step_cap {
            let query = self.greedy_query(&x, rng)?;
            let motor = query.last_action.expect("queries carry a motor command");
            let outcome = subjective_step(map, pose, motor, spec)?;
            record.steps += 1;
            record.reward += outcome.reward;
            if outcome.done {
                record.truncated = false;
                break;
            }
            pose = outcome.state;
            x = condense(Some(motor), outcome.observation);
        }
        Ok(record)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::BuiltinEnv;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn agent() -> QueryAgent {
        QueryAgent::new(AgentParams::default(), QueryParams::default()).unwrap()
    }

    #[test]
    fn zero_step_cap() {
        let map = BuiltinEnv::SmallCorridor.map();
        let mut a = agent();
        let record = a
            .run_episode(&map, 0, &mut ChaCha8Rng::seed_from_u64(0), 0, &RewardSpec::default(), None)
            .unwrap();
        assert_eq!(record.reward, 0.0);
        assert!(record.truncated);
    }

    #[test]
    fn latent_lookup() {
        let mut a = agent();
        assert_eq!(a.apply_latent(LatentId::GROUND).unwrap().id(), LatentId::GROUND);
        assert!(matches!(a.apply_latent(LatentId(3)), Err(Error::UnknownLatent(_))));

        let x = SensorimotorState::new(Some(Motor::Forward), perceive(&BuiltinEnv::Labyrinth.map(), BuiltinEnv::Labyrinth.map().start_pose()));
        a.apply_latent(LatentId::GROUND).unwrap().set_value(x, -3.0);
        assert_eq!(a.apply_latent(LatentId::GROUND).unwrap().value(&x), -3.0);
        assert_eq!(a.policy().value(&x), -3.0);
    }

    #[test]
    fn trace_matches_record() {
        let map = BuiltinEnv::SmallCorridor.map();
        let spec = RewardSpec::default();
        let mut a = agent();
        let mut trace = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let record = a.run_episode(&map, 0, &mut rng, 3000, &spec, Some(&mut trace)).unwrap();
        assert_eq!(trace.len(), record.steps);
        assert_eq!(trace.iter().map(|s| s.reward).sum::<f64>(), record.reward);
        assert_eq!(trace[0].state.last_action, None);
        assert!(trace.iter().all(|s| s.query.last_action.is_some()));
        assert_eq!(record.reward, record.expected_reward(&spec));
        assert_eq!(a.history().len(), a.history().capacity().min(record.steps));
        for pair in trace.windows(2) {
            // The state after a step carries the motor half of the query.
            assert_eq!(pair[1].state.last_action, pair[0].query.last_action);
            assert_eq!(pair[0].success, pair[1].state == pair[0].query);
        }
    }

    #[test]
    fn identical_seeds_identical_logs() {
        let map = BuiltinEnv::Labyrinth.map();
        let spec = RewardSpec::default();
        let run = || {
            let mut a = agent();
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            let mut trace = Vec::new();
            for e in 0..3 {
                a.run_episode(&map, e, &mut rng, 500, &spec, Some(&mut trace)).unwrap();
            }
            trace
        };
        let a = run();
        let b = run();
        assert_eq!(a.len(), b.len());
        for (s, t) in a.iter().zip(&b) {
            assert_eq!(s.state, t.state);
            assert_eq!(s.query, t.query);
            assert_eq!(s.reward.to_bits(), t.reward.to_bits());
        }
    }
}
