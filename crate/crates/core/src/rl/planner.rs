//! Model-based value estimation from learned transition and reward tables.
//!
//! Solves `V(s,a) = R(s,a) + gamma * sum_s' T(s,a,s') * max_a' V(s',a')` by
//! synchronous sweeps. Pairs that were never tried keep the optimistic
//! default value, so planning steers towards unexplored actions; terminal
//! successors contribute nothing.

use std::hash::Hash;

use indexmap::IndexSet;

use super::{RewardTable, Successor, TabularValueFunction, TransitionTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlanError {
    #[error("value iteration did not converge within {sweeps} sweeps (last delta {delta:e})")]
    NotConverged { sweeps: usize, delta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Planner {
    pub gamma: f64,
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Value of state-action pairs absent from the reward table.
    pub default_value: f64,
}

impl Planner {
    pub fn new(gamma: f64, default_value: f64) -> Self {
        Planner {
            gamma,
            tolerance: 1e-6,
            max_sweeps: 1000,
            default_value,
        }
    }

    /// Runs value iteration until the largest change drops below the tolerance.
    pub fn plan<S, A>(
        &self,
        transitions: &TransitionTable<S, A>,
        rewards: &RewardTable<S, A>,
        actions: &[A],
    ) -> Result<TabularValueFunction<S, A>, PlanError>
    where
        S: Hash + Eq + Clone,
        A: Hash + Eq + Copy,
    {
        let mut states: IndexSet<S> = IndexSet::new();
        for (s, _, row) in transitions.rows() {
            states.insert(s.clone());
            for (next, _) in row {
                if let Successor::State(n) = next {
                    states.insert(n.clone());
                }
            }
        }
        for (s, _, _) in rewards.iter() {
            states.insert(s.clone());
        }

        let n_actions = actions.len();
        let slot = |s: usize, a: usize| s * n_actions + a;
        let mut known = vec![false; states.len() * n_actions];
        let mut reward = vec![0.0; states.len() * n_actions];
        let mut values = vec![self.default_value; states.len() * n_actions];
        // Successor lists use `None` for terminal.
        let mut successors: Vec<Vec<(Option<usize>, f64)>> = vec![Vec::new(); states.len() * n_actions];

        for (si, s) in states.iter().enumerate() {
            for (ai, &a) in actions.iter().enumerate() {
                let ix = slot(si, ai);
                if let Some(r) = rewards.get(s, a) {
                    known[ix] = true;
                    reward[ix] = r;
                    values[ix] = r;
                }
                if let Some(row) = transitions.row(s, a) {
                    successors[ix] = row
                        .iter()
                        .map(|(next, p)| {
                            let target = match next {
                                Successor::State(n) => states.get_index_of(n),
                                Successor::Terminal => None,
                            };
                            (target, *p)
                        })
                        .collect();
                }
            }
        }

        let mut best = vec![0.0; states.len()];
        let mut delta = f64::INFINITY;
        let mut sweeps = 0;
        while sweeps < self.max_sweeps {
            for (si, b) in best.iter_mut().enumerate() {
                *b = (0..n_actions)
                    .map(|ai| values[slot(si, ai)])
                    .fold(f64::NEG_INFINITY, f64::max);
            }
            delta = 0.0;
            for ix in 0..values.len() {
                if !known[ix] {
                    continue;
                }
                let future: f64 = successors[ix]
                    .iter()
                    .map(|&(target, p)| p * target.map_or(0.0, |t| best[t]))
                    .sum();
                let updated = reward[ix] + self.gamma * future;
                delta = f64::max(delta, (updated - values[ix]).abs());
                values[ix] = updated;
            }
            sweeps += 1;
            if delta < self.tolerance {
                break;
            }
        }
        if delta >= self.tolerance {
            return Err(PlanError::NotConverged { sweeps, delta });
        }

        let mut table = TabularValueFunction::new(self.default_value);
        for (si, s) in states.iter().enumerate() {
            for (ai, &a) in actions.iter().enumerate() {
                let ix = slot(si, ai);
                if known[ix] {
                    table.set(s.clone(), a, values[ix]);
                }
            }
        }
        Ok(table)
    }
}
