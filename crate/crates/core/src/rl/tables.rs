//! Lazily populated tables for Markov agents.
//!
//! Keys are registered the first time they are touched; iteration follows
//! insertion order so that identical runs stay bit-for-bit reproducible.

use std::hash::Hash;

use indexmap::IndexMap;

/// `V: S x A -> R` with an optimistic default for unseen pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularValueFunction<S: Hash + Eq, A: Hash + Eq> {
    values: IndexMap<(S, A), f64>,
    default_value: f64,
}

impl<S: Hash + Eq + Clone, A: Hash + Eq + Copy> TabularValueFunction<S, A> {
    pub fn new(default_value: f64) -> Self {
        TabularValueFunction {
            values: IndexMap::new(),
            default_value,
        }
    }

    pub fn default_value(&self) -> f64 {
        self.default_value
    }

    pub fn get(&self, state: &S, action: A) -> f64 {
        self.values
            .get(&(state.clone(), action))
            .copied()
            .unwrap_or(self.default_value)
    }

    pub fn contains(&self, state: &S, action: A) -> bool {
        self.values.contains_key(&(state.clone(), action))
    }

    pub fn set(&mut self, state: S, action: A, value: f64) {
        debug_assert!(value.is_finite(), "non-finite value {value}");
        self.values.insert((state, action), value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, A, f64)> {
        self.values.iter().map(|((s, a), v)| (s, *a, *v))
    }

    /// On-policy TD update:
    /// `V(s,a) += alpha * (r + gamma * V(s',a') - V(s,a))`.
    ///
    /// `next` is `None` when the transition ended the episode.
    pub fn sarsa_update(
        &mut self,
        state: &S,
        action: A,
        reward: f64,
        next: Option<(&S, A)>,
        alpha: f64,
        gamma: f64,
    ) {
        let current = self.get(state, action);
        let next_value = next.map_or(0.0, |(s, a)| self.get(s, a));
        let updated = current + alpha * (reward + gamma * next_value - current);
        self.set(state.clone(), action, updated);
    }
}

/// Successor of a transition. `Terminal` marks a step that ended the episode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Successor<S> {
    State(S),
    Terminal,
}

type Row<S> = Vec<(Successor<S>, f64)>;

/// Estimated transition probabilities `T(s, a, s')`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable<S: Hash + Eq, A: Hash + Eq> {
    rows: IndexMap<(S, A), Row<S>>,
}

impl<S: Hash + Eq + Clone, A: Hash + Eq + Copy> Default for TransitionTable<S, A> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Hash + Eq + Clone, A: Hash + Eq + Copy> TransitionTable<S, A> {
    pub fn new() -> Self {
        TransitionTable {
            rows: IndexMap::new(),
        }
    }

    /// Builds a table from explicit rows. Each row should be a distribution.
    pub fn from_rows(rows: impl IntoIterator<Item = ((S, A), Vec<(Successor<S>, f64)>)>) -> Self {
        TransitionTable {
            rows: rows.into_iter().collect(),
        }
    }

    /// Raises the observed successor by `alpha * (1 - T)` and lowers every
    /// other successor in the row by `alpha * T`.
    ///
    /// A fresh row starts as a point mass on the observed successor; a
    /// successor new to an existing row enters with probability 0 before the
    /// update.
    pub fn observe(&mut self, state: &S, action: A, next: Successor<S>, alpha: f64) {
        let row = self
            .rows
            .entry((state.clone(), action))
            .or_insert_with(|| vec![(next.clone(), 1.0)]);
        if !row.iter().any(|(s, _)| *s == next) {
            row.push((next.clone(), 0.0));
        }
        for (s, p) in row.iter_mut() {
            let target = if *s == next { 1.0 } else { 0.0 };
            *p += alpha * (target - *p);
        }
    }

    pub fn row(&self, state: &S, action: A) -> Option<&[(Successor<S>, f64)]> {
        self.rows
            .get(&(state.clone(), action))
            .map(Vec::as_slice)
    }

    pub fn probability(&self, state: &S, action: A, next: &Successor<S>) -> f64 {
        self.row(state, action)
            .and_then(|row| row.iter().find(|(s, _)| s == next))
            .map_or(0.0, |(_, p)| *p)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&S, A, &[(Successor<S>, f64)])> {
        self.rows.iter().map(|((s, a), row)| (s, *a, row.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Estimated immediate reward `R(s, a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardTable<S: Hash + Eq, A: Hash + Eq> {
    estimates: IndexMap<(S, A), f64>,
}

impl<S: Hash + Eq + Clone, A: Hash + Eq + Copy> Default for RewardTable<S, A> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Hash + Eq + Clone, A: Hash + Eq + Copy> RewardTable<S, A> {
    pub fn new() -> Self {
        RewardTable {
            estimates: IndexMap::new(),
        }
    }

    /// `R(s,a) += alpha * (r - R(s,a))`; the first observation sets `R(s,a) = r`.
    pub fn observe(&mut self, state: &S, action: A, reward: f64, alpha: f64) {
        match self.estimates.get_mut(&(state.clone(), action)) {
            Some(estimate) => *estimate += alpha * (reward - *estimate),
            None => {
                self.estimates.insert((state.clone(), action), reward);
            }
        }
    }

    pub fn get(&self, state: &S, action: A) -> Option<f64> {
        self.estimates.get(&(state.clone(), action)).copied()
    }

    pub fn set(&mut self, state: S, action: A, reward: f64) {
        self.estimates.insert((state, action), reward);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, A, f64)> {
        self.estimates.iter().map(|((s, a), r)| (s, *a, *r))
    }

    pub fn len(&self) -> usize {
        self.estimates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estimates.is_empty()
    }
}
