use std::hash::Hash;

use rand::Rng;

use super::TabularValueFunction;
use crate::Error;

/// Items whose score equals the maximum. Scores compare exactly.
pub(crate) fn maximal_by<T: Copy>(items: impl IntoIterator<Item = T>, score: impl Fn(T) -> f64) -> Vec<T> {
    let mut best = f64::NEG_INFINITY;
    let mut winners = Vec::new();
    for item in items {
        let s = score(item);
        if s > best {
            best = s;
            winners.clear();
            winners.push(item);
        } else if s == best {
            winners.push(item);
        }
    }
    winners
}

pub(crate) fn pick_uniform<T: Copy, R: Rng + ?Sized>(items: &[T], rng: &mut R) -> T {
    if items.len() == 1 {
        items[0]
    } else {
        items[rng.gen_range(0..items.len())]
    }
}

/// Greedy action for `state`, ties broken uniformly at random.
pub fn greedy_action<S, A, R>(
    values: &TabularValueFunction<S, A>,
    state: &S,
    actions: &[A],
    rng: &mut R,
) -> Result<A, Error>
where
    S: Hash + Eq + Clone,
    A: Hash + Eq + Copy,
    R: Rng + ?Sized,
{
    if actions.is_empty() {
        return Err(Error::EmptyActions);
    }
    let best = maximal_by(actions.iter().copied(), |a| values.get(state, a));
    Ok(pick_uniform(&best, rng))
}

/// Epsilon-greedy action selection: uniform with probability `epsilon`,
/// otherwise greedy with uniform tie-breaking.
pub fn select_action<S, A, R>(
    values: &TabularValueFunction<S, A>,
    state: &S,
    actions: &[A],
    epsilon: f64,
    rng: &mut R,
) -> Result<A, Error>
where
    S: Hash + Eq + Clone,
    A: Hash + Eq + Copy,
    R: Rng + ?Sized,
{
    if actions.is_empty() {
        return Err(Error::EmptyActions);
    }
    if epsilon > 0.0 && rng.gen_bool(epsilon.min(1.0)) {
        Ok(pick_uniform(actions, rng))
    } else {
        greedy_action(values, state, actions, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::Direction::{self, *};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table(entries: &[(Direction, f64)]) -> TabularValueFunction<u8, Direction> {
        let mut v = TabularValueFunction::new(0.0);
        for &(a, x) in entries {
            v.set(0, a, x);
        }
        v
    }

    #[test]
    fn unique_argmax() {
        let v = table(&[(North, 1.0), (East, 2.0), (South, 0.0), (West, -1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(select_action(&v, &0, &Direction::ALL, 0.0, &mut rng).unwrap(), East);
        }
    }

    #[test]
    fn empty_actions_rejected() {
        let v = table(&[]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            select_action::<u8, Direction, _>(&v, &0, &[], 0.1, &mut rng),
            Err(Error::EmptyActions)
        ));
    }

    fn frequencies(v: &TabularValueFunction<u8, Direction>, epsilon: f64, seed: u64) -> [usize; 4] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = [0; 4];
        for _ in 0..10_000 {
            let a = select_action(v, &0, &Direction::ALL, epsilon, &mut rng).unwrap();
            counts[Direction::ALL.iter().position(|&d| d == a).unwrap()] += 1;
        }
        counts
    }

    #[test]
    fn ties_are_broken_uniformly() {
        let v = table(&[(North, 3.0), (East, 3.0), (South, 3.0), (West, 3.0)]);
        // Binomial(10000, 1/4) has sd ~43; 5 sd band.
        for c in frequencies(&v, 0.0, 7) {
            assert!((c as i64 - 2500).abs() < 220, "{c}");
        }
    }

    #[test]
    fn full_exploration_ignores_values() {
        let v = table(&[(North, 100.0)]);
        for c in frequencies(&v, 1.0, 9) {
            assert!((c as i64 - 2500).abs() < 220, "{c}");
        }
    }

    proptest! {
        #[test]
        fn argmax_invariant_under_constant_shift(
            values in prop::array::uniform4(-10i32..10),
            shift in -1000.0f64..1000.0,
            seed in 0u64..1000,
        ) {
            let base: Vec<_> = Direction::ALL.iter().zip(values).map(|(&d, x)| (d, x as f64)).collect();
            let shifted: Vec<_> = base.iter().map(|&(d, x)| (d, x + shift)).collect();
            // Integer-valued scores keep ties exact under the shift.
            let a = greedy_action(&table(&base), &0, &Direction::ALL, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let b = greedy_action(&table(&shifted), &0, &Direction::ALL, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
