use crate::episode::EpisodeRecord;

/// Neumaier-compensated sum, so aggregation does not depend on run order.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

fn mean(values: &[f64]) -> f64 {
    compensated_sum(values.iter().copied()) / values.len() as f64
}

/// Sample standard deviation over sqrt(n); zero for a single sample.
fn standard_error(values: &[f64], mean: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let ss = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean)));
    (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
}

/// Across-run aggregate for one episode index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeStats {
    pub episode: usize,
    pub mean_reward: f64,
    pub std_error: f64,
    pub mean_steps: f64,
    /// Fraction of runs whose episode hit the step cap.
    pub truncated_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesStats {
    pub runs: usize,
    pub episodes: Vec<EpisodeStats>,
}

impl SeriesStats {
    /// Aggregates per-run episode records. Every run must have the same length.
    pub fn from_runs(runs: &[Vec<EpisodeRecord>]) -> Self {
        let n_episodes = runs.first().map_or(0, Vec::len);
        debug_assert!(runs.iter().all(|r| r.len() == n_episodes));
        let episodes = (0..n_episodes)
            .map(|e| {
                let rewards: Vec<f64> = runs.iter().map(|r| r[e].reward).collect();
                let steps: Vec<f64> = runs.iter().map(|r| r[e].steps as f64).collect();
                let truncated = runs.iter().filter(|r| r[e].truncated).count();
                let mean_reward = mean(&rewards);
                EpisodeStats {
                    episode: e,
                    mean_reward,
                    std_error: standard_error(&rewards, mean_reward),
                    mean_steps: mean(&steps),
                    truncated_fraction: truncated as f64 / runs.len() as f64,
                }
            })
            .collect();
        SeriesStats {
            runs: runs.len(),
            episodes,
        }
    }

    pub fn len(&self) -> usize {
        self.episodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.episodes.is_empty()
    }

    pub fn mean_rewards(&self) -> Vec<f64> {
        self.episodes.iter().map(|e| e.mean_reward).collect()
    }

    /// Mean of per-episode mean rewards over `range`.
    pub fn window_mean_reward(&self, range: std::ops::Range<usize>) -> f64 {
        mean(&self.episodes[range].iter().map(|e| e.mean_reward).collect::<Vec<_>>())
    }

    pub fn window_mean_steps(&self, range: std::ops::Range<usize>) -> f64 {
        mean(&self.episodes[range].iter().map(|e| e.mean_steps).collect::<Vec<_>>())
    }

    /// Fraction of all episodes in `range` (over all runs) that were truncated.
    pub fn window_truncated_fraction(&self, range: std::ops::Range<usize>) -> f64 {
        mean(&self.episodes[range].iter().map(|e| e.truncated_fraction).collect::<Vec<_>>())
    }
}
