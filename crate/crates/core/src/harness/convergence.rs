use super::SeriesStats;

pub const DEFAULT_WINDOW: usize = 5;
pub const DEFAULT_TOLERANCE: f64 = 2.0;

/// First episode `e` where the mean rewards over `[e, e + window)` span at most
/// `tolerance` and no episode in that window was truncated in a majority of runs.
pub fn detect_convergence(series: &SeriesStats, window: usize, tolerance: f64) -> Option<usize> {
    if window == 0 || window > series.len() {
        return None;
    }
    series.episodes.windows(window).position(|w| {
        let (lo, hi) = w.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
            (lo.min(e.mean_reward), hi.max(e.mean_reward))
        });
        hi - lo <= tolerance && w.iter().all(|e| e.truncated_fraction <= 0.5)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::EpisodeStats;

    fn series(rewards: &[f64], truncated: &[f64]) -> SeriesStats {
        SeriesStats {
            runs: 1,
            episodes: rewards
                .iter()
                .zip(truncated)
                .enumerate()
                .map(|(episode, (&mean_reward, &truncated_fraction))| EpisodeStats {
                    episode,
                    mean_reward,
                    std_error: 0.0,
                    mean_steps: 0.0,
                    truncated_fraction,
                })
                .collect(),
        }
    }

    #[test]
    fn constant_converges_at_zero() {
        let s = series(&[4.0; 8], &[0.0; 8]);
        assert_eq!(detect_convergence(&s, DEFAULT_WINDOW, DEFAULT_TOLERANCE), Some(0));
    }

    #[test]
    fn alternating_never_converges() {
        let r: Vec<f64> = (0..20).map(|i| if i % 2 == 0 { 10.0 } else { -10.0 }).collect();
        assert_eq!(detect_convergence(&series(&r, &[0.0; 20]), 5, 2.0), None);
    }

    #[test]
    fn finds_first_stable_window() {
        let r = [-900.0, -300.0, -40.0, -8.0, -5.0, -4.0, -5.5, -4.5, -5.0, -5.0];
        assert_eq!(detect_convergence(&series(&r, &[0.0; 10]), 5, 2.0), Some(4));
    }

    #[test]
    fn majority_truncation_blocks() {
        let s = series(&[-3000.0; 6], &[1.0, 1.0, 0.6, 0.5, 0.5, 0.5]);
        assert_eq!(detect_convergence(&s, 3, 2.0), Some(3));
        assert_eq!(detect_convergence(&series(&[-3000.0; 6], &[1.0; 6]), 3, 2.0), None);
    }

    #[test]
    fn window_longer_than_series() {
        assert_eq!(detect_convergence(&series(&[1.0; 3], &[0.0; 3]), 5, 2.0), None);
    }
}
