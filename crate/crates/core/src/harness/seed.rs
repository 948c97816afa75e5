/// SplitMix64 finaliser.
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of run `run` of an experiment seeded with `seed`:
/// `splitmix64(splitmix64(seed) ^ run)`.
///
/// Each run's seed depends only on its own index, so adding runs never
/// changes earlier ones.
pub fn run_seed(seed: u64, run: usize) -> u64 {
    splitmix64(splitmix64(seed) ^ run as u64)
}
