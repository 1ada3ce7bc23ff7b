//! Deterministic seeding.

/// Additive constant of the splitmix64 sequence (`2^64 / golden ratio`).
pub const SEED_INCREMENT: u64 = 0x9E37_79B9_7F4A_7C15;
/// First multiplier of the splitmix64 finalizer.
pub const MIX_MULTIPLIER_1: u64 = 0xBF58_476D_1CE4_E5B9;
/// Second multiplier of the splitmix64 finalizer.
pub const MIX_MULTIPLIER_2: u64 = 0x94D0_49BB_1331_11EB;

/// The splitmix64 finalizer.
pub fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX_MULTIPLIER_1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_MULTIPLIER_2);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`: `finalize(master + (index + 1) * SEED_INCREMENT)`.
pub fn mix(master: u64, index: u64) -> u64 {
    finalize(master.wrapping_add(index.wrapping_add(1).wrapping_mul(SEED_INCREMENT)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_reference_splitmix64() {
        // first outputs of splitmix64 seeded with 0
        assert_eq!(mix(0, 0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(mix(0, 1), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn distinct_trials_get_distinct_seeds() {
        let seeds: std::collections::HashSet<u64> = (0..10_000).map(|i| mix(42, i)).collect();
        assert_eq!(seeds.len(), 10_000);
    }
}
