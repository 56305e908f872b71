//! Deterministic seeding helpers.
//!
//! All randomness in this crate flows through caller-supplied 64-bit seeds.
//! Sub-streams (per table, per bootstrap replicate, per chain) derive their
//! seeds with [`mix64`] so that replicate `i` of a run is reproducible in
//! isolation and independent of how many replicates run in parallel.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derives the seed for sub-stream `index` of `root`.
///
/// This is the splitmix64 output function applied to the root seed advanced
/// by `index + 1` increments of the Weyl constant.
pub fn mix64(root: u64, index: u64) -> u64 {
    let mut z = root.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// RNG used for all sampling. ChaCha keeps streams stable across platforms
/// and library upgrades.
pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
