//! Deterministic seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded from a
//! `(seed, domain, index)` mix, so a whole experiment replays from one integer.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const DOMAIN_CODEBOOK: u64 = 0x636f_6465_626f_6f6b;
pub(crate) const DOMAIN_PARTITION: u64 = 0x7061_7274_6974_696f;
pub(crate) const DOMAIN_REPETITION: u64 = 0x7265_7065_7469_7469;
pub(crate) const DOMAIN_TEMPLATE: u64 = 0x7465_6d70_6c61_7465;
pub(crate) const DOMAIN_MEMBER: u64 = 0x6d65_6d62_6572_7321;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sub-seed for stream `index` of `domain` under a master `seed`.
pub fn derive_seed(seed: u64, domain: u64, index: u64) -> u64 {
    mix64(mix64(seed ^ domain) ^ index.wrapping_mul(0xd6e8_feb8_6659_fd93))
}

pub(crate) fn stream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, domain, index))
}
