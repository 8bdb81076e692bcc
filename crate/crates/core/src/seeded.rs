//! Deterministic RNG derivation: one seed, per-site salts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer.
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// A reproducible stream for (seed, salt); distinct salts decouple the
/// sampling done at different call sites.
pub(crate) fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed.wrapping_add(mix(salt))))
}

pub(crate) const SALT_CARTAN_SEARCH: u64 = 0x10;
pub(crate) const SALT_G0_CERTIFICATE: u64 = 0x20;
pub(crate) const SALT_GROUP_SAMPLER: u64 = 0x30;
pub(crate) const SALT_NEIGHBORS: u64 = 0x40;
pub(crate) const SALT_C_CARTAN_COMBO: u64 = 0x50;
pub(crate) const SALT_RANK_WITNESS: u64 = 0x60;
