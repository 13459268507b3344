//! Deterministic random streams.
//!
//! Every frame, decoder and ensemble branch draws from its own ChaCha8
//! stream whose seed is a hash of the master seed and a path of labels, so
//! results do not depend on thread scheduling or worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes `master` and `labels` into a child seed.
pub fn derive_seed(master: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(splitmix64(master), |acc, &l| {
        splitmix64(acc ^ splitmix64(l))
    })
}

pub fn stream(master: u64, labels: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, labels))
}
