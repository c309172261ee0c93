//! Deterministic RNG streams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator keyed by a
//! base seed and a (domain, purpose) pair, so any single domain or mode of a
//! replication can be regenerated in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Domain id of the target domain. Auxiliary domain `k` (0-based) uses `k + 1`.
pub const TARGET_DOMAIN: u64 = 0;

pub fn auxiliary_domain(k: usize) -> u64 {
    k as u64 + 1
}

pub mod purpose {
    pub const GRAPH: u64 = 0x100;
    pub const SAMPLES: u64 = 0x200;
    pub const DIVERGENCE: u64 = 0x300;
    pub const SPLIT: u64 = 0x400;
    pub const FOLDS: u64 = 0x500;
}

pub fn stream(seed: u64, domain: u64, purpose: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((domain << 32) | purpose);
    rng
}
