//! Seeded random streams.
//!
//! Every stochastic component draws from its own substream of a single
//! master seed, so enabling or disabling one component never shifts the
//! draws seen by another. Substreams use the ChaCha stream counter;
//! derived seeds for independent experiment cells go through a SplitMix
//! mix so neighbouring cell coordinates do not produce correlated
//! streams.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Substream purposes used by the evolutionary engine.
pub mod purpose {
    pub const INIT: u64 = 1;
    pub const MUTATION: u64 = 2;
    pub const SELECTION: u64 = 3;
    pub const CROSSOVER: u64 = 4;
}

/// A reproducible generator for one purpose under a master seed.
pub fn substream(master_seed: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(purpose);
    rng
}

/// Derives an independent seed from a master seed and cell coordinates.
pub fn derive_seed(master_seed: u64, parts: &[u64]) -> u64 {
    let mut state = splitmix64(master_seed ^ 0x9e37_79b9_7f4a_7c15);
    for &p in parts {
        state = splitmix64(state ^ p);
    }
    state
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
