//! The one pseudorandom generator used for every sampling step.
//!
//! Runs are replayable: the same seed drives the same sequence of
//! measurement outcomes on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// ChaCha with 8 rounds, seeded from a `u64`.
pub type SimRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
