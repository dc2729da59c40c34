//! Seed partitioning for Monte Carlo work.
//!
//! Every independent unit of work (a noise path, an estimation repetition)
//! draws from its own ChaCha8 stream: the key comes from the user seed and
//! the stream id is the unit's index. Results therefore do not depend on how
//! units are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recorded in run manifests.
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha 0.9): key = seed_from_u64(seed), stream = unit index";

pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
