//! Seeded random streams.
//!
//! Every random draw in the lab comes from a ChaCha20 stream keyed by a
//! 64-bit seed and selected by a 64-bit stream id. ChaCha is counter based,
//! so stream `k` of seed `s` is the same on every platform and independent of
//! how many other streams were consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub use rand_chacha::ChaCha20Rng as LabRng;

/// Name recorded in reports.
pub const GENERATOR_NAME: &str = "chacha20";

pub fn stream(seed: u64, stream_id: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}
