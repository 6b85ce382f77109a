//! Deterministic substream derivation.
//!
//! Every stochastic routine in this crate takes a 64-bit seed and derives
//! independent substreams from `(seed, lane, index)` triples. Because a
//! substream is a pure function of its triple, results are byte-identical
//! for a fixed seed no matter how work is scheduled across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[inline]
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a master seed with two indices into a well-separated 64-bit key.
#[inline]
pub fn mix(seed: u64, lane: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(lane)) ^ splitmix64(index.wrapping_add(0x9e37)))
}

/// An independent RNG for the `(seed, lane, index)` triple.
#[inline]
pub fn rng_for(seed: u64, lane: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed, lane, index))
}
