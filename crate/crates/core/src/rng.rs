//! Deterministic stream derivation for reproducible Monte Carlo.
//!
//! Every consumer of randomness derives a private ChaCha stream from a root
//! seed, a purpose tag, and an index. The derivation is a pure function, so
//! results do not depend on scheduling or on how work is split across
//! threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed used by the CLI when none is given (3735928559).
pub const DEFAULT_SEED: u64 = 0xDEAD_BEEF;

/// Stream purpose tags. Distinct tags guarantee that independent consumers
/// never share a stream even when their indices collide.
pub mod tags {
    pub const CAMPAIGN: u64 = 1;
    pub const BOOTSTRAP: u64 = 2;
    pub const SWEEP_POINT: u64 = 3;
    pub const EQUIVALENCE: u64 = 4;
    pub const SCRATCH: u64 = 0xFF;
}

// SplitMix64 finalizer; full-period bijection on u64.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `(root, tag, index)`.
pub fn derive_seed(root: u64, tag: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(root) ^ tag) ^ index)
}

/// A ChaCha8 stream keyed by `(root, tag, index)`.
pub fn stream(root: u64, tag: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(root, tag, index))
}

/// Uniform double in [0, 1) with 53 random bits.
pub fn uniform_f64(rng: &mut impl rand::RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
