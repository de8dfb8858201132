//! Deterministic seed derivation and random sampling helpers.
//!
//! All randomness in this crate flows through [`ChaCha8Rng`], a named,
//! seedable generator whose output stream is fully specified by the ChaCha
//! stream cipher, so results reproduce across platforms and releases.
//!
//! Child seeds are derived as `SHA-256(master ‖ tag ‖ index)` truncated to
//! 64 bits. Because every consumer (the splitter, each model trainer, each
//! sweep cell) owns a tag-derived stream, the execution schedule never
//! affects results, and adding a new consumer never perturbs existing ones.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derive a child seed from a master seed, a purpose tag, and an index.
pub fn derive_seed(master: u64, tag: &str, index: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update(tag.as_bytes());
    hasher.update(index.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

/// A ChaCha8 stream seeded directly from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A ChaCha8 stream for a derived purpose.
pub fn rng_for(master: u64, tag: &str, index: u64) -> ChaCha8Rng {
    rng_from_seed(derive_seed(master, tag, index))
}

/// One standard normal draw via the Box-Muller transform.
///
/// Hand-rolled so the sampling algorithm is pinned by this crate rather than
/// by a distribution library's internals.
pub fn sample_standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // u1 in (0, 1]: avoids ln(0).
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
