//! Deterministic seed derivation for reproducible parallel simulation.
//!
//! Every level of the simulation peels off child seeds with [`substream`]:
//! a sweep derives one seed per grid point, a grid point one per frame, a
//! frame one per burst. Work items therefore own their randomness by index
//! alone, so results are byte-identical across thread counts and platforms;
//! the whole pipeline touches only integer arithmetic and ChaCha output.

/// Derives the seed of child stream `index` from `seed`.
///
/// SplitMix64 finalizer applied to `seed + (index + 1) * golden gamma`. The
/// +1 keeps child 0 from echoing the finalizer of the bare parent seed. Not
/// cryptographic; collisions across (seed, index) pairs are as likely as
/// random 64-bit collisions.
pub fn substream(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
