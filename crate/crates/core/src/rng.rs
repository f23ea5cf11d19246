//! Seeded randomness used across heuristics and generators.
//!
//! All random choices in this crate flow through [`SeededRng`], a ChaCha8
//! stream cipher generator seeded from a single `u64`. The generator is
//! platform-stable: the same seed yields the same byte stream on every
//! architecture, which the determinism contracts of the heuristics and the
//! instance generators rely on.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The crate-wide pseudo random generator (ChaCha8, 64-bit seeded).
pub type SeededRng = ChaCha8Rng;

/// Creates the canonical generator for `seed`.
pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Picks a uniform element of a non-empty slice.
pub fn pick_uniform<'a, T>(rng: &mut SeededRng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

/// Uniform permutation of `0..n`.
pub fn random_permutation(rng: &mut SeededRng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}
