//! Seeded random instances.
//!
//! All randomness in the project comes from ChaCha8 seeded with a `u64`
//! ([`rng`]), so instances are reproducible across platforms.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::HereditaryFamily;
use crate::set::{ElementSet, GroundSet};

/// Identifier of the generator algorithm, recorded in generated artifacts.
pub const RNG_ALGORITHM: &str = "chacha8";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Downward closure of `1..=max_sets` random subsets of `0..n`.
///
/// Each subset keeps every label independently with a probability drawn per
/// family, so the corpus mixes sparse and dense families. The closure has at
/// most `max_sets` maximal members.
pub fn random_family<R: Rng + ?Sized>(rng: &mut R, n: usize, max_sets: usize) -> HereditaryFamily {
    let ground = GroundSet::new(n).expect("n >= 1");
    let count = rng.gen_range(1..=max_sets.max(1));
    let density = rng.gen_range(15u32..=75);
    let sets: Vec<ElementSet> = (0..count)
        .map(|_| {
            let mut s = ground.empty();
            for l in ground.labels() {
                if rng.gen_range(0u32..100) < density {
                    s.insert(l);
                }
            }
            s
        })
        .collect();
    HereditaryFamily::closure(ground, sets).expect("labels are in range")
}

/// Random rational vector on `0..n` with numerators in `-bound..=bound` and
/// denominators in `1..=bound`. Coordinates are non-negative when `nonneg`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64, nonneg: bool) -> Vec<crate::Rational> {
    (0..n)
        .map(|_| {
            let lo = if nonneg { 0 } else { -bound };
            crate::Rational::new(rng.gen_range(lo..=bound), rng.gen_range(1..=bound))
        })
        .collect()
}
