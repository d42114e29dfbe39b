//! Seeded instance corpora shared by `suite` and the acceptance tests.

use ptak_core::{random, random_system, HereditaryFamily, IntervalSystem, Rational};
use rand::Rng;

/// `count` families, each on `1..=max_n` labels with at most `max_sets`
/// maximal sets, drawn from one ChaCha8 stream.
pub fn random_families(seed: u64, count: usize, max_n: usize, max_sets: usize) -> Vec<HereditaryFamily> {
    let mut rng = random::rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.max(1));
            random::random_family(&mut rng, n, max_sets)
        })
        .collect()
}

/// Parameters a system in [`random_systems`] was generated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemParams {
    pub seed: u64,
    pub n: usize,
    pub pieces: usize,
    pub min_measure: Rational,
}

/// `count` interval systems on `1..=max_n` sets. About a third are
/// single-interval systems; the rest use two or three pieces per set.
pub fn random_systems(seed: u64, count: usize, max_n: usize) -> Vec<(SystemParams, IntervalSystem)> {
    let mut rng = random::rng(seed);
    let floors = [Rational::zero(), Rational::new(1, 10), Rational::new(1, 4), Rational::new(1, 2)];
    (0..count)
        .map(|_| {
            let params = SystemParams {
                seed: rng.gen(),
                n: rng.gen_range(1..=max_n.max(1)),
                pieces: rng.gen_range(1..=3),
                min_measure: floors[rng.gen_range(0..floors.len())].clone(),
            };
            let sys = random_system(params.seed, params.n, params.pieces, &params.min_measure)
                .expect("parameters are feasible");
            (params, sys)
        })
        .collect()
}
