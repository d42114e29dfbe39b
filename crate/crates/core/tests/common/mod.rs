//! Brute-force oracles over bit masks. Everything here works from the raw
//! definition of a downward closure and never calls the library's own
//! membership, trace or search code.
#![allow(dead_code)]

use proptest::prelude::*;
use ptak_core::{ElementSet, GroundSet, HereditaryFamily, Rational};

pub fn masks(fam: &HereditaryFamily) -> Vec<u64> {
    fam.maximal().iter().map(ElementSet::mask).collect()
}

/// Every member of the family, as masks, by enumerating all subsets.
pub fn members(fam: &HereditaryFamily) -> Vec<u64> {
    let tops = masks(fam);
    (0u64..1 << fam.n()).filter(|&a| a == 0 || tops.iter().any(|&f| a & !f == 0)).collect()
}

pub fn is_member(tops: &[u64], a: u64) -> bool {
    a == 0 || tops.iter().any(|&f| a & !f == 0)
}

pub fn family_from_masks(n: usize, sets: &[u64]) -> HereditaryFamily {
    let g = GroundSet::new(n).unwrap();
    HereditaryFamily::closure(g, sets.iter().map(|&m| ElementSet::from_mask(n, m))).unwrap()
}

pub fn set(n: usize, labels: &[usize]) -> ElementSet {
    ElementSet::from_labels(GroundSet::new(n).unwrap(), labels.iter().copied()).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Families on at most `max_n` labels generated from up to 12 random sets.
pub fn families(max_n: usize) -> impl Strategy<Value = HereditaryFamily> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u64..(1 << n), 0..12).prop_map(move |sets| family_from_masks(n, &sets))
    })
}

pub fn rational_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-20i64..=20, 1i64..=6), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Rational::new(a, b)).collect())
}
