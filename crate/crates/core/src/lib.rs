//! Finite hereditary set families and the covering game behind Pták's
//! combinatorial lemma.
//!
//! A hereditary (downward-closed) family on a finite ground set is stored as
//! the antichain of its inclusion-maximal members. On top of that
//! representation the crate computes, with exact rational arithmetic:
//!
//! * the constant `delta = min over convex means λ of max over members F of λ(F)`
//!   together with a primal mean and a dual fractional cover certifying it
//!   ([`game`]), plus a fictitious-play oracle that brackets it ([`fictitious`]);
//! * the family norm `‖x‖ = max |Σ_{s∈F} x(s)|` and its equivalence with the
//!   ℓ1 norm ([`norm`]);
//! * maximum members, the finite form of homogeneous sets ([`homogeneous`]);
//! * families generated as intersection patterns of interval systems in
//!   `[0, 1]` ([`interval`]).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod cliques;
pub mod error;
pub mod family;
pub mod fictitious;
pub mod game;
pub mod homogeneous;
pub mod interval;
mod lp;
pub mod norm;
pub mod random;
pub mod rational;
pub mod set;

pub use error::{Error, Result};
pub use family::{FamilySpec, HereditaryFamily, Trace};
pub use fictitious::{fictitious_play, Bracket};
pub use game::{
    best_response, delta_exact, evaluate_mean, verify_certificate, ConvexMean, FractionalCover,
    GameValueResult, Rejection,
};
pub use homogeneous::{greedy_member, max_member, ptak_bound_check, PtakBound, SearchResult};
pub use interval::{
    helly_check, measure, measure_lower_bound, random_system, trace_family, IntervalSet, IntervalSystem,
    MeasureBound,
};
pub use norm::{
    basis_vector_norms, check_equivalence, check_equivalence_with, f_norm, min_ratio_nonneg, min_ratio_signed_bruteforce,
    EquivalenceReport, FamilyVector, SignedRatio,
};
pub use rational::Rational;
pub use set::{ElementSet, GroundSet};
