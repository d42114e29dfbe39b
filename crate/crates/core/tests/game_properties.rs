mod common;

use common::*;
use proptest::prelude::*;
use ptak_core::*;

fn eps() -> Rational {
    Rational::new(1, 1_000_000)
}

#[test]
fn cardinality_values_cross_checked() {
    for n in 1..=9 {
        for k in 1..=n {
            let fam = FamilySpec::CardinalityBound { n, k }.realize().unwrap();
            let res = delta_exact(&fam);
            let expected = q(k as i64, n as i64);
            assert_eq!(res.delta, expected);
            assert_eq!(verify_certificate(&fam, &res), Ok(()));
            // Symmetric dual: uniform over all k-sets covers each label k/n.
            let m = fam.maximal().len();
            let uniform = FractionalCover::from_raw(vec![q(1, m as i64); m]);
            assert_eq!(uniform.min_coverage(&fam), expected);
            assert!(fictitious_play(&fam, 1_000_000, &eps()).contains(&expected));
        }
    }
}

#[test]
fn five_cycle_value_cross_checked() {
    let fam = FamilySpec::GraphCliques { n: 5, edges: FamilySpec::cycle_edges(5) }.realize().unwrap();
    // Hand evaluation: every edge has uniform weight 2/5.
    assert_eq!(evaluate_mean(&fam, &ConvexMean::uniform(5)).unwrap(), q(2, 5));
    let b = fictitious_play(&fam, 1_000_000, &eps());
    assert!(b.converged);
    assert!((b.midpoint() - q(2, 5)).abs() <= eps());
    assert_eq!(delta_exact(&fam).delta, q(2, 5));
}

#[test]
fn singleton_values_cross_checked() {
    for n in 1..=6 {
        let sets: Vec<Vec<usize>> = (0..n).map(|s| vec![s]).collect();
        let fam = HereditaryFamily::from_label_sets(n, &sets).unwrap();
        let res = delta_exact(&fam);
        assert_eq!(res.delta, q(1, n as i64));
        assert!(fictitious_play(&fam, 1_000_000, &eps()).contains(&res.delta));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn strong_duality(fam in families(10)) {
        let res = delta_exact(&fam);
        prop_assert_eq!(verify_certificate(&fam, &res), Ok(()));
        prop_assert_eq!(evaluate_mean(&fam, &res.primal).unwrap(), res.delta.clone());
        if !fam.maximal().is_empty() {
            prop_assert_eq!(res.dual.min_coverage(&fam), res.delta.clone());
        }
        let mut tampered = res.clone();
        tampered.delta = &res.delta + &q(1, 1_000_000);
        prop_assert!(verify_certificate(&fam, &tampered).is_err());
        tampered.delta = &res.delta - &q(1, 1_000_000);
        prop_assert!(verify_certificate(&fam, &tampered).is_err());
    }

    #[test]
    fn value_bounds(fam in families(10)) {
        let delta = delta_exact(&fam).delta;
        prop_assert!(!delta.is_negative() && delta <= Rational::one());
        prop_assert_eq!(delta == Rational::one(), fam.is_full_powerset());
        prop_assert_eq!(delta.is_zero(), fam.uncovered().next().is_some());
        if !delta.is_zero() {
            prop_assert!(delta >= q(1, fam.n() as i64));
        }
    }

    #[test]
    fn no_mean_beats_the_value(fam in families(8), raw in proptest::collection::vec(0i64..10, 8)) {
        let n = fam.n();
        let w = &raw[..n];
        let total: i64 = w.iter().sum();
        prop_assume!(total > 0);
        let mean = ConvexMean::new(w.iter().map(|&v| q(v, total)).collect()).unwrap();
        prop_assert!(evaluate_mean(&fam, &mean).unwrap() >= delta_exact(&fam).delta);
    }

    #[test]
    fn adding_a_set_never_lowers_the_value(fam in families(8), extra in any::<u64>()) {
        let n = fam.n();
        let bigger = fam.with_set(ElementSet::from_mask(n, extra & ((1 << n) - 1))).unwrap();
        prop_assert!(delta_exact(&bigger).delta >= delta_exact(&fam).delta);
    }

    #[test]
    fn trace_reduction(fam in families(9), h_bits in any::<u64>()) {
        // The value over means supported in H equals the value of the trace.
        let n = fam.n();
        let h = h_bits & ((1 << n) - 1);
        prop_assume!(h != 0);
        let t = fam.trace(&ElementSet::from_mask(n, h)).unwrap();
        let res = delta_exact(&t.family);
        let mut lifted = vec![Rational::zero(); n];
        for (i, &l) in t.labels.iter().enumerate() {
            lifted[l] = res.primal.weights()[i].clone();
        }
        let lifted = ConvexMean::new(lifted).unwrap();
        prop_assert_eq!(evaluate_mean(&fam, &lifted).unwrap(), res.delta.clone());
        // No mean supported in H does better: lift the trace's dual cover
        // onto original maximal sets with the same trace.
        if !t.family.maximal().is_empty() {
            let mut coverage = vec![Rational::zero(); n];
            for (w, g) in res.dual.weights().iter().zip(t.family.maximal()) {
                let g_orig: u64 = g.iter().map(|i| 1u64 << t.labels[i]).sum();
                let f = fam.maximal().iter().find(|f| f.mask() & h & g_orig == g_orig).unwrap();
                for s in f.iter().filter(|s| h >> s & 1 == 1) {
                    coverage[s] += w;
                }
            }
            let min_h = t.labels.iter().map(|&l| coverage[l].clone()).min().unwrap();
            prop_assert!(min_h >= res.delta);
        }
    }

    #[test]
    fn best_response_is_scale_free(fam in families(8), raw in proptest::collection::vec(0i64..6, 8), scale in 1i64..50) {
        let n = fam.n();
        let w: Vec<Rational> = raw[..n].iter().map(|&v| q(v, 1)).collect();
        let scaled: Vec<Rational> = w.iter().map(|v| v * &q(scale, 7)).collect();
        let a = best_response(&fam, &w).unwrap();
        prop_assert_eq!(&a, &best_response(&fam, &scaled).unwrap());
        // It attains the maximum weight, ties going to the smallest set.
        let weight = |f: &ElementSet| f.iter().map(|s| w[s].clone()).sum::<Rational>();
        if let Some(top) = fam.maximal().iter().map(weight).max() {
            prop_assert_eq!(weight(&a), top.clone());
            let first = fam.maximal().iter().find(|f| weight(f) == top).unwrap();
            prop_assert_eq!(&a, first);
        }
    }

    #[test]
    fn oracle_agreement(fam in families(10)) {
        let exact = delta_exact(&fam).delta;
        let b = fictitious_play(&fam, 1_000_000, &eps());
        prop_assert!(b.contains(&exact));
        prop_assert!(b.converged);
        prop_assert!((b.midpoint() - exact).abs() <= eps());
    }
}
