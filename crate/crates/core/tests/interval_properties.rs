mod common;

use common::*;
use proptest::prelude::*;
use ptak_core::*;

fn systems(max_n: usize, max_pieces: usize) -> impl Strategy<Value = IntervalSystem> {
    (any::<u64>(), 1..=max_n, 1..=max_pieces, 0i64..=8)
        .prop_map(|(seed, n, pieces, m)| random_system(seed, n, pieces, &q(m, 16)).unwrap())
}

/// Direct test: do the interval sets of `a` share a point?
fn intersect_directly(sys: &IntervalSystem, a: u64) -> bool {
    let labels: Vec<usize> = (0..sys.n()).filter(|s| a >> s & 1 == 1).collect();
    if labels.is_empty() {
        return true;
    }
    // Candidate common points: left endpoints of the pieces involved. A
    // non-empty intersection of closed intervals contains the largest left
    // endpoint of some combination of pieces, which is itself a left endpoint.
    sys.sets()[labels[0]]
        .pieces()
        .iter()
        .chain(labels.iter().flat_map(|&s| sys.sets()[s].pieces().iter()))
        .map(|(lo, _)| lo)
        .any(|x| labels.iter().all(|&s| sys.sets()[s].contains(x)))
}

#[test]
fn seeded_system_is_reproducible() {
    let a = random_system(1, 3, 1, &q(1, 4)).unwrap();
    let b = random_system(1, 3, 1, &q(1, 4)).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

#[test]
fn pairwise_members_force_the_triple() {
    let single = |a, b| IntervalSet::new(vec![(a, b)]).unwrap();
    let sys = IntervalSystem::new(vec![
        single(q(0, 1), q(3, 5)),
        single(q(1, 5), q(4, 5)),
        single(q(1, 2), q(1, 1)),
    ])
    .unwrap();
    let fam = trace_family(&sys);
    for pair in [0b011u64, 0b110, 0b101] {
        assert!(intersect_directly(&sys, pair));
        assert!(fam.membership(&ElementSet::from_mask(3, pair)).unwrap());
    }
    assert!(fam.membership(&ElementSet::from_mask(3, 0b111)).unwrap());
    assert_eq!(helly_check(&sys), Ok(true));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sweep_matches_direct_intersection(sys in systems(10, 3)) {
        let fam = trace_family(&sys);
        for a in 0u64..1 << sys.n() {
            let direct = intersect_directly(&sys, a);
            prop_assert_eq!(fam.membership(&ElementSet::from_mask(sys.n(), a)).unwrap(), direct);
            prop_assert_eq!(!sys.common_part((0..sys.n()).filter(|s| a >> s & 1 == 1)).is_empty(), direct);
        }
    }

    #[test]
    fn trace_family_is_adequate(sys in systems(10, 3)) {
        // Members are exactly the sets all of whose subsets are members; for
        // single intervals, three or more labels whose one-smaller subsets
        // are all members always form a member (Helly).
        let fam = trace_family(&sys);
        let n = sys.n();
        let tops = masks(&fam);
        let single = sys.sets().iter().all(|c| c.pieces().len() == 1);
        for a in 1u64..1 << n {
            let member = is_member(&tops, a);
            let mut sub = a;
            let mut every_subset = true;
            loop {
                every_subset &= is_member(&tops, sub);
                if sub == 0 { break; }
                sub = (sub - 1) & a;
            }
            prop_assert_eq!(member, every_subset);
            let below = (0..n).filter(|s| a >> s & 1 == 1).all(|s| is_member(&tops, a & !(1 << s)));
            if single && a.count_ones() >= 3 && below {
                prop_assert!(member);
            }
        }
    }

    #[test]
    fn measure_bound_holds(sys in systems(10, 3)) {
        let r = measure_lower_bound(&sys);
        prop_assert!(r.ok);
        prop_assert!(r.delta >= r.bound);
    }

    #[test]
    fn helly_on_single_intervals(sys in systems(12, 1)) {
        prop_assert_eq!(helly_check(&sys), Ok(true));
    }

    #[test]
    fn degenerate_points_count_for_membership(seed in any::<u64>()) {
        let pt = q((seed % 97) as i64, 97);
        let sys = IntervalSystem::new(vec![
            IntervalSet::new(vec![(pt.clone(), pt.clone())]).unwrap(),
            IntervalSet::unit(),
        ]).unwrap();
        prop_assert!(trace_family(&sys).is_full_powerset());
        let r = measure_lower_bound(&sys);
        prop_assert_eq!(r.bound, Rational::zero());
        prop_assert!(r.ok);
    }
}
