use confcoh::bockstein::{page1_compare, page1_expected, prop_sq1_check, rank_check, rank_recursion};
use confcoh::configcoh::{cohomology, mod2_dimension};
use confcoh::SpaceId;

#[test]
fn recursion_examples() {
    assert_eq!(rank_recursion(SpaceId::b(6)).unwrap().r[&10], 2);
    assert_eq!(rank_recursion(SpaceId::b(5)).unwrap().r[&8], 1);
    assert_eq!(rank_recursion(SpaceId::b(7)).unwrap().r[&8], 3);
}

#[test]
fn recursion_matches_tables_and_closed_forms() {
    for m in 2..=12 {
        for s in [SpaceId::b(m), SpaceId::f(m)] {
            let rep = rank_check(s);
            assert!(rep.passed(), "{rep}");
            let seq = rank_recursion(s).unwrap();
            assert_eq!(seq.r.keys().copied().collect::<Vec<_>>(), (2..2 * m as usize).collect::<Vec<_>>());
        }
    }
}

/// r_{2m−ℓ} from the displayed formulas, written out independently.
#[test]
fn displayed_rank_formulas() {
    for m in (4..=12u32).step_by(2) {
        let r = rank_recursion(SpaceId::b(m)).unwrap().r;
        for l in 2..m {
            let a = l / 2;
            let want = if l % 2 == 0 { a + 1 } else { a };
            assert_eq!(r[&((2 * m - l) as usize)], want);
        }
    }
    for m in (3..=11u32).step_by(2) {
        let r = rank_recursion(SpaceId::b(m)).unwrap().r;
        for l in 2..m {
            assert_eq!(r[&((2 * m - l) as usize)], (l + 1) / 2);
        }
    }
}

#[test]
fn page1_examples() {
    assert_eq!(page1_expected(SpaceId::b(5), 4), 1);
    assert_eq!(page1_expected(SpaceId::b(5), 3), 1);
    assert_eq!(page1_expected(SpaceId::f(5), 5), 1);
    let f4: Vec<u32> = (0..=8).map(|d| page1_expected(SpaceId::f(4), d)).collect();
    assert_eq!(f4, vec![1, 0, 0, 0, 0, 0, 0, 1, 0]);
    // degree 3 sees the Z4 of H^4 as well as the free class
    let b3: Vec<u32> = (0..=6).map(|d| page1_expected(SpaceId::b(3), d)).collect();
    assert_eq!(b3, vec![1, 0, 0, 2, 1, 0, 0]);
}

#[test]
fn page1_equals_sq1_homology() {
    for m in 2..=10 {
        for s in [SpaceId::b(m), SpaceId::f(m)] {
            let rep = page1_compare(s).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }
}

#[test]
fn page1_sum_rule() {
    for m in 1..=12 {
        for s in [SpaceId::b(m), SpaceId::f(m)] {
            let range = 0..=2 * m as usize + 1;
            let total: u32 = range.clone().map(|d| page1_expected(s, d)).sum();
            let z4: u32 = range.clone().map(|d| cohomology(s, d).stats().z4_count).sum();
            let free: u32 = range.map(|d| cohomology(s, d).free_rank()).sum();
            assert_eq!(total, 2 * z4 + free);
        }
    }
}

#[test]
fn page1_is_bounded_by_mod2_dimension() {
    for m in 2..=12 {
        for s in [SpaceId::b(m), SpaceId::f(m)] {
            for d in 0..=2 * m as usize {
                assert!(page1_expected(s, d) <= mod2_dimension(s, d));
            }
        }
    }
}

#[test]
fn sq1_forces_the_group_above_the_middle() {
    for a in 0..=2 {
        let rep = prop_sq1_check(a).unwrap();
        assert!(rep.passed(), "{rep}");
    }
    assert_eq!(cohomology(SpaceId::b(7), 8).to_string(), "{2}");
    assert_eq!(cohomology(SpaceId::b(11), 12).to_string(), "{4}");
}
