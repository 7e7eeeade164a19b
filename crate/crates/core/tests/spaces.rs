use confcoh::configcoh::{
    cohomology, duality_symmetry_check, global_checks, homology, mod2_dimension, p_star_profile, twisted_cohomology,
    PStar,
};
use confcoh::groupcoh::{classifying_cohomology, uct_mod2_check};
use confcoh::stiefel::{
    d8_action_sign, oriented_grassmannian_groups, quotient_orientable, sphere_bundle_sss_e2, stiefel_cohomology,
    top_group_v_quotient, ActionSign, Subgroup,
};
use confcoh::{AbGroup2, CoeffId, GroupId, SpaceId};

fn g(s: &str) -> AbGroup2 {
    s.parse().unwrap()
}

// ---- classifying spaces ----

#[test]
fn classifying_examples() {
    use CoeffId::*;
    use GroupId::*;
    assert_eq!(classifying_cohomology(D8, IntegerTrivial, 8), g("{4}"));
    assert_eq!(classifying_cohomology(D8, IntegerTwisted, 2), g("{0}"));
    assert_eq!(classifying_cohomology(Z2xZ2, IntegerTrivial, 6), g("<4>"));
    assert_eq!(classifying_cohomology(Z2xZ2, IntegerTwisted, 5), g("<3>"));
    assert_eq!(classifying_cohomology(D8, IntegerTrivial, 0), g("Z"));
}

#[test]
fn uct_examples_and_sweep() {
    let rep = uct_mod2_check(GroupId::D8, 4);
    let deg4 = rep.checks.iter().find(|c| c.degree == Some(4)).unwrap();
    assert_eq!((deg4.expected.as_str(), deg4.computed.as_str()), ("5", "5"));
    for grp in [GroupId::D8, GroupId::Z2xZ2] {
        assert!(uct_mod2_check(grp, 40).passed());
    }
}

#[test]
fn twisted_vanishes_in_degree_zero() {
    for grp in [GroupId::D8, GroupId::Z2xZ2] {
        assert!(classifying_cohomology(grp, CoeffId::IntegerTwisted, 0).is_trivial());
    }
}

#[test]
fn bd8_periodicity() {
    for i in 1..=36 {
        let a = classifying_cohomology(GroupId::D8, CoeffId::IntegerTrivial, i).stats();
        let b = classifying_cohomology(GroupId::D8, CoeffId::IntegerTrivial, i + 4).stats();
        assert_eq!(b.mult2_kernel_rank, a.mult2_kernel_rank + 2);
        assert_eq!(b.z4_count, a.z4_count);
    }
}

// ---- Stiefel manifolds ----

#[test]
fn sphere_bundle_abutment_sweep() {
    for n in 3..=20 {
        let ab = sphere_bundle_sss_e2(n).abutment();
        for q in 0..=2 * n + 2 {
            assert_eq!(ab.get(q as usize), stiefel_cohomology(n, q), "n={n} q={q}");
        }
    }
}

#[test]
fn signs_are_plus_on_z2() {
    for n in 3..=20 {
        for q in 0..=2 * n {
            let h = stiefel_cohomology(n, q);
            if h.is_finite() && !h.is_trivial() {
                assert_eq!(d8_action_sign(n, q).unwrap(), ActionSign::Plus);
            }
        }
    }
}

#[test]
fn stiefel_euler_characteristic_vanishes() {
    for n in 3..=20 {
        let chi: i64 = (0..=2 * n).map(|q| stiefel_cohomology(n, q).free_rank() as i64 * if q % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(chi, 0);
    }
}

#[test]
fn orientability_sweep() {
    for n in 3..=20 {
        assert_eq!(quotient_orientable(n, Subgroup::D8), n % 2 == 1);
        assert_eq!(quotient_orientable(n, Subgroup::Z2xZ2), n % 2 == 1);
        assert_eq!(quotient_orientable(n, Subgroup::O2), n % 2 == 0);
        let top = top_group_v_quotient(n, Subgroup::D8);
        assert_eq!(top, if n % 2 == 1 { g("Z") } else { g("<1>") });
    }
}

#[test]
fn grassmannian_sweep() {
    for n in 3..=20u32 {
        let gr = oriented_grassmannian_groups(n);
        let mut total = 0;
        for d in 0..=2 * n as usize - 4 {
            let h = gr.get(d);
            assert!(h.torsion_exponents().is_empty(), "n={n} d={d}");
            if d % 2 == 1 {
                assert!(h.is_trivial());
            }
            total += h.free_rank();
        }
        assert_eq!(total, if n % 2 == 1 { n - 1 } else { n });
        if n % 2 == 0 {
            assert_eq!(gr.get(n as usize - 2), AbGroup2::free(2));
        }
    }
}

// ---- configuration spaces ----

#[test]
fn table_examples() {
    assert_eq!(cohomology(SpaceId::b(6), 8), g("{2}"));
    assert_eq!(cohomology(SpaceId::b(5), 8), g("{0}"));
    assert_eq!(cohomology(SpaceId::f(5), 5), g("Z + <2>"));
    assert_eq!(cohomology(SpaceId::b(3), 4), g("{0}"));
    assert_eq!(cohomology(SpaceId::f(1), 1), g("Z"));
    assert_eq!(mod2_dimension(SpaceId::b(4), 6), 2);
    assert_eq!(homology(SpaceId::b(2)).get(3), g("Z"));
}

/// H^i of B(P^m,2) for even m read off the rows of the printed table.
#[test]
fn even_rows_of_the_printed_table() {
    let rows: [(u32, &[&str]); 4] = [
        (2, &["<2>"]),
        (4, &["<2>", "<1>", "{2}", "<1>", "<2>"]),
        (6, &["<2>", "<1>", "{2}", "<2>", "<4>", "<2>", "{2}", "<1>", "<2>"]),
        (8, &["<2>", "<1>", "{2}", "<2>", "<4>", "<3>", "{4}", "<3>", "<4>", "<2>", "{2}", "<1>", "<2>"]),
    ];
    for (m, row) in rows {
        for (k, s) in row.iter().enumerate() {
            assert_eq!(cohomology(SpaceId::b(m), k + 2).to_string(), *s, "m={m} i={}", k + 2);
        }
        assert_eq!(cohomology(SpaceId::b(m), 2 * m as usize - 1), g("Z"));
    }
}

#[test]
fn global_checks_sweep() {
    for m in 2..=12 {
        for s in [SpaceId::b(m), SpaceId::f(m)] {
            let rep = global_checks(s);
            assert!(rep.passed(), "{rep}");
        }
    }
}

#[test]
fn mod2_uct_for_all_small_m() {
    for m in 1..=12 {
        for s in [SpaceId::b(m), SpaceId::f(m)] {
            for i in 0..=2 * m as usize + 1 {
                let lhs = cohomology(s, i).stats().two_rank_tensor + cohomology(s, i + 1).stats().mult2_kernel_rank;
                assert_eq!(lhs, mod2_dimension(s, i), "{s} i={i}");
            }
        }
    }
}

#[test]
fn z4_placement() {
    for m in 1..=12 {
        for i in 0..=2 * m as usize + 2 {
            let b = cohomology(SpaceId::b(m), i).stats().z4_count;
            let want = u32::from(i % 4 == 0 && i > 0 && i < 2 * m as usize - 1);
            assert_eq!(b, want, "m={m} i={i}");
            assert_eq!(cohomology(SpaceId::f(m), i).stats().z4_count, 0);
        }
    }
}

#[test]
fn duality_sweep_and_examples() {
    for m in 2..=12 {
        for s in [SpaceId::b(m), SpaceId::f(m)] {
            assert!(duality_symmetry_check(s).passed(), "{}", duality_symmetry_check(s));
        }
    }
    assert_eq!(cohomology(SpaceId::b(6), 3), cohomology(SpaceId::b(6), 9));
    assert_eq!(cohomology(SpaceId::b(5), 9), classifying_cohomology(GroupId::D8, CoeffId::IntegerTwisted, 1));
    assert_eq!(
        cohomology(SpaceId::f(4), 2).torsion_part(),
        cohomology(SpaceId::f(4), 6).torsion_part()
    );
}

#[test]
fn twisted_examples() {
    assert_eq!(twisted_cohomology(SpaceId::b(5), 2).unwrap().torsion_part(), g("{0}"));
    assert_eq!(twisted_cohomology(SpaceId::f(5), 3).unwrap().torsion_part(), g("<2>"));
    assert_eq!(twisted_cohomology(SpaceId::b(4), 5).unwrap(), g("<1>"));
}

#[test]
fn p_star_kernels() {
    assert_eq!(p_star_profile(GroupId::D8, 7, 10), (PStar::Open, None));
    for m in 2..=12u32 {
        for grp in [GroupId::D8, GroupId::Z2xZ2] {
            let s = if grp == GroupId::D8 { SpaceId::b(m) } else { SpaceId::f(m) };
            for i in 0..=2 * m as usize - 1 {
                let (kind, k) = p_star_profile(grp, m, i);
                if i + 2 <= m as usize {
                    assert_eq!(kind, PStar::Iso);
                    assert_eq!(cohomology(s, i), classifying_cohomology(grp, CoeffId::IntegerTrivial, i));
                }
                if i > m as usize && i < 2 * m as usize - 1 {
                    let want = if m % 2 == 0 {
                        Some(i as i64 - m as i64)
                    } else if grp == GroupId::D8 && m % 4 == 3 {
                        assert_eq!(kind, PStar::Open);
                        None
                    } else {
                        Some(i as i64 - m as i64 + if i % 2 == 0 { 1 } else { -1 })
                    };
                    if let Some(w) = want {
                        assert_eq!(kind, PStar::EpiNonzeroKernel);
                        assert_eq!(k.map(i64::from), Some(w), "{grp} m={m} i={i}");
                    }
                }
            }
        }
    }
}
