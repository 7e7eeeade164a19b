use confcoh::configcoh::{mod2_dimension, SpaceId};
use confcoh::f2algebra::{
    b_config_ring, bd8_ring, binom_mod2, default_cap, f_config_ring, p_inf_squared_ring, split_sq1_homology, Poly,
    PresentedF2Algebra,
};
use confcoh::Error;
use proptest::prelude::*;

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[test]
fn binom_examples() {
    assert!(!binom_mod2(4, 2));
    assert!(!binom_mod2(6, 1));
    assert!(binom_mod2(1, 1));
    assert!(!binom_mod2(2, 3));
}

proptest! {
    #[test]
    fn binom_mod2_matches_direct_binomials(n in 0u64..60, k in 0u64..60) {
        prop_assert_eq!(binom_mod2(n, k), binom(n, k) % 2 == 1);
    }
}

#[test]
fn rewriting_binomials_vanish() {
    for a in 0..=5u64 {
        let m = 4 * a + 3;
        for i in 0..=m / 2 {
            if i % 4 != 0 {
                assert!(!binom_mod2(m - i, i), "m={m} i={i}");
            }
        }
        for i in (3..=(m + 1) / 2).step_by(4) {
            assert!(!binom_mod2(m + 1 - i, i), "m={m} i={i}");
        }
    }
}

#[test]
fn dimension_examples() {
    assert_eq!(bd8_ring(6).quotient_dimension(5).unwrap(), 6);
    assert_eq!(b_config_ring(4, 10).unwrap().quotient_dimension(6).unwrap(), 2);
    assert_eq!(p_inf_squared_ring(6).quotient_dimension(3).unwrap(), 4);
    assert!(matches!(bd8_ring(6).quotient_dimension(7), Err(Error::DegreeCapExceeded { .. })));
}

#[test]
fn classifying_hilbert_series() {
    let expect: Vec<usize> = (0..=20).map(|i| i + 1).collect();
    assert_eq!(bd8_ring(20).hilbert_series(20).unwrap(), expect);
    assert_eq!(p_inf_squared_ring(20).hilbert_series(20).unwrap(), expect);
}

#[test]
fn configuration_hilbert_series() {
    for m in 1..=12 {
        let cap = default_cap(m);
        let rings = [
            (SpaceId::b(m), b_config_ring(m, cap).unwrap()),
            (SpaceId::f(m), f_config_ring(m, cap).unwrap()),
        ];
        for (s, ring) in rings {
            let got = ring.hilbert_series(cap).unwrap();
            let want: Vec<usize> = (0..=cap).map(|i| mod2_dimension(s, i) as usize).collect();
            assert_eq!(got, want, "{s}");
        }
    }
}

#[test]
fn sq1_on_monomials_of_b_ring() {
    let m = 5;
    let ring = b_config_ring(m, default_cap(m)).unwrap();
    for d in 0..2 * m as usize {
        let next = ring.basis(d + 1).unwrap();
        for mon in ring.monomials(d) {
            let (i, i1, i2) = (mon[0], mon[1], mon[2]);
            let got = next.reduce(&ring.sq1_poly(&Poly::monomial(mon.clone())));
            let want = if (i + i1 + i2) % 2 == 0 {
                next.reduce(&Poly::zero())
            } else {
                next.reduce(&Poly::monomial(vec![i, i1 + 1, i2]))
            };
            assert_eq!(got, want, "{mon:?}");
        }
    }
}

#[test]
fn sq1_on_polynomial_ring_degree_one() {
    let ring = p_inf_squared_ring(4);
    let b1: Vec<_> = ring.basis(1).unwrap().basis_monomials().cloned().collect();
    let b2: Vec<_> = ring.basis(2).unwrap().basis_monomials().cloned().collect();
    let mat = ring.sq1_matrix(1).unwrap();
    for (j, src) in b1.iter().enumerate() {
        let sq: Vec<u32> = src.iter().map(|&e| 2 * e).collect();
        for (i, tgt) in b2.iter().enumerate() {
            assert_eq!(mat.get(i, j), *tgt == sq);
        }
    }
}

#[test]
fn sq1_homology_examples() {
    assert_eq!(b_config_ring(3, 8).unwrap().sq1_homology_rank(4).unwrap(), 1);
    assert_eq!(b_config_ring(5, 12).unwrap().sq1_homology_rank(4).unwrap(), 1);
    let one = PresentedF2Algebra::new(&[("x1", 1)], vec![], Some(vec![Poly::monomial(vec![2])]), 4).unwrap();
    assert_eq!(one.sq1_homology_rank(0).unwrap(), 1);
}

#[test]
fn sq1_squares_to_zero_everywhere() {
    let mut rings = vec![bd8_ring(26), p_inf_squared_ring(26)];
    for m in 1..=12 {
        rings.push(b_config_ring(m, default_cap(m)).unwrap());
        rings.push(f_config_ring(m, default_cap(m)).unwrap());
    }
    for ring in &rings {
        let top = ring.cap();
        let cx = ring.sq1_complex(top).unwrap();
        for d in 0..top - 1 {
            assert!(cx.maps[d + 1].mul(&cx.maps[d]).is_zero(), "{ring} degree {d}");
        }
    }
}

#[test]
fn split_examples() {
    assert_eq!(split_sq1_homology(3, 4).unwrap(), (1, 0));
    assert_eq!(split_sq1_homology(7, 8).unwrap(), (1, 0));
    assert_eq!(split_sq1_homology(3, 0).unwrap(), (1, 0));
    assert!(matches!(split_sq1_homology(5, 6), Err(Error::NotApplicable(_))));
}

#[test]
fn split_sums_to_total() {
    for m in [3u32, 7, 11] {
        let ring = b_config_ring(m, default_cap(m)).unwrap();
        for d in 0..=2 * m as usize {
            let (r, xr) = split_sq1_homology(m, d).unwrap();
            assert_eq!(r + xr, ring.sq1_homology_rank(d).unwrap(), "m={m} d={d}");
        }
    }
}

#[test]
fn bases_are_deterministic() {
    let a = b_config_ring(6, 14).unwrap();
    let b = b_config_ring(6, 14).unwrap();
    for d in 0..=14 {
        let x: Vec<_> = a.basis(d).unwrap().basis_monomials().cloned().collect();
        let y: Vec<_> = b.basis(d).unwrap().basis_monomials().cloned().collect();
        assert_eq!(x, y);
        assert!(x.iter().all(|mon| mon[0] <= 1), "x-exponent at most one");
    }
}

#[test]
fn malformed_presentations_are_rejected() {
    let inhom = Poly::from_terms([vec![2, 0], vec![1, 0]]);
    assert!(matches!(
        PresentedF2Algebra::new(&[("a", 1), ("b", 1)], vec![inhom], None, 4),
        Err(Error::Inhomogeneous(0))
    ));
    // Sq¹a = b² does not preserve the ideal (a)
    let bad = PresentedF2Algebra::new(
        &[("a", 1), ("b", 1)],
        vec![Poly::monomial(vec![1, 0])],
        Some(vec![Poly::monomial(vec![0, 2]), Poly::monomial(vec![0, 2])]),
        4,
    );
    assert!(matches!(bad, Err(Error::IllDefinedDerivation(0))));
}
