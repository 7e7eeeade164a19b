//! Bockstein bookkeeping: 2-ranks from the long exact sequence of
//! ℤ →2→ ℤ → ℤ₂, the first Bockstein page against Sq¹-homology, and the
//! Sq¹ argument fixing H^{m+1}(B(Pᵐ,2)) for m ≡ 3 mod 4.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abelian::AbGroup2;
use crate::configcoh::{cohomology, mod2_dimension, Space, SpaceId};
use crate::f2algebra::{b_config_ring, default_cap, f_config_ring, split_sq1_homology};
use crate::report::VerificationReport;
use crate::stiefel::{d8_action_sign, stiefel_cohomology, ActionSign};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankSequence {
    pub m: u32,
    pub space: SpaceId,
    /// 2-rank of the torsion of H^i, for 2 ≤ i ≤ 2m−1.
    pub r: BTreeMap<usize, u32>,
}

/// Free rank of H^i, read off from the rational cohomology of the cover:
/// the classes of V_{m+1,2} on which G acts trivially.
pub fn free_rank_profile(s: SpaceId) -> Vec<u32> {
    let n = s.m + 1;
    (0..=2 * s.m)
        .map(|q| u32::from(stiefel_cohomology(n, q).free_rank() > 0 && d8_action_sign(n, q) == Ok(ActionSign::Plus)))
        .collect()
}

/// Top-down solve of dim H^i(;ℤ₂) = free_i + r_i + r_{i+1} from r_{2m} = 0.
pub fn rank_recursion(s: SpaceId) -> Result<RankSequence> {
    if s.m < 2 {
        return Err(Error::RangeError(format!("rank recursion needs m >= 2, got {}", s.m)));
    }
    let top = 2 * s.m as usize;
    let free = free_rank_profile(s);
    let mut all = vec![0i64; top + 1];
    for i in (0..top).rev() {
        let ri = mod2_dimension(s, i) as i64 - free[i] as i64 - all[i + 1];
        if ri < 0 {
            return Err(Error::InconsistentRecursion(i));
        }
        all[i] = ri;
    }
    // H^0 = ℤ has no torsion
    if all[0] != 0 {
        return Err(Error::InconsistentRecursion(0));
    }
    let r = (2..top).map(|i| (i, all[i] as u32)).collect();
    Ok(RankSequence { m: s.m, space: s, r })
}

/// The closed forms for r_{2m−ℓ}, 2 ≤ ℓ ≤ m−1.
pub fn closed_form_rank(m: u32, l: u32) -> u32 {
    if m % 2 == 0 {
        if l % 2 == 0 {
            l / 2 + 1
        } else {
            (l - 1) / 2
        }
    } else {
        (l + 1) / 2
    }
}

fn z4_count(g: &AbGroup2) -> u32 {
    g.stats().z4_count
}

pub fn page1_expected(s: SpaceId, d: usize) -> u32 {
    let h = cohomology(s, d);
    h.free_rank() + z4_count(&h) + z4_count(&cohomology(s, d + 1))
}

fn ring_for(s: SpaceId) -> Result<crate::f2algebra::PresentedF2Algebra> {
    let cap = default_cap(s.m);
    match s.space {
        Space::UnorderedB => b_config_ring(s.m, cap),
        Space::OrderedF => f_config_ring(s.m, cap),
    }
}

pub fn page1_compare(s: SpaceId) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    let top = 2 * s.m as usize;
    let cx = ring_for(s)?.sq1_complex(top + 1)?;
    for d in 0..=top {
        let label = format!("{s} Sq1-homology = page-1 rank");
        rep.check("bockstein", Some(s.m), Some(d), &label, &page1_expected(s, d), &(cx.homology_rank(d) as u32));
    }
    Ok(rep)
}

/// Recursion against the tables and the closed forms.
pub fn rank_check(s: SpaceId) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let seq = match rank_recursion(s) {
        Ok(seq) => seq,
        Err(e) => {
            rep.check("bockstein", Some(s.m), None, &format!("{s} rank recursion"), &"solvable".to_string(), &e.to_string());
            return rep;
        }
    };
    let m = s.m as usize;
    for (&i, &r) in &seq.r {
        let table = cohomology(s, i).stats().mult2_kernel_rank;
        rep.check("bockstein", Some(s.m), Some(i), &format!("{s} r_i vs table 2-rank"), &table, &r);
        let l = 2 * m - i;
        if (2..m).contains(&l) {
            let want = closed_form_rank(s.m, l as u32);
            rep.check("bockstein", Some(s.m), Some(i), &format!("{s} r_(2m-{l}) closed form"), &want, &r);
        }
    }
    rep
}

/// m = 4a+3: Sq¹-homology of R and xR in degree m+1 is (1,0), so the single
/// ℤ₄ in H^{m+1} sits on top of 2a copies of ℤ₂.
pub fn prop_sq1_check(a: u32) -> Result<VerificationReport> {
    if a > 2 {
        return Err(Error::RangeError(format!("a = {a} exceeds the degree cap (a <= 2)")));
    }
    let m = 4 * a + 3;
    let mut rep = VerificationReport::new();
    let split = split_sq1_homology(m, m as usize + 1)?;
    rep.check("sq1", Some(m), Some(m as usize + 1), "Sq1-homology of (R, xR)", &"(1, 0)".to_string(), &format!("{split:?}"));
    let h = cohomology(SpaceId::b(m), m as usize + 1);
    rep.check("sq1", Some(m), Some(m as usize + 1), "H^(m+1)(B)", &AbGroup2::brace(2 * a), &h);
    let r = rank_recursion(SpaceId::b(m))?.r[&(m as usize + 1)];
    rep.check("sq1", Some(m), Some(m as usize + 1), "2-rank of H^(m+1)", &(2 * a + 1), &r);
    // one ℤ₄ and 2-rank 2a+1 pin the group down once 2·H^{m+1} has order 2
    let forced = if split.0 + split.1 == 1 { AbGroup2::brace(2 * a) } else { AbGroup2::elem(r) };
    rep.check("sq1", Some(m), Some(m as usize + 1), "group forced by Sq1 and 2-rank", &h, &forced);
    Ok(rep)
}
