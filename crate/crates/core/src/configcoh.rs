//! Integral cohomology of F(Pᵐ,2) and B(Pᵐ,2) in closed form, with homology,
//! twisted cohomology and the consistency checks tying them together.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{uct_homology, AbGroup2, GradedGroups};
use crate::groupcoh::{classifying_cohomology, CoeffId, GroupId};
use crate::report::VerificationReport;
use crate::stiefel::{quotient_orientable, top_group_v_quotient, Subgroup};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    /// F(Pᵐ,2), ordered pairs.
    OrderedF,
    /// B(Pᵐ,2), unordered pairs.
    UnorderedB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceId {
    pub space: Space,
    pub m: u32,
}

impl SpaceId {
    pub fn f(m: u32) -> Self {
        assert!(m >= 1);
        SpaceId { space: Space::OrderedF, m }
    }

    pub fn b(m: u32) -> Self {
        assert!(m >= 1);
        SpaceId { space: Space::UnorderedB, m }
    }

    pub fn group(&self) -> GroupId {
        match self.space {
            Space::OrderedF => GroupId::Z2xZ2,
            Space::UnorderedB => GroupId::D8,
        }
    }

    pub fn subgroup(&self) -> Subgroup {
        match self.space {
            Space::OrderedF => Subgroup::Z2xZ2,
            Space::UnorderedB => Subgroup::D8,
        }
    }

    /// Top degree 2m−1 (the dimension of the orbit space V_{m+1,2}/G).
    pub fn top(&self) -> usize {
        2 * self.m as usize - 1
    }

    pub fn orientable(&self) -> bool {
        quotient_orientable(self.m + 1, self.subgroup())
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.space {
            Space::OrderedF => "F",
            Space::UnorderedB => "B",
        };
        write!(f, "{s}(P^{},2)", self.m)
    }
}

fn elem(k: i64) -> AbGroup2 {
    assert!(k >= 0, "negative rank {k}");
    AbGroup2::elem(k as u32)
}

fn brace(k: i64) -> AbGroup2 {
    assert!(k >= 0, "negative rank {k}");
    AbGroup2::brace(k as u32)
}

fn ordered(m: i64, i: i64) -> AbGroup2 {
    let n = m / 2;
    let low = |i: i64| if i % 2 == 0 { elem(i / 2 + 1) } else { elem((i - 1) / 2) };
    if m % 2 == 0 {
        match i {
            _ if i == 0 || i == 4 * n - 1 => AbGroup2::z(),
            _ if 1 <= i && i <= 2 * n => low(i),
            _ if 2 * n < i && i < 4 * n - 1 => {
                if i % 2 == 0 {
                    elem(2 * n + 1 - i / 2)
                } else {
                    elem(2 * n - (i + 1) / 2)
                }
            }
            _ => AbGroup2::zero(),
        }
    } else {
        match i {
            0 => AbGroup2::z(),
            _ if 1 <= i && i <= 2 * n => low(i),
            _ if i == 2 * n + 1 => &AbGroup2::z() + &elem(n),
            _ if 2 * n + 1 < i && i <= 4 * n + 1 => {
                if i % 2 == 0 {
                    elem(2 * n + 1 - i / 2)
                } else {
                    elem(2 * n + 1 - (i - 1) / 2)
                }
            }
            _ => AbGroup2::zero(),
        }
    }
}

fn unordered(m: i64, i: i64) -> AbGroup2 {
    let n = m / 2;
    let (a, b) = (i / 4, i % 4);
    let low = || match b {
        0 => brace(2 * a),
        1 => elem(2 * a),
        2 => elem(2 * a + 2),
        _ => elem(2 * a + 1),
    };
    if m % 2 == 0 {
        match i {
            _ if i == 0 || i == 4 * n - 1 => AbGroup2::z(),
            _ if 0 < i && i <= 2 * n => low(),
            _ if 2 * n < i && i < 4 * n - 1 => match b {
                0 => brace(2 * n - 2 * a),
                1 => elem(2 * n - 2 * a - 1),
                2 => elem(2 * n - 2 * a),
                _ => elem(2 * n - 2 * a - 2),
            },
            _ => AbGroup2::zero(),
        }
    } else {
        match i {
            0 => AbGroup2::z(),
            _ if 0 < i && i < 2 * n + 1 => low(),
            _ if i == 2 * n + 1 => &AbGroup2::z() + &elem(n),
            _ if 2 * n + 1 < i && i <= 4 * n + 1 => match b {
                0 => brace(2 * n - 2 * a),
                1 => elem(2 * n + 1 - 2 * a),
                _ => elem(2 * n - 2 * a),
            },
            _ => AbGroup2::zero(),
        }
    }
}

pub fn cohomology(s: SpaceId, i: usize) -> AbGroup2 {
    match s.space {
        Space::OrderedF => ordered(s.m as i64, i as i64),
        Space::UnorderedB => unordered(s.m as i64, i as i64),
    }
}

pub fn cohomology_table(s: SpaceId) -> GradedGroups {
    GradedGroups::from_fn(s.top(), |i| cohomology(s, i))
}

pub fn mod2_dimension(s: SpaceId, i: usize) -> u32 {
    let m = s.m as usize;
    if i < m {
        i as u32 + 1
    } else if i < 2 * m {
        (2 * m - i) as u32
    } else {
        0
    }
}

pub fn homology(s: SpaceId) -> GradedGroups {
    uct_homology(&cohomology_table(s))
}

/// Cohomology with coefficients twisted by the orientation character of the
/// orbit space E_m (a closed (2m−1)-manifold).  In the non-orientable case
/// the torsion comes from the linking-form isomorphism TH^{2m−j} ≅ TH^j(;ℤ̃)
/// and the free part from Poincaré duality H^j(;ℤ̃) ≅ H_{2m−1−j}.
pub fn twisted_cohomology(s: SpaceId, j: usize) -> Result<AbGroup2> {
    let top = s.top();
    if j > top {
        return Err(Error::DegreeOutOfRange { degree: j, max: top });
    }
    if s.orientable() {
        return Ok(cohomology(s, j));
    }
    let free = cohomology(s, top - j).free_part();
    let torsion = cohomology(s, top + 1 - j).torsion_part();
    Ok(&free + &torsion)
}

pub fn duality_symmetry_check(s: SpaceId) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let (m, mm) = (s.m as usize, Some(s.m));
    let label = format!("{s} torsion duality");
    if s.orientable() {
        for i in 0..=2 * m {
            rep.check("duality", mm, Some(i), &label, &cohomology(s, 2 * m - i).torsion_part(), &cohomology(s, i).torsion_part());
        }
    } else {
        for j in 0..=m.saturating_sub(2) {
            let twisted = classifying_cohomology(s.group(), CoeffId::IntegerTwisted, j);
            rep.check("duality", mm, Some(j), &label, &twisted, &cohomology(s, 2 * m - j).torsion_part());
            rep.check("duality", mm, Some(j), &format!("{s} twisted cohomology"), &twisted, &twisted_cohomology(s, j).expect("in range").torsion_part());
        }
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PStar {
    Iso,
    EpiNonzeroKernel,
    MonoOntoTorsion,
    Zero,
    Open,
}

impl fmt::Display for PStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Behaviour of p*: H^i(BG) → H^i(E_m) where E_m = V_{m+1,2}/G.  The kernel
/// rank (when the kernel is elementary) is read off torsion orders.
pub fn p_star_profile(g: GroupId, m: u32, i: usize) -> (PStar, Option<u32>) {
    let mu = m as usize;
    let s = match g {
        GroupId::D8 => SpaceId::b(m),
        GroupId::Z2xZ2 => SpaceId::f(m),
    };
    let kernel = || {
        let bg = classifying_cohomology(g, CoeffId::IntegerTrivial, i).stats().torsion_order_log2;
        let sp = cohomology(s, i).stats().torsion_order_log2;
        bg.checked_sub(sp)
    };
    if m % 2 == 0 {
        match i {
            _ if i <= mu => (PStar::Iso, None),
            _ if i < 2 * mu - 1 => (PStar::EpiNonzeroKernel, kernel()),
            _ => (PStar::Zero, None),
        }
    } else {
        match i {
            _ if i < mu => (PStar::Iso, None),
            _ if i == mu => (PStar::MonoOntoTorsion, None),
            _ if i <= 2 * mu - 1 && g == GroupId::D8 && m % 4 == 3 => (PStar::Open, None),
            _ if i <= 2 * mu - 1 => (PStar::EpiNonzeroKernel, kernel()),
            _ => (PStar::Zero, None),
        }
    }
}

pub fn global_checks(s: SpaceId) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let mm = Some(s.m);
    let top = s.top();
    let free_top = if s.m % 2 == 0 { top } else { s.m as usize };
    let mut alt = 0i64;
    let mut max_exp = 0;
    for i in 0..=top + 1 {
        let h = cohomology(s, i);
        let want = u32::from(i == 0 || i == free_top);
        rep.check("global", mm, Some(i), &format!("{s} free rank"), &want, &h.free_rank());
        let lhs = h.stats().two_rank_tensor + cohomology(s, i + 1).stats().mult2_kernel_rank;
        rep.check("global", mm, Some(i), &format!("{s} mod-2 UCT"), &mod2_dimension(s, i), &lhs);
        alt += if i % 2 == 0 { 1 } else { -1 } * h.free_rank() as i64;
        max_exp = max_exp.max(h.torsion_exponents().iter().copied().max().unwrap_or(0));
    }
    rep.check("global", mm, Some(top), &format!("{s} top group"), &top_group_v_quotient(s.m + 1, s.subgroup()), &cohomology(s, top));
    rep.check("global", mm, None, &format!("{s} Euler characteristic"), &0, &alt);
    let bound = match s.space {
        Space::OrderedF => 1,
        Space::UnorderedB => 2,
    };
    rep.assert("global", mm, None, &format!("{s} torsion exponent <= {bound}"), max_exp <= bound);
    rep
}
