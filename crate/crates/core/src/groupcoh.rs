//! Cohomology of BD₈ and of B(ℤ₂×ℤ₂) = P^∞×P^∞ with trivial, twisted and
//! mod-2 coefficients, as closed forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::AbGroup2;
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupId {
    D8,
    Z2xZ2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffId {
    IntegerTrivial,
    /// ℤ_α: the generators ρ, ρ₁, ρ₂ act by −1.
    IntegerTwisted,
    ModTwo,
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupId::D8 => "D8",
            GroupId::Z2xZ2 => "Z2xZ2",
        })
    }
}

impl FromStr for GroupId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "d8" => Ok(GroupId::D8),
            "z2xz2" | "z2z2" => Ok(GroupId::Z2xZ2),
            _ => Err(format!("unknown group {s:?} (expected D8 or Z2xZ2)")),
        }
    }
}

pub fn classifying_cohomology(g: GroupId, c: CoeffId, i: usize) -> AbGroup2 {
    let k = i as u32;
    let (a, b) = (k / 4, k % 4);
    match (g, c) {
        (_, CoeffId::ModTwo) => AbGroup2::elem(k + 1),
        (GroupId::D8, CoeffId::IntegerTrivial) => match (a, b) {
            (0, 0) => AbGroup2::z(),
            (_, 0) => AbGroup2::brace(2 * a),
            (_, 1) => AbGroup2::elem(2 * a),
            (_, 2) => AbGroup2::elem(2 * a + 2),
            _ => AbGroup2::elem(2 * a + 1),
        },
        (GroupId::D8, CoeffId::IntegerTwisted) => match b {
            0 => AbGroup2::elem(2 * a),
            1 => AbGroup2::elem(2 * a + 1),
            2 => AbGroup2::brace(2 * a),
            _ => AbGroup2::elem(2 * a + 2),
        },
        (GroupId::Z2xZ2, CoeffId::IntegerTrivial) => match k {
            0 => AbGroup2::z(),
            _ if k % 2 == 0 => AbGroup2::elem(k / 2 + 1),
            _ => AbGroup2::elem((k - 1) / 2),
        },
        (GroupId::Z2xZ2, CoeffId::IntegerTwisted) => {
            if k % 2 == 0 {
                AbGroup2::elem(k / 2)
            } else {
                AbGroup2::elem(k.div_ceil(2))
            }
        }
    }
}

/// Mod-2 UCT: rank(H^i ⊗ 𝔽₂) + rank(₂H^{i+1}) = dim H^i(;𝔽₂), for both the
/// trivial and the twisted integral tables (ℤ_α ⊗ 𝔽₂ is the trivial module).
pub fn uct_mod2_check(g: GroupId, i_max: usize) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for coeff in [CoeffId::IntegerTrivial, CoeffId::IntegerTwisted] {
        let label = match coeff {
            CoeffId::IntegerTrivial => format!("H*(B{g}) mod-2 UCT"),
            _ => format!("H*(B{g};Z_a) mod-2 UCT"),
        };
        for i in 0..=i_max {
            let lhs = classifying_cohomology(g, coeff, i).stats().two_rank_tensor
                + classifying_cohomology(g, coeff, i + 1).stats().mult2_kernel_rank;
            let dim = classifying_cohomology(g, CoeffId::ModTwo, i).stats().two_rank_tensor;
            rep.check("uct", None, Some(i), &label, &dim, &lhs);
        }
    }
    rep
}
