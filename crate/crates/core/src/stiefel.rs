//! Stiefel manifolds V_{n,2}, the D₈-action on their cohomology, the
//! sphere-bundle spectral sequence, orientability of the quotients and the
//! integral cohomology of the oriented Grassmannian of 2-planes.

use std::collections::BTreeMap;
use std::fmt;

use crate::abelian::{group_from_presentation, smith_normal_form, AbGroup2, GradedGroups};
use crate::clss::{Chart, LineCoeff};
use crate::{Error, Result, SmallIntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    D8,
    Z2xZ2,
    O2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionSign {
    Plus,
    Minus,
}

impl ActionSign {
    pub fn value(self) -> i8 {
        match self {
            ActionSign::Plus => 1,
            ActionSign::Minus => -1,
        }
    }
}

impl fmt::Display for ActionSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

pub fn stiefel_cohomology(n: u32, q: u32) -> AbGroup2 {
    if n == 2 {
        // two circles
        return if q <= 1 { AbGroup2::free(2) } else { AbGroup2::zero() };
    }
    let top = 2 * n - 3;
    if n % 2 == 0 {
        if q == 0 || q == n - 2 || q == n - 1 || q == top {
            AbGroup2::z()
        } else {
            AbGroup2::zero()
        }
    } else if q == 0 || q == top {
        AbGroup2::z()
    } else if q == n - 1 {
        AbGroup2::elem(1)
    } else {
        AbGroup2::zero()
    }
}

/// Sign by which ρ, ρ₁ and ρ₂ act on H^q(V_{n,2}).
pub fn d8_action_sign(n: u32, q: u32) -> Result<ActionSign> {
    if n < 3 || stiefel_cohomology(n, q).is_trivial() {
        return Err(Error::UnsupportedDegree { n, q });
    }
    if n % 2 == 0 && (q == n - 2 || q == 2 * n - 3) {
        Ok(ActionSign::Minus)
    } else {
        Ok(ActionSign::Plus)
    }
}

/// E₂ of the Serre spectral sequence of S^{n−2} → V_{n,2} → S^{n−1}, with
/// the coefficient of its one possible differential d_{n−1}: E^{0,n−2} → E^{n−1,0}.
#[derive(Debug, Clone)]
pub struct SphereBundleE2 {
    pub n: u32,
    pub chart: Chart,
    pub differential_coefficient: i64,
}

pub fn sphere_bundle_sss_e2(n: u32) -> SphereBundleE2 {
    assert!(n >= 3);
    let mut chart = Chart::new(2, n, None);
    for q in [0, n - 2] {
        chart.add_line(q, LineCoeff::Integer);
        chart.set(0, q, AbGroup2::z());
        chart.set(n - 1, q, AbGroup2::z());
    }
    // Euler characteristic of S^{n−1}
    let differential_coefficient = if n % 2 == 0 { 0 } else { 2 };
    SphereBundleE2 { n, chart, differential_coefficient }
}

impl SphereBundleE2 {
    pub fn abutment(&self) -> GradedGroups {
        let n = self.n as usize;
        let d = SmallIntMatrix::from_rows(vec![vec![self.differential_coefficient]]);
        let coker = group_from_presentation(&d).expect("coefficient is 0 or 2");
        let ker = AbGroup2::free(1 - smith_normal_form(&d).rank as u32);
        let mut out = GradedGroups::new(2 * n - 3);
        out.set(0, self.chart.get(0, 0));
        out.set(n - 2, ker);
        out.set(n - 1, coker);
        out.set(2 * n - 3, self.chart.get(self.n - 1, self.n - 2));
        out
    }
}

pub fn quotient_orientable(n: u32, subgroup: Subgroup) -> bool {
    match subgroup {
        Subgroup::D8 | Subgroup::Z2xZ2 => n == 2 || n % 2 == 1,
        Subgroup::O2 => n % 2 == 0,
    }
}

/// Top cohomology H^{2n−3} of V_{n,2}/G.
pub fn top_group_v_quotient(n: u32, subgroup: Subgroup) -> AbGroup2 {
    if quotient_orientable(n, subgroup) {
        AbGroup2::z()
    } else {
        AbGroup2::elem(1)
    }
}

type IntPoly = BTreeMap<Vec<u32>, i64>;

fn int_poly(terms: &[(i64, [u32; 2])]) -> IntPoly {
    terms.iter().map(|&(c, e)| (e.to_vec(), c)).collect()
}

/// Presented ring of the oriented Grassmannian G̃_{n,2}: generator degrees
/// and relations over ℤ.
fn grassmannian_presentation(n: u32) -> ([usize; 2], Vec<IntPoly>) {
    if n % 2 == 1 {
        let a = (n - 1) / 2;
        // x̃ in degree n−1, z̃ in degree 2
        let rels = vec![int_poly(&[(1, [2, 0])]), int_poly(&[(1, [1, a])]), int_poly(&[(1, [0, a]), (-2, [1, 0])])];
        ([n as usize - 1, 2], rels)
    } else {
        let a = n / 2;
        let eps = (a % 2) as i64;
        // κ in degree n−2, z̃ in degree 2
        let mut k2 = int_poly(&[(1, [2, 0])]);
        if eps != 0 {
            k2.insert(vec![1, a - 1], -eps);
        }
        let rels = vec![k2, int_poly(&[(1, [0, a]), (-2, [1, 1])])];
        ([n as usize - 2, 2], rels)
    }
}

fn monomials_of_degree(degs: [usize; 2], d: usize) -> Vec<Vec<u32>> {
    (0..=d / degs[0])
        .filter(|i| (d - i * degs[0]) % degs[1] == 0)
        .map(|i| vec![i as u32, ((d - i * degs[0]) / degs[1]) as u32])
        .collect()
}

/// Degree-d group of the presented ring: monomials modulo all monomial
/// multiples of the relations.
pub fn grassmannian_group(n: u32, d: usize) -> AbGroup2 {
    let (degs, rels) = grassmannian_presentation(n);
    let mons = monomials_of_degree(degs, d);
    let row: BTreeMap<&Vec<u32>, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for r in &rels {
        let rdeg = {
            let e = r.keys().next().expect("nonempty relation");
            e[0] as usize * degs[0] + e[1] as usize * degs[1]
        };
        if rdeg > d {
            continue;
        }
        for u in monomials_of_degree(degs, d - rdeg) {
            let mut col = vec![0i64; mons.len()];
            for (e, &c) in r {
                let prod = vec![e[0] + u[0], e[1] + u[1]];
                col[row[&prod]] += c;
            }
            cols.push(col);
        }
    }
    let mut m = SmallIntMatrix::zeros(mons.len(), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    group_from_presentation(&m).expect("Grassmannian cohomology has no odd torsion")
}

pub fn oriented_grassmannian_groups(n: u32) -> GradedGroups {
    assert!(n >= 3);
    GradedGroups::from_fn(2 * n as usize - 4, |d| grassmannian_group(n, d))
}
