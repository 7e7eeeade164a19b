//! Finitely generated abelian groups whose torsion is a 2-group, and the
//! Smith normal form used to read them off presentation matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::{Error, IntMatrix, Result};

/// ℤ^r ⊕ ⊕ ℤ/2^e, stored canonically (exponents sorted ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "GroupJson", try_from = "GroupJson")]
pub struct AbGroup2 {
    free_rank: u32,
    torsion: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub two_rank_tensor: u32,
    pub mult2_kernel_rank: u32,
    pub torsion_order_log2: u32,
    pub z4_count: u32,
}

impl AbGroup2 {
    pub fn new(free_rank: u32, mut torsion: Vec<u32>) -> Self {
        torsion.retain(|&e| e > 0);
        torsion.sort_unstable();
        AbGroup2 { free_rank, torsion }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn z() -> Self {
        Self::free(1)
    }

    pub fn free(r: u32) -> Self {
        AbGroup2 { free_rank: r, torsion: Vec::new() }
    }

    /// ⟨k⟩, the elementary abelian group of rank k.
    pub fn elem(k: u32) -> Self {
        Self::new(0, vec![1; k as usize])
    }

    /// {k} = ⟨k⟩ ⊕ ℤ₄.
    pub fn brace(k: u32) -> Self {
        let mut t = vec![1; k as usize];
        t.push(2);
        Self::new(0, t)
    }

    pub fn cyclic(e: u32) -> Self {
        Self::new(0, vec![e])
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion_exponents(&self) -> &[u32] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn free_part(&self) -> Self {
        Self::free(self.free_rank)
    }

    pub fn torsion_part(&self) -> Self {
        AbGroup2 { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Number of ℤ₂ summands.
    pub fn elementary_rank(&self) -> u32 {
        self.torsion.iter().filter(|&&e| e == 1).count() as u32
    }

    pub fn stats(&self) -> Stats {
        Stats {
            two_rank_tensor: self.free_rank + self.torsion.len() as u32,
            mult2_kernel_rank: self.torsion.len() as u32,
            torsion_order_log2: self.torsion.iter().sum(),
            z4_count: self.torsion.iter().filter(|&&e| e >= 2).count() as u32,
        }
    }

    /// Quotient by a pure elementary subgroup of rank k.  Such a subgroup is a
    /// direct summand, so k copies of ℤ₂ disappear and nothing else changes.
    pub fn remove_pure_elementary(&self, k: u32) -> Option<Self> {
        if self.elementary_rank() < k {
            return None;
        }
        let torsion = self.torsion[k as usize..].to_vec();
        Some(AbGroup2 { free_rank: self.free_rank, torsion })
    }

    /// Diagonal presentation: one generator per summand, relation 2^e for
    /// each cyclic torsion summand.
    pub fn presentation(&self) -> IntMatrix {
        let n = self.torsion.len();
        let mut m = IntMatrix::zeros(self.free_rank as usize + n, n);
        for (j, &e) in self.torsion.iter().enumerate() {
            m[(j, j)] = num_bigint::BigInt::from(1u8) << e as usize;
        }
        m
    }
}

pub fn direct_sum(a: &AbGroup2, b: &AbGroup2) -> AbGroup2 {
    let mut t = a.torsion.clone();
    t.extend_from_slice(&b.torsion);
    AbGroup2::new(a.free_rank + b.free_rank, t)
}

impl std::ops::Add for &AbGroup2 {
    type Output = AbGroup2;
    fn add(self, rhs: &AbGroup2) -> AbGroup2 {
        direct_sum(self, rhs)
    }
}

impl fmt::Display for AbGroup2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let k = self.elementary_rank();
        let higher = &self.torsion[k as usize..];
        if higher == [2] {
            parts.push(format!("{{{k}}}"));
        } else {
            if k > 0 {
                parts.push(format!("<{k}>"));
            }
            for &e in higher {
                parts.push(format!("Z{}", 1u64 << e));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl FromStr for AbGroup2 {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("cannot parse group {s:?}");
        let mut g = AbGroup2::zero();
        for tok in s.split('+').map(str::trim) {
            let part = match tok {
                "0" => AbGroup2::zero(),
                "Z" => AbGroup2::z(),
                _ if tok.starts_with("Z^") => AbGroup2::free(tok[2..].parse().map_err(|_| bad())?),
                _ if tok.starts_with('<') && tok.ends_with('>') => {
                    AbGroup2::elem(tok[1..tok.len() - 1].parse().map_err(|_| bad())?)
                }
                _ if tok.starts_with('{') && tok.ends_with('}') => {
                    AbGroup2::brace(tok[1..tok.len() - 1].parse().map_err(|_| bad())?)
                }
                _ if tok.starts_with('Z') => {
                    let order: u64 = tok[1..].parse().map_err(|_| bad())?;
                    if order < 2 || !order.is_power_of_two() {
                        return Err(bad());
                    }
                    AbGroup2::cyclic(order.trailing_zeros())
                }
                _ => return Err(bad()),
            };
            g = direct_sum(&g, &part);
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    free: u32,
    torsion: Vec<u64>,
}

impl From<AbGroup2> for GroupJson {
    fn from(g: AbGroup2) -> Self {
        GroupJson { free: g.free_rank, torsion: g.torsion.iter().map(|&e| 1u64 << e).collect() }
    }
}

impl TryFrom<GroupJson> for AbGroup2 {
    type Error = String;
    fn try_from(j: GroupJson) -> std::result::Result<Self, String> {
        let mut exps = Vec::with_capacity(j.torsion.len());
        for o in j.torsion {
            if o < 2 || !o.is_power_of_two() {
                return Err(format!("torsion order {o} is not a power of two"));
            }
            exps.push(o.trailing_zeros());
        }
        Ok(AbGroup2::new(j.free, exps))
    }
}

/// Dense row-major matrix over an integer-like scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + num_traits::Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_diagonal(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn map<U: Clone + num_traits::Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub diagonal: Vec<T>,
    pub rank: usize,
}

/// Invariant factors d₁ | d₂ | … | d_r (all positive) of `m`.
pub fn smith_normal_form<T>(m: &Matrix<T>) -> SmithForm<T>
where
    T: Integer + Signed + Clone,
{
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = &a[(i, j)];
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { rank: diagonal.len(), diagonal };
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let p = a[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let s = q.clone() * a[(t, j)].clone();
                        a[(i, j)] = a[(i, j)].clone() - s;
                    }
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&p);
                if !q.is_zero() {
                    for i in t..rows {
                        let s = q.clone() * a[(i, t)].clone();
                        a[(i, j)] = a[(i, j)].clone() - s;
                    }
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest; otherwise fold an offending row in
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        a[(t, j)] = a[(t, j)].clone() + a[(i, j)].clone();
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[(t, t)].abs());
    }
    SmithForm { rank: diagonal.len(), diagonal }
}

/// Cokernel of `m` viewed as a map ℤ^cols → ℤ^rows.
pub fn group_from_presentation<T>(m: &Matrix<T>) -> Result<AbGroup2>
where
    T: Integer + Signed + Clone + fmt::Display,
{
    let snf = smith_normal_form(m);
    let two = T::one() + T::one();
    let mut torsion = Vec::new();
    for d in &snf.diagonal {
        let mut x = d.clone();
        let mut e = 0;
        while x.is_even() {
            x = x / two.clone();
            e += 1;
        }
        if !x.is_one() {
            return Err(Error::NonTwoPrimary(d.to_string()));
        }
        torsion.push(e);
    }
    Ok(AbGroup2::new((m.rows - snf.rank) as u32, torsion))
}

/// Degree-indexed groups, trivial outside the stored map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedGroups {
    pub support_bound: usize,
    groups: BTreeMap<usize, AbGroup2>,
}

impl GradedGroups {
    pub fn new(support_bound: usize) -> Self {
        GradedGroups { support_bound, groups: BTreeMap::new() }
    }

    pub fn from_fn(support_bound: usize, mut f: impl FnMut(usize) -> AbGroup2) -> Self {
        let mut g = Self::new(support_bound);
        for i in 0..=support_bound {
            g.set(i, f(i));
        }
        g
    }

    pub fn get(&self, i: usize) -> AbGroup2 {
        self.groups.get(&i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, g: AbGroup2) {
        assert!(i <= self.support_bound, "degree {i} beyond support bound {}", self.support_bound);
        if g.is_trivial() {
            self.groups.remove(&i);
        } else {
            self.groups.insert(i, g);
        }
    }

    /// Nontrivial degrees in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &AbGroup2)> {
        self.groups.iter().map(|(&i, g)| (i, g))
    }
}

/// H_i = free(H^i) ⊕ torsion(H^{i+1}).
pub fn uct_homology(coh: &GradedGroups) -> GradedGroups {
    GradedGroups::from_fn(coh.support_bound, |i| {
        direct_sum(&coh.get(i).free_part(), &coh.get(i + 1).torsion_part())
    })
}

/// H^i = free(H_i) ⊕ torsion(H_{i-1}); inverse of [`uct_homology`].
pub fn uct_cohomology(hom: &GradedGroups) -> GradedGroups {
    GradedGroups::from_fn(hom.support_bound, |i| {
        let below = if i == 0 { AbGroup2::zero() } else { hom.get(i - 1).torsion_part() };
        direct_sum(&hom.get(i).free_part(), &below)
    })
}
