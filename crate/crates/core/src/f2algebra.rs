//! Graded-commutative 𝔽₂-algebras given by generators and homogeneous
//! relations, computed one degree at a time by linear algebra, with Sq¹
//! extended from the generators by the Leibniz rule.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::f2::{BitMatrix, BitVec, Echelon};
use crate::{Error, Result};

/// Exponent vector over the generators.
pub type Monomial = Vec<u32>;

/// C(n, k) mod 2 (Lucas): k ≤ n and k has no bit outside n.
pub fn binom_mod2(n: u64, k: u64) -> bool {
    k <= n && k & (n - k) == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(BTreeSet<Monomial>);

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly(BTreeSet::from([m]))
    }

    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for t in terms {
            p.add_monomial(t);
        }
        p
    }

    pub fn add_monomial(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for m in &other.0 {
            self.add_monomial(m.clone());
        }
    }

    pub fn mul_monomial(&self, u: &[u32]) -> Poly {
        Poly(self.0.iter().map(|m| m.iter().zip(u).map(|(a, b)| a + b).collect()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for u in &other.0 {
            out.add_assign(&self.mul_monomial(u));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }
}

#[derive(Debug, Clone)]
pub struct PresentedF2Algebra {
    names: Vec<String>,
    degrees: Vec<usize>,
    relations: Vec<Poly>,
    sq1: Option<Vec<Poly>>,
    cap: usize,
}

/// Quotient basis in one degree.  Free monomials are ordered
/// lexicographically, largest first; the ideal's leading monomials are the
/// pivots, and the remaining (standard) monomials form the basis.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    pub degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Echelon,
    basis: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|&c| &self.monomials[c])
    }

    fn vector(&self, p: &Poly) -> BitVec {
        let mut v = BitVec::zeros(self.monomials.len());
        for t in p.terms() {
            v.flip(self.index[t]);
        }
        v
    }

    pub fn in_ideal(&self, p: &Poly) -> bool {
        self.ideal.contains(&self.vector(p))
    }

    /// Coordinates of `p` (homogeneous of this degree) in the quotient basis.
    pub fn reduce(&self, p: &Poly) -> BitVec {
        let r = self.ideal.reduce(&self.vector(p));
        let mut out = BitVec::zeros(self.dim());
        for c in r.ones() {
            out.set(self.position[&c], true);
        }
        out
    }
}

impl PresentedF2Algebra {
    /// `sq1`, when given, lists Sq¹ of each generator.  The derivation is
    /// checked against every relation whose image lies within the cap.
    pub fn new(
        generators: &[(&str, usize)],
        relations: Vec<Poly>,
        sq1: Option<Vec<Poly>>,
        cap: usize,
    ) -> Result<Self> {
        let a = PresentedF2Algebra {
            names: generators.iter().map(|(n, _)| n.to_string()).collect(),
            degrees: generators.iter().map(|&(_, d)| d).collect(),
            relations,
            sq1,
            cap,
        };
        assert!(a.degrees.iter().all(|&d| d >= 1), "generators need positive degree");
        for (k, r) in a.relations.iter().enumerate() {
            let degs: BTreeSet<usize> = r.terms().map(|m| a.degree_of(m)).collect();
            if degs.len() > 1 {
                return Err(Error::Inhomogeneous(k));
            }
        }
        if let Some(images) = &a.sq1 {
            assert_eq!(images.len(), a.names.len());
            for (g, p) in images.iter().enumerate() {
                assert!(p.terms().all(|m| a.degree_of(m) == a.degrees[g] + 1), "Sq1 must raise degree by one");
            }
            for (k, r) in a.relations.iter().enumerate() {
                let Some(d) = r.terms().next().map(|m| a.degree_of(m)) else { continue };
                if d + 1 <= cap && !a.basis(d + 1)?.in_ideal(&a.sq1_poly(r)) {
                    return Err(Error::IllDefinedDerivation(k));
                }
            }
        }
        Ok(a)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn degree_of(&self, m: &[u32]) -> usize {
        m.iter().zip(&self.degrees).map(|(&e, &d)| e as usize * d).sum()
    }

    /// All free monomials of degree d, largest first.
    pub fn monomials(&self, d: usize) -> Vec<Monomial> {
        fn go(degs: &[usize], k: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if k == degs.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for e in (0..=left / degs[k]).rev() {
                cur[k] = e as u32;
                go(degs, k + 1, left - e * degs[k], cur, out);
            }
            cur[k] = 0;
        }
        let mut out = Vec::new();
        go(&self.degrees, 0, d, &mut vec![0; self.degrees.len()], &mut out);
        out
    }

    pub fn basis(&self, d: usize) -> Result<DegreeBasis> {
        if d > self.cap {
            return Err(Error::DegreeCapExceeded { degree: d, cap: self.cap });
        }
        let monomials = self.monomials(d);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for r in &self.relations {
            let Some(e) = r.terms().next().map(|m| self.degree_of(m)) else { continue };
            if e > d {
                continue;
            }
            for u in self.monomials(d - e) {
                let mut v = BitVec::zeros(monomials.len());
                for t in r.mul_monomial(&u).terms() {
                    v.flip(index[t]);
                }
                rows.push(v);
            }
        }
        let ideal = Echelon::new(rows, monomials.len());
        let basis: Vec<usize> = (0..monomials.len()).filter(|&c| !ideal.is_pivot(c)).collect();
        let position = basis.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        Ok(DegreeBasis { degree: d, monomials, index, ideal, basis, position })
    }

    pub fn quotient_dimension(&self, d: usize) -> Result<usize> {
        Ok(self.basis(d)?.dim())
    }

    pub fn hilbert_series(&self, top: usize) -> Result<Vec<usize>> {
        (0..=top).map(|d| self.quotient_dimension(d)).collect()
    }

    fn sq1_images(&self) -> Result<&[Poly]> {
        self.sq1.as_deref().ok_or_else(|| Error::NotApplicable("no Sq1 on generators".into()))
    }

    /// Sq¹ of a free polynomial by the Leibniz rule (characteristic 2).
    pub fn sq1_poly(&self, p: &Poly) -> Poly {
        let images = self.sq1.as_deref().expect("Sq1 not defined");
        let mut out = Poly::zero();
        for m in p.terms() {
            for (k, &e) in m.iter().enumerate() {
                if e % 2 == 1 {
                    let mut rest = m.clone();
                    rest[k] -= 1;
                    out.add_assign(&images[k].mul_monomial(&rest));
                }
            }
        }
        out
    }

    fn sq1_between(&self, from: &DegreeBasis, to: &DegreeBasis) -> BitMatrix {
        let mut mat = BitMatrix::zeros(to.dim(), from.dim());
        for (j, m) in from.basis_monomials().enumerate() {
            let img = to.reduce(&self.sq1_poly(&Poly::monomial(m.clone())));
            for i in img.ones() {
                mat.set(i, j, true);
            }
        }
        mat
    }

    /// Sq¹: degree d → degree d+1 in the canonical bases (column j is the
    /// image of the j-th basis monomial).
    pub fn sq1_matrix(&self, d: usize) -> Result<BitMatrix> {
        self.sq1_images()?;
        Ok(self.sq1_between(&self.basis(d)?, &self.basis(d + 1)?))
    }

    pub fn sq1_homology_rank(&self, d: usize) -> Result<usize> {
        Ok(self.sq1_complex(d + 1)?.homology_rank(d))
    }

    /// Bases and Sq¹ matrices for degrees 0..=top, computed once.
    pub fn sq1_complex(&self, top: usize) -> Result<Sq1Complex> {
        self.sq1_images()?;
        let bases = (0..=top).map(|d| self.basis(d)).collect::<Result<Vec<_>>>()?;
        let maps = bases.windows(2).map(|w| self.sq1_between(&w[0], &w[1])).collect();
        Ok(Sq1Complex { bases, maps })
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sq1Complex {
    pub bases: Vec<DegreeBasis>,
    /// maps[d]: degree d → d+1.
    pub maps: Vec<BitMatrix>,
}

impl Sq1Complex {
    /// dim ker(Sq¹_d) − rank(Sq¹_{d−1}); needs d+1 within the complex.
    pub fn homology_rank(&self, d: usize) -> usize {
        let ker = self.bases[d].dim() - self.maps[d].rank();
        let im = if d == 0 { 0 } else { self.maps[d - 1].rank() };
        ker - im
    }
}

impl fmt::Display for PresentedF2Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.names.iter().zip(&self.degrees).map(|(n, d)| format!("{n}({d})")).collect();
        write!(f, "F2[{}]", gens.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|r| r.terms().map(|m| self.format_monomial(m)).collect::<Vec<_>>().join(" + "))
                .collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

fn mono(e: &[u32]) -> Poly {
    Poly::monomial(e.to_vec())
}

/// H*(BD₈;𝔽₂) = 𝔽₂[x, x₁, x₂]/(x² + x·x₁).
pub fn bd8_ring(cap: usize) -> PresentedF2Algebra {
    let rel = Poly::from_terms([vec![2, 0, 0], vec![1, 1, 0]]);
    PresentedF2Algebra::new(
        &[("x", 1), ("x1", 1), ("x2", 2)],
        vec![rel],
        Some(vec![mono(&[2, 0, 0]), mono(&[0, 2, 0]), mono(&[0, 1, 1])]),
        cap,
    )
    .expect("BD8 presentation is consistent")
}

/// H*(P^∞×P^∞;𝔽₂) = 𝔽₂[x₁, y₁].
pub fn p_inf_squared_ring(cap: usize) -> PresentedF2Algebra {
    PresentedF2Algebra::new(&[("x1", 1), ("y1", 1)], vec![], Some(vec![mono(&[2, 0]), mono(&[0, 2])]), cap)
        .expect("polynomial ring")
}

/// H*(B(Pᵐ,2);𝔽₂): 𝔽₂[x, x₁, x₂] modulo
/// (I) x² + x·x₁,
/// (II) Σ_{0≤i≤m/2} C(m−i,i) x₁^{m−2i} x₂^i,
/// (III) Σ_{0≤i≤(m+1)/2} C(m+1−i,i) x₁^{m+1−2i} x₂^i.
pub fn b_config_ring(m: u32, cap: usize) -> Result<PresentedF2Algebra> {
    let wu = |n: u32| {
        Poly::from_terms((0..=n / 2).filter(|&i| binom_mod2((n - i) as u64, i as u64)).map(|i| vec![0, n - 2 * i, i]))
    };
    let rel1 = Poly::from_terms([vec![2, 0, 0], vec![1, 1, 0]]);
    PresentedF2Algebra::new(
        &[("x", 1), ("x1", 1), ("x2", 2)],
        vec![rel1, wu(m), wu(m + 1)],
        Some(vec![mono(&[2, 0, 0]), mono(&[0, 2, 0]), mono(&[0, 1, 1])]),
        cap,
    )
}

/// H*(F(Pᵐ,2);𝔽₂) = 𝔽₂[x₁, y₁]/(x₁^{m+1}, y₁^{m+1}, Σ_{i+j=m} x₁^i y₁^j).
pub fn f_config_ring(m: u32, cap: usize) -> Result<PresentedF2Algebra> {
    let h = Poly::from_terms((0..=m).map(|i| vec![i, m - i]));
    PresentedF2Algebra::new(
        &[("x1", 1), ("y1", 1)],
        vec![mono(&[m + 1, 0]), mono(&[0, m + 1]), h],
        Some(vec![mono(&[2, 0]), mono(&[0, 2])]),
        cap,
    )
}

pub fn default_cap(m: u32) -> usize {
    2 * m as usize + 2
}

/// Sq¹-homology of the summands R (x-exponent 0) and x·R (x-exponent 1) of
/// H*(B(Pᵐ,2);𝔽₂), m ≡ 3 mod 4.
pub fn split_sq1_homology(m: u32, d: usize) -> Result<(usize, usize)> {
    if m % 4 != 3 {
        return Err(Error::NotApplicable(format!("m = {m} is not 3 mod 4")));
    }
    let ring = b_config_ring(m, default_cap(m).max(d + 1))?;
    let cx = ring.sq1_complex(d + 1)?;
    let parts = |deg: usize| -> Vec<usize> { cx.bases[deg].basis_monomials().map(|mm| mm[0] as usize).collect() };
    // block of Sq¹ from degree `deg` restricted to part `p`, after checking
    // that Sq¹ never crosses between the parts
    let block = |deg: usize, p: usize| -> Result<BitMatrix> {
        let (src, dst) = (parts(deg), parts(deg + 1));
        let map = &cx.maps[deg];
        let cols: Vec<usize> = (0..src.len()).filter(|&j| src[j] == p).collect();
        let rows: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] == p).collect();
        for &j in &cols {
            if (0..dst.len()).any(|i| dst[i] != p && map.get(i, j)) {
                return Err(Error::NotApplicable("Sq1 does not respect R + xR".into()));
            }
        }
        let mut b = BitMatrix::zeros(rows.len(), cols.len());
        for (bi, &i) in rows.iter().enumerate() {
            for (bj, &j) in cols.iter().enumerate() {
                b.set(bi, bj, map.get(i, j));
            }
        }
        Ok(b)
    };
    let mut out = [0usize; 2];
    for (p, slot) in out.iter_mut().enumerate() {
        let here = block(d, p)?;
        let ker = here.ncols() - here.rank();
        let im = if d == 0 { 0 } else { block(d - 1, p)?.rank() };
        *slot = ker - im;
    }
    Ok((out[0], out[1]))
}
