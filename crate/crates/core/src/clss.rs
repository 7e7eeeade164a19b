//! Cartan–Leray spectral sequence charts for V_{m+1,2} → V_{m+1,2}/G, and
//! executors that push the E₂-term through the differentials forced in each
//! regime, checking the group bookkeeping at every step.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::abelian::{AbGroup2, GradedGroups};
use crate::bockstein::rank_recursion;
use crate::configcoh::{cohomology, SpaceId};
use crate::groupcoh::{classifying_cohomology, CoeffId, GroupId};
use crate::report::VerificationReport;
use crate::stiefel::{d8_action_sign, stiefel_cohomology, ActionSign};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LineCoeff {
    Integer,
    Twisted,
    ModTwo,
}

impl LineCoeff {
    fn coeff_id(self) -> CoeffId {
        match self {
            LineCoeff::Integer => CoeffId::IntegerTrivial,
            LineCoeff::Twisted => CoeffId::IntegerTwisted,
            LineCoeff::ModTwo => CoeffId::ModTwo,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartLine {
    pub coefficients: LineCoeff,
    pub entries: BTreeMap<u32, AbGroup2>,
}

/// One page of a first-quadrant spectral sequence living on a few
/// horizontal lines.  Entries are known for 0 ≤ p ≤ p_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub page: u32,
    pub m: u32,
    pub group: Option<GroupId>,
    pub p_max: u32,
    pub lines: BTreeMap<u32, ChartLine>,
}

#[derive(Serialize)]
struct EntryDump<'a> {
    p: u32,
    group: &'a AbGroup2,
}

#[derive(Serialize)]
struct LineDump<'a> {
    q: u32,
    coefficients: LineCoeff,
    entries: Vec<EntryDump<'a>>,
}

#[derive(Serialize)]
struct ChartDump<'a> {
    page: u32,
    lines: Vec<LineDump<'a>>,
}

impl Serialize for Chart {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let lines = self
            .lines
            .iter()
            .map(|(&q, l)| LineDump {
                q,
                coefficients: l.coefficients,
                entries: l.entries.iter().map(|(&p, group)| EntryDump { p, group }).collect(),
            })
            .collect();
        ChartDump { page: self.page, lines }.serialize(s)
    }
}

impl Chart {
    pub fn new(page: u32, m: u32, group: Option<GroupId>) -> Self {
        Chart { page, m, group, p_max: 0, lines: BTreeMap::new() }
    }

    pub fn add_line(&mut self, q: u32, coefficients: LineCoeff) {
        self.lines.insert(q, ChartLine { coefficients, entries: BTreeMap::new() });
    }

    pub fn has_line(&self, q: u32) -> bool {
        self.lines.contains_key(&q)
    }

    pub fn get(&self, p: u32, q: u32) -> AbGroup2 {
        self.lines.get(&q).and_then(|l| l.entries.get(&p)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, p: u32, q: u32, g: AbGroup2) {
        self.p_max = self.p_max.max(p);
        let line = self.lines.get_mut(&q).unwrap_or_else(|| panic!("no line q={q}"));
        if g.is_trivial() {
            line.entries.remove(&p);
        } else {
            line.entries.insert(p, g);
        }
    }

    /// Nonzero entries of total degree t.
    pub fn diagonal(&self, t: u32) -> Vec<(u32, u32, AbGroup2)> {
        self.lines
            .iter()
            .filter(|(&q, _)| q <= t)
            .map(|(&q, _)| (t - q, q, self.get(t - q, q)))
            .filter(|(p, _, g)| *p <= self.p_max && !g.is_trivial())
            .collect()
    }

    /// Move to a later page with no differentials in between.
    pub fn advance(&mut self, page: u32) {
        assert!(page >= self.page);
        self.page = page;
    }

    /// Apply all differentials of the current page, then turn the page.
    pub fn apply(&mut self, diffs: &[DifferentialSpec]) -> Result<Vec<Applied>> {
        let mut touched = BTreeSet::new();
        let mut out = Vec::new();
        for d in diffs {
            if d.page != self.page {
                return Err(Error::InconsistentOrders(format!("d_{} applied on page {}", d.page, self.page)));
            }
            let (p, q) = d.source;
            let (tp, tq) = d.target().ok_or_else(|| bad(d, "target below the base line"))?;
            if !self.has_line(q) || !self.has_line(tq) {
                return Err(bad(d, "source or target off the declared lines"));
            }
            for node in [(p, q), (tp, tq)] {
                if !touched.insert(node) {
                    return Err(bad(d, "node used twice on one page"));
                }
            }
            let source = self.get(p, q);
            let target = (tp <= self.p_max).then(|| self.get(tp, tq));
            let (kernel, image, cokernel) = d.effect.resolve(&source, target.as_ref()).map_err(|e| bad(d, &e))?;
            out.push(Applied { spec: d.clone(), source, target, kernel, image, cokernel });
        }
        for a in &out {
            let (p, q) = a.spec.source;
            self.set(p, q, a.kernel.clone());
            if let (Some(c), Some((tp, tq))) = (&a.cokernel, a.spec.target()) {
                self.set(tp, tq, c.clone());
            }
        }
        self.page += 1;
        Ok(out)
    }

    /// True when no d_r with r ≥ page can connect two nonzero entries.
    pub fn is_stable(&self) -> bool {
        for (&q, line) in &self.lines {
            for &p in line.entries.keys() {
                for (&tq, _) in self.lines.range(..q) {
                    let r = q - tq + 1;
                    if r >= self.page && p + r <= self.p_max && !self.get(p + r, tq).is_trivial() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn bad(d: &DifferentialSpec, why: &str) -> Error {
    Error::InconsistentOrders(format!("d_{} from {:?}: {why}", d.page, d.source))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Effect {
    /// Injective from ⟨k⟩ onto a pure subgroup: never hits twice a ℤ₄ generator.
    InjectiveElementary(u32),
    /// The source's ℤ₄ (or ℤ) maps onto twice the target's ℤ₄.
    HalveZ4s,
    /// ℤ hits an element of order two outside twice the target; kernel 2ℤ.
    KernelTwoZ,
    /// Kernel, image and cokernel given outright; only orders are checked.
    Explicit { kernel: AbGroup2, image: AbGroup2, cokernel: AbGroup2 },
}

fn halve(g: &AbGroup2) -> AbGroup2 {
    AbGroup2::new(g.free_rank(), g.torsion_exponents().iter().map(|&e| if e == 2 { 1 } else { e }).collect())
}

/// A group with one fewer 2-power in every cyclic torsion summand: G/G[2].
fn mod_socle(g: &AbGroup2) -> AbGroup2 {
    AbGroup2::new(g.free_rank(), g.torsion_exponents().iter().map(|&e| e - 1).collect())
}

impl Effect {
    /// Injective after tensoring with ℤ₂: kernel 2S, image S⊗ℤ₂ as a pure
    /// elementary subgroup of the target.
    pub fn mod_two_injective(source: &AbGroup2, target: Option<&AbGroup2>) -> Effect {
        if *source == AbGroup2::z() {
            return Effect::KernelTwoZ;
        }
        let k = source.stats().mult2_kernel_rank;
        if source.stats().z4_count == 0 {
            return Effect::InjectiveElementary(k);
        }
        let kernel = AbGroup2::new(0, source.torsion_exponents().iter().filter(|&&e| e > 1).map(|&e| e - 1).collect());
        let cokernel = target.and_then(|t| t.remove_pure_elementary(k)).unwrap_or_default();
        Effect::Explicit { kernel, image: AbGroup2::elem(k), cokernel }
    }

    /// Injective from an elementary source: pure when the target has room,
    /// otherwise onto the whole socle of the target.
    pub fn injective_elementary_into(source: &AbGroup2, target: Option<&AbGroup2>) -> Effect {
        let k = source.stats().mult2_kernel_rank;
        match target {
            Some(t) if t.remove_pure_elementary(k).is_none() && t.stats().mult2_kernel_rank == k => {
                Effect::Explicit { kernel: AbGroup2::zero(), image: source.clone(), cokernel: mod_socle(t) }
            }
            _ => Effect::InjectiveElementary(k),
        }
    }

    fn resolve(
        &self,
        s: &AbGroup2,
        t: Option<&AbGroup2>,
    ) -> std::result::Result<(AbGroup2, AbGroup2, Option<AbGroup2>), String> {
        let z = AbGroup2::z();
        match self {
            Effect::InjectiveElementary(k) => {
                if *s != AbGroup2::elem(*k) {
                    return Err(format!("source {s} is not <{k}>"));
                }
                let c = match t {
                    Some(t) => Some(t.remove_pure_elementary(*k).ok_or(format!("<{k}> has no pure image in {t}"))?),
                    None => None,
                };
                Ok((AbGroup2::zero(), s.clone(), c))
            }
            Effect::HalveZ4s => {
                let ok_source = *s == z || (s.is_finite() && s.stats().z4_count == 1);
                if !ok_source {
                    return Err(format!("source {s} has no single Z4 or Z"));
                }
                let c = match t {
                    Some(t) if t.is_finite() && t.stats().z4_count == 1 => Some(halve(t)),
                    Some(t) => return Err(format!("target {t} has no single Z4")),
                    None => None,
                };
                Ok((halve(s), AbGroup2::elem(1), c))
            }
            Effect::KernelTwoZ => {
                if *s != z {
                    return Err(format!("source {s} is not Z"));
                }
                let c = match t {
                    Some(t) => Some(t.remove_pure_elementary(1).ok_or(format!("no pure Z2 in {t}"))?),
                    None => None,
                };
                Ok((z, AbGroup2::elem(1), c))
            }
            Effect::Explicit { kernel, image, cokernel } => {
                if s.free_rank() != kernel.free_rank() + image.free_rank() {
                    return Err("free ranks of source, kernel and image disagree".into());
                }
                let log = |g: &AbGroup2| g.stats().torsion_order_log2;
                if s.is_finite() && log(s) != log(kernel) + log(image) {
                    return Err(format!("|{s}| != |{kernel}|·|{image}|"));
                }
                if let Some(t) = t {
                    if t.free_rank() != image.free_rank() + cokernel.free_rank() {
                        return Err("free ranks of target, image and cokernel disagree".into());
                    }
                    if t.is_finite() && log(t) != log(image) + log(cokernel) {
                        return Err(format!("|{t}| != |{image}|·|{cokernel}|"));
                    }
                }
                Ok((kernel.clone(), image.clone(), t.map(|_| cokernel.clone())))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialSpec {
    pub page: u32,
    pub source: (u32, u32),
    pub effect: Effect,
}

impl DifferentialSpec {
    pub fn new(page: u32, source: (u32, u32), effect: Effect) -> Self {
        DifferentialSpec { page, source, effect }
    }

    pub fn target(&self) -> Option<(u32, u32)> {
        let (p, q) = self.source;
        (q + 1 >= self.page).then(|| (p + self.page, q + 1 - self.page))
    }
}

/// One differential after it was applied, with the groups it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applied {
    pub spec: DifferentialSpec,
    pub source: AbGroup2,
    /// None when the target lies beyond the chart.
    pub target: Option<AbGroup2>,
    pub kernel: AbGroup2,
    pub image: AbGroup2,
    pub cokernel: Option<AbGroup2>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Extension {
    /// At most one nonzero entry in this total degree.
    None,
    Trivial,
    Nontrivial,
    ForcedByOrder,
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The group in total degree t of a stable chart.  Free entries must sit in
/// filtration 0, where they are a free quotient and split off.  Two or more
/// finite entries need a decree: `Nontrivial` glues cyclic pieces into one
/// cyclic group, `Trivial` takes the direct sum.
pub fn assemble(chart: &Chart, t: u32, decree: Option<Extension>) -> Result<(AbGroup2, Extension)> {
    let nodes = chart.diagonal(t);
    let mut total = AbGroup2::zero();
    let mut finite = Vec::new();
    for (p, _, g) in &nodes {
        if g.free_rank() > 0 && *p != 0 {
            return Err(Error::InconsistentOrders(format!("free E_inf entry at filtration {p} in degree {t}")));
        }
        if !g.torsion_exponents().is_empty() {
            finite.push(g.torsion_part());
        }
        total = &total + &g.free_part();
    }
    let kind = match (nodes.len(), finite.len()) {
        (0 | 1, _) => Extension::None,
        (_, 0 | 1) => Extension::Trivial,
        _ => decree.ok_or_else(|| Error::InconsistentOrders(format!("unresolved extension in degree {t}")))?,
    };
    let torsion = match kind {
        Extension::Nontrivial => {
            if finite.iter().any(|g| g.torsion_exponents().len() != 1) {
                return Err(Error::InconsistentOrders(format!("non-cyclic pieces in degree {t}")));
            }
            AbGroup2::cyclic(finite.iter().map(|g| g.stats().torsion_order_log2).sum())
        }
        _ => finite.iter().fold(AbGroup2::zero(), |acc, g| &acc + g),
    };
    Ok((&total + &torsion, kind))
}

/// E₂ through filtration p_max: one line per nonzero H^q(V_{m+1,2}), with
/// ℤ₂ lines read mod 2 and sign −1 lines twisted by ℤ_α.
pub fn build_e2_through(g: GroupId, m: u32, p_max: u32) -> Chart {
    assert!(m >= 2);
    let n = m + 1;
    let mut chart = Chart::new(2, m, Some(g));
    for q in 0..=2 * n - 3 {
        let h = stiefel_cohomology(n, q);
        if h.is_trivial() {
            continue;
        }
        let coeff = if h.is_finite() {
            LineCoeff::ModTwo
        } else if d8_action_sign(n, q) == Ok(ActionSign::Minus) {
            LineCoeff::Twisted
        } else {
            LineCoeff::Integer
        };
        chart.add_line(q, coeff);
        for p in 0..=p_max {
            chart.set(p, q, classifying_cohomology(g, coeff.coeff_id(), p as usize));
        }
    }
    chart.p_max = p_max;
    chart
}

pub fn build_e2(g: GroupId, m: u32) -> Chart {
    build_e2_through(g, m, 2 * m)
}

/// Cokernel of d_{m+1}: E^{m−ℓ−1,m} → E^{2m−ℓ,0} for G = D₈, m even.
pub fn prop_algebraico_cokernel(m: u32, l: u32) -> Result<AbGroup2> {
    if m % 2 != 0 || l < 2 || l >= m {
        return Err(Error::RangeError(format!("need m even and 2 <= l <= m-1, got m={m}, l={l}")));
    }
    Ok(if l % 4 == 0 {
        AbGroup2::brace(l / 2)
    } else if l % 4 == 2 {
        AbGroup2::elem(l / 2 + 1)
    } else {
        AbGroup2::elem((l - 1) / 2)
    })
}

/// Base-line cokernel in degree 2m−ℓ for G = D₈, m ≡ 1 mod 4.
fn cokernel_1mod4(l: u32) -> AbGroup2 {
    match l % 4 {
        0 => AbGroup2::elem(l / 2),
        2 => AbGroup2::brace(l / 2 - 1),
        _ => AbGroup2::elem(l.div_ceil(2)),
    }
}

#[derive(Debug, Clone)]
pub struct Execution {
    pub abutment: GradedGroups,
    pub report: VerificationReport,
    pub final_chart: Chart,
    pub applied: Vec<Applied>,
}

fn space_of(g: GroupId, m: u32) -> SpaceId {
    match g {
        GroupId::D8 => SpaceId::b(m),
        GroupId::Z2xZ2 => SpaceId::f(m),
    }
}

fn suite_name(g: GroupId) -> &'static str {
    match g {
        GroupId::D8 => "clss",
        GroupId::Z2xZ2 => "clss-f",
    }
}

/// Read off the abutment through degree 2m−1 and compare with the closed form.
fn finish(g: GroupId, m: u32, mut chart: Chart, applied: Vec<Applied>, mut rep: VerificationReport) -> Result<Execution> {
    let s = space_of(g, m);
    let suite = suite_name(g);
    chart.advance(2 * m + 1);
    rep.assert(suite, Some(m), None, "chart stable", chart.is_stable());
    rep.check(suite, Some(m), Some(2 * m as usize), "base line cleared in degree 2m", &AbGroup2::zero(), &chart.get(2 * m, 0));
    let mut abutment = GradedGroups::new(s.top());
    for t in 0..2 * m {
        let (h, ext) = assemble(&chart, t, None)?;
        let want = cohomology(s, t as usize);
        rep.check(suite, Some(m), Some(t as usize), &format!("E_inf abutment ({ext})"), &want, &h);
        abutment.set(t as usize, h);
    }
    Ok(Execution { abutment, report: rep, final_chart: chart, applied })
}

/// m even: d_{m+1} from the mod-2 line q=m into the base line, then the top
/// class ℤ ∈ E^{0,2m−1} transgresses onto what is left in degree 2m.
pub fn run_even(g: GroupId, m: u32) -> Result<Execution> {
    if m % 2 != 0 || m < 2 {
        return Err(Error::RangeError(format!("run_even needs even m >= 2, got {m}")));
    }
    let s = space_of(g, m);
    let suite = suite_name(g);
    let ranks = rank_recursion(s)?;
    let mut rep = VerificationReport::new();
    let mut chart = build_e2(g, m);
    chart.advance(m + 1);
    let diffs: Vec<DifferentialSpec> = (0..m)
        .map(|l| DifferentialSpec::new(m + 1, (m - l - 1, m), Effect::InjectiveElementary(m - l)))
        .collect();
    let mut applied = chart.apply(&diffs)?;
    for a in &applied {
        let l = m - 1 - a.spec.source.0;
        let t = (2 * m - l) as usize;
        let coker = a.cokernel.clone().expect("target inside chart");
        if (1..m).contains(&l) {
            let r = ranks.r.get(&t).copied().unwrap_or(0);
            rep.assert(suite, Some(m), Some(t), &format!("2-rank of cokernel {coker} <= r = {r}"), coker.stats().mult2_kernel_rank <= r);
        }
        if g == GroupId::D8 && (2..m).contains(&l) {
            rep.check(suite, Some(m), Some(t), "cokernel closed form", &prop_algebraico_cokernel(m, l)?, &coker);
            let lhs = classifying_cohomology(g, CoeffId::IntegerTrivial, t).stats().torsion_order_log2;
            rep.check(suite, Some(m), Some(t), "log2 |H(BD8)| = (m-l) + log2 |coker|", &lhs, &(m - l + coker.stats().torsion_order_log2));
        }
    }
    chart.advance(2 * m);
    let left = chart.get(2 * m, 0);
    if left.torsion_exponents().len() != 1 {
        return Err(Error::InconsistentOrders(format!("top class cannot clear {left} in degree 2m")));
    }
    let top = DifferentialSpec::new(
        2 * m,
        (0, 2 * m - 1),
        Effect::Explicit { kernel: AbGroup2::z(), image: left, cokernel: AbGroup2::zero() },
    );
    applied.extend(chart.apply(&[top])?);
    finish(g, m, chart, applied, rep)
}

/// m odd, G = D₈ with m ≡ 1 mod 4, or G = ℤ₂×ℤ₂ with any odd m.
/// D₈ first halves the ℤ₄'s on q = m−1, m by d₂; then d_m from q = m−1 and
/// d_{m+1} from q = m inject into the base line.
pub fn run_odd(g: GroupId, m: u32) -> Result<Execution> {
    if m % 2 != 1 || m < 3 {
        return Err(Error::RangeError(format!("run_odd needs odd m >= 3, got {m}")));
    }
    if g == GroupId::D8 && m % 4 == 3 {
        return Err(Error::NotApplicable(format!("m = {m} is 3 mod 4 for D8")));
    }
    let s = space_of(g, m);
    let suite = suite_name(g);
    let ranks = rank_recursion(s)?;
    let mut rep = VerificationReport::new();
    let mut chart = build_e2(g, m);
    let mut applied = Vec::new();
    if g == GroupId::D8 {
        let d2: Vec<_> = (0..=m / 2)
            .map(|i| 4 * i)
            .filter(|&p| p + 2 <= chart.p_max)
            .map(|p| DifferentialSpec::new(2, (p, m), Effect::HalveZ4s))
            .collect();
        applied.extend(chart.apply(&d2)?);
        // E₃ as described in the even/odd ℓ formulas, m = 4a+1
        let a = (m - 1) / 4;
        for l in 0..m {
            let lo = chart.get(m - l, m - 1);
            let want = if l % 2 == 0 { AbGroup2::elem(2 * a + 1 - l / 2) } else { AbGroup2::elem(2 * a - (l - 1) / 2) };
            rep.check(suite, Some(m), Some((2 * m - l - 1) as usize), &format!("E3^({},{})", m - l, m - 1), &want, &lo);
            let hi = chart.get(m - l - 1, m);
            let want = if l == m - 1 {
                AbGroup2::z()
            } else if l % 2 == 0 {
                AbGroup2::elem(2 * a + 1 - l / 2)
            } else {
                AbGroup2::elem(2 * a - l.div_ceil(2))
            };
            rep.check(suite, Some(m), Some((2 * m - l - 1) as usize), &format!("E3^({},{})", m - l - 1, m), &want, &hi);
        }
    }
    chart.advance(m);
    let e3_base: Vec<AbGroup2> = (0..=2 * m).map(|p| chart.get(p, 0)).collect();
    let dm: Vec<_> = (0..=m)
        .filter(|&p| !chart.get(p, m - 1).is_trivial())
        .map(|p| DifferentialSpec::new(m, (p, m - 1), Effect::InjectiveElementary(chart.get(p, m - 1).stats().mult2_kernel_rank)))
        .collect();
    let first = chart.apply(&dm)?;
    let dm1: Vec<_> = (0..m)
        .filter(|&p| !chart.get(p, m).is_trivial())
        .map(|p| {
            let e = if p == 0 { Effect::KernelTwoZ } else { Effect::InjectiveElementary(chart.get(p, m).stats().mult2_kernel_rank) };
            DifferentialSpec::new(m + 1, (p, m), e)
        })
        .collect();
    let second = chart.apply(&dm1)?;
    let image_log = |v: &[Applied], t: u32| {
        v.iter()
            .filter(|a| a.spec.target().map(|x| x.0) == Some(t))
            .map(|a| a.image.stats().torsion_order_log2)
            .sum::<u32>()
    };
    for t in m + 1..=2 * m {
        let l = 2 * m - t;
        let h = cohomology(s, t as usize);
        let lhs = e3_base[t as usize].stats().torsion_order_log2;
        let rhs = image_log(&first, t) + image_log(&second, t) + h.stats().torsion_order_log2;
        rep.check(suite, Some(m), Some(t as usize), "log2 |E3^(t,0)| = sources of d_m, d_m+1 + log2 |H^t|", &lhs, &rhs);
        let coker = chart.get(t, 0);
        if (1..m).contains(&l) {
            let r = ranks.r.get(&(t as usize)).copied().unwrap_or(0);
            rep.assert(suite, Some(m), Some(t as usize), &format!("2-rank of cokernel {coker} <= r = {r}"), coker.stats().mult2_kernel_rank <= r);
        }
        if g == GroupId::D8 && (2..m).contains(&l) {
            rep.check(suite, Some(m), Some(t as usize), "cokernel closed form", &cokernel_1mod4(l), &coker);
        }
    }
    applied.extend(first);
    applied.extend(second);
    finish(g, m, chart, applied, rep)
}

pub fn run_1mod4(m: u32) -> Result<Execution> {
    if m % 4 != 1 || m < 5 {
        return Err(Error::RangeError(format!("run_1mod4 needs m = 1 mod 4, m >= 5, got {m}")));
    }
    run_odd(GroupId::D8, m)
}

/// The ordered case: same machinery with P^∞×P^∞ tables and no d₂.
pub fn run_ordered(m: u32) -> Result<Execution> {
    if m % 2 == 0 {
        run_even(GroupId::Z2xZ2, m)
    } else {
        run_odd(GroupId::Z2xZ2, m)
    }
}

/// The fragment of the D₈ chart for m = 4a+3 through total degree m+1.
pub fn dimm_check(a: u32) -> Result<VerificationReport> {
    let m = 4 * a + 3;
    if m > 15 {
        return Err(Error::RangeError(format!("a = {a} gives m = {m} > 15")));
    }
    let mm = Some(m);
    let s = SpaceId::b(m);
    let mut rep = VerificationReport::new();
    let mut chart = build_e2_through(GroupId::D8, m, m + 1);
    let nodes = [
        ((m - 1, 0), AbGroup2::elem(2 * a + 2)),
        ((m, 0), AbGroup2::elem(2 * a + 1)),
        ((m + 1, 0), AbGroup2::brace(2 * a + 2)),
        ((1, m - 1), AbGroup2::elem(1)),
        ((2, m - 1), AbGroup2::brace(0)),
        ((0, m), AbGroup2::z()),
    ];
    for ((p, q), want) in nodes {
        rep.check("dimm", mm, Some((p + q) as usize), &format!("E2^({p},{q})"), &want, &chart.get(p, q));
    }
    // E_inf^{0,m} = Z: every possible target of E^{0,m} is finite
    let targets_finite = chart.lines.keys().filter(|&&q| q < m).all(|&q| chart.get(m + 1 - q, q).is_finite());
    rep.assert("dimm", mm, Some(m as usize), "E_inf^(0,m) = Z (all targets finite)", targets_finite);
    // nothing can hit (m,0); it survives and p* is mono onto the torsion of H^m
    let hits_m0 = chart.lines.keys().filter(|&&q| q > 0 && q < m).any(|&q| !chart.get(m - q - 1, q).is_trivial());
    rep.assert("dimm", mm, Some(m as usize), "E^(m,0) is never hit", !hits_m0);
    let hm = cohomology(s, m as usize);
    rep.check("dimm", mm, Some(m as usize), "torsion H^m(BD8) = torsion H^m(B)", &chart.get(m, 0), &hm.torsion_part());
    rep.check("dimm", mm, Some(m as usize), "H^m(B)", &(&AbGroup2::z() + &AbGroup2::elem(2 * a + 1)), &hm);
    // both differentials into (m+1,0) are forced nonzero by the 2-rank
    let r = rank_recursion(s)?.r.get(&(m as usize + 1)).copied().unwrap_or(0);
    rep.check("dimm", mm, Some(m as usize + 1), "r_(m+1)", &(2 * a + 1), &r);
    let e2_rank = chart.get(m + 1, 0).stats().mult2_kernel_rank;
    rep.check("dimm", mm, Some(m as usize + 1), "2-rank drop forced at (m+1,0)", &2, &(e2_rank - r));
    chart.advance(m);
    let dm = chart.apply(&[DifferentialSpec::new(m, (1, m - 1), Effect::InjectiveElementary(1))])?;
    let coker = dm[0].cokernel.clone().expect("inside chart");
    rep.check("dimm", mm, Some(m as usize + 1), "d_m cokernel", &AbGroup2::brace(2 * a + 1), &coker);
    let log = |g: &AbGroup2| g.stats().torsion_order_log2;
    rep.check("dimm", mm, Some(m as usize + 1), "log2 |E2^(m+1,0)| = 1 + log2 |coker d_m|", &log(&AbGroup2::brace(2 * a + 2)), &(1 + log(&coker)));
    // d_{m+1} from Z lowers the 2-rank by one: the cokernel is {2a} or <2a+1>
    let h = cohomology(s, m as usize + 1);
    let options = [AbGroup2::brace(2 * a), AbGroup2::elem(2 * a + 1)];
    rep.assert("dimm", mm, Some(m as usize + 1), &format!("H^(m+1) = {h} is one of the two d_(m+1) cokernels"), options.contains(&h));
    Ok(rep)
}

/// The two candidate evolutions of the m = 3 chart, through filtration 13.
#[derive(Debug, Clone)]
pub struct M3Scenario {
    pub name: &'static str,
    /// Chart after each page, starting with E₂.
    pub pages: Vec<Chart>,
    pub abutment: Vec<(AbGroup2, Extension)>,
}

const M3_PMAX: u32 = 13;

fn d_along(chart: &Chart, r: u32, from_q: u32, rule: impl Fn(u32, &AbGroup2, Option<&AbGroup2>) -> Effect) -> Vec<DifferentialSpec> {
    let to_q = from_q + 1 - r;
    (0..=chart.p_max)
        .filter(|&p| !chart.get(p, from_q).is_trivial())
        .map(|p| {
            let s = chart.get(p, from_q);
            let t = (p + r <= chart.p_max).then(|| chart.get(p + r, to_q));
            DifferentialSpec::new(r, (p, from_q), rule(p, &s, t.as_ref()))
        })
        .collect()
}

fn scenario_a() -> Result<M3Scenario> {
    let mut ch = build_e2_through(GroupId::D8, 3, M3_PMAX);
    let mut pages = vec![ch.clone()];
    // d₂ = 0, so E₃ = E₂; d₃ is injective after ⊗ℤ₂, repeated vertically
    ch.advance(3);
    pages.push(ch.clone());
    let mut d3 = d_along(&ch, 3, 2, |_, s, t| Effect::mod_two_injective(s, t));
    d3.extend(d_along(&ch, 3, 5, |_, s, t| Effect::mod_two_injective(s, t)));
    ch.apply(&d3)?;
    pages.push(ch.clone());
    // d₄: isomorphisms for p ≥ 2; from E^{0,3} = ℤ the image is cyclic of order 4
    let d4_rule = |p: u32, s: &AbGroup2, t: Option<&AbGroup2>| {
        if p == 0 {
            let t = t.expect("inside chart");
            Effect::Explicit { kernel: AbGroup2::z(), image: AbGroup2::cyclic(2), cokernel: mod_socle(t) }
        } else {
            Effect::Explicit { kernel: AbGroup2::zero(), image: s.clone(), cokernel: AbGroup2::zero() }
        }
    };
    let mut d4 = d_along(&ch, 4, 3, d4_rule);
    d4.extend(d_along(&ch, 4, 5, d4_rule));
    for a in ch.apply(&d4)? {
        if let (Some(t), false) = (&a.target, a.spec.source.0 == 0) {
            if *t != a.source {
                return Err(Error::InconsistentOrders(format!("d4 from {:?} is not an isomorphism", a.spec.source)));
            }
        }
    }
    pages.push(ch.clone());
    let decree = |t: u32| (t == 4).then_some(Extension::Nontrivial);
    finish_m3("a", ch, pages, decree)
}

fn scenario_b() -> Result<M3Scenario> {
    let mut ch = build_e2_through(GroupId::D8, 3, M3_PMAX);
    let mut pages = vec![ch.clone()];
    // d₂ is twice the projection: halves the ℤ₄'s on q = 3 and q = 2
    let d2: Vec<_> = (0..=M3_PMAX)
        .step_by(4)
        .map(|p| DifferentialSpec::new(2, (p, 3), Effect::HalveZ4s))
        .collect();
    ch.apply(&d2)?;
    pages.push(ch.clone());
    // d₃ injective after ⊗ℤ₂ on both families; E^{1,5} lands in E^{4,3}
    let mut d3 = d_along(&ch, 3, 2, |_, s, t| Effect::mod_two_injective(s, t));
    d3.extend(d_along(&ch, 3, 5, |_, s, t| Effect::mod_two_injective(s, t)));
    ch.apply(&d3)?;
    pages.push(ch.clone());
    // d₄ from q = 3; the one undecided map ℤ → ℤ₂⊕ℤ₄ has cokernel ℤ₄
    let d4 = d_along(&ch, 4, 3, |p, s, t| {
        if p == 0 {
            Effect::Explicit { kernel: AbGroup2::z(), image: AbGroup2::elem(1), cokernel: AbGroup2::cyclic(2) }
        } else {
            Effect::injective_elementary_into(s, t)
        }
    });
    ch.apply(&d4)?;
    pages.push(ch.clone());
    ch.advance(6);
    // the surviving ℤ₂'s at (4k+2, 5) clear what is left at (4k+8, 0)
    let d6 = d_along(&ch, 6, 5, |_, s, t| Effect::injective_elementary_into(s, t));
    ch.apply(&d6)?;
    pages.push(ch.clone());
    finish_m3("b", ch, pages, |_| None)
}

fn finish_m3(name: &'static str, mut ch: Chart, pages: Vec<Chart>, decree: impl Fn(u32) -> Option<Extension>) -> Result<M3Scenario> {
    ch.advance(ch.page.max(7));
    if !ch.is_stable() {
        return Err(Error::InconsistentOrders(format!("scenario ({name}) is not stable")));
    }
    let abutment = (0..=M3_PMAX).map(|t| assemble(&ch, t, decree(t))).collect::<Result<Vec<_>>>()?;
    let mut pages = pages;
    pages.push(ch);
    Ok(M3Scenario { name, pages, abutment })
}

pub fn m3_scenarios_detail() -> Result<[M3Scenario; 2]> {
    Ok([scenario_a()?, scenario_b()?])
}

pub fn m3_scenarios() -> VerificationReport {
    let mut rep = VerificationReport::new();
    let s = SpaceId::b(3);
    for built in [scenario_a(), scenario_b()] {
        let sc = match built {
            Ok(sc) => sc,
            Err(e) => {
                rep.check("m3", Some(3), None, "scenario bookkeeping", &"consistent".to_string(), &e.to_string());
                continue;
            }
        };
        let tag = format!("option ({})", sc.name);
        for t in 0..=5usize {
            let (g, ext) = &sc.abutment[t];
            let h = cohomology(s, t);
            rep.check("m3", Some(3), Some(t), &format!("{tag} log2 torsion order"), &h.stats().torsion_order_log2, &g.stats().torsion_order_log2);
            rep.check("m3", Some(3), Some(t), &format!("{tag} free rank"), &h.free_rank(), &g.free_rank());
            rep.check("m3", Some(3), Some(t), &format!("{tag} group ({ext})"), &h, g);
        }
        let last = sc.pages.last().expect("at least one page");
        let leftover: u32 = (6..=M3_PMAX + 5)
            .flat_map(|t| last.diagonal(t))
            .filter(|&(p, _, _)| p <= M3_PMAX)
            .map(|(_, _, g)| g.stats().two_rank_tensor)
            .sum();
        rep.check("m3", Some(3), None, &format!("{tag} E_inf vanishes in degrees >= 6"), &0, &leftover);
    }
    rep
}
