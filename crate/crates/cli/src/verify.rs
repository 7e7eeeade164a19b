use confcoh::bockstein::{page1_compare, prop_sq1_check, rank_check};
use confcoh::clss::{dimm_check, m3_scenarios, run_1mod4, run_even, run_ordered};
use confcoh::configcoh::{cohomology, duality_symmetry_check, global_checks, mod2_dimension, p_star_profile, PStar};
use confcoh::f2algebra::{b_config_ring, default_cap, f_config_ring};
use confcoh::groupcoh::{classifying_cohomology, uct_mod2_check};
use confcoh::stiefel::{
    oriented_grassmannian_groups, quotient_orientable, sphere_bundle_sss_e2, stiefel_cohomology, Subgroup,
};
use confcoh::{CoeffId, GroupId, SpaceId, VerificationReport};

use crate::Suite;

/// "a..b" or "a..=b" (both inclusive), or a single value.
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("bad m-range {s:?}, expected a..b");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo < 1 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn run(suite: Suite, lo: u32, hi: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Uct {
        rep.extend(uct(lo, hi));
    }
    if all || suite == Suite::Bockstein {
        rep.extend(bockstein(lo, hi));
    }
    if all || suite == Suite::Duality {
        rep.extend(duality(lo, hi));
    }
    if all || suite == Suite::Clss {
        rep.extend(clss(lo, hi));
    }
    if all || suite == Suite::Sq1 {
        rep.extend(sq1(lo, hi));
    }
    if all || suite == Suite::Stiefel {
        rep.extend(stiefel(lo, hi));
    }
    rep
}

fn spaces(m: u32) -> [SpaceId; 2] {
    [SpaceId::b(m), SpaceId::f(m)]
}

fn error_check(rep: &mut VerificationReport, suite: &str, m: u32, what: &str, e: impl std::fmt::Display) {
    rep.check(suite, Some(m), None, what, &"ok".to_string(), &e.to_string());
}

fn uct(lo: u32, hi: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for g in [GroupId::D8, GroupId::Z2xZ2] {
        rep.extend(uct_mod2_check(g, 2 * hi as usize + 2));
    }
    for m in lo..=hi {
        let cap = default_cap(m);
        for s in spaces(m) {
            if m >= 2 {
                rep.extend(global_checks(s));
            }
            let ring = match s.space {
                confcoh::configcoh::Space::UnorderedB => b_config_ring(m, cap),
                confcoh::configcoh::Space::OrderedF => f_config_ring(m, cap),
            };
            let series = match ring.and_then(|r| r.hilbert_series(cap)) {
                Ok(v) => v,
                Err(e) => {
                    error_check(&mut rep, "uct", m, "mod-2 ring", e);
                    continue;
                }
            };
            for (d, &n) in series.iter().enumerate() {
                rep.check("uct", Some(m), Some(d), &format!("{s} ring dimension"), &mod2_dimension(s, d), &(n as u32));
                let lhs = cohomology(s, d).stats().two_rank_tensor + cohomology(s, d + 1).stats().mult2_kernel_rank;
                rep.check("uct", Some(m), Some(d), &format!("{s} integral table mod 2"), &(n as u32), &lhs);
            }
        }
    }
    rep
}

fn bockstein(lo: u32, hi: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for m in lo.max(2)..=hi {
        for s in spaces(m) {
            rep.extend(rank_check(s));
            match page1_compare(s) {
                Ok(r) => rep.extend(r),
                Err(e) => error_check(&mut rep, "bockstein", m, "page-1 comparison", e),
            }
        }
    }
    rep
}

fn duality(lo: u32, hi: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for m in lo.max(2)..=hi {
        for s in spaces(m) {
            rep.extend(duality_symmetry_check(s));
        }
    }
    rep
}

fn p_star(m: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let mu = m as usize;
    for g in [GroupId::D8, GroupId::Z2xZ2] {
        let s = if g == GroupId::D8 { SpaceId::b(m) } else { SpaceId::f(m) };
        for i in 0..2 * mu {
            let (kind, k) = p_star_profile(g, m, i);
            let label = format!("p* on H^{i}(B{g}) ({kind})");
            match kind {
                PStar::Iso if i + 2 <= mu => {
                    rep.check("pstar", Some(m), Some(i), &label, &classifying_cohomology(g, CoeffId::IntegerTrivial, i), &cohomology(s, i));
                }
                PStar::MonoOntoTorsion => {
                    let bg = classifying_cohomology(g, CoeffId::IntegerTrivial, i);
                    rep.check("pstar", Some(m), Some(i), &label, &bg, &cohomology(s, i).torsion_part());
                }
                PStar::EpiNonzeroKernel => {
                    let want = if m % 2 == 0 {
                        i as i64 - m as i64
                    } else {
                        i as i64 - m as i64 + if i % 2 == 0 { 1 } else { -1 }
                    };
                    rep.check("pstar", Some(m), Some(i), &format!("{label} kernel rank"), &want.to_string(), &k.map_or("none".to_string(), |k| k.to_string()));
                }
                PStar::Open => rep.skip_open("pstar", Some(m), Some(i), &format!("{label}: surjectivity")),
                _ => {}
            }
        }
    }
    rep
}

fn clss(lo: u32, hi: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for m in lo.max(2)..=hi {
        let d8 = if m % 2 == 0 {
            Some(run_even(GroupId::D8, m))
        } else if m % 4 == 1 {
            (m >= 5).then(|| run_1mod4(m))
        } else {
            rep.skip_open("clss", Some(m), None, "D8 chart for m = 3 mod 4 (d2 pattern undecided)");
            if m == 3 {
                rep.extend(m3_scenarios());
            }
            match dimm_check((m - 3) / 4) {
                Ok(r) => rep.extend(r),
                Err(e) => error_check(&mut rep, "dimm", m, "fragment", e),
            }
            None
        };
        for run in d8.into_iter().chain([run_ordered(m)]) {
            match run {
                Ok(e) => rep.extend(e.report),
                Err(e) => error_check(&mut rep, "clss", m, "executor", e),
            }
        }
        rep.extend(p_star(m));
    }
    rep
}

fn sq1(lo: u32, hi: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for m in (lo..=hi).filter(|m| m % 4 == 3) {
        match prop_sq1_check((m - 3) / 4) {
            Ok(r) => rep.extend(r),
            Err(e) => error_check(&mut rep, "sq1", m, "Sq1 splitting", e),
        }
    }
    rep
}

/// Checks on V_{n,2} for n = m+1 over the requested m.
fn stiefel(lo: u32, hi: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for n in (lo + 1).max(3)..=hi + 1 {
        let ab = sphere_bundle_sss_e2(n).abutment();
        for q in 0..=2 * n - 3 {
            rep.check("stiefel", Some(n - 1), Some(q as usize), &format!("H^{q}(V_{n},2) from the sphere bundle"), &stiefel_cohomology(n, q), &ab.get(q as usize));
        }
        let gr = oriented_grassmannian_groups(n);
        let torsion_free_even = gr.iter().all(|(d, g)| d % 2 == 0 && g.torsion_exponents().is_empty());
        rep.assert("stiefel", Some(n - 1), None, &format!("oriented Grassmannian G({n},2) torsion-free, even degrees"), torsion_free_even);
        if n % 2 == 0 {
            rep.check("stiefel", Some(n - 1), Some(n as usize - 2), &format!("G({n},2) middle rank"), &2, &gr.get(n as usize - 2).free_rank());
        }
        rep.check("stiefel", Some(n - 1), None, &format!("V_{n},2/D8 orientable"), &(n % 2 == 1), &quotient_orientable(n, Subgroup::D8));
        rep.check("stiefel", Some(n - 1), None, &format!("V_{n},2/Z2xZ2 orientable"), &(n % 2 == 1), &quotient_orientable(n, Subgroup::Z2xZ2));
        rep.check("stiefel", Some(n - 1), None, &format!("V_{n},2/O(2) orientable"), &(n % 2 == 0), &quotient_orientable(n, Subgroup::O2));
    }
    rep
}
