use confcoh::clss::{
    assemble, build_e2, dimm_check, m3_scenarios, m3_scenarios_detail, prop_algebraico_cokernel, run_1mod4, run_even,
    run_ordered, Chart, DifferentialSpec, Effect, Extension,
};
use confcoh::configcoh::cohomology;
use confcoh::{AbGroup2, GroupId, SpaceId};

fn g(s: &str) -> AbGroup2 {
    s.parse().unwrap()
}

fn row(chart: &Chart, q: u32, ps: std::ops::RangeInclusive<u32>) -> Vec<String> {
    ps.map(|p| chart.get(p, q).to_string()).collect()
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn e2_examples() {
    let c = build_e2(GroupId::D8, 2);
    assert_eq!(c.get(0, 2), g("<1>"));
    assert_eq!(c.get(3, 0), g("<1>"));
    // mod-2 line: degree p has dimension p+1
    assert_eq!(c.get(1, 2), g("<2>"));
    assert_eq!(build_e2(GroupId::D8, 5).get(2, 4), g("{0}"));
}

#[test]
fn e2_lines_follow_parity() {
    for m in 2..=12 {
        let c = build_e2(GroupId::D8, m);
        let lines: Vec<u32> = c.lines.keys().copied().collect();
        if m % 2 == 0 {
            assert_eq!(lines, vec![0, m, 2 * m - 1]);
        } else {
            assert_eq!(lines, vec![0, m - 1, m, 2 * m - 1]);
        }
    }
}

#[test]
fn cokernel_closed_form_examples() {
    assert_eq!(prop_algebraico_cokernel(6, 4).unwrap(), g("{2}"));
    assert_eq!(prop_algebraico_cokernel(4, 3).unwrap(), g("<1>"));
    assert_eq!(prop_algebraico_cokernel(8, 2).unwrap(), g("<2>"));
}

#[test]
fn cokernel_closed_form_matches_table_and_orders() {
    for m in (4..=12).step_by(2) {
        for l in 2..m {
            let c = prop_algebraico_cokernel(m, l).unwrap();
            let i = (2 * m - l) as usize;
            assert_eq!(c, cohomology(SpaceId::b(m), i), "m={m} l={l}");
            let bd8 = confcoh::groupcoh::classifying_cohomology(GroupId::D8, confcoh::CoeffId::IntegerTrivial, i);
            assert_eq!(bd8.stats().torsion_order_log2, m - l + c.stats().torsion_order_log2);
        }
    }
}

#[test]
fn even_executor_matches_table() {
    for m in (2..=12).step_by(2) {
        let e = run_even(GroupId::D8, m).unwrap();
        assert!(e.report.passed(), "{}", e.report);
        for t in 0..2 * m as usize {
            assert_eq!(e.abutment.get(t), cohomology(SpaceId::b(m), t), "m={m} t={t}");
        }
    }
    let e = run_even(GroupId::D8, 4).unwrap();
    assert_eq!((e.abutment.get(5), e.abutment.get(6)), (g("<1>"), g("<2>")));
}

#[test]
fn one_mod_four_executor() {
    for m in [5, 9] {
        let e = run_1mod4(m).unwrap();
        assert!(e.report.passed(), "{}", e.report);
        for t in 0..2 * m as usize {
            assert_eq!(e.abutment.get(t).torsion_part(), cohomology(SpaceId::b(m), t).torsion_part());
        }
    }
    assert_eq!(run_1mod4(5).unwrap().abutment.get(9), g("<1>"));
    assert!(run_1mod4(7).is_err());
    assert!(run_1mod4(1).is_err());
}

#[test]
fn one_mod_four_order_equation_m5_degree8() {
    // |{4}| = 2^6 = |<2>|·|<2>|·|Z4|
    let e = run_1mod4(5).unwrap();
    let into8: Vec<_> = e
        .applied
        .iter()
        .filter(|a| a.spec.page >= 5 && a.spec.target() == Some((8, 0)))
        .map(|a| a.image.clone())
        .collect();
    assert_eq!(into8, vec![g("<2>"), g("<2>")]);
    assert_eq!(e.abutment.get(8), g("{0}"));
}

#[test]
fn no_differential_hits_twice_a_z4_generator() {
    let mut runs = vec![];
    for m in (2..=12).step_by(2) {
        runs.push(run_even(GroupId::D8, m).unwrap());
    }
    runs.push(run_1mod4(5).unwrap());
    runs.push(run_1mod4(9).unwrap());
    for e in runs {
        for a in &e.applied {
            if let (Some(t), Some(c)) = (&a.target, &a.cokernel) {
                // the Z4 count of the target survives unless the whole target dies
                if a.spec.page > 2 && !c.is_trivial() {
                    assert_eq!(t.stats().z4_count, c.stats().z4_count, "{:?}", a.spec);
                }
            }
        }
    }
}

#[test]
fn ordered_executors() {
    for m in 2..=12 {
        let e = run_ordered(m).unwrap();
        assert!(e.report.passed(), "m={m}\n{}", e.report);
        for t in 0..2 * m as usize {
            assert_eq!(e.abutment.get(t), cohomology(SpaceId::f(m), t));
        }
    }
}

#[test]
fn dimm_fragment() {
    for a in 0..=2 {
        let rep = dimm_check(a).unwrap();
        assert!(rep.passed(), "{rep}");
    }
    assert_eq!(cohomology(SpaceId::b(7), 7), g("Z + <3>"));
    assert!(dimm_check(4).is_err());
}

#[test]
fn m3_both_options_reach_the_table() {
    let rep = m3_scenarios();
    assert!(rep.passed(), "{rep}");
    for sc in m3_scenarios_detail().unwrap() {
        let (h4, ext) = &sc.abutment[4];
        assert_eq!(*h4, g("{0}"));
        assert_eq!(h4.stats().torsion_order_log2, 2);
        if sc.name == "a" {
            assert_eq!(*ext, Extension::Nontrivial);
        } else {
            assert_eq!(*ext, Extension::None);
        }
        assert_eq!(sc.abutment[5].0, g("<1>"));
    }
}

#[test]
fn m3_option_a_e4_chart() {
    let [a, _] = m3_scenarios_detail().unwrap();
    // E2, E3, E4, E_inf
    let e4 = &a.pages[2];
    assert_eq!(e4.page, 4);
    let base = strs(&["Z", "0", "<2>", "<1>", "{1}", "<1>", "<2>", "<1>", "{1}", "<1>", "<2>", "<1>", "{1}", "<1>"]);
    assert_eq!(row(e4, 0, 0..=13), base);
    assert_eq!(row(e4, 3, 0..=13), base);
    for q in [2, 5] {
        for p in 0..=13 {
            let want = if p % 4 == 2 && p <= 10 { "<1>" } else { "0" };
            assert_eq!(e4.get(p, q).to_string(), want, "({p},{q})");
        }
    }
}

#[test]
fn m3_option_b_e3_chart() {
    let [_, b] = m3_scenarios_detail().unwrap();
    let e3 = &b.pages[1];
    assert_eq!(e3.page, 3);
    let bd8: Vec<String> = (0..=13)
        .map(|p| confcoh::groupcoh::classifying_cohomology(GroupId::D8, confcoh::CoeffId::IntegerTrivial, p).to_string())
        .collect();
    assert_eq!(row(e3, 0, 0..=13), bd8);
    assert_eq!(
        row(e3, 2, 1..=13),
        strs(&["<1>", "<1>", "<2>", "<2>", "<3>", "<3>", "<4>", "<4>", "<5>", "<5>", "<6>", "<6>", "<7>"])
    );
    assert_eq!(
        row(e3, 3, 0..=13),
        strs(&["Z", "0", "<2>", "<1>", "<3>", "<2>", "<4>", "<3>", "<5>", "<4>", "<6>", "<5>", "<7>", "<6>"])
    );
    assert_eq!(
        row(e3, 5, 0..=13),
        strs(&["0", "<1>", "{0}", "<2>", "<2>", "<3>", "{2}", "<4>", "<4>", "<5>", "{4}", "<6>", "<6>", "<7>"])
    );
}

#[test]
fn stable_final_pages() {
    for sc in m3_scenarios_detail().unwrap() {
        assert!(sc.pages.last().unwrap().is_stable());
    }
}

#[test]
fn inconsistent_bookkeeping_is_an_error() {
    let mut c = build_e2(GroupId::D8, 4);
    c.advance(5);
    // wrong page
    assert!(c.apply(&[DifferentialSpec::new(4, (0, 4), Effect::InjectiveElementary(1))]).is_err());
    // same target twice
    let twice = [
        DifferentialSpec::new(5, (3, 4), Effect::InjectiveElementary(4)),
        DifferentialSpec::new(5, (3, 4), Effect::InjectiveElementary(4)),
    ];
    assert!(c.apply(&twice).is_err());
    // an order that does not add up
    let lying = DifferentialSpec::new(
        5,
        (3, 4),
        Effect::Explicit { kernel: AbGroup2::zero(), image: g("<4>"), cokernel: g("<5>") },
    );
    assert!(c.apply(&[lying]).is_err());
}

#[test]
fn unresolved_extension_needs_a_decree() {
    let [a, _] = m3_scenarios_detail().unwrap();
    let last = a.pages.last().unwrap();
    assert!(assemble(last, 4, None).is_err());
    assert_eq!(assemble(last, 4, Some(Extension::Trivial)).unwrap().0, g("<2>"));
    assert_eq!(assemble(last, 4, Some(Extension::Nontrivial)).unwrap().0, g("{0}"));
}

#[test]
fn chart_json_shape() {
    let c = build_e2(GroupId::D8, 2);
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["page"], 2);
    let first = &v["lines"][0];
    assert_eq!(first["q"], 0);
    assert_eq!(first["entries"][0]["p"], 0);
    assert_eq!(first["entries"][0]["group"], serde_json::json!({"free": 1, "torsion": []}));
}
