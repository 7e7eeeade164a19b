use std::fmt::Write;

use confcoh::bockstein::page1_expected;
use confcoh::clss::build_e2;
use confcoh::configcoh::{cohomology, homology, mod2_dimension, twisted_cohomology, Space};
use confcoh::f2algebra::{b_config_ring, default_cap, f_config_ring, PresentedF2Algebra};
use confcoh::{AbGroup2, GroupId, SpaceId, VerificationReport};
use serde::Serialize;
use serde_json::json;

use crate::{Coefficients, OutputFormat};

fn torsion_orders(g: &AbGroup2) -> Vec<u64> {
    g.torsion_exponents().iter().map(|&e| 1u64 << e).collect()
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn json_text<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn groups(s: SpaceId, format: OutputFormat, coeff: Coefficients, homology_flag: bool) -> Result<String, String> {
    let top = s.top();
    let hom = homology(s);
    let rows: Vec<(usize, AbGroup2)> = (0..=top)
        .map(|i| {
            let g = match (coeff, homology_flag) {
                (Coefficients::Z, false) => cohomology(s, i),
                (Coefficients::Z, true) => hom.get(i),
                // over a field homology and cohomology have the same dimension
                (Coefficients::F2, _) => AbGroup2::elem(mod2_dimension(s, i)),
                (Coefficients::Twisted, false) => twisted_cohomology(s, i).map_err(|e| e.to_string())?,
                (Coefficients::Twisted, true) => return Err("twisted homology is not supported".to_string()),
            };
            Ok((i, g))
        })
        .collect::<Result<_, String>>()?;
    let kind = if homology_flag { "homology" } else { "cohomology" };
    let coeff_name = match coeff {
        Coefficients::Z => "Z",
        Coefficients::Twisted => "twisted",
        Coefficients::F2 => "F2",
    };
    Ok(match format {
        OutputFormat::Table => {
            let mut out = format!("# {kind} of {s}, coefficients {coeff_name}\n");
            for (i, g) in &rows {
                writeln!(out, "{i:>3}  {g}").unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let degrees: Vec<_> = rows.iter().map(|(i, g)| json!({"degree": i, "group": g})).collect();
            json_text(&json!({
                "space": s.to_string(),
                "m": s.m,
                "kind": kind,
                "coefficients": coeff_name,
                "degrees": degrees,
            }))
        }
        OutputFormat::Csv => csv_text(
            &["degree", "free", "torsion"],
            rows.iter().map(|(i, g)| {
                let t: Vec<String> = torsion_orders(g).iter().map(u64::to_string).collect();
                vec![i.to_string(), g.free_rank().to_string(), t.join(" ")]
            }),
        ),
    })
}

pub const TABLE1_ROWS: [u32; 4] = [2, 4, 6, 8];
pub const TABLE1_COLS: std::ops::RangeInclusive<usize> = 2..=14;

/// Torsion of H^i(B(P^m,2)) in the printed range, empty outside 2..2m−2.
pub fn table1_cell(m: u32, i: usize) -> String {
    if i > 2 * m as usize - 2 {
        return String::new();
    }
    let t = cohomology(SpaceId::b(m), i).torsion_part();
    if t.is_trivial() {
        String::new()
    } else {
        t.to_string()
    }
}

pub fn table1(format: OutputFormat) -> String {
    let cols: Vec<usize> = TABLE1_COLS.collect();
    match format {
        OutputFormat::Table => {
            let width = 5;
            let mut out = format!("{:<4}", "");
            for c in &cols {
                write!(out, "{c:<width$}").unwrap();
            }
            out = out.trim_end().to_string() + "\n";
            for m in TABLE1_ROWS {
                let mut line = format!("{:<4}", format!("E{m}"));
                for &c in &cols {
                    write!(line, "{:<width$}", table1_cell(m, c)).unwrap();
                }
                out += line.trim_end();
                out.push('\n');
            }
            out
        }
        OutputFormat::Csv => {
            let names: Vec<String> = cols.iter().map(usize::to_string).collect();
            let header: Vec<&str> = std::iter::once("m").chain(names.iter().map(String::as_str)).collect();
            csv_text(
                &header,
                TABLE1_ROWS.iter().map(|&m| std::iter::once(m.to_string()).chain(cols.iter().map(|&c| table1_cell(m, c))).collect()),
            )
        }
        OutputFormat::Json => {
            let rows: Vec<_> = TABLE1_ROWS
                .iter()
                .map(|&m| {
                    let cells: Vec<_> = cols.iter().map(|&c| json!({"degree": c, "torsion": table1_cell(m, c)})).collect();
                    json!({"m": m, "cells": cells})
                })
                .collect();
            json_text(&json!({"rows": rows}))
        }
    }
}

fn ring_for(s: SpaceId) -> Result<PresentedF2Algebra, String> {
    let cap = default_cap(s.m);
    match s.space {
        Space::UnorderedB => b_config_ring(s.m, cap),
        Space::OrderedF => f_config_ring(s.m, cap),
    }
    .map_err(|e| e.to_string())
}

fn two_columns(format: OutputFormat, title: &str, headers: &[&str], rows: &[Vec<usize>]) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = format!("# {title}\n");
            out += &headers.iter().map(|h| format!("{h:>8}")).collect::<String>();
            out.push('\n');
            for r in rows {
                out += &r.iter().map(|v| format!("{v:>8}")).collect::<String>();
                out.push('\n');
            }
            out
        }
        OutputFormat::Csv => csv_text(headers, rows.iter().map(|r| r.iter().map(usize::to_string).collect())),
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| headers.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect())
                .collect();
            json_text(&json!({"title": title, "rows": rows}))
        }
    }
}

pub fn hilbert(s: SpaceId, format: OutputFormat) -> Result<String, String> {
    let ring = ring_for(s)?;
    let series = ring.hilbert_series(ring.cap()).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<usize>> = series.iter().enumerate().map(|(d, &n)| vec![d, n]).collect();
    Ok(two_columns(format, &format!("mod-2 Hilbert series of {s}: {ring}"), &["degree", "dim"], &rows))
}

pub fn sq1(s: SpaceId, format: OutputFormat) -> Result<String, String> {
    let ring = ring_for(s)?;
    let top = 2 * s.m as usize;
    let cx = ring.sq1_complex(top + 1).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<usize>> =
        (0..=top).map(|d| vec![d, cx.homology_rank(d), page1_expected(s, d) as usize]).collect();
    Ok(two_columns(format, &format!("Sq1-homology of {s}"), &["degree", "sq1", "table"], &rows))
}

pub fn chart(g: GroupId, m: u32) -> String {
    json_text(&build_e2(g, m))
}

pub fn report(rep: &VerificationReport, format: OutputFormat, quiet: bool) -> String {
    match format {
        OutputFormat::Table => {
            if quiet {
                let mut out = String::new();
                for c in rep.failures() {
                    writeln!(out, "{c}").unwrap();
                }
                let full = rep.to_string();
                out + full.lines().last().unwrap_or("") + "\n"
            } else {
                rep.to_string() + "\n"
            }
        }
        OutputFormat::Json => json_text(rep),
        OutputFormat::Csv => csv_text(
            &["suite", "m", "degree", "label", "expected", "computed", "status"],
            rep.checks.iter().map(|c| {
                vec![
                    c.suite.clone(),
                    c.m.map(|m| m.to_string()).unwrap_or_default(),
                    c.degree.map(|d| d.to_string()).unwrap_or_default(),
                    c.label.clone(),
                    c.expected.clone(),
                    c.computed.clone(),
                    c.status.to_string(),
                ]
            }),
        ),
    }
}
