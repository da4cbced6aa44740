use std::collections::BTreeMap;
use std::fmt::Write;

use crate::document::{FixtureSummary, ReportDocument, TableEntry};

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("unknown".into(), T::to_string)
}

/// Rows are q-degrees from the top, columns homological degrees.
pub fn table(entries: &[TableEntry]) -> String {
    if entries.is_empty() {
        return "  (zero)\n".into();
    }
    let cells: BTreeMap<(i32, i32), usize> = entries.iter().map(|e| ((e.i, e.j), e.dim)).collect();
    let (i0, i1) = (entries.iter().map(|e| e.i).min().unwrap(), entries.iter().map(|e| e.i).max().unwrap());
    let (j0, j1) = (entries.iter().map(|e| e.j).min().unwrap(), entries.iter().map(|e| e.j).max().unwrap());
    let mut out = String::from("  j\\i");
    for i in i0..=i1 {
        write!(out, "{i:>5}").unwrap();
    }
    out.push('\n');
    for j in (j0..=j1).rev() {
        if (j - j0) % 2 != 0 {
            continue;
        }
        write!(out, "{j:>5}").unwrap();
        for i in i0..=i1 {
            match cells.get(&(i, j)) {
                Some(d) => write!(out, "{d:>5}").unwrap(),
                None => out.push_str("    ."),
            }
        }
        out.push('\n');
    }
    out
}

pub fn report(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "pd          {}", doc.pd).unwrap();
    writeln!(
        w,
        "crossings   {} (n+ = {}, n- = {}), {} component(s), {}",
        doc.crossings,
        doc.n_plus,
        doc.n_minus,
        doc.components,
        if doc.connected { "connected" } else { "disconnected" }
    )
    .unwrap();
    let case = doc.case.map_or(String::new(), |c| format!(", case {c}"));
    writeln!(w, "class       {}{case}", doc.class).unwrap();
    writeln!(w, "seifert     {} circles, g3(D) = {}", doc.seifert_circles, opt(&doc.g3_d)).unwrap();
    if doc.command != "classify" && doc.command != "homology" || doc.s.is_some() {
        writeln!(w, "s           {}   g3 = {}   g4 = {}", opt(&doc.s), opt(&doc.g3), opt(&doc.g4)).unwrap();
    }
    if let Some(f) = doc.formula {
        writeln!(w, "formula     {f:?}").unwrap();
    }
    if let Some(v) = &doc.jones {
        writeln!(w, "jones (KH)  {v}").unwrap();
    }
    if let Some(v) = &doc.jones_oracle {
        writeln!(w, "jones (sum) {v}").unwrap();
    }
    if let Some(t) = &doc.homology {
        writeln!(w, "KH:\n{}", table(t)).unwrap();
    }
    if let Some(t) = &doc.homology_raw {
        writeln!(w, "H (unnormalized):\n{}", table(t)).unwrap();
    }
    if let Some(h) = &doc.kh0_support_hint {
        writeln!(w, "KH^0 support {h:?} (hint only)").unwrap();
    }
    for c in &doc.checks {
        writeln!(w, "  {:<24} {:<5} {}", c.name, c.verdict.to_string(), c.detail).unwrap();
    }
    for n in &doc.notes {
        writeln!(w, "note: {n}").unwrap();
    }
    writeln!(w, "{} ms, {} thread(s)", doc.meta.elapsed_ms, doc.meta.threads).unwrap();
    out
}

pub fn summary(s: &FixtureSummary) -> String {
    let mut out = String::new();
    for f in &s.fixtures {
        let verdict = if f.pass { "pass".to_string() } else { format!("FAIL {}", f.failed.join(",")) };
        writeln!(out, "{:<24} {:>2}  {verdict}", f.id, f.crossings).unwrap();
    }
    writeln!(out, "{}/{} fixtures pass, {} ms", s.passed, s.total, s.meta.elapsed_ms).unwrap();
    out
}
