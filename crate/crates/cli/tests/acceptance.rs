//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! are always shown; exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use khoval_cli::fixtures::{catalog, Fixture};
use khoval_core::invariants::crossing_change_bounds;
use khoval_core::{
    braid_to_pd, build_complex, canonical_genus, check_support, classify, genus_from_diagram, jones_from_kh,
    jones_oracle, kh, parse_pd, rasmussen_from_diagram, seifert, Case, Diagram, HomologyTable, PositivityClass,
    Sign, Verdict,
};

const CAP: usize = 18;
const ORACLE: usize = 20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn table(t: &HomologyTable) -> BTreeMap<(i32, i32), usize> {
    t.entries().map(|(i, j, d)| ((i, j), d)).collect()
}

fn fixtures_up_to(n: usize) -> Vec<(Fixture, Diagram)> {
    catalog()
        .into_iter()
        .map(|f| {
            let d = f.diagram();
            (f, d)
        })
        .filter(|(_, d)| d.crossing_count() <= n)
        .collect()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    match limit {
        Some(limit) => {
            o.pass &= elapsed < limit;
            o.detail = format!("{} [{elapsed:.2?}, limit {limit:?}]", o.detail);
        }
        None => o.detail = format!("{} [{elapsed:.2?}]", o.detail),
    }
    o
}

fn unknots() -> Outcome {
    let expected: BTreeMap<(i32, i32), usize> = [((0, 1), 1), ((0, -1), 1)].into();
    let diagrams = [
        ("O", parse_pd("O").unwrap()),
        ("positive kink", parse_pd("X(1,1,2,2)").unwrap()),
        ("s1^2 s1^-1", braid_to_pd(&[1, 1, -1], 2).unwrap()),
    ];
    let bad: Vec<&str> = diagrams.iter().filter(|(_, d)| table(&kh(d, CAP).unwrap()) != expected).map(|(n, _)| *n).collect();
    outcome(bad.is_empty(), format!("3 unknot diagrams, mismatches: {bad:?}"))
}

fn jones_cross_validation() -> Outcome {
    let fx = fixtures_up_to(14);
    let bad: Vec<String> = fx
        .par_iter()
        .filter(|(_, d)| {
            let t = kh(d, CAP).unwrap();
            let oracle = jones_oracle(d, ORACLE).unwrap();
            !khoval_core::jones::euler_matches(&t, &oracle) || jones_from_kh(&t, d.component_count()).ok() != Some(oracle)
        })
        .map(|(f, _)| f.id.clone())
        .collect();
    outcome(bad.is_empty(), format!("{} fixtures, mismatches: {bad:?}", fx.len()))
}

fn d_squared_and_grading() -> Outcome {
    let fx = fixtures_up_to(10);
    let bad: Vec<String> = fx
        .par_iter()
        .filter(|(_, d)| {
            let c = build_complex(d, CAP).unwrap();
            !(c.check_d_squared() && c.check_grading())
        })
        .map(|(f, _)| f.id.clone())
        .collect();
    outcome(bad.is_empty(), format!("{} fixtures, failures: {bad:?}", fx.len()))
}

fn case2_sanity() -> Outcome {
    let d = braid_to_pd(&[1, 1, -1], 2).unwrap();
    let case = classify(&d, &seifert(&d)).case();
    let s = rasmussen_from_diagram(&d).unwrap();
    let g = genus_from_diagram(&d).unwrap();
    outcome(
        case == Some(Case::Case2) && s == 0 && g == 0.into(),
        format!("case {case:?}, s = {s}, genus = {g}"),
    )
}

fn case1_sanity() -> Outcome {
    let trefoil = braid_to_pd(&[1, 1, 1], 2).unwrap();
    let d = trefoil.with_kink(1, Sign::Negative).unwrap();
    let case = classify(&d, &seifert(&d)).case();
    let s = rasmussen_from_diagram(&d).unwrap();
    let twice_g = canonical_genus(&trefoil).unwrap() * 2;
    outcome(
        case == Some(Case::Case1) && s == 2 && twice_g == s.into(),
        format!("case {case:?}, s = {s}, 2 g3(positive trefoil) = {twice_g}"),
    )
}

fn case1_vanishing() -> Outcome {
    let case1: Vec<(Fixture, Diagram)> = fixtures_up_to(14)
        .into_iter()
        .filter(|(_, d)| d.is_connected() && classify(d, &seifert(d)).case() == Some(Case::Case1))
        .collect();
    let bad: Vec<String> = case1
        .par_iter()
        .filter(|(_, d)| {
            let j = (canonical_genus(d).unwrap() * 2).to_integer() as i32 + d.component_count() as i32 - 4;
            kh(d, CAP).unwrap().dim(0, j) != 0
        })
        .map(|(f, _)| f.id.clone())
        .collect();
    outcome(!case1.is_empty() && bad.is_empty(), format!("{} case 1 fixtures, nonzero: {bad:?}", case1.len()))
}

fn support() -> Outcome {
    let with_s: Vec<(Fixture, Diagram, i64)> = fixtures_up_to(14)
        .into_iter()
        .filter_map(|(f, d)| rasmussen_from_diagram(&d).ok().map(|s| (f, d, s)))
        .collect();
    let bad: Vec<String> = with_s
        .par_iter()
        .filter(|(_, d, s)| check_support(*s, &kh(d, CAP).unwrap()) != Verdict::Pass)
        .map(|(f, _, s)| format!("{} (s = {s})", f.id))
        .collect();
    outcome(!with_s.is_empty() && bad.is_empty(), format!("{} knot fixtures with s, failures: {bad:?}", with_s.len()))
}

fn crossing_change() -> Outcome {
    let almost: Vec<(Fixture, Diagram)> = catalog()
        .into_iter()
        .map(|f| {
            let d = f.diagram();
            (f, d)
        })
        .filter(|(_, d)| matches!(classify(d, &seifert(d)), PositivityClass::AlmostPositiveDiagram { .. }))
        .collect();
    let mut bad = Vec::new();
    let mut checked = 0;
    for (f, d) in &almost {
        match crossing_change_bounds(d) {
            Some(b) => {
                checked += 1;
                if !b.holds() {
                    bad.push(f.id.clone());
                }
            }
            None => bad.push(format!("{} (not evaluated)", f.id)),
        }
    }
    outcome(checked > 0 && bad.is_empty(), format!("{checked} almost positive fixtures, failures: {bad:?}"))
}

fn invariance() -> Outcome {
    let fx = fixtures_up_to(10);
    let bad: Vec<String> = fx
        .par_iter()
        .filter(|(_, d)| {
            let base = table(&kh(d, CAP).unwrap());
            let n = d.crossing_count();
            let reversed: Vec<usize> = (0..n).rev().collect();
            let shifted: Vec<usize> = (0..n).map(|k| (k + 1) % n.max(1)).collect();
            let mut variants = vec![d.with_crossing_order(&reversed).unwrap(), d.with_crossing_order(&shifted).unwrap()];
            if d.arc_count() > 0 {
                variants.push(d.with_kink(1, Sign::Positive).unwrap());
            }
            variants.iter().any(|v| table(&kh(v, CAP).unwrap()) != base)
        })
        .map(|(f, _)| f.id.clone())
        .collect();
    outcome(bad.is_empty(), format!("{} fixtures x 2 orders + kink, differences: {bad:?}", fx.len()))
}

fn peak_memory_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn performance() -> Outcome {
    // Closure of (s1 s2)^8: a positive 16-crossing knot diagram.
    let word: Vec<i32> = [1, 2].repeat(8);
    let d = braid_to_pd(&word, 3).unwrap();
    assert_eq!((d.crossing_count(), d.component_count()), (16, 1));
    let start = Instant::now();
    let default = kh(&d, CAP).unwrap();
    let elapsed = start.elapsed();
    let peak = peak_memory_kib();
    let run_with = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| table(&kh(&d, CAP).unwrap()))
    };
    let many = std::thread::available_parallelism().map_or(4, |n| n.get().max(4));
    let one = run_with(1);
    let n_threads = run_with(many);
    let deterministic = one == n_threads && one == table(&default);
    let memory_ok = peak.is_some_and(|kib| kib < 8 * 1024 * 1024);
    let s = rasmussen_from_diagram(&d).unwrap();
    outcome(
        elapsed < Duration::from_secs(600) && memory_ok && deterministic,
        format!(
            "16 crossings in {elapsed:.2?}, peak {} MiB, 1 vs {many} threads identical: {deterministic}, \
             s = {s}, KH^(0,s±1) = ({}, {})",
            peak.map_or("?".into(), |k| (k / 1024).to_string()),
            default.dim(0, s as i32 - 1),
            default.dim(0, s as i32 + 1),
        ),
    )
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 10] = [
        ("unknot normalization", Some(Duration::from_secs(1)), unknots),
        ("Jones cross-validation (<= 14 crossings)", Some(Duration::from_secs(300)), jones_cross_validation),
        ("d^2 = 0 and grading (<= 10 crossings)", Some(Duration::from_secs(60)), d_squared_and_grading),
        ("case 2: s1^2 s1^-1 has s = 0, genus 0", None, case2_sanity),
        ("case 1: trefoil + negative kink has s = 2", None, case1_sanity),
        ("KH^(0, 2g3(D)+#L-4) = 0 for case 1", None, case1_vanishing),
        ("KH^(0, s±1) nonzero", None, support),
        ("crossing-change bounds", None, crossing_change),
        ("kh invariance: reordering, positive kink", None, invariance),
        ("16 crossings: < 10 min, < 8 GiB, thread-independent", Some(Duration::from_secs(600)), performance),
    ];
    let mut failures = 0;
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        let o = timed(limit, f);
        if !o.pass {
            failures += 1;
        }
        println!("[{}] criterion {:>2}: {name} -- {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("{} of 10 criteria pass", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
