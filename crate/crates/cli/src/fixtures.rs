//! Embedded regression catalog.
//!
//! Named fixtures carry frozen expected values (produced by this pipeline
//! and spot-checked against the state-sum oracle). The generated family is
//! every braid word of length at most 8 over `±1, ±2` on two or three
//! strands whose closure is a connected knot diagram with at most one
//! negative crossing, one representative per cyclic rotation class.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use khoval_core::invariants::diagram_report;
use khoval_core::{braid_to_pd, parse_pd, Diagram, InvariantReport, Sign};

use crate::document::{case_number, table_entries, TableEntry};

const EXPECTED_JSON: &str = include_str!("../fixtures/expected.json");

pub const MAX_GENERATED_LENGTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub class: String,
    pub case: Option<u8>,
    pub g3_d: String,
    pub s: Option<i64>,
    pub jones: String,
    pub kh: Vec<TableEntry>,
}

impl Expected {
    pub fn from_report(r: &InvariantReport) -> Option<Self> {
        Some(Self {
            class: r.class.to_string(),
            case: case_number(&r.class),
            g3_d: r.g3_d?.to_string(),
            s: r.s,
            jones: r.jones_kh.as_ref()?.to_string(),
            kh: table_entries(r.kh.as_ref()?),
        })
    }

    /// Names of the fields where `r` disagrees.
    pub fn mismatches(&self, r: &InvariantReport) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |name: &str, ok: bool| {
            if !ok {
                out.push(format!("expected_{name}"));
            }
        };
        check("class", self.class == r.class.to_string());
        check("case", self.case == case_number(&r.class));
        check("g3_d", Some(&self.g3_d) == r.g3_d.map(|g| g.to_string()).as_ref());
        check("s", self.s == r.s);
        check("jones", Some(&self.jones) == r.jones_kh.as_ref().map(|v| v.to_string()).as_ref());
        check("kh", Some(&self.kh) == r.kh.as_ref().map(table_entries).as_ref());
        out
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub pd: String,
    pub braid: Option<(Vec<i32>, u32)>,
    pub expected: Option<Expected>,
}

impl Fixture {
    pub fn diagram(&self) -> Diagram {
        parse_pd(&self.pd).expect("fixtures parse")
    }

    pub fn crossings(&self) -> usize {
        self.diagram().crossing_count()
    }
}

fn braid_pd(word: &[i32], strands: u32) -> String {
    braid_to_pd(word, strands).expect("fixture braid").to_pd_string()
}

/// `(id, pd, braid)` for the named fixtures.
fn named() -> Vec<(&'static str, String, Option<(Vec<i32>, u32)>)> {
    let braid = |w: &[i32], k: u32| (braid_pd(w, k), Some((w.to_vec(), k)));
    let (s1_3, s1_3b) = braid(&[1, 1, 1], 2);
    let (s1_2m, s1_2mb) = braid(&[1, 1, -1], 2);
    let (s1_5, s1_5b) = braid(&[1, 1, 1, 1, 1], 2);
    let (t33, t33b) = braid(&[1, 2, 1, 2, 1, 2], 3);
    let kinked = braid_to_pd(&[1, 1, 1], 2)
        .and_then(|d| d.with_kink(1, Sign::Negative))
        .expect("kink insertion")
        .to_pd_string();
    vec![
        ("unknot", "O".to_string(), None),
        ("positive-kink", "X(1,1,2,2)".to_string(), None),
        ("s1^3", s1_3, s1_3b),
        ("s1^2s1^-1", s1_2m, s1_2mb),
        ("s1^5", s1_5, s1_5b),
        ("(s1s2)^3", t33, t33b),
        ("s1^3+negative-kink", kinked, None),
    ]
}

fn expected_table() -> BTreeMap<String, Expected> {
    serde_json::from_str(EXPECTED_JSON).expect("embedded expected values")
}

/// Connected closure of a single component with at most one negative letter.
fn admissible(word: &[i32], strands: u32) -> bool {
    if word.iter().filter(|&&g| g < 0).count() > 1 {
        return false;
    }
    // Every adjacent strand pair must be joined, or the diagram splits.
    if (1..strands as i32).any(|g| !word.iter().any(|&x| x.abs() == g)) {
        return false;
    }
    let mut perm: Vec<u32> = (0..strands).collect();
    for &g in word {
        perm.swap(g.unsigned_abs() as usize - 1, g.unsigned_abs() as usize);
    }
    let mut at = 0;
    for step in 1..=strands {
        at = perm[at as usize];
        if at == 0 {
            return step == strands;
        }
    }
    false
}

fn canonical_rotation(word: &[i32]) -> Vec<i32> {
    (0..word.len())
        .map(|k| word[k..].iter().chain(&word[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

pub fn generated() -> Vec<Fixture> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for strands in 2..=3u32 {
        let letters: Vec<i32> = (1..strands as i32).flat_map(|g| [g, -g]).collect();
        for len in 1..=MAX_GENERATED_LENGTH {
            let mut idx = vec![0usize; len];
            loop {
                let word: Vec<i32> = idx.iter().map(|&k| letters[k]).collect();
                if admissible(&word, strands) && seen.insert((strands, canonical_rotation(&word))) {
                    let d = braid_to_pd(&word, strands).expect("generated braid");
                    if d.is_connected() && d.component_count() == 1 && d.n_minus() <= 1 {
                        let id = format!(
                            "b{strands}:{}",
                            word.iter().map(i32::to_string).collect::<Vec<_>>().join(",")
                        );
                        out.push(Fixture { id, pd: d.to_pd_string(), braid: Some((word, strands)), expected: None });
                    }
                }
                // Odometer over the alphabet.
                let mut k = len;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < letters.len() {
                        break;
                    }
                    idx[k] = 0;
                }
                if idx.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
    }
    out
}

pub fn named_fixtures() -> Vec<Fixture> {
    let mut expected = expected_table();
    named()
        .into_iter()
        .map(|(id, pd, braid)| Fixture { expected: expected.remove(id), id: id.into(), pd, braid })
        .collect()
}

/// Named fixtures first, then the generated family.
pub fn catalog() -> Vec<Fixture> {
    let mut all = named_fixtures();
    all.extend(generated());
    all
}

/// Table of frozen values recomputed from scratch, for refreshing the
/// embedded file.
pub fn recompute_expected(budget: &khoval_core::Budget) -> BTreeMap<String, Expected> {
    named_fixtures()
        .into_iter()
        .filter_map(|f| Expected::from_report(&khoval_core::report(&f.diagram(), budget)).map(|e| (f.id, e)))
        .collect()
}

pub fn classify_only(f: &Fixture) -> InvariantReport {
    diagram_report(&f.diagram())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(admissible(&[1, 1, 1], 2));
        assert!(!admissible(&[1, 1], 2));
        assert!(!admissible(&[1, -1, 1, -1, 1], 2));
        assert!(admissible(&[1, 2], 3));
        assert!(!admissible(&[1, 1, 1], 3));
        assert!(!admissible(&[1, 2, 1, 2, 1, 2], 3));
    }

    #[test]
    fn rotations_collapse() {
        assert_eq!(canonical_rotation(&[2, -1, 1]), vec![-1, 1, 2]);
        let ids: BTreeSet<String> = generated().into_iter().map(|f| f.id).collect();
        assert!(ids.contains("b2:1,1,1"));
        assert!(!ids.contains("b2:1,-1,1") || !ids.contains("b2:-1,1,1"));
    }

    #[test]
    fn every_fixture_parses_and_named_ones_are_frozen() {
        let all = catalog();
        assert!(all.len() > 7);
        for f in &all {
            assert_eq!(f.diagram().to_pd_string(), f.pd, "{}", f.id);
        }
        for f in named_fixtures() {
            assert!(f.expected.is_some(), "{} has no expected block", f.id);
        }
    }

    #[test]
    fn generated_family_has_both_cases() {
        let cases: BTreeSet<Option<u8>> = generated().iter().map(|f| case_number(&classify_only(f).class)).collect();
        assert!(cases.contains(&Some(1)) && cases.contains(&Some(2)) && cases.contains(&None));
    }
}
