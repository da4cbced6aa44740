//! JSON documents written to standard output.
//!
//! Rationals are strings (`"1"`, `"3/2"`), polynomials are exponent ->
//! coefficient maps, and unknown values are `null`.

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use khoval_core::invariants::diagram_report;
use khoval_core::{Check, Diagram, Formula, HomologyTable, InvariantReport, LaurentPolynomial, PositivityClass};

use crate::input::InputEcho;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: i32,
    pub j: i32,
    pub dim: usize,
}

pub fn table_entries(t: &HomologyTable) -> Vec<TableEntry> {
    t.entries().map(|(i, j, dim)| TableEntry { i, j, dim }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub elapsed_ms: u64,
    pub max_crossings: usize,
    pub oracle_max: usize,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub input: InputEcho,
    pub pd: String,
    pub crossings: usize,
    pub components: usize,
    pub connected: bool,
    pub n_plus: usize,
    pub n_minus: usize,
    pub writhe: i64,
    pub seifert_circles: usize,
    pub self_pair: bool,
    pub class: String,
    pub negative_index: Option<usize>,
    pub case: Option<u8>,
    pub g3_d: Option<String>,
    pub g3: Option<String>,
    pub s: Option<i64>,
    pub g4: Option<String>,
    pub formula: Option<Formula>,
    pub jones: Option<LaurentPolynomial>,
    pub jones_oracle: Option<LaurentPolynomial>,
    pub homology: Option<Vec<TableEntry>>,
    pub homology_raw: Option<Vec<TableEntry>>,
    pub kh0_support_hint: Option<Vec<i32>>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub meta: Meta,
}

fn ratio(r: Option<Ratio<i64>>) -> Option<String> {
    r.map(|r| r.to_string())
}

pub fn case_number(class: &PositivityClass) -> Option<u8> {
    class.case().map(|c| match c {
        khoval_core::Case::Case1 => 1,
        khoval_core::Case::Case2 => 2,
    })
}

impl ReportDocument {
    pub fn new(command: &str, input: InputEcho, d: &Diagram, r: &InvariantReport, meta: Meta) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            input,
            pd: d.to_pd_string(),
            crossings: d.crossing_count(),
            components: r.components,
            connected: r.connected,
            n_plus: r.n_plus,
            n_minus: r.n_minus,
            writhe: d.writhe(),
            seifert_circles: r.seifert_circles,
            self_pair: r.self_pair,
            class: r.class.to_string(),
            negative_index: match r.class {
                PositivityClass::AlmostPositiveDiagram { negative_index, .. } => Some(negative_index),
                _ => None,
            },
            case: case_number(&r.class),
            g3_d: ratio(r.g3_d),
            g3: ratio(r.g3_l),
            s: r.s,
            g4: ratio(r.g4),
            formula: r.formula,
            jones: r.jones_kh.clone(),
            jones_oracle: r.jones_oracle.clone(),
            homology: r.kh.as_ref().map(table_entries),
            homology_raw: r.kh_raw.as_ref().map(table_entries),
            kh0_support_hint: r.kh0_support_hint.clone(),
            checks: r.checks.clone(),
            notes: r.notes.clone(),
            meta,
        }
    }

    /// Diagram-level fields only.
    pub fn classify(input: InputEcho, d: &Diagram, meta: Meta) -> Self {
        Self::new("classify", input, d, &diagram_report(d), meta)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != khoval_core::Verdict::Fail)
    }
}

/// One line of `verify --fixtures`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub crossings: usize,
    pub pass: bool,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSummary {
    pub schema_version: u32,
    pub command: String,
    pub total: usize,
    pub passed: usize,
    pub fixtures: Vec<FixtureOutcome>,
    pub meta: Meta,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}
