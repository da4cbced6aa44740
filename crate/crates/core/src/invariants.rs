//! Genus and Rasmussen invariant of knots with positive or almost positive
//! diagrams, and the homological checks that back them.
//!
//! For a diagram `D` with at most one negative crossing `p`:
//!
//! | class                   | 3-genus of the link | `s` of the knot |
//! |-------------------------|---------------------|-----------------|
//! | positive                | `g(D)`              | `2 g(D)`        |
//! | almost positive, case 1 | `g(D)`              | `2 g(D)`        |
//! | almost positive, case 2 | `g(D) - 1`          | `2 g(D) - 2`    |
//!
//! where `g(D)` is the genus of the canonical Seifert surface and case 2
//! means some positive crossing joins the same two Seifert circles as `p`.

use std::fmt;

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::complex::DEFAULT_MAX_CROSSINGS;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::homology::{kh_with_raw, HomologyTable};
use crate::jones::{euler_matches, jones_from_kh, jones_oracle, DEFAULT_ORACLE_MAX};
use crate::poly::LaurentPolynomial;
use crate::seifert::{canonical_genus, classify, seifert, Case, PositivityClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self { name: name.into(), verdict, detail: detail.into() }
    }
}

/// Which closed formula produced `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Formula {
    /// `s = 2 g(D)` for a positive diagram.
    PositiveDiagram,
    /// `s = 2 g(D)`.
    AlmostPositiveCase1,
    /// `s = 2 g(D) - 2`.
    AlmostPositiveCase2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_crossings: usize,
    pub oracle_max: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_crossings: DEFAULT_MAX_CROSSINGS, oracle_max: DEFAULT_ORACLE_MAX }
    }
}

/// Three-genus of the link, read off the diagram.
pub fn genus_from_diagram(d: &Diagram) -> Result<Ratio<i64>> {
    let sd = seifert(d);
    let g = canonical_genus(d).map_err(|_| Error::NotApplicable("diagram is disconnected".into()))?;
    match classify(d, &sd) {
        PositivityClass::Positive => Ok(g),
        PositivityClass::AlmostPositiveDiagram { case: Case::Case1, .. } => Ok(g),
        PositivityClass::AlmostPositiveDiagram { case: Case::Case2, .. } => Ok(g - 1),
        PositivityClass::Other { n_minus } => {
            Err(Error::NotApplicable(format!("{n_minus} negative crossings")))
        }
    }
}

pub fn rasmussen_with_formula(d: &Diagram) -> Result<(i64, Formula)> {
    if d.component_count() != 1 {
        return Err(Error::NotApplicable(format!("{} components, need a knot", d.component_count())));
    }
    let sd = seifert(d);
    let g = canonical_genus(d).map_err(|_| Error::NotApplicable("diagram is disconnected".into()))?;
    debug_assert!(g.is_integer());
    let two_g = 2 * g.to_integer();
    match classify(d, &sd) {
        PositivityClass::Positive => Ok((two_g, Formula::PositiveDiagram)),
        PositivityClass::AlmostPositiveDiagram { case: Case::Case1, .. } => {
            Ok((two_g, Formula::AlmostPositiveCase1))
        }
        PositivityClass::AlmostPositiveDiagram { case: Case::Case2, .. } => {
            Ok((two_g - 2, Formula::AlmostPositiveCase2))
        }
        PositivityClass::Other { n_minus } => {
            Err(Error::NotApplicable(format!("{n_minus} negative crossings")))
        }
    }
}

pub fn rasmussen_from_diagram(d: &Diagram) -> Result<i64> {
    rasmussen_with_formula(d).map(|(s, _)| s)
}

/// q-degree `2 g(D) + #components - 4` at which `KH^0` must vanish for a
/// case 1 diagram, or `None` when the check does not apply.
pub fn vanishing_degree(d: &Diagram) -> Option<i32> {
    let sd = seifert(d);
    match classify(d, &sd) {
        PositivityClass::AlmostPositiveDiagram { case: Case::Case1, .. } => {
            let g = canonical_genus(d).ok()?;
            let twice = (g * 2).to_integer() as i32;
            Some(twice + d.component_count() as i32 - 4)
        }
        _ => None,
    }
}

pub fn check_lemma_vanishing(d: &Diagram, t: &HomologyTable) -> Verdict {
    match vanishing_degree(d) {
        Some(j) => Verdict::from_bool(t.dim(0, j) == 0),
        None => Verdict::NotApplicable,
    }
}

/// `KH^{0,s-1}` and `KH^{0,s+1}` both nonzero.
pub fn check_support(s: i64, t: &HomologyTable) -> Verdict {
    let s = s as i32;
    Verdict::from_bool(t.dim(0, s - 1) >= 1 && t.dim(0, s + 1) >= 1)
}

/// For an almost positive knot diagram with `D₊` the all-positive diagram
/// after changing `p`: `2g(D₊) - 2 ≤ s ≤ 2g(D₊)` and `|s| ≤ 2 g₃`.
pub fn check_crossing_change_bounds(d: &Diagram) -> Verdict {
    crossing_change_bounds(d).map_or(Verdict::NotApplicable, |b| Verdict::from_bool(b.holds()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingChangeBounds {
    pub s: i64,
    pub s_positive: i64,
    pub genus: Ratio<i64>,
}

impl CrossingChangeBounds {
    pub fn holds(&self) -> bool {
        self.s_positive - 2 <= self.s
            && self.s <= self.s_positive
            && Ratio::from_integer(self.s.abs()) <= self.genus * 2
    }
}

pub fn crossing_change_bounds(d: &Diagram) -> Option<CrossingChangeBounds> {
    let PositivityClass::AlmostPositiveDiagram { negative_index, .. } = classify(d, &seifert(d)) else {
        return None;
    };
    if d.component_count() != 1 || !d.is_connected() {
        return None;
    }
    let positive = d.crossing_changed(negative_index).ok()?;
    let g_plus = canonical_genus(&positive).ok()?;
    Some(CrossingChangeBounds {
        s: rasmussen_from_diagram(d).ok()?,
        s_positive: 2 * g_plus.to_integer(),
        genus: genus_from_diagram(d).ok()?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub class: PositivityClass,
    pub n_plus: usize,
    pub n_minus: usize,
    pub components: usize,
    pub connected: bool,
    pub seifert_circles: usize,
    pub self_pair: bool,
    pub g3_d: Option<Ratio<i64>>,
    pub case: Option<Case>,
    pub g3_l: Option<Ratio<i64>>,
    pub s: Option<i64>,
    pub g4: Option<Ratio<i64>>,
    pub formula: Option<Formula>,
    pub jones_kh: Option<LaurentPolynomial>,
    pub jones_oracle: Option<LaurentPolynomial>,
    pub kh: Option<HomologyTable>,
    pub kh_raw: Option<HomologyTable>,
    /// `KH^0` support, reported for diagrams outside the formulas' scope.
    pub kh0_support_hint: Option<Vec<i32>>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }
}

/// Diagram-level fields only; no homology or Jones computations.
pub fn diagram_report(d: &Diagram) -> InvariantReport {
    let sd = seifert(d);
    let class = classify(d, &sd);
    let mut notes = Vec::new();
    if sd.has_self_pair() {
        notes.push("a crossing joins a Seifert circle to itself".to_string());
    }
    let genus = genus_from_diagram(d).ok();
    if genus.is_some() && d.component_count() > 1 {
        notes.push("genus formula assumes the link is non-split; only diagram connectedness was checked".into());
    }
    let (s, formula) = match rasmussen_with_formula(d) {
        Ok((s, f)) => (Some(s), Some(f)),
        Err(_) => (None, None),
    };
    if s.is_none() && d.component_count() > 1 {
        notes.push("s and g4 are only determined for knots".into());
    }
    InvariantReport {
        class,
        n_plus: d.n_plus(),
        n_minus: d.n_minus(),
        components: d.component_count(),
        connected: d.is_connected(),
        seifert_circles: sd.circle_count,
        self_pair: sd.has_self_pair(),
        g3_d: canonical_genus(d).ok(),
        case: class.case(),
        g3_l: genus,
        s,
        g4: s.map(|s| Ratio::new(s, 2)),
        formula,
        jones_kh: None,
        jones_oracle: None,
        kh: None,
        kh_raw: None,
        kh0_support_hint: None,
        checks: Vec::new(),
        notes,
    }
}

pub fn report(d: &Diagram, budget: &Budget) -> InvariantReport {
    let mut r = diagram_report(d);

    match kh_with_raw(d, budget.max_crossings) {
        Ok((raw, kh)) => {
            r.kh_raw = Some(raw);
            r.kh = Some(kh);
        }
        Err(e) => r.notes.push(format!("homology skipped: {e}")),
    }
    if let Some(kh) = &r.kh {
        match jones_from_kh(kh, d.component_count()) {
            Ok(v) => r.jones_kh = Some(v),
            Err(e) => r.notes.push(e.to_string()),
        }
    }
    match jones_oracle(d, budget.oracle_max) {
        Ok(v) => r.jones_oracle = Some(v),
        Err(e) => r.notes.push(format!("state sum skipped: {e}")),
    }

    let mut checks = Vec::new();
    checks.push(match (&r.kh, &r.jones_oracle) {
        (Some(kh), Some(v)) => Check::new(
            "jones_match",
            Verdict::from_bool(euler_matches(kh, v) && r.jones_kh.as_ref() == Some(v)),
            format!("homology: {}, state sum: {v}", r.jones_kh.as_ref().map_or("?".into(), |p| p.to_string())),
        ),
        _ => Check::new("jones_match", Verdict::NotApplicable, "one side not computed"),
    });

    if let Some(s) = r.s {
        checks.push(Check::new("s_parity", Verdict::from_bool(s % 2 == 0), format!("s = {s}")));
        let coherent = r.g3_l.map(|g| Ratio::from_integer(s) == g * 2);
        checks.push(Check::new(
            "genus_coherence",
            coherent.map_or(Verdict::NotApplicable, Verdict::from_bool),
            format!("s = {s}, 2 g3 = {}", r.g3_l.map_or("?".into(), |g| (g * 2).to_string())),
        ));
    }

    if let Some(kh) = &r.kh {
        match vanishing_degree(d) {
            Some(j) if r.connected => checks.push(Check::new(
                "kh0_vanishing",
                check_lemma_vanishing(d, kh),
                format!("dim KH^(0,{j}) = {}", kh.dim(0, j)),
            )),
            _ => checks.push(Check::new("kh0_vanishing", Verdict::NotApplicable, "needs a connected case 1 diagram")),
        }
        match r.s {
            Some(s) => checks.push(Check::new(
                "kh0_support",
                check_support(s, kh),
                format!(
                    "dim KH^(0,{}) = {}, dim KH^(0,{}) = {}",
                    s - 1,
                    kh.dim(0, s as i32 - 1),
                    s + 1,
                    kh.dim(0, s as i32 + 1)
                ),
            )),
            None => checks.push(Check::new("kh0_support", Verdict::NotApplicable, "s not determined")),
        }
        if matches!(r.class, PositivityClass::Other { .. }) && d.component_count() == 1 {
            r.kh0_support_hint = Some(kh.support(0));
        }
    }

    checks.push(match crossing_change_bounds(d) {
        Some(b) => Check::new(
            "crossing_change_bounds",
            Verdict::from_bool(b.holds()),
            format!("{} <= s = {} <= {}, |s| <= 2 g3 = {}", b.s_positive - 2, b.s, b.s_positive, b.genus * 2),
        ),
        None => Check::new("crossing_change_bounds", Verdict::NotApplicable, "needs an almost positive knot diagram"),
    });

    r.checks = checks;
    r
}
