//! Seifert circles, canonical genus and positivity classification.

use std::fmt;

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cube::{seifert_state_index, smooth};
use crate::diagram::{Diagram, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    /// Number of Seifert circles, crossing-free components included.
    pub circle_count: usize,
    /// Circle id (1-based) of each arc, indexed by `arc - 1`.
    pub circle_of_arc: Vec<u32>,
    /// Unordered circle pair joined by each crossing, stored as `(min, max)`.
    pub crossing_pairs: Vec<(u32, u32)>,
}

impl SeifertData {
    pub fn has_self_pair(&self) -> bool {
        self.crossing_pairs.iter().any(|&(p, q)| p == q)
    }
}

pub fn seifert(d: &Diagram) -> SeifertData {
    let (labels, k) = smooth(d, seifert_state_index(d));
    let circle_of_arc: Vec<u32> = labels.iter().map(|&c| c + 1).collect();
    let crossing_pairs = d
        .crossings()
        .iter()
        .map(|x| {
            let p = circle_of_arc[x.a() as usize - 1];
            let q = circle_of_arc[x.c() as usize - 1];
            (p.min(q), p.max(q))
        })
        .collect();
    SeifertData {
        circle_count: k + d.extra_unknots() as usize,
        circle_of_arc,
        crossing_pairs,
    }
}

/// Genus of the surface produced by Seifert's algorithm,
/// `(n - s + 2 - #components) / 2`.
pub fn canonical_genus(d: &Diagram) -> Result<Ratio<i64>> {
    if !d.is_connected() {
        return Err(Error::DisconnectedDiagram);
    }
    let s = seifert(d).circle_count as i64;
    let n = d.crossing_count() as i64;
    let l = d.component_count() as i64;
    Ok(Ratio::new(n - s + 2 - l, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// No positive crossing joins the same two Seifert circles as `p`.
    Case1,
    /// Some positive crossing joins the same two Seifert circles as `p`.
    Case2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PositivityClass {
    Positive,
    AlmostPositiveDiagram { negative_index: usize, case: Case },
    Other { n_minus: usize },
}

impl PositivityClass {
    pub fn case(&self) -> Option<Case> {
        match self {
            PositivityClass::AlmostPositiveDiagram { case, .. } => Some(*case),
            _ => None,
        }
    }
}

impl fmt::Display for PositivityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityClass::Positive => f.write_str("Positive"),
            PositivityClass::AlmostPositiveDiagram { .. } => f.write_str("AlmostPositive"),
            PositivityClass::Other { .. } => f.write_str("Other"),
        }
    }
}

pub fn classify(d: &Diagram, seifert: &SeifertData) -> PositivityClass {
    let negatives: Vec<usize> = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.sign == Sign::Negative)
        .map(|(i, _)| i)
        .collect();
    match negatives.as_slice() {
        [] => PositivityClass::Positive,
        &[p] => {
            let pair = seifert.crossing_pairs[p];
            let shared = seifert
                .crossing_pairs
                .iter()
                .enumerate()
                .any(|(i, &q)| i != p && q == pair);
            PositivityClass::AlmostPositiveDiagram {
                negative_index: p,
                case: if shared { Case::Case2 } else { Case::Case1 },
            }
        }
        many => PositivityClass::Other { n_minus: many.len() },
    }
}
