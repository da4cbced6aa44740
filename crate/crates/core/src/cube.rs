//! The cube of resolutions.
//!
//! A state is an `n`-bit word; bit `j` is the smoothing chosen at crossing
//! `j` (crossing order = PD token order). At `X(a,b,c,d)` the 0-smoothing
//! joins arcs `a,b` and `c,d`, the 1-smoothing joins `a,d` and `b,c`.
//! Circles are numbered by their smallest arc; crossing-free components
//! follow as the last circles.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Sign};
use crate::union_find::UnionFind;

pub type StateWord = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub bits: StateWord,
    pub circle_count: usize,
    /// Circle of each arc, indexed by `arc - 1`.
    pub circle_of_arc: Vec<u32>,
}

impl State {
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn circle_of(&self, arc: u32) -> u32 {
        self.circle_of_arc[arc as usize - 1]
    }
}

/// Circles of the smoothing `bits`: per-arc circle ids and the number of
/// circles that meet a crossing (crossing-free components excluded).
pub(crate) fn smooth(d: &Diagram, bits: StateWord) -> (Vec<u32>, usize) {
    let mut uf = UnionFind::new(d.arc_count() as usize);
    for (j, x) in d.crossings().iter().enumerate() {
        let [a, b, c, e] = x.arcs.map(|arc| arc as usize - 1);
        if bits >> j & 1 == 0 {
            uf.union(a, b);
            uf.union(c, e);
        } else {
            uf.union(a, e);
            uf.union(b, c);
        }
    }
    uf.labels()
}

pub fn resolve(d: &Diagram, bits: StateWord) -> State {
    debug_assert!(d.crossing_count() == 64 || bits >> d.crossing_count() == 0);
    let (circle_of_arc, k) = smooth(d, bits);
    State {
        bits,
        circle_count: k + d.extra_unknots() as usize,
        circle_of_arc,
    }
}

/// Oriented resolution: 0 at positive crossings, 1 at negative ones.
pub fn seifert_state_index(d: &Diagram) -> StateWord {
    d.crossings()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.sign == Sign::Negative)
        .fold(0, |w, (j, _)| w | 1 << j)
}

/// `(-1)^l` where `l` counts the 1-bits of `bits` before position `j`.
pub fn edge_sign(bits: StateWord, j: usize) -> i8 {
    let before = bits & ((1u64 << j) - 1);
    if before.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Merge { src1: u32, src2: u32, dst: u32 },
    Split { src: u32, dst1: u32, dst2: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub from: StateWord,
    pub to: StateWord,
    pub position: usize,
    pub kind: EdgeKind,
    pub sign: i8,
}

/// Classifies the edge flipping bit `j` of `from` (which must be 0) given
/// both resolved endpoints. Circle ids refer to each endpoint's numbering.
pub fn edge_kind(d: &Diagram, from: &State, to: &State, j: usize) -> EdgeKind {
    let x = &d.crossings()[j];
    let left = from.circle_of(x.a());
    let right = from.circle_of(x.c());
    if left != right {
        let (src1, src2) = (left.min(right), left.max(right));
        EdgeKind::Merge { src1, src2, dst: to.circle_of(x.a()) }
    } else {
        let (p, q) = (to.circle_of(x.a()), to.circle_of(x.b()));
        EdgeKind::Split { src: left, dst1: p.min(q), dst2: p.max(q) }
    }
}

/// Every cube edge, ordered by (source word, flipped position).
pub fn edges(d: &Diagram) -> Vec<CubeEdge> {
    let n = d.crossing_count();
    assert!(n < 31, "eager edge list is only meant for small diagrams");
    let states: Vec<State> = (0..1u64 << n).map(|w| resolve(d, w)).collect();
    let mut out = Vec::with_capacity(n << n.saturating_sub(1));
    for from in &states {
        for j in (0..n).filter(|&j| from.bits >> j & 1 == 0) {
            let to = &states[(from.bits | 1 << j) as usize];
            out.push(CubeEdge {
                from: from.bits,
                to: to.bits,
                position: j,
                kind: edge_kind(d, from, to, j),
                sign: edge_sign(from.bits, j),
            });
        }
    }
    out
}

/// Renders a state word as `ε₁ε₂…εₙ`, first crossing first.
pub fn word_string(bits: StateWord, n: usize) -> String {
    (0..n).map(|j| if bits >> j & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_word(s: &str) -> StateWord {
    s.chars().enumerate().filter(|&(_, c)| c == '1').fold(0, |w, (j, _)| w | 1 << j)
}
