//! The bigraded Khovanov chain complex over the rationals.
//!
//! A generator is a state `ε` plus a label in `{1, X}` for each of its
//! circles, encoded as a bit mask with bit `c` set when circle `c` carries
//! `X`. Its bidegree is `(|ε|, #1 - #X + |ε|)`. Within a block `(i, j)`
//! generators are ordered by state word, then by label mask.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cube::{edge_kind, edge_sign, resolve, smooth, EdgeKind, StateWord};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::rank::SparseMatrix;

pub const DEFAULT_MAX_CROSSINGS: usize = 18;
const MAX_CIRCLES: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    One,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub state: StateWord,
    pub circle_count: u32,
    /// Bit `c` set when circle `c` is labelled `X`.
    pub x_mask: u64,
}

impl Generator {
    pub fn homological_degree(&self) -> i32 {
        self.state.count_ones() as i32
    }

    pub fn q_degree(&self) -> i32 {
        let xs = self.x_mask.count_ones() as i32;
        self.circle_count as i32 - 2 * xs + self.homological_degree()
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.circle_count)
            .map(|c| if self.x_mask >> c & 1 == 1 { Label::X } else { Label::One })
            .collect()
    }
}

/// All 2ⁿ smoothings, stored compactly.
struct ResolvedCube {
    arcs: usize,
    crossing_circles: Vec<u8>,
    circle_of_arc: Vec<u8>,
    /// States of each weight in increasing word order.
    layers: Vec<Vec<StateWord>>,
    position: Vec<u32>,
}

impl ResolvedCube {
    fn new(d: &Diagram) -> Self {
        let n = d.crossing_count();
        let arcs = d.arc_count() as usize;
        let size = 1usize << n;
        let mut crossing_circles = vec![0u8; size];
        let mut circle_of_arc = vec![0u8; size * arcs.max(1)];
        if arcs > 0 {
            crossing_circles
                .par_iter_mut()
                .zip(circle_of_arc.par_chunks_mut(arcs))
                .enumerate()
                .for_each(|(w, (k, slot))| {
                    let (labels, count) = smooth(d, w as StateWord);
                    *k = count as u8;
                    for (s, l) in slot.iter_mut().zip(labels) {
                        *s = l as u8;
                    }
                });
        }
        let mut layers = vec![Vec::new(); n + 1];
        let mut position = vec![0u32; size];
        for w in 0..size as StateWord {
            let layer = &mut layers[w.count_ones() as usize];
            position[w as usize] = layer.len() as u32;
            layer.push(w);
        }
        Self { arcs, crossing_circles, circle_of_arc, layers, position }
    }

    fn arcs_of(&self, w: StateWord) -> &[u8] {
        &self.circle_of_arc[w as usize * self.arcs..(w as usize + 1) * self.arcs]
    }
}

/// Offsets of each state of a layer inside block `(i, j)`.
struct BlockIndex {
    offsets: Vec<u32>,
    dim: usize,
}

#[derive(Clone, Copy)]
enum Plan {
    Merge { s1: u8, s2: u8 },
    Split { src: u8, d1: u8, d2: u8 },
}

struct EdgePlan {
    target: StateWord,
    sign: i64,
    plan: Plan,
    map: Vec<u8>,
}

pub struct ChainComplex {
    diagram: Diagram,
    cube: ResolvedCube,
    extra: usize,
    binom: Vec<Vec<u64>>,
    dims: BTreeMap<(i32, i32), usize>,
}

pub fn build_complex(d: &Diagram, max_crossings: usize) -> Result<ChainComplex> {
    let n = d.crossing_count();
    if n > max_crossings {
        return Err(Error::ComplexityBudgetExceeded(format!(
            "{n} crossings exceed the cap of {max_crossings}"
        )));
    }
    if n >= 40 {
        return Err(Error::ComplexityBudgetExceeded(format!("{n} crossings cannot be enumerated")));
    }
    let extra = d.extra_unknots() as usize;
    if d.arc_count() as usize + extra > MAX_CIRCLES {
        return Err(Error::ComplexityBudgetExceeded("too many circles per state".into()));
    }
    let cube = ResolvedCube::new(d);
    let binom = binomials(MAX_CIRCLES + 1);
    let mut dims = BTreeMap::new();
    for (i, layer) in cube.layers.iter().enumerate() {
        for &w in layer {
            let k = cube.crossing_circles[w as usize] as usize + extra;
            for x in 0..=k {
                let j = k as i32 - 2 * x as i32 + i as i32;
                *dims.entry((i as i32, j)).or_insert(0) += binom[k][x] as usize;
            }
        }
    }
    Ok(ChainComplex { diagram: d.clone(), cube, extra, binom, dims })
}

fn binomials(n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 1]; n + 1];
    for a in 0..=n {
        t[a][0] = 1;
        for b in 1..=a {
            t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
        }
    }
    t
}

impl ChainComplex {
    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }

    pub fn dim(&self, i: i32, j: i32) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero chain group dimensions keyed by `(i, j)`.
    pub fn dims(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    fn circles(&self, w: StateWord) -> usize {
        self.cube.crossing_circles[w as usize] as usize + self.extra
    }

    fn x_count(&self, w: StateWord, i: i32, j: i32) -> Option<usize> {
        let k = self.circles(w) as i32;
        let twice = k + i - j;
        (twice >= 0 && twice % 2 == 0 && twice / 2 <= k).then_some((twice / 2) as usize)
    }

    fn block_index(&self, i: i32, j: i32) -> BlockIndex {
        let Some(layer) = usize::try_from(i).ok().and_then(|i| self.cube.layers.get(i)) else {
            return BlockIndex { offsets: Vec::new(), dim: 0 };
        };
        let mut offsets = Vec::with_capacity(layer.len());
        let mut dim = 0usize;
        for &w in layer {
            match self.x_count(w, i, j) {
                Some(x) => {
                    offsets.push(dim as u32);
                    dim += self.binom[self.circles(w)][x] as usize;
                }
                None => offsets.push(u32::MAX),
            }
        }
        BlockIndex { offsets, dim }
    }

    /// Colex rank of a mask among masks of equal popcount.
    fn mask_rank(&self, mut mask: u64) -> u64 {
        let mut r = 0;
        let mut t = 1;
        while mask != 0 {
            let p = mask.trailing_zeros() as usize;
            r += self.binom[p][t];
            t += 1;
            mask &= mask - 1;
        }
        r
    }

    pub fn generators(&self, i: i32, j: i32) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.dim(i, j));
        let Some(layer) = usize::try_from(i).ok().and_then(|i| self.cube.layers.get(i)) else {
            return out;
        };
        for &w in layer {
            if let Some(x) = self.x_count(w, i, j) {
                let k = self.circles(w) as u32;
                out.extend(masks(k, x as u32).map(|x_mask| Generator { state: w, circle_count: k, x_mask }));
            }
        }
        out
    }

    fn plans(&self, w: StateWord) -> Vec<EdgePlan> {
        let n = self.crossing_count();
        let from = self.cube.arcs_of(w);
        let k_from = self.cube.crossing_circles[w as usize] as usize;
        let mut rep = vec![0usize; k_from];
        for (arc, &c) in from.iter().enumerate().rev() {
            rep[c as usize] = arc;
        }
        let mut plans = Vec::new();
        for j in (0..n).filter(|&j| w >> j & 1 == 0) {
            let target = w | 1 << j;
            let to = self.cube.arcs_of(target);
            let k_to = self.cube.crossing_circles[target as usize] as usize;
            let mut map: Vec<u8> = rep.iter().map(|&arc| to[arc]).collect();
            map.extend((0..self.extra).map(|o| (k_to + o) as u8));
            let x = &self.diagram.crossings()[j];
            let (a, b, c) = (x.a() as usize - 1, x.b() as usize - 1, x.c() as usize - 1);
            let plan = if from[a] != from[c] {
                Plan::Merge { s1: from[a], s2: from[c] }
            } else {
                Plan::Split { src: from[a], d1: to[a], d2: to[b] }
            };
            plans.push(EdgePlan { target, sign: edge_sign(w, j) as i64, plan, map });
        }
        plans
    }

    /// Matrix of `d: C^{i,j} -> C^{i+1,j}`.
    pub fn differential(&self, i: i32, j: i32) -> SparseMatrix {
        let source = self.block_index(i, j);
        let target = self.block_index(i + 1, j);
        let mut m = SparseMatrix::zero(target.dim, source.dim);
        if source.dim == 0 || target.dim == 0 {
            return m;
        }
        let layer = &self.cube.layers[i as usize];
        let mut col = 0usize;
        let mut images: Vec<(u64, i64)> = Vec::with_capacity(4);
        for (pos, &w) in layer.iter().enumerate() {
            if source.offsets[pos] == u32::MAX {
                continue;
            }
            let x = self.x_count(w, i, j).unwrap();
            let k = self.circles(w) as u32;
            let plans = self.plans(w);
            for mask in masks(k, x as u32) {
                let entries = &mut m.columns[col];
                for p in &plans {
                    images.clear();
                    apply_plan(p, mask, &mut images);
                    let base = target.offsets[self.cube.position[p.target as usize] as usize];
                    for &(image, _) in &images {
                        let row = base as u64 + self.mask_rank(image);
                        entries.push((row as u32, p.sign));
                    }
                }
                entries.sort_unstable_by_key(|e| e.0);
                col += 1;
            }
        }
        debug_assert_eq!(col, source.dim);
        m
    }

    /// Applies the differential to one generator by resolving states
    /// directly; independent of the block matrices.
    pub fn apply(&self, g: &Generator) -> Vec<(Generator, i64)> {
        let d = &self.diagram;
        let from = resolve(d, g.state);
        let mut out = Vec::new();
        for j in (0..d.crossing_count()).filter(|&j| g.state >> j & 1 == 0) {
            let to = resolve(d, g.state | 1 << j);
            let sign = edge_sign(g.state, j) as i64;
            let kind = edge_kind(d, &from, &to, j);
            let k_cross = from.circle_count - self.extra;
            let carry = |c: usize| -> usize {
                if c >= k_cross {
                    to.circle_count - self.extra + (c - k_cross)
                } else {
                    let arc = from.circle_of_arc.iter().position(|&x| x as usize == c).unwrap();
                    to.circle_of_arc[arc] as usize
                }
            };
            let labels = g.labels();
            let mut rest = 0u64;
            let involved: Vec<u32> = match kind {
                EdgeKind::Merge { src1, src2, .. } => vec![src1, src2],
                EdgeKind::Split { src, .. } => vec![src],
            };
            for (c, l) in labels.iter().enumerate() {
                if !involved.contains(&(c as u32)) && *l == Label::X {
                    rest |= 1 << carry(c);
                }
            }
            let mk = |mask: u64| Generator { state: to.bits, circle_count: to.circle_count as u32, x_mask: mask };
            match kind {
                EdgeKind::Merge { src1, src2, dst } => {
                    match (labels[src1 as usize], labels[src2 as usize]) {
                        (Label::X, Label::X) => {}
                        (Label::One, Label::One) => out.push((mk(rest), sign)),
                        _ => out.push((mk(rest | 1 << dst), sign)),
                    }
                }
                EdgeKind::Split { src, dst1, dst2 } => match labels[src as usize] {
                    Label::X => out.push((mk(rest | 1 << dst1 | 1 << dst2), sign)),
                    Label::One => {
                        out.push((mk(rest | 1 << dst1), sign));
                        out.push((mk(rest | 1 << dst2), sign));
                    }
                },
            }
        }
        out
    }

    /// Checks `d ∘ d = 0` generator by generator via [`apply`](Self::apply).
    pub fn check_d_squared(&self) -> bool {
        self.dims.keys().all(|&(i, j)| {
            self.generators(i, j).par_iter().all(|g| {
                let mut acc: BTreeMap<Generator, i64> = BTreeMap::new();
                for (h, s) in self.apply(g) {
                    for (t, u) in self.apply(&h) {
                        *acc.entry(t).or_insert(0) += s * u;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }

    /// Checks that every differential term keeps the q-grading.
    pub fn check_grading(&self) -> bool {
        self.dims.keys().all(|&(i, j)| {
            self.generators(i, j).par_iter().all(|g| {
                g.q_degree() == j
                    && self
                        .apply(g)
                        .iter()
                        .all(|(h, _)| h.q_degree() == j && h.homological_degree() == i + 1)
            })
        })
    }
}

fn apply_plan(p: &EdgePlan, mask: u64, out: &mut Vec<(u64, i64)>) {
    let carry = |m: u64| {
        let mut r = 0u64;
        let mut m = m;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            r |= 1 << p.map[c];
            m &= m - 1;
        }
        r
    };
    match p.plan {
        Plan::Merge { s1, s2 } => {
            if mask >> s1 & 1 == 1 && mask >> s2 & 1 == 1 {
                return;
            }
            out.push((carry(mask), p.sign));
        }
        Plan::Split { src, d1, d2 } => {
            let base = carry(mask & !(1 << src));
            if mask >> src & 1 == 1 {
                out.push((base | 1 << d1 | 1 << d2, p.sign));
            } else {
                out.push((base | 1 << d1, p.sign));
                out.push((base | 1 << d2, p.sign));
            }
        }
    }
}

/// `k`-bit masks with `x` bits set, in increasing order.
fn masks(k: u32, x: u32) -> impl Iterator<Item = u64> {
    let first = if x == 0 { 0 } else { (1u64 << x) - 1 };
    let limit = if k >= 64 { u64::MAX } else { 1u64 << k };
    let mut next = (x <= k).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < limit && n > cur).then_some(n)
        };
        Some(cur)
    })
}
