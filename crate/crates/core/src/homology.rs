//! Homology dimensions of the Khovanov complex.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_complex, ChainComplex};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::rank::rank_with_pivots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Unnormalized,
    Normalized { n_plus: usize, n_minus: usize },
}

/// Nonzero dimensions keyed by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub flavor: Flavor,
    dims: BTreeMap<(i32, i32), usize>,
}

impl HomologyTable {
    pub fn new(flavor: Flavor, dims: impl IntoIterator<Item = ((i32, i32), usize)>) -> Self {
        Self { flavor, dims: dims.into_iter().filter(|&(_, d)| d > 0).collect() }
    }

    pub fn dim(&self, i: i32, j: i32) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i32, i32, usize)> + '_ {
        self.dims.iter().map(|(&(i, j), &d)| (i, j, d))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self.flavor, Flavor::Normalized { .. })
    }

    /// q-degrees supported in homological degree `i`.
    pub fn support(&self, i: i32) -> Vec<i32> {
        self.dims.keys().filter(|k| k.0 == i).map(|k| k.1).collect()
    }

    /// Σ (-1)^i dim at each q-degree.
    pub fn euler_by_q(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &d) in &self.dims {
            let v = out.entry(j).or_insert(0i64);
            *v += if i % 2 == 0 { d as i64 } else { -(d as i64) };
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// Ranks of every nonzero block `d^{i,j}`. Each q-degree is an
/// independent complex and runs in parallel. Within one, `im d^{i-1}`
/// projects isomorphically onto the pivot rows of `d^{i-1}` and is killed
/// by `d^i`, so those columns are dropped from `d^i` before eliminating.
/// The result does not depend on scheduling.
pub fn differential_ranks(c: &ChainComplex) -> BTreeMap<(i32, i32), usize> {
    let mut by_q: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    for &(i, j) in c.dims().keys() {
        by_q.entry(j).or_default().push(i);
    }
    let mut work: Vec<(i32, Vec<i32>)> = by_q.into_iter().collect();
    // Largest complexes first for load balance.
    work.sort_by_key(|(j, is)| std::cmp::Reverse(is.iter().map(|&i| c.dim(i, *j)).sum::<usize>()));
    work.into_par_iter()
        .flat_map_iter(|(j, mut is)| {
            is.sort_unstable();
            let mut out = Vec::new();
            let mut prev: Option<(i32, Vec<u32>)> = None;
            for i in is {
                if c.dim(i + 1, j) == 0 {
                    prev = None;
                    continue;
                }
                let mut m = c.differential(i, j);
                if let Some((pi, pivots)) = prev.take() {
                    if pi + 1 == i {
                        for p in pivots {
                            m.columns[p as usize].clear();
                        }
                    }
                }
                let (r, pivots) = rank_with_pivots(&m);
                out.push(((i, j), r));
                prev = Some((i, pivots));
            }
            out
        })
        .collect()
}

pub fn homology_dims(c: &ChainComplex) -> HomologyTable {
    let ranks = differential_ranks(c);
    let r = |i: i32, j: i32| ranks.get(&(i, j)).copied().unwrap_or(0);
    HomologyTable::new(
        Flavor::Unnormalized,
        c.dims().iter().map(|(&(i, j), &dim)| ((i, j), dim - r(i, j) - r(i - 1, j))),
    )
}

/// Reindexes `H^{i,j}` as `KH^{i - n₋, j + n₊ - 2n₋}`.
pub fn normalize(t: &HomologyTable, n_plus: usize, n_minus: usize) -> Result<HomologyTable> {
    if t.is_normalized() {
        return Err(Error::DoubleNormalization);
    }
    let (np, nm) = (n_plus as i32, n_minus as i32);
    Ok(HomologyTable::new(
        Flavor::Normalized { n_plus, n_minus },
        t.dims.iter().map(|(&(i, j), &d)| ((i - nm, j + np - 2 * nm), d)),
    ))
}

/// Unnormalized and normalized homology of `d`.
pub fn kh_with_raw(d: &Diagram, max_crossings: usize) -> Result<(HomologyTable, HomologyTable)> {
    let c = build_complex(d, max_crossings)?;
    let raw = homology_dims(&c);
    let normalized = normalize(&raw, d.n_plus(), d.n_minus())?;
    Ok((raw, normalized))
}

pub fn kh(d: &Diagram, max_crossings: usize) -> Result<HomologyTable> {
    kh_with_raw(d, max_crossings).map(|(_, n)| n)
}
