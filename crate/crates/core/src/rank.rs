//! Exact rank of sparse integer matrices.
//!
//! Elimination is fraction-free: a unit pivot `p` updates a row by
//! `r - (a p) r_p`, any other pivot by `p r - a r_p` followed by division
//! by the row content. Both are invertible over the rationals, so the rank
//! over `Q` is preserved. Pivots are chosen by a Markowitz-style rule: the
//! column with the fewest entries, then the shortest row, preferring units.
//! Arithmetic runs in `i64` with overflow checks and restarts with
//! arbitrary-precision integers if any intermediate value overflows.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num::{BigInt, Integer, One, Signed, Zero};

/// Column-major sparse matrix; each column holds `(row, value)` pairs
/// sorted by row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        let c = &self.columns[col];
        match c.binary_search_by_key(&(row as u32), |e| e.0) {
            Ok(k) => c[k].1,
            Err(_) => 0,
        }
    }

    /// `self * other`, both column-major.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        let mut acc = std::collections::BTreeMap::new();
        for (col, entries) in other.columns.iter().enumerate() {
            acc.clear();
            for &(k, v) in entries {
                for &(r, w) in &self.columns[k as usize] {
                    *acc.entry(r).or_insert(0i64) += v * w;
                }
            }
            out.columns[col] = acc.iter().filter(|(_, &v)| v != 0).map(|(&r, &v)| (r, v)).collect();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|e| e.1 == 0))
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    rank_with_pivots(m).0
}

/// Rank together with the pivot rows. The image of `m` projects
/// isomorphically onto the coordinates of those rows, so the remaining
/// rows span a complement of the image.
pub fn rank_with_pivots(m: &SparseMatrix) -> (usize, Vec<u32>) {
    if m.rows == 0 || m.cols == 0 {
        return (0, Vec::new());
    }
    // Columns play the role of rows in the eliminator: rank(A) = rank(Aᵀ).
    let vectors: Vec<Vec<(u32, i64)>> = m
        .columns
        .iter()
        .map(|c| c.iter().copied().filter(|e| e.1 != 0).collect())
        .collect();
    match Eliminator::new(vectors.clone(), m.rows).run() {
        Some(r) => r,
        None => {
            let big = vectors
                .into_iter()
                .map(|v| v.into_iter().map(|(i, x)| (i, BigInt::from(x))).collect())
                .collect();
            Eliminator::new(big, m.rows).run().expect("bigint elimination cannot overflow")
        }
    }
}

trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `alpha * x - beta * y`, or `None` on overflow.
    fn combine(alpha: &Self, x: &Self, beta: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn one() -> Self;
    fn zero() -> Self;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn combine(alpha: &Self, x: &Self, beta: &Self, y: &Self) -> Option<Self> {
        alpha.checked_mul(*x)?.checked_sub(beta.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn one() -> Self {
        1
    }
    fn zero() -> Self {
        0
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn combine(alpha: &Self, x: &Self, beta: &Self, y: &Self) -> Option<Self> {
        Some(alpha * x - beta * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn one() -> Self {
        One::one()
    }
    fn zero() -> Self {
        Zero::zero()
    }
}

struct Eliminator<T> {
    vecs: Vec<Vec<(u32, T)>>,
    alive: Vec<bool>,
    holders: Vec<Vec<u32>>,
    count: Vec<u32>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
}

impl<T: Entry> Eliminator<T> {
    fn new(vecs: Vec<Vec<(u32, T)>>, width: usize) -> Self {
        let mut holders = vec![Vec::new(); width];
        let mut count = vec![0u32; width];
        for (r, v) in vecs.iter().enumerate() {
            for (c, _) in v {
                holders[*c as usize].push(r as u32);
                count[*c as usize] += 1;
            }
        }
        let heap = count
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(c, &k)| Reverse((k, c as u32)))
            .collect();
        Self { alive: vec![true; vecs.len()], vecs, holders, count, heap }
    }

    fn entry(&self, r: u32, c: u32) -> Option<&T> {
        let v = &self.vecs[r as usize];
        v.binary_search_by_key(&c, |e| e.0).ok().map(|k| &v[k].1)
    }

    fn bump(&mut self, c: u32, delta: i32) {
        let k = &mut self.count[c as usize];
        *k = (*k as i64 + delta as i64) as u32;
        if *k > 0 {
            self.heap.push(Reverse((*k, c)));
        }
    }

    fn run(mut self) -> Option<(usize, Vec<u32>)> {
        let mut rank = 0;
        let mut pivots = Vec::new();
        while let Some(Reverse((k, c))) = self.heap.pop() {
            if k == 0 || self.count[c as usize] != k {
                continue;
            }
            let mut rows = std::mem::take(&mut self.holders[c as usize]);
            rows.sort_unstable();
            rows.dedup();
            rows.retain(|&r| self.alive[r as usize] && self.entry(r, c).is_some());
            debug_assert_eq!(rows.len(), k as usize);

            let pivot_row = *rows
                .iter()
                .min_by_key(|&&r| (!self.entry(r, c).unwrap().is_unit(), self.vecs[r as usize].len()))
                .unwrap();
            rank += 1;
            pivots.push(c);
            let pivot_vec = std::mem::take(&mut self.vecs[pivot_row as usize]);
            self.alive[pivot_row as usize] = false;
            let p = pivot_vec[pivot_vec.binary_search_by_key(&c, |e| e.0).unwrap()].1.clone();

            for &r in &rows {
                if r != pivot_row {
                    self.eliminate(r, c, &p, &pivot_vec)?;
                }
            }
            for (col, _) in &pivot_vec {
                self.bump(*col, -1);
            }
            self.holders[c as usize] = Vec::new();
        }
        pivots.sort_unstable();
        Some((rank, pivots))
    }

    fn eliminate(&mut self, r: u32, c: u32, p: &T, pivot: &[(u32, T)]) -> Option<()> {
        let old = std::mem::take(&mut self.vecs[r as usize]);
        let a = old[old.binary_search_by_key(&c, |e| e.0).unwrap()].1.clone();
        let (alpha, beta) = if p.is_unit() { (T::one(), a.mul(p)?) } else { (p.clone(), a) };
        let zero = T::zero();
        let mut out = Vec::with_capacity(old.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        let mut touched: Vec<(u32, i32)> = Vec::new();
        while i < old.len() || j < pivot.len() {
            let ci = old.get(i).map_or(u32::MAX, |e| e.0);
            let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
            if ci < cj {
                let v = if alpha.is_unit() && alpha == T::one() {
                    old[i].1.clone()
                } else {
                    T::combine(&alpha, &old[i].1, &zero, &zero)?
                };
                out.push((ci, v));
                i += 1;
            } else if cj < ci {
                out.push((cj, T::combine(&zero, &zero, &beta, &pivot[j].1)?));
                touched.push((cj, 1));
                j += 1;
            } else {
                let v = T::combine(&alpha, &old[i].1, &beta, &pivot[j].1)?;
                if v.is_zero() {
                    touched.push((ci, -1));
                } else {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        if !alpha.is_unit() && !out.is_empty() {
            let g = out.iter().skip(1).fold(out[0].1.clone(), |g, e| g.gcd(&e.1));
            if !g.is_unit() {
                for e in out.iter_mut() {
                    e.1 = e.1.div_exact(&g);
                }
            }
        }
        self.vecs[r as usize] = out;
        for (col, delta) in touched {
            if delta > 0 {
                self.holders[col as usize].push(r);
            }
            self.bump(col, delta);
        }
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_dense(a: &[Vec<i64>]) -> SparseMatrix {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::zero(rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                if a[r][c] != 0 {
                    m.columns[c].push((r as u32, a[r][c]));
                }
            }
        }
        m
    }

    /// Independent rank: dense Gaussian elimination over exact rationals.
    fn dense_rank(a: &[Vec<i64>]) -> usize {
        use num::BigRational;
        let mut m: Vec<Vec<BigRational>> = a
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for k in 0..cols {
                        let t = &f * &m[rank][k];
                        m[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&from_dense(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(rank(&from_dense(&[vec![2, 3], vec![4, 5]])), 2);
        assert_eq!(rank(&from_dense(&[vec![2, 4], vec![3, 6]])), 1);
        assert_eq!(rank(&SparseMatrix::zero(3, 0)), 0);
        assert_eq!(rank(&SparseMatrix::zero(3, 4)), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // Entries near 2^62 force the i64 path to overflow.
        let big = 1i64 << 62;
        let a = vec![vec![big, big - 1, 3], vec![big - 3, big, 7], vec![5, 11, big - 5]];
        assert_eq!(rank(&from_dense(&a)), 3);
        let b = vec![vec![big, 2], vec![big, 2]];
        assert_eq!(rank(&from_dense(&b)), 1);
    }

    #[test]
    fn product_of_matrices() {
        let a = from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = from_dense(&[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.mul(&b), from_dense(&[vec![1, 0], vec![0, 1]]));
    }

    proptest! {
        #[test]
        fn agrees_with_dense_rational_rank(
            a in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 7), 0..9)
        ) {
            let sparse = if a.is_empty() { SparseMatrix::zero(0, 7) } else { from_dense(&a) };
            prop_assert_eq!(rank(&sparse), dense_rank(&a));
        }

        #[test]
        fn sparse_sign_matrices(
            entries in proptest::collection::vec((0u32..12, 0usize..10, prop::bool::ANY), 0..40)
        ) {
            let mut a = vec![vec![0i64; 10]; 12];
            for (r, c, s) in entries {
                a[r as usize][c] = if s { 1 } else { -1 };
            }
            prop_assert_eq!(rank(&from_dense(&a)), dense_rank(&a));
        }
    }
}
