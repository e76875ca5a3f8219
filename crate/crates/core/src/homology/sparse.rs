//! Sparse integer matrices and elimination routines for boundary maps.
//!
//! Invariant factors are found by eliminating unit pivots with checked
//! machine arithmetic; whatever is left over (or everything, on overflow)
//! goes through the dense Smith normal form.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};

use super::IntegerMatrix;

/// Column-major sparse matrix with machine-integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds from per-column `(row, value)` entries; repeated rows are
    /// summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (r, x) in c {
                    assert!(r < rows, "row index out of range");
                    *acc.entry(r).or_default() += x;
                }
                acc.into_iter().filter(|&(_, x)| x != 0).collect()
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, x) in c {
                cols[i].push((j, x));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns: cols }
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, x) in c {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    /// `self * other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Vec::with_capacity(other.cols);
        for c in &other.columns {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, b) in c {
                for &(i, a) in &self.columns[k] {
                    let e = acc.entry(i).or_default();
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            out.push(acc.into_iter().filter(|&(_, x)| x != 0).collect());
        }
        Some(SparseMatrix { rows: self.rows, cols: other.cols, columns: out })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Invariant factors over the integers, ones included; the length is the
    /// rank.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        match unit_elimination(self) {
            Some((ones, residual)) => {
                let mut out = vec![BigUint::one(); ones];
                out.extend(residual.invariant_factors());
                out
            }
            None => self.to_dense().invariant_factors(),
        }
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Rank over the prime field of order `p`.
    pub fn rank_mod(&self, p: u64) -> usize {
        let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
        let mut rows = Rows::new(self, |x| {
            let r = reduce(x);
            (r != 0).then_some(r)
        });
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(r) = rows.best_row_in_column(c, |_| true) else { continue };
            let inv = mod_inverse(rows.get(r, c), p);
            rows.eliminate(r, c, |a_ic| {
                let f = (a_ic as u128 * inv as u128 % p as u128) as u64;
                move |x_rj: u64, x_ij: u64| {
                    let sub = (f as u128 * x_rj as u128 % p as u128) as u64;
                    let v = (x_ij + p - sub) % p;
                    Some(v)
                }
            });
            rank += 1;
        }
        rank
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

/// Row-major working copy with a column occupancy index.
struct Rows<T> {
    rows: Vec<BTreeMap<usize, T>>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl<T: Copy + PartialEq + Default> Rows<T> {
    fn new(m: &SparseMatrix, convert: impl Fn(i64) -> Option<T>) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows];
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        for (j, c) in m.columns.iter().enumerate() {
            for &(i, x) in c {
                if let Some(v) = convert(x) {
                    rows[i].insert(j, v);
                    col_rows[j].insert(i);
                }
            }
        }
        Rows { rows, col_rows }
    }

    fn get(&self, r: usize, c: usize) -> T {
        self.rows[r][&c]
    }

    /// Shortest row with an acceptable entry in column `c`.
    fn best_row_in_column(&self, c: usize, accept: impl Fn(T) -> bool) -> Option<usize> {
        self.col_rows[c]
            .iter()
            .copied()
            .filter(|&r| accept(self.rows[r][&c]))
            .min_by_key(|&r| (self.rows[r].len(), r))
    }

    /// Clears column `c` using pivot row `r`, then deletes row `r` and
    /// column `c`. `update(a_ic)` yields the per-entry map
    /// `(a_rj, a_ij) -> new a_ij`; `None` from it aborts with `false`.
    fn eliminate<F, G>(&mut self, r: usize, c: usize, update: F) -> bool
    where
        F: Fn(T) -> G,
        G: Fn(T, T) -> Option<T>,
    {
        let pivot_row: Vec<(usize, T)> = self.rows[r].iter().map(|(&j, &x)| (j, x)).collect();
        let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let f = update(self.rows[i][&c]);
            for &(j, x_rj) in &pivot_row {
                let x_ij = self.rows[i].get(&j).copied().unwrap_or_default();
                let Some(v) = f(x_rj, x_ij) else { return false };
                if v == T::default() {
                    self.rows[i].remove(&j);
                    self.col_rows[j].remove(&i);
                } else {
                    self.rows[i].insert(j, v);
                    self.col_rows[j].insert(i);
                }
            }
        }
        for &(j, _) in &pivot_row {
            self.col_rows[j].remove(&r);
        }
        self.rows[r].clear();
        true
    }
}

/// Eliminates every available `±1` pivot. Returns the number eliminated and
/// the remaining submatrix, or `None` on arithmetic overflow.
fn unit_elimination(m: &SparseMatrix) -> Option<(usize, IntegerMatrix)> {
    let mut rows: Rows<i64> = Rows::new(m, |x| (x != 0).then_some(x));
    let mut ones = 0;
    loop {
        let mut progress = false;
        for c in 0..m.cols {
            let Some(r) = rows.best_row_in_column(c, |x| x == 1 || x == -1) else { continue };
            let p = rows.get(r, c);
            let ok = rows.eliminate(r, c, |a_ic| {
                let f = a_ic * p;
                move |x_rj: i64, x_ij: i64| x_ij.checked_sub(f.checked_mul(x_rj)?)
            });
            if !ok {
                return None;
            }
            ones += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| !rows.rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !rows.col_rows[j].is_empty()).collect();
    let mut residual = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
    for (a, &i) in live_rows.iter().enumerate() {
        for (b, &j) in live_cols.iter().enumerate() {
            if let Some(&x) = rows.rows[i].get(&j) {
                residual.set(a, b, BigInt::from(x));
            }
        }
    }
    Some((ones, residual))
}
