//! Dense integer matrices over arbitrary-precision integers and their Smith
//! normal form.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `d`, in order.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        diagonal_factors(&self.d)
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Smith normal form with the transforming matrices.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut w = Work::new(self.clone(), true);
        w.run();
        SmithForm { d: w.a, u: w.u.unwrap(), v: w.v.unwrap() }
    }

    /// Invariant factors (nonzero diagonal of the Smith form), including ones.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let mut w = Work::new(self.clone(), false);
        w.run();
        diagonal_factors(&w.a)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

fn diagonal_factors(d: &IntegerMatrix) -> Vec<BigUint> {
    (0..d.rows.min(d.cols))
        .map(|i| d.get(i, i))
        .take_while(|x| !x.is_zero())
        .map(|x| x.magnitude().clone())
        .collect()
}

struct Work {
    a: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
}

impl Work {
    fn new(a: IntegerMatrix, track: bool) -> Self {
        let (u, v) = if track {
            (Some(IntegerMatrix::identity(a.rows)), Some(IntegerMatrix::identity(a.cols)))
        } else {
            (None, None)
        };
        Work { a, u, v }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                m.data.swap(i * m.cols + c, j * m.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
            for r in 0..m.rows {
                m.data.swap(r * m.cols + i, r * m.cols + j);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                let s = &m.data[src * m.cols + c];
                if !s.is_zero() {
                    let add = s * q;
                    m.data[dst * m.cols + c] += add;
                }
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
            for r in 0..m.rows {
                let s = &m.data[r * m.cols + src];
                if !s.is_zero() {
                    let add = s * q;
                    m.data[r * m.cols + dst] += add;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
            for c in 0..m.cols {
                let x = &mut m.data[i * m.cols + c];
                *x = -std::mem::take(x);
            }
        }
    }

    fn smallest_in(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        cells
            .filter(|&(i, j)| !self.a.get(i, j).is_zero())
            .min_by(|&(i, j), &(k, l)| self.a.get(i, j).magnitude().cmp(self.a.get(k, l).magnitude()))
    }

    fn run(&mut self) {
        let (m, n) = (self.a.rows, self.a.cols);
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.smallest_in((t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a.get(t, t).clone();
                let mut clean = true;
                for i in (t + 1)..m {
                    let x = self.a.get(i, t);
                    if !x.is_zero() {
                        let q = -x.div_floor(&p);
                        self.add_row(i, t, &q);
                        clean &= self.a.get(i, t).is_zero();
                    }
                }
                for j in (t + 1)..n {
                    let x = self.a.get(t, j);
                    if !x.is_zero() {
                        let q = -x.div_floor(&p);
                        self.add_col(j, t, &q);
                        clean &= self.a.get(t, j).is_zero();
                    }
                }
                if !clean {
                    let cells = (t..m).map(|i| (i, t)).chain(((t + 1)..n).map(|j| (t, j)));
                    let (pi, pj) = self.smallest_in(cells).expect("pivot is nonzero");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let bad = ((t + 1)..m).find(|&i| ((t + 1)..n).any(|j| !self.a.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).sign() == Sign::Minus {
                self.negate_row(t);
            }
        }
    }
}
