//! Independent oracles used by the integration tests.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;

use coxsub::{CoxeterSystem, Label};

/// Invariant factors from gcds of minors: `d_k / d_(k-1)` where `d_k` is
/// the gcd of all `k x k` minors. Expansion by cofactors, so tiny matrices
/// only.
pub fn minor_gcd_invariants(rows: &[Vec<i64>]) -> Vec<BigUint> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in combinations(r, k) {
            for cs in combinations(c, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(rows[i][j])).collect()).collect();
                g = g.gcd(&cofactor_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs().to_biguint().unwrap());
        prev = g;
    }
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<BigInt>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &m[0][j] * cofactor_det(&sub);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// Order of the group generated by the reflections of the geometric
/// representation on `gens`, by breadth-first enumeration of matrices
/// (rounded for hashing). `None` if more than `cap` elements appear.
pub fn reflection_group_order(sys: &CoxeterSystem, gens: &[usize], cap: usize) -> Option<usize> {
    let n = gens.len();
    let b = |i: usize, j: usize| -> f64 {
        match sys.label(gens[i], gens[j]) {
            Label::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
            Label::Infinite => -1.0,
        }
    };
    let reflections: Vec<Vec<f64>> = (0..n)
        .map(|s| {
            let mut m = vec![0.0; n * n];
            for col in 0..n {
                for row in 0..n {
                    let id = if row == col { 1.0 } else { 0.0 };
                    m[row * n + col] = id - if row == s { 2.0 * b(s, col) } else { 0.0 };
                }
            }
            m
        })
        .collect();
    let key = |m: &[f64]| -> Vec<i64> { m.iter().map(|x| (x * 1e6).round() as i64).collect() };
    let identity: Vec<f64> = (0..n * n).map(|i| if i % (n + 1) == 0 { 1.0 } else { 0.0 }).collect();
    let mut seen = HashSet::from([key(&identity)]);
    let mut frontier = vec![identity];
    while let Some(m) = frontier.pop() {
        for r in &reflections {
            let mut p = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    p[i * n + j] = (0..n).map(|k| r[i * n + k] * m[k * n + j]).sum();
                }
            }
            if seen.insert(key(&p)) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(p);
            }
        }
    }
    Some(seen.len())
}

/// Integer Tits representation of a right-angled Coxeter group, which is
/// faithful: two words are equal in the group iff their matrices agree.
pub fn tits_matrix(sys: &CoxeterSystem, word: &[usize]) -> Vec<i128> {
    let n = sys.len();
    let mut m: Vec<i128> = (0..n * n).map(|i| if i % (n + 1) == 0 { 1 } else { 0 }).collect();
    for &s in word {
        // s(x) = x - 2 B(e_s, x) e_s with 2B(e_s, e_t) = 2, 0 or -2.
        let row: Vec<i128> = (0..n)
            .map(|col| {
                (0..n)
                    .map(|t| {
                        let two_b = if t == s {
                            2
                        } else if sys.label(s, t) == Label::Finite(2) {
                            0
                        } else {
                            -2
                        };
                        two_b * m[t * n + col]
                    })
                    .sum()
            })
            .collect();
        for col in 0..n {
            m[s * n + col] -= row[col];
        }
    }
    m
}
