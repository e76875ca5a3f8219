//! Classification of irreducible finite Coxeter groups by diagram shape.

use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

use super::Label;

/// An irreducible finite Coxeter type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral group of order `2m`; ranks 2 with m = 3, 4 are reported as
    /// `A(2)` and `B(2)` instead.
    I2(u32),
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl FiniteType {
    pub fn rank(&self) -> usize {
        match *self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::H4 => 4,
            FiniteType::H3 => 3,
            FiniteType::I2(_) => 2,
        }
    }

    pub fn order(&self) -> BigUint {
        match *self {
            FiniteType::A(n) => factorial(n + 1),
            FiniteType::B(n) => (BigUint::one() << n) * factorial(n),
            FiniteType::D(n) => (BigUint::one() << (n - 1)) * factorial(n),
            FiniteType::E6 => BigUint::from(51_840u32),
            FiniteType::E7 => BigUint::from(2_903_040u32),
            FiniteType::E8 => BigUint::from(696_729_600u32),
            FiniteType::F4 => BigUint::from(1_152u32),
            FiniteType::H3 => BigUint::from(120u32),
            FiniteType::H4 => BigUint::from(14_400u32),
            FiniteType::I2(m) => BigUint::from(2 * m),
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Classifies one connected component of a Coxeter diagram.
///
/// `labels[i][j]` is the label between the `i`th and `j`th vertex of the
/// component; the diagram edges are the pairs with label at least 3.
/// Returns `None` when the component generates an infinite group.
pub(crate) fn classify_component(labels: &[Vec<Label>]) -> Option<FiniteType> {
    let n = labels.len();
    match n {
        0 => return None,
        1 => return Some(FiniteType::A(1)),
        2 => {
            return match labels[0][1] {
                Label::Infinite => None,
                Label::Finite(3) => Some(FiniteType::A(2)),
                Label::Finite(4) => Some(FiniteType::B(2)),
                Label::Finite(m) => Some(FiniteType::I2(m)),
            }
        }
        _ => {}
    }

    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            match labels[i][j] {
                Label::Infinite => return None,
                Label::Finite(m) if m >= 3 => {
                    adj[i].push((j, m));
                    adj[j].push((i, m));
                    edges += 1;
                }
                _ => {}
            }
        }
    }
    // connected by assumption, so a tree iff it has n - 1 edges
    if edges != n - 1 {
        return None;
    }
    if adj.iter().any(|a| a.len() > 3) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 3).collect();
    match branch.len() {
        0 => classify_path(&adj),
        1 => classify_branched(&adj, branch[0]),
        _ => None,
    }
}

fn classify_path(adj: &[Vec<(usize, u32)>]) -> Option<FiniteType> {
    let n = adj.len();
    let start = (0..n).find(|&v| adj[v].len() == 1)?;
    let mut path_labels = Vec::with_capacity(n - 1);
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        let next = adj[cur].iter().find(|&&(w, _)| w != prev);
        match next {
            Some(&(w, m)) => {
                path_labels.push(m);
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    let heavy: Vec<usize> = (0..path_labels.len()).filter(|&i| path_labels[i] != 3).collect();
    match heavy.as_slice() {
        [] => Some(FiniteType::A(n)),
        [i] => {
            let at_end = *i == 0 || *i == path_labels.len() - 1;
            match (path_labels[*i], at_end, n) {
                (4, true, _) => Some(FiniteType::B(n)),
                (4, false, 4) => Some(FiniteType::F4),
                (5, true, 3) => Some(FiniteType::H3),
                (5, true, 4) => Some(FiniteType::H4),
                _ => None,
            }
        }
        _ => None,
    }
}

fn classify_branched(adj: &[Vec<(usize, u32)>], centre: usize) -> Option<FiniteType> {
    if adj.iter().flatten().any(|&(_, m)| m != 3) {
        return None;
    }
    let mut arms: Vec<usize> = adj[centre]
        .iter()
        .map(|&(first, _)| {
            let (mut prev, mut cur, mut len) = (centre, first, 1);
            while let Some(&(w, _)) = adj[cur].iter().find(|&&(w, _)| w != prev) {
                prev = cur;
                cur = w;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, r] => Some(FiniteType::D(r + 3)),
        [1, 2, 2] => Some(FiniteType::E6),
        [1, 2, 3] => Some(FiniteType::E7),
        [1, 2, 4] => Some(FiniteType::E8),
        _ => None,
    }
}
