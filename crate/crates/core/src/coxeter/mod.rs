//! Coxeter systems given by labelled graphs.
//!
//! A system is stored as a dense symmetric matrix of labels `m(v, w)`
//! indexed by generator insertion order. Finiteness of special subgroups is
//! decided by splitting the induced Coxeter diagram into irreducible
//! components and matching each against the finite-type catalog.

mod catalog;

pub use catalog::FiniteType;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

use crate::presentations::{Letter, Presentation, Word};
use crate::simplicial::SimplicialComplex;
use crate::{Error, Result};

/// The label `m(v, w)` on a pair of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "infinity"),
        }
    }
}

/// Label assumed for pairs that the input file does not mention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeDefault {
    #[default]
    Infinity,
    Two,
}

/// Order of a special subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// A spherical subset together with the order of the finite group it generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalSubset {
    pub subset: Vec<String>,
    pub order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    index: HashMap<String, usize>,
    labels: Vec<Vec<Label>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawLabel {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    u: String,
    v: String,
    m: RawLabel,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    default: EdgeDefault,
}

impl CoxeterSystem {
    /// Builds a system from generator names and explicit labels. Pairs not
    /// listed get the label implied by `default`.
    pub fn new<S, I>(vertices: &[S], edges: I, default: EdgeDefault) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (String, String, Label)>,
    {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate vertex `{name}`")));
            }
        }
        let fill = match default {
            EdgeDefault::Infinity => Label::Infinite,
            EdgeDefault::Two => Label::Finite(2),
        };
        let n = names.len();
        let mut labels = vec![vec![fill; n]; n];
        let mut explicit: Vec<Vec<bool>> = vec![vec![false; n]; n];
        for i in 0..n {
            labels[i][i] = Label::Finite(1);
        }
        for (u, v, m) in edges {
            let i = *index.get(&u).ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let j = *index.get(&v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            if i == j {
                return Err(Error::Validation(format!("self-label on `{u}`")));
            }
            if let Label::Finite(k) = m {
                if k < 2 {
                    return Err(Error::Validation(format!("label {k} < 2 on pair ({u}, {v})")));
                }
            }
            if explicit[i][j] && labels[i][j] != m {
                return Err(Error::Validation(format!(
                    "asymmetric or conflicting labels on pair ({u}, {v}): {} vs {m}",
                    labels[i][j]
                )));
            }
            explicit[i][j] = true;
            explicit[j][i] = true;
            labels[i][j] = m;
            labels[j][i] = m;
        }
        Ok(CoxeterSystem { names, index, labels })
    }

    /// The right-angled system whose labelled graph has the given edges
    /// (label 2) and no relation between other pairs.
    pub fn right_angled<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        Self::new(
            vertices,
            edges
                .iter()
                .map(|(u, v)| (u.as_ref().to_string(), v.as_ref().to_string(), Label::Finite(2))),
            EdgeDefault::Infinity,
        )
    }

    /// The right-angled system whose nerve is the flag complex `k`.
    pub fn from_flag_complex(k: &SimplicialComplex) -> Result<Self> {
        if !k.is_flag() {
            return Err(Error::Precondition("complex is not flag".into()));
        }
        let edges: Vec<(String, String)> = k
            .faces(1)
            .iter()
            .map(|s| (k.vertex_name(s[0]).to_string(), k.vertex_name(s[1]).to_string()))
            .collect();
        Self::right_angled(k.vertex_names(), &edges)
    }

    /// Parses the JSON document format
    /// `{"vertices": [...], "edges": [{"u","v","m"}...], "default": "infinity"|"two"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSystem = serde_json::from_str(text).map_err(Error::from_json)?;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for e in raw.edges {
            let m = match e.m {
                RawLabel::Int(k) if k >= 2 && k <= u32::MAX as i64 => Label::Finite(k as u32),
                RawLabel::Int(k) => {
                    return Err(Error::Validation(format!(
                        "label {k} < 2 on pair ({}, {})",
                        e.u, e.v
                    )))
                }
                RawLabel::Text(t) if t == "infinity" => Label::Infinite,
                RawLabel::Text(t) => {
                    return Err(Error::Validation(format!(
                        "label `{t}` on pair ({}, {}) is neither an integer nor \"infinity\"",
                        e.u, e.v
                    )))
                }
            };
            edges.push((e.u, e.v, m));
        }
        Self::new(&raw.vertices, edges, raw.default)
    }

    /// Accepts either a system document or a complex document
    /// `{"facets": ...}`, the latter read as the right-angled system of the
    /// complex (which must be flag).
    pub fn load(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(Error::from_json)?;
        if value.get("facets").is_some() {
            Self::from_flag_complex(&SimplicialComplex::from_json(text)?)
        } else {
            Self::from_json(text)
        }
    }

    /// Canonical JSON: default "infinity", every finite label listed once in
    /// generator order.
    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if let Label::Finite(m) = self.labels[i][j] {
                    edges.push(RawEdge {
                        u: self.names[i].clone(),
                        v: self.names[j].clone(),
                        m: RawLabel::Int(m as i64),
                    });
                }
            }
        }
        let raw = RawSystem { vertices: self.names.clone(), edges, default: EdgeDefault::Infinity };
        serde_json::to_string_pretty(&raw).expect("system serializes")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Resolves a list of generator names to sorted, deduplicated indices.
    pub fn resolve<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let mut out = names.iter().map(|n| self.index_of(n.as_ref())).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i][j]
    }

    pub fn is_right_angled(&self) -> bool {
        self.first_non_right_angle().is_none()
    }

    fn first_non_right_angle(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if !matches!(self.labels[i][j], Label::Finite(2) | Label::Infinite) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub(crate) fn require_right_angled(&self) -> Result<()> {
        match self.first_non_right_angle() {
            None => Ok(()),
            Some((i, j)) => Err(Error::NotRightAngled(
                self.names[i].clone(),
                self.names[j].clone(),
                self.labels[i][j].to_string(),
            )),
        }
    }

    /// True when generators `i` and `j` commute (label 2).
    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.labels[i][j] == Label::Finite(2)
    }

    /// Edges of the labelled graph `K^1`: pairs with a finite label.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.labels[i][j].is_finite() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Splits `subset` into irreducible components of its Coxeter diagram
    /// (edges are pairs with label >= 3, including infinity) and classifies
    /// each. `None` means the special subgroup is infinite.
    pub fn classify(&self, subset: &[usize]) -> Option<Vec<FiniteType>> {
        let mut seen = vec![false; subset.len()];
        let mut types = Vec::new();
        for start in 0..subset.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let a = subset[comp[k]];
                for (pos, &b) in subset.iter().enumerate() {
                    if !seen[pos] && self.labels[a][b] != Label::Finite(2) {
                        seen[pos] = true;
                        comp.push(pos);
                    }
                }
                k += 1;
            }
            let labels: Vec<Vec<Label>> = comp
                .iter()
                .map(|&p| comp.iter().map(|&q| self.labels[subset[p]][subset[q]]).collect())
                .collect();
            types.push(catalog::classify_component(&labels)?);
        }
        Some(types)
    }

    /// Whether the special subgroup generated by `subset` (indices) is finite.
    pub fn is_spherical(&self, subset: &[usize]) -> bool {
        self.classify(subset).is_some()
    }

    /// Name-based form of [`is_spherical`](Self::is_spherical).
    pub fn is_spherical_names<S: AsRef<str>>(&self, subset: &[S]) -> Result<bool> {
        Ok(self.is_spherical(&self.resolve(subset)?))
    }

    pub fn special_subgroup_order(&self, subset: &[usize]) -> GroupOrder {
        match self.classify(subset) {
            Some(types) => {
                GroupOrder::Finite(types.iter().fold(BigUint::one(), |acc, t| acc * t.order()))
            }
            None => GroupOrder::Infinite,
        }
    }

    pub fn special_subgroup_order_names<S: AsRef<str>>(&self, subset: &[S]) -> Result<GroupOrder> {
        Ok(self.special_subgroup_order(&self.resolve(subset)?))
    }

    pub fn spherical_subset(&self, subset: &[usize]) -> Option<SphericalSubset> {
        let order = self.special_subgroup_order(subset).finite()?.clone();
        let mut names: Vec<String> = subset.iter().map(|&i| self.names[i].clone()).collect();
        names.sort();
        Some(SphericalSubset { subset: names, order })
    }

    /// All spherical subsets (as sorted index lists), including the empty
    /// set, grown upward from smaller spherical sets. Spherical subsets are
    /// closed under taking subsets, so extending only by larger indices
    /// reaches each of them exactly once.
    pub fn spherical_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                let lo = s.last().map_or(0, |&m| m + 1);
                for v in lo..n {
                    if s.iter().any(|&u| !self.labels[u][v].is_finite()) {
                        continue;
                    }
                    let mut t = s.clone();
                    t.push(v);
                    if self.is_spherical(&t) {
                        next.push(t);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// The Coxeter presentation: `v^2` for each generator and `(vw)^m` for
    /// each finite label; infinite labels contribute nothing.
    pub fn presentation(&self) -> Presentation {
        let mut relators = Vec::new();
        for i in 0..self.len() {
            relators.push(Word::from_letters(vec![Letter::gen(i), Letter::gen(i)]));
        }
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if let Label::Finite(m) = self.labels[i][j] {
                    let mut letters = Vec::with_capacity(2 * m as usize);
                    for _ in 0..m {
                        letters.push(Letter::gen(i));
                        letters.push(Letter::gen(j));
                    }
                    relators.push(Word::from_letters(letters));
                }
            }
        }
        Presentation::new(self.names.clone(), relators).expect("relators use listed generators")
    }
}
