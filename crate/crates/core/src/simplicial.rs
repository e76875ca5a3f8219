//! Finite abstract simplicial complexes stored by their facets.
//!
//! Vertices are strings, kept in lexicographic order; a [`Simplex`] is a
//! strictly increasing list of vertex indices into that order. The full face
//! lattice is generated on first use and cached.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use crate::{Error, Result};

/// Strictly increasing vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Debug, Default)]
struct FaceLattice {
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

#[derive(Debug)]
pub struct SimplicialComplex {
    names: Vec<String>,
    name_index: HashMap<String, usize>,
    facets: Vec<Simplex>,
    lattice: OnceLock<FaceLattice>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            names: self.names.clone(),
            name_index: self.name_index.clone(),
            facets: self.facets.clone(),
            lattice: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

/// Outcome of the pseudo-manifold test, with each condition reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoManifoldReport {
    pub dim: isize,
    /// Every simplex is a face of a top-dimensional simplex.
    pub pure: bool,
    /// Every codimension-one simplex lies in exactly two top simplices.
    pub thin: bool,
    /// Top simplices are connected through shared codimension-one faces.
    pub strongly_connected: bool,
}

impl PseudoManifoldReport {
    pub fn holds(&self) -> bool {
        self.dim >= 0 && self.pure && self.thin && self.strongly_connected
    }
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    facets: Vec<Vec<String>>,
}

impl SimplicialComplex {
    /// Builds a complex from facet lists. Duplicates and facets contained in
    /// other facets are discarded.
    pub fn from_facets<F, S>(facets: &[F]) -> Result<Self>
    where
        F: AsRef<[S]>,
        S: AsRef<str>,
    {
        let mut vertex_set = BTreeSet::new();
        for f in facets {
            let f = f.as_ref();
            if f.is_empty() {
                return Err(Error::EmptyFacet);
            }
            for v in f {
                vertex_set.insert(v.as_ref().to_string());
            }
        }
        let names: Vec<String> = vertex_set.into_iter().collect();
        let name_index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut simplices = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s: Simplex = f.as_ref().iter().map(|v| name_index[v.as_ref()]).collect();
            s.sort_unstable();
            let len = s.len();
            s.dedup();
            if s.len() != len {
                return Err(Error::Validation(format!(
                    "facet {} repeats a vertex",
                    format_names(&names, &s)
                )));
            }
            simplices.push(s);
        }
        Ok(Self::from_indexed(names, simplices))
    }

    /// Builds from vertex names (any order, unique) and simplices given as
    /// indices into `names`. Vertices not covered by a simplex are dropped.
    pub(crate) fn from_indexed(names: Vec<String>, simplices: Vec<Simplex>) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut used = vec![false; names.len()];
        for s in &simplices {
            for &v in s {
                used[v] = true;
            }
        }
        let mut remap = vec![usize::MAX; names.len()];
        let mut new_names = Vec::new();
        for &old in &order {
            if used[old] {
                remap[old] = new_names.len();
                new_names.push(names[old].clone());
            }
        }
        let mut cleaned: Vec<Simplex> = simplices
            .into_iter()
            .filter(|s| !s.is_empty())
            .map(|s| {
                let mut t: Simplex = s.iter().map(|&v| remap[v]).collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        cleaned.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        cleaned.dedup();
        let mut facets: Vec<Simplex> = Vec::new();
        for s in cleaned {
            if !facets.iter().any(|f| is_subset(&s, f)) {
                facets.push(s);
            }
        }
        facets.sort();
        let name_index = new_names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        SimplicialComplex { names: new_names, name_index, facets, lattice: OnceLock::new() }
    }

    /// The complex with no simplices.
    pub fn empty() -> Self {
        Self::from_indexed(Vec::new(), Vec::new())
    }

    /// The full simplex on the given vertices, or its boundary.
    pub fn simplex<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        Self::from_facets(&[vertices])
    }

    /// Boundary of the simplex on `n + 2` vertices named `v0, v1, ...`:
    /// an `n`-sphere.
    pub fn sphere(n: usize) -> Self {
        let names: Vec<String> = (0..n + 2).map(|i| format!("v{i}")).collect();
        let facets: Vec<Simplex> = (0..n + 2).map(|skip| (0..n + 2).filter(|&v| v != skip).collect()).collect();
        Self::from_indexed(names, facets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawComplex = serde_json::from_str(text).map_err(Error::from_json)?;
        Self::from_facets(&raw.facets)
    }

    /// `{"facets": [...]}` with facets and their vertices sorted.
    pub fn to_json(&self) -> String {
        let raw = RawComplex { facets: self.facets.iter().map(|f| self.names_of(f)).collect() };
        serde_json::to_string_pretty(&raw).expect("complex serializes")
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.name_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Looks up a simplex given by vertex names; errors if any vertex is
    /// unknown or the set does not span a simplex.
    pub fn simplex_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Simplex> {
        let mut s = names.iter().map(|n| self.index_of(n.as_ref())).collect::<Result<Simplex>>()?;
        s.sort_unstable();
        s.dedup();
        if !self.contains(&s) {
            return Err(Error::NotASimplex(format_names(&self.names, &s)));
        }
        Ok(s)
    }

    pub fn names_of(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.names[v].clone()).collect()
    }

    /// Renders a simplex as `{a,b,c}`.
    pub fn format_simplex(&self, s: &[usize]) -> String {
        format_names(&self.names, s)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| {
            let dim = self.dim();
            if dim < 0 {
                return FaceLattice::default();
            }
            let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim as usize + 1];
            for f in &self.facets {
                let k = f.len();
                for mask in 1u64..(1u64 << k) {
                    let face: Simplex = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                    sets[face.len() - 1].insert(face);
                }
            }
            let by_dim: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
            let index = by_dim
                .iter()
                .map(|faces| faces.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
                .collect();
            FaceLattice { by_dim, index }
        })
    }

    /// All `k`-simplices in lexicographic order of their index lists.
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.lattice().by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    /// Position of `s` within [`faces`](Self::faces) of its dimension.
    pub fn face_index(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.lattice().index.get(s.len() - 1)?.get(s).copied()
    }

    /// Whether `s` (sorted indices) is a simplex; the empty simplex counts.
    pub fn contains(&self, s: &[usize]) -> bool {
        s.is_empty() && !self.is_empty() || self.face_index(s).is_some()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.lattice().by_dim.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.f_vector().iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Edges as index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces(1).iter().map(|e| (e[0], e[1])).collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.num_vertices();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in self.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// The subcomplex of simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Self {
        let mut simplices = Vec::new();
        for d in 0..=k {
            simplices.extend(self.faces(d).iter().cloned());
        }
        Self::from_indexed(self.names.clone(), simplices)
    }

    /// The link of `s`: all `t` disjoint from `s` with `s ∪ t` a simplex.
    /// The link of a facet is the empty complex.
    pub fn link(&self, s: &[usize]) -> Result<Self> {
        if !self.contains(s) {
            return Err(Error::NotASimplex(self.format_simplex(s)));
        }
        let simplices: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| is_subset(s, f))
            .map(|f| f.iter().copied().filter(|v| s.binary_search(v).is_err()).collect())
            .collect();
        Ok(Self::from_indexed(self.names.clone(), simplices))
    }

    pub fn link_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let s = self.simplex_from_names(names)?;
        self.link(&s)
    }

    /// Barycentric subdivision. The vertex standing for a simplex is named by
    /// its vertices in parentheses, e.g. `(a)` or `(a,b)`.
    pub fn barycentric_subdivision(&self) -> Self {
        let lattice = self.lattice();
        let mut names = Vec::new();
        let mut ids: HashMap<&[usize], usize> = HashMap::new();
        for faces in &lattice.by_dim {
            for s in faces {
                ids.insert(s.as_slice(), names.len());
                names.push(format!("({})", self.names_of(s).join(",")));
            }
        }
        let mut chains = Vec::new();
        for f in &self.facets {
            let mut chain = Vec::with_capacity(f.len());
            maximal_chains(f, &ids, &mut chain, &mut chains);
        }
        Self::from_indexed(names, chains)
    }

    /// A clique of the 1-skeleton that does not span a simplex, if any.
    pub fn missing_clique(&self) -> Option<Simplex> {
        let adj = self.adjacency();
        for k in 1..self.lattice().by_dim.len() {
            for s in self.faces(k) {
                let last = *s.last().unwrap();
                for v in (last + 1)..self.num_vertices() {
                    if s.iter().all(|&u| adj[u][v]) {
                        let mut t = s.clone();
                        t.push(v);
                        if !self.contains(&t) {
                            return Some(t);
                        }
                    }
                }
            }
        }
        None
    }

    /// Flag condition: every clique of the 1-skeleton spans a simplex.
    /// Checked inductively: every face extended by a vertex adjacent to all
    /// of it must again be a face.
    pub fn is_flag(&self) -> bool {
        self.missing_clique().is_none()
    }

    /// The flag complex (clique complex) of a graph on `names`.
    pub fn clique_complex<S: AsRef<str>>(names: &[S], edges: &[(usize, usize)]) -> Self {
        let n = names.len();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let mut cliques: Vec<Simplex> = (0..n).map(|v| vec![v]).collect();
        let mut frontier = cliques.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                let last = *s.last().unwrap();
                for v in (last + 1)..n {
                    if s.iter().all(|&u| adj[u][v]) {
                        let mut t = s.clone();
                        t.push(v);
                        next.push(t);
                    }
                }
            }
            cliques.extend(next.iter().cloned());
            frontier = next;
        }
        Self::from_indexed(names.iter().map(|s| s.as_ref().to_string()).collect(), cliques)
    }

    /// Top simplices sharing each codimension-one face, keyed by the face's
    /// position in `faces(n - 1)`. For `n = 0` the single key `0` stands for
    /// the empty face.
    fn ridge_incidence(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![(0..self.faces(0).len()).collect()];
        }
        let mut incidence = vec![Vec::new(); self.faces(n - 1).len()];
        for (i, s) in self.faces(n).iter().enumerate() {
            for skip in 0..s.len() {
                let ridge: Simplex = drop_index(s, skip);
                incidence[self.face_index(&ridge).unwrap()].push(i);
            }
        }
        incidence
    }

    pub fn pseudo_manifold_report(&self) -> PseudoManifoldReport {
        let dim = self.dim();
        if dim < 0 {
            return PseudoManifoldReport { dim, pure: false, thin: false, strongly_connected: false };
        }
        let n = dim as usize;
        let pure = self.facets.iter().all(|f| f.len() == n + 1);
        let incidence = self.ridge_incidence(n);
        let thin = incidence.iter().all(|c| c.len() == 2);
        let tops = self.faces(n).len();
        let mut neighbours = vec![Vec::new(); tops];
        for c in &incidence {
            for &a in c {
                for &b in c {
                    if a != b {
                        neighbours[a].push(b);
                    }
                }
            }
        }
        let mut seen = vec![false; tops];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(a) = queue.pop_front() {
            for &b in &neighbours[a] {
                if !seen[b] {
                    seen[b] = true;
                    reached += 1;
                    queue.push_back(b);
                }
            }
        }
        PseudoManifoldReport { dim, pure, thin, strongly_connected: reached == tops }
    }

    pub fn is_pseudo_manifold(&self) -> bool {
        self.pseudo_manifold_report().holds()
    }

    /// Tries to orient the top simplices so that the induced orientations
    /// cancel on every shared codimension-one face. Returns the signs
    /// (indexed like `faces(n)`) or `None` if propagation hits a
    /// contradiction.
    pub fn orientation(&self) -> Result<Option<Vec<i8>>> {
        if !self.is_pseudo_manifold() {
            return Err(Error::Precondition("complex is not a pseudo-manifold".into()));
        }
        let n = self.dim() as usize;
        let tops = self.faces(n);
        let incidence = self.ridge_incidence(n);
        // sign with which top simplex `i` meets ridge `r` in its boundary
        let incidence_sign = |i: usize, r: usize| -> i8 {
            if n == 0 {
                return 1;
            }
            let s = &tops[i];
            let ridge = &self.faces(n - 1)[r];
            let skip = (0..s.len()).find(|&k| ridge.binary_search(&s[k]).is_err()).unwrap();
            if skip % 2 == 0 {
                1
            } else {
                -1
            }
        };
        let mut ridges_of = vec![Vec::new(); tops.len()];
        for (r, c) in incidence.iter().enumerate() {
            for &i in c {
                ridges_of[i].push(r);
            }
        }
        let mut sign = vec![0i8; tops.len()];
        sign[0] = 1;
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for &r in &ridges_of[i] {
                let j = incidence[r].iter().copied().find(|&j| j != i).unwrap();
                let want = -sign[i] * incidence_sign(i, r) * incidence_sign(j, r);
                if sign[j] == 0 {
                    sign[j] = want;
                    queue.push_back(j);
                } else if sign[j] != want {
                    return Ok(None);
                }
            }
        }
        Ok(Some(sign))
    }

    pub fn is_orientable(&self) -> Result<bool> {
        Ok(self.orientation()?.is_some())
    }

    /// Checks that `signs` cancels on every codimension-one face.
    pub fn is_valid_orientation(&self, signs: &[i8]) -> bool {
        let Ok(n) = usize::try_from(self.dim()) else { return false };
        if n == 0 {
            return signs.iter().sum::<i8>() == 0;
        }
        let mut total = vec![0i32; self.faces(n - 1).len()];
        for (i, s) in self.faces(n).iter().enumerate() {
            for skip in 0..s.len() {
                let r = self.face_index(&drop_index(s, skip)).unwrap();
                let e = if skip % 2 == 0 { 1 } else { -1 };
                total[r] += e * signs[i] as i32;
            }
        }
        total.iter().all(|&t| t == 0)
    }
}

pub(crate) fn drop_index(s: &[usize], skip: usize) -> Simplex {
    s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect()
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn format_names(names: &[String], s: &[usize]) -> String {
    let parts: Vec<&str> = s.iter().map(|&v| names[v].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

fn maximal_chains(top: &[usize], ids: &HashMap<&[usize], usize>, chain: &mut Vec<usize>, out: &mut Vec<Simplex>) {
    chain.push(ids[top]);
    if top.len() == 1 {
        out.push(chain.clone());
    } else {
        for skip in 0..top.len() {
            maximal_chains(&drop_index(top, skip), ids, chain, out);
        }
    }
    chain.pop();
}

/// Splits a subdivision vertex name like `((a),(a,b))` into its top-level
/// parts `["(a)", "(a,b)"]`. Returns `None` if the name is not parenthesised
/// or the brackets do not balance.
pub fn split_subdivision_name(name: &str) -> Option<Vec<&str>> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&inner[start..]);
    if parts.iter().any(|p| p.is_empty()) {
        return None;
    }
    Some(parts)
}
