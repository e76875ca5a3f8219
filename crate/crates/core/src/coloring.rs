//! Graph colourings and the subgroups and presentations they induce on
//! right-angled Coxeter groups.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::coxeter::CoxeterSystem;
use crate::presentations::{Letter, Presentation, Word};
use crate::simplicial::{split_subdivision_name, SimplicialComplex};
use crate::{Error, Result};

/// Exhaustive search is used up to this many vertices...
pub const EXACT_VERTEX_LIMIT: usize = 25;
/// ...and this many colours; larger instances fall back to greedy.
pub const EXACT_COLOUR_LIMIT: usize = 6;

/// A simple graph on named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = names.len();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u != v {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        Graph { names, adj }
    }

    /// The 1-skeleton of a complex.
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        Self::new(k.vertex_names().to_vec(), &k.edges())
    }

    /// Pairs of generators with a finite label, in system order.
    pub fn from_system(sys: &CoxeterSystem) -> Self {
        Self::new(sys.names().to_vec(), &sys.edges())
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        Self::new((0..n).map(|i| format!("k{i}")).collect(), &edges)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&u| self.adj[v][u])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| ((i + 1)..self.len()).filter(move |&j| self.adj[i][j]).map(move |j| (i, j))).collect()
    }
}

/// Assignment of a colour (a small integer) to each vertex name.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coloring {
    colours: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawColoring {
    classes: BTreeMap<String, Vec<String>>,
}

impl Coloring {
    pub fn new(colours: BTreeMap<String, usize>) -> Self {
        Coloring { colours }
    }

    /// Colouring of `names[i]` by `colour[i]`.
    pub fn from_vec(names: &[String], colour: &[usize]) -> Self {
        Coloring { colours: names.iter().cloned().zip(colour.iter().copied()).collect() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawColoring = serde_json::from_str(text).map_err(Error::from_json)?;
        let mut colours = BTreeMap::new();
        for (key, members) in raw.classes {
            let c: usize = key.parse().map_err(|_| Error::Validation(format!("colour key `{key}` is not a number")))?;
            for m in members {
                if colours.insert(m.clone(), c).is_some() {
                    return Err(Error::Validation(format!("vertex `{m}` has two colours")));
                }
            }
        }
        Ok(Coloring { colours })
    }

    /// `{"classes": {"0": [...], ...}}` with classes in numeric order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"classes\": {");
        let classes = self.classes();
        for (i, (c, members)) in classes.iter().enumerate() {
            let list = serde_json::to_string(members).expect("names serialize");
            out += &format!("{}\n    \"{c}\": {list}", if i == 0 { "" } else { "," });
        }
        out += if classes.is_empty() { "}\n}" } else { "\n  }\n}" };
        out
    }

    pub fn colour_of(&self, name: &str) -> Result<usize> {
        self.colours.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Distinct colours in increasing order.
    pub fn colours(&self) -> Vec<usize> {
        self.colours.values().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn num_colours(&self) -> usize {
        self.colours().len()
    }

    /// Members of each colour class, sorted by name.
    pub fn classes(&self) -> BTreeMap<usize, Vec<String>> {
        let mut out: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (n, &c) in &self.colours {
            out.entry(c).or_default().push(n.clone());
        }
        out
    }

    /// Colours of the graph's vertices in graph order.
    pub fn on_graph(&self, g: &Graph) -> Result<Vec<usize>> {
        g.names().iter().map(|n| self.colour_of(n)).collect()
    }

    /// Every vertex is coloured and adjacent vertices differ.
    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        let col = self.on_graph(g)?;
        for (u, v) in g.edges() {
            if col[u] == col[v] {
                return Err(Error::ImproperColoring(g.names[u].clone(), g.names[v].clone(), col[u]));
            }
        }
        Ok(())
    }

    pub fn check_proper_on_system(&self, sys: &CoxeterSystem) -> Result<()> {
        self.check_proper(&Graph::from_system(sys))
    }

    /// The least-named vertex of each colour class.
    pub fn base_points(&self) -> BTreeMap<usize, String> {
        self.classes().into_iter().map(|(c, m)| (c, m[0].clone())).collect()
    }
}

/// Result of a colouring search. `exact` is false when the instance was too
/// large for exhaustive search, in which case a missing colouring is not a
/// proof that none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSearch {
    pub coloring: Option<Coloring>,
    pub exact: bool,
}

fn available(g: &Graph, colour: &[usize], v: usize, c: usize) -> bool {
    g.neighbours(v).all(|u| u >= v || colour[u] != c)
}

/// Backtracking over vertices in graph order; each vertex may use colours
/// up to one more than the largest used so far, so every colouring is
/// visited once up to renaming colours. `visit` returns false to stop.
fn backtrack(g: &Graph, k: usize, v: usize, max_used: usize, colour: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if v == g.len() {
        return visit(colour);
    }
    let limit = if v == 0 { 1 } else { (max_used + 2).min(k) };
    for c in 0..limit {
        if available(g, colour, v, c) {
            colour[v] = c;
            let next_max = if v == 0 { c } else { max_used.max(c) };
            if !backtrack(g, k, v + 1, next_max, colour, visit) {
                return false;
            }
        }
    }
    true
}

/// Every proper colouring with at most `k` colours, up to renaming colours
/// (colours appear in order of first use along the vertex order).
pub fn all_colorings(g: &Graph, k: usize) -> Vec<Coloring> {
    let mut out = Vec::new();
    if k == 0 {
        if g.is_empty() {
            out.push(Coloring::default());
        }
        return out;
    }
    let mut colour = vec![usize::MAX; g.len()];
    backtrack(g, k, 0, 0, &mut colour, &mut |c| {
        out.push(Coloring::from_vec(g.names(), c));
        true
    });
    out
}

fn greedy(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let mut colour = vec![usize::MAX; g.len()];
    for v in 0..g.len() {
        colour[v] = (0..k).find(|&c| available(g, &colour, v, c))?;
    }
    Some(colour)
}

/// A proper colouring with at most `k` colours.
pub fn exact_coloring(g: &Graph, k: usize) -> ColoringSearch {
    if g.len() > EXACT_VERTEX_LIMIT || k > EXACT_COLOUR_LIMIT {
        return ColoringSearch { coloring: greedy(g, k).map(|c| Coloring::from_vec(g.names(), &c)), exact: false };
    }
    if k == 0 {
        return ColoringSearch { coloring: g.is_empty().then(Coloring::default), exact: true };
    }
    let mut found = None;
    let mut colour = vec![usize::MAX; g.len()];
    backtrack(g, k, 0, 0, &mut colour, &mut |c| {
        found = Some(c.to_vec());
        false
    });
    ColoringSearch { coloring: found.map(|c| Coloring::from_vec(g.names(), &c)), exact: true }
}

/// Smallest `k` admitting a colouring, with a witness. `exact` is false if
/// any step fell back to greedy search.
pub fn chromatic_number(g: &Graph) -> (usize, Coloring, bool) {
    let mut exact = true;
    for k in 0.. {
        let s = exact_coloring(g, k);
        exact &= s.exact;
        if let Some(c) = s.coloring {
            return (k, c, exact);
        }
    }
    unreachable!("every finite graph has a colouring")
}

/// Colours each vertex of a barycentric subdivision by the dimension of the
/// simplex it stands for.
pub fn coloring_by_dimension(k: &SimplicialComplex) -> Result<Coloring> {
    coloring_by_dimension_of_names(k.vertex_names())
}

/// As [`coloring_by_dimension`], reading dimensions off vertex names such
/// as `(a,b)`.
pub fn coloring_by_dimension_of_names(names: &[String]) -> Result<Coloring> {
    let mut colours = BTreeMap::new();
    for name in names {
        let parts = split_subdivision_name(name).ok_or_else(|| Error::NotASubdivision(name.clone()))?;
        colours.insert(name.clone(), parts.len() - 1);
    }
    Ok(Coloring { colours })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub colours: (usize, usize),
    /// Some edge joins the two colours.
    pub adjacent: bool,
    /// The subgraph induced on the two colour classes is connected.
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub vertex: String,
    /// Colours missing from the closed neighbourhood.
    pub missing: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub pairs: Vec<PairReport>,
    pub stars: Vec<StarReport>,
}

impl ColoringReport {
    /// Every two colours are adjacent somewhere.
    pub fn all_pairs_adjacent(&self) -> bool {
        self.pairs.iter().all(|p| p.adjacent)
    }

    /// Every two-colour subgraph is connected.
    pub fn all_pairs_connected(&self) -> bool {
        self.pairs.iter().all(|p| p.connected)
    }

    /// Every vertex sees all colours in its closed neighbourhood.
    pub fn star_condition(&self) -> bool {
        self.stars.iter().all(|s| s.missing.is_empty())
    }

    pub fn star_failures(&self) -> Vec<&str> {
        self.stars.iter().filter(|s| !s.missing.is_empty()).map(|s| s.vertex.as_str()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for p in &self.pairs {
            out += &format!("pair {} {}: adjacent={} connected={}\n", p.colours.0, p.colours.1, p.adjacent, p.connected);
        }
        let fails = self.star_failures();
        out += &format!(
            "all_pairs_adjacent={} all_pairs_connected={} star_condition={}",
            self.all_pairs_adjacent(),
            self.all_pairs_connected(),
            self.star_condition()
        );
        if !fails.is_empty() {
            out += &format!(" star_failures={}", fails.join(","));
        }
        out.push('\n');
        out
    }
}

fn is_connected(g: &Graph, members: &[usize]) -> bool {
    let Some(&first) = members.first() else { return true };
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    let mut seen = BTreeSet::from([first]);
    let mut queue = VecDeque::from([first]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbours(v) {
            if inside.contains(&u) && seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    seen.len() == members.len()
}

/// Pairwise adjacency and connectivity of colour classes, and the colours
/// missing from each vertex's star, on the graph of finite labels.
pub fn coloring_report(sys: &CoxeterSystem, c: &Coloring) -> Result<ColoringReport> {
    let g = Graph::from_system(sys);
    c.check_proper(&g)?;
    let col = c.on_graph(&g)?;
    let colours = c.colours();
    let mut pairs = Vec::new();
    for (i, &a) in colours.iter().enumerate() {
        for &b in &colours[i + 1..] {
            let members: Vec<usize> = (0..g.len()).filter(|&v| col[v] == a || col[v] == b).collect();
            let adjacent = g.edges().iter().any(|&(u, v)| (col[u], col[v]) == (a, b) || (col[u], col[v]) == (b, a));
            pairs.push(PairReport { colours: (a, b), adjacent, connected: is_connected(&g, &members) });
        }
    }
    let stars = (0..g.len())
        .map(|v| {
            let seen: BTreeSet<usize> = std::iter::once(v).chain(g.neighbours(v)).map(|u| col[u]).collect();
            StarReport { vertex: g.names[v].clone(), missing: colours.iter().copied().filter(|c| !seen.contains(c)).collect() }
        })
        .collect();
    Ok(ColoringReport { pairs, stars })
}

/// How the products of equally coloured generators relate to the kernel of
/// the colouring map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenerationMode {
    /// All two-colour subgraphs are connected: the products generate the
    /// kernel.
    Generating,
    /// All colour pairs are adjacent: the products generate the kernel as a
    /// normal subgroup.
    NormalGenerating,
    NoneCertified,
}

impl std::fmt::Display for GenerationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GenerationMode::Generating => "generating",
            GenerationMode::NormalGenerating => "normal-generating",
            GenerationMode::NoneCertified => "none-certified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGenerators {
    /// `v v'` for every unordered pair of distinct equally coloured
    /// generators.
    pub full: Vec<Word>,
    /// `b v` for each generator `v` other than the base point `b` of its
    /// colour class.
    pub economical: Vec<Word>,
    pub mode: GenerationMode,
}

/// Products of equally coloured generators, which lie in the kernel of the
/// colouring map to `(Z/2)^colours`.
pub fn kernel_generators(sys: &CoxeterSystem, c: &Coloring) -> Result<KernelGenerators> {
    sys.require_right_angled()?;
    let report = coloring_report(sys, c)?;
    let col: Vec<usize> = sys.names().iter().map(|n| c.colour_of(n)).collect::<Result<_>>()?;
    let mut full = Vec::new();
    for i in 0..sys.len() {
        for j in (i + 1)..sys.len() {
            if col[i] == col[j] {
                full.push(Word::from_gens(&[i, j]));
            }
        }
    }
    let mut economical = Vec::new();
    for members in c.classes().values() {
        let base = sys.index_of(&members[0])?;
        for m in &members[1..] {
            economical.push(Word::from_gens(&[base, sys.index_of(m)?]));
        }
    }
    let mode = if report.all_pairs_connected() {
        GenerationMode::Generating
    } else if report.all_pairs_adjacent() {
        GenerationMode::NormalGenerating
    } else {
        GenerationMode::NoneCertified
    };
    Ok(KernelGenerators { full, economical, mode })
}

/// Writes `u v v' u` (with `c(v) = c(v')`) as a product of equally coloured
/// pairs, following a path from `v` to `v'` that alternates between the
/// colours of `v` and `u`. Returns the factors in order.
pub fn conjugate_as_pair_product(sys: &CoxeterSystem, c: &Coloring, u: usize, v: usize, v2: usize) -> Result<Vec<Word>> {
    sys.require_right_angled()?;
    let g = Graph::from_system(sys);
    c.check_proper(&g)?;
    let col = c.on_graph(&g)?;
    if col[v] != col[v2] {
        return Err(Error::Precondition(format!("`{}` and `{}` have different colours", g.names[v], g.names[v2])));
    }
    if col[u] == col[v] {
        return Ok(vec![Word::from_gens(&[u, v]), Word::from_gens(&[v2, u])]);
    }
    let mut prev = vec![usize::MAX; g.len()];
    prev[v] = v;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbours(x) {
            if prev[y] == usize::MAX && (col[y] == col[u] || col[y] == col[v]) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if prev[v2] == usize::MAX {
        return Err(Error::Precondition(format!(
            "no path from `{}` to `{}` in the subgraph of colours {} and {}",
            g.names[v], g.names[v2], col[v], col[u]
        )));
    }
    let mut path = vec![v2];
    while *path.last().unwrap() != v {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    // path = v_1, u_1, v_2, u_2, ..., v_n
    let vs: Vec<usize> = path.iter().step_by(2).copied().collect();
    let mut us: Vec<usize> = path.iter().skip(1).step_by(2).copied().collect();
    if vs.len() == 1 {
        return Ok(Vec::new());
    }
    let mut factors = vec![Word::from_gens(&[u, us[0]])];
    us.push(u);
    for i in 0..vs.len() - 1 {
        factors.push(Word::from_gens(&[vs[i], vs[i + 1]]));
        factors.push(Word::from_gens(&[us[i], us[i + 1]]));
    }
    Ok(factors)
}

/// Presentation with one generator per vertex, the commutator of each
/// edge, and `v v b^-1 b^-1` for each vertex `v` other than the base point
/// `b` of its colour class. Requires every star to meet every colour.
pub fn pullback_presentation(sys: &CoxeterSystem, c: &Coloring) -> Result<Presentation> {
    sys.require_right_angled()?;
    let report = coloring_report(sys, c)?;
    if let Some(v) = report.star_failures().first() {
        return Err(Error::StarCondition(v.to_string()));
    }
    let mut relators = Vec::new();
    for (i, j) in sys.edges() {
        relators.push(Word::from_letters(vec![Letter::gen(i), Letter::gen(j), Letter::inverse_of(i), Letter::inverse_of(j)]));
    }
    for members in c.classes().values() {
        let base = sys.index_of(&members[0])?;
        for m in &members[1..] {
            let v = sys.index_of(m)?;
            relators.push(Word::from_letters(vec![Letter::gen(v), Letter::gen(v), Letter::inverse_of(base), Letter::inverse_of(base)]));
        }
    }
    Presentation::new(sys.names().to_vec(), relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::racg_normal_form;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new((0..n).map(|i| format!("p{i}")).collect(), &edges)
    }

    #[test]
    fn complete_graph_needs_four() {
        let k4 = Graph::complete(4);
        assert_eq!(exact_coloring(&k4, 3), ColoringSearch { coloring: None, exact: true });
        let four = exact_coloring(&k4, 4).coloring.unwrap();
        four.check_proper(&k4).unwrap();
        assert_eq!(chromatic_number(&k4).0, 4);
        assert_eq!(all_colorings(&k4, 4).len(), 1);
    }

    #[test]
    fn bipartite_two_colours() {
        let p = path_graph(6);
        assert!(exact_coloring(&p, 2).coloring.is_some());
        assert_eq!(all_colorings(&p, 2).len(), 1);
        assert_eq!(chromatic_number(&Graph::new(vec!["x".into()], &[])).0, 1);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let c = Coloring::from_json(r#"{"classes": {"0": ["a", "c"], "1": ["b"]}}"#).unwrap();
        assert_eq!(Coloring::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(c.colour_of("c").unwrap(), 0);
        assert!(Coloring::from_json(r#"{"classes": {"0": ["a"], "1": ["a"]}}"#).is_err());
        let g = Graph::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 2)]);
        assert_eq!(c.check_proper(&g), Err(Error::ImproperColoring("a".into(), "c".into(), 0)));
    }

    #[test]
    fn dimension_colouring() {
        let tri = SimplicialComplex::from_facets(&[["a", "b", "c"]]).unwrap();
        let sd = tri.barycentric_subdivision();
        let c = coloring_by_dimension(&sd).unwrap();
        assert_eq!(c.num_colours(), 3);
        c.check_proper(&Graph::from_complex(&sd)).unwrap();
        assert_eq!(coloring_by_dimension(&tri), Err(Error::NotASubdivision("a".into())));
    }

    #[test]
    fn path_identity_reduces() {
        // p0 - p1 - p2 - p3 - p4 coloured 0,1,0,1,0; u = p1, v = p0, v' = p4
        let names: Vec<&str> = vec!["p0", "p1", "p2", "p3", "p4"];
        let edges: Vec<(&str, &str)> = vec![("p0", "p1"), ("p1", "p2"), ("p2", "p3"), ("p3", "p4")];
        let sys = CoxeterSystem::right_angled(&names, &edges).unwrap();
        let c = Coloring::from_vec(sys.names(), &[0, 1, 0, 1, 0]);
        let factors = conjugate_as_pair_product(&sys, &c, 1, 0, 4).unwrap();
        assert_eq!(factors.len(), 5);
        let target = Word::from_gens(&[1, 0, 4, 1]);
        let check = Word::product(factors.iter()).concat(&target.inverse());
        assert!(racg_normal_form(&sys, &check).unwrap().is_empty());
    }

    #[test]
    fn singleton_classes_give_no_generators() {
        let sys = CoxeterSystem::right_angled(&["a", "b"], &[("a", "b")]).unwrap();
        let c = Coloring::from_vec(sys.names(), &[0, 1]);
        let k = kernel_generators(&sys, &c).unwrap();
        assert!(k.full.is_empty() && k.economical.is_empty());
        assert_eq!(k.mode, GenerationMode::Generating);
    }
}
