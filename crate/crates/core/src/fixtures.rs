//! Built-in complexes, systems, colourings and presentations used by the
//! test battery and the `verify` command.

use std::collections::{BTreeMap, BTreeSet};

use crate::coloring::{Coloring, Graph};
use crate::coxeter::CoxeterSystem;
use crate::nerve::TwoGroupHom;
use crate::presentations::{images_from_json, Presentation, Word};
use crate::simplicial::SimplicialComplex;

macro_rules! data {
    ($file:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/", $file))
    };
}

/// Raw fixture documents by file name, for tools that want the JSON.
pub const DATA_FILES: &[(&str, &str)] = &[
    ("bowtie.json", data!("bowtie.json")),
    ("delta-phi.json", data!("delta-phi.json")),
    ("delta.json", data!("delta.json")),
    ("gamma1-words.json", data!("gamma1-words.json")),
    ("gamma1.json", data!("gamma1.json")),
    ("hollow-triangle.json", data!("hollow-triangle.json")),
    ("octahedron.json", data!("octahedron.json")),
    ("rp2-11-coloring.json", data!("rp2-11-coloring.json")),
    ("rp2-11-psi.json", data!("rp2-11-psi.json")),
    ("rp2-11.json", data!("rp2-11.json")),
    ("rp2-6.json", data!("rp2-6.json")),
    ("simplex6-2skeleton.json", data!("simplex6-2skeleton.json")),
    ("tetrahedron-boundary.json", data!("tetrahedron-boundary.json")),
    ("triangle.json", data!("triangle.json")),
];

fn complex(text: &str) -> SimplicialComplex {
    SimplicialComplex::from_json(text).expect("fixture complex parses")
}

/// 11-vertex flag triangulation of the projective plane.
pub fn rp2_11() -> SimplicialComplex {
    complex(data!("rp2-11.json"))
}

pub fn rp2_11_system() -> CoxeterSystem {
    CoxeterSystem::from_flag_complex(&rp2_11()).expect("rp2-11 is flag")
}

/// A proper 4-colouring of the 11-vertex projective plane, with classes
/// `{a,c,e} {b,d,f} {g,h,j} {i,k}`.
pub fn rp2_11_coloring() -> Coloring {
    Coloring::from_json(data!("rp2-11-coloring.json")).expect("fixture colouring parses")
}

/// Map to `(Z/2)^3` that sends the last colour class to the sum of the
/// other three basis vectors.
pub fn rp2_11_psi() -> TwoGroupHom {
    TwoGroupHom::from_json(data!("rp2-11-psi.json")).expect("fixture hom parses")
}

/// 8-generator presentation of the index-8 kernel of [`rp2_11_psi`].
pub fn gamma1() -> Presentation {
    Presentation::from_json(data!("gamma1.json")).expect("fixture presentation parses")
}

/// Images of the generators of [`gamma1`] in the 11-vertex system.
pub fn gamma1_words() -> BTreeMap<String, Word> {
    images_from_json(data!("gamma1-words.json"), rp2_11_system().names()).expect("fixture words parse")
}

/// A second 8-generator presentation of a group mapping to the same
/// system.
pub fn delta() -> Presentation {
    Presentation::from_json(data!("delta.json")).expect("fixture presentation parses")
}

pub fn delta_phi() -> BTreeMap<String, Word> {
    images_from_json(data!("delta-phi.json"), rp2_11_system().names()).expect("fixture words parse")
}

/// 6-vertex projective plane: the icosahedron modulo the antipodal map.
pub fn rp2_6() -> SimplicialComplex {
    complex(data!("rp2-6.json"))
}

/// Two triangles sharing one vertex.
pub fn bowtie() -> SimplicialComplex {
    complex(data!("bowtie.json"))
}

pub fn triangle() -> SimplicialComplex {
    complex(data!("triangle.json"))
}

pub fn hollow_triangle() -> SimplicialComplex {
    complex(data!("hollow-triangle.json"))
}

pub fn tetrahedron_boundary() -> SimplicialComplex {
    complex(data!("tetrahedron-boundary.json"))
}

/// All triangles on seven vertices.
pub fn simplex6_2skeleton() -> SimplicialComplex {
    complex(data!("simplex6-2skeleton.json"))
}

/// Boundary of the octahedron; antipodal pairs are a/x, b/y, c/z.
pub fn octahedron() -> SimplicialComplex {
    complex(data!("octahedron.json"))
}

pub fn k4() -> Graph {
    Graph::complete(4)
}

/// Right-angled system of a barycentric subdivision, with the colouring by
/// dimension.
pub fn subdivision_system(k: &SimplicialComplex) -> (CoxeterSystem, Coloring) {
    let sd = k.barycentric_subdivision();
    let sys = CoxeterSystem::from_flag_complex(&sd).expect("subdivisions are flag");
    let c = crate::coloring::coloring_by_dimension(&sd).expect("subdivision names parse");
    (sys, c)
}

/// Right-angled system whose graph is a path on `n` vertices `p0..`.
pub fn path_system(n: usize) -> CoxeterSystem {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let edges: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
    CoxeterSystem::right_angled(&names, &edges).expect("path system is valid")
}

/// Right-angled system of an `n`-cycle, `n >= 4`.
pub fn cycle_system(n: usize) -> CoxeterSystem {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let edges: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
    CoxeterSystem::right_angled(&names, &edges).expect("cycle system is valid")
}

fn canonical_cycle(c: &[usize]) -> Vec<usize> {
    let n = c.len();
    let start = (0..n).min_by_key(|&i| c[i]).unwrap();
    let fwd: Vec<usize> = (0..n).map(|k| c[(start + k) % n]).collect();
    let bwd: Vec<usize> = (0..n).map(|k| c[(start + n - k) % n]).collect();
    fwd.min(bwd)
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// The six pentagons on five vertices forming one orbit of the
/// alternating group; every pair of vertices lies on exactly three.
pub fn pentagons() -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut perm: Vec<usize> = (0..5).collect();
    permutations(&mut perm, 0, &mut |p| {
        if is_even(p) {
            out.insert(canonical_cycle(p));
        }
    });
    out.into_iter().collect()
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// The complex obtained by gluing the six [`pentagons`] along the complete
/// graph on five vertices and subdividing each pentagon by coning its
/// boundary, itself subdivided at edge midpoints. Vertices `0..4`, edge
/// midpoints `e01..`, face centres `F0..F5`: 21 vertices, 80 edges, 60
/// triangles, and flag.
pub fn pentagon_complex() -> SimplicialComplex {
    let mut facets = Vec::new();
    for (f, pent) in pentagons().iter().enumerate() {
        for i in 0..5 {
            let (a, b) = (pent[i], pent[(i + 1) % 5]);
            let mid = format!("e{}{}", a.min(b), a.max(b));
            for v in [a, b] {
                facets.push(vec![v.to_string(), mid.clone(), format!("F{f}")]);
            }
        }
    }
    SimplicialComplex::from_facets(&facets).expect("pentagon complex is valid")
}
