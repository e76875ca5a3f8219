//! Nerves of Coxeter systems, their Euler characteristics, homomorphisms to
//! elementary abelian 2-groups and finite quotients of the Davis complex.

mod davis;
mod reports;

pub use davis::{davis_quotient, DavisQuotientCells};
pub use reports::{free_cohomology_report, vcd_report, DegreeEntry, FreeCohomologyReport, RingVcd, VcdReport, VcdVerdict};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use crate::coloring::Coloring;
use crate::coxeter::{CoxeterSystem, SphericalSubset};
use crate::presentations::Word;
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::{Error, Result};

/// The nerve: simplices are the nonempty spherical subsets.
#[derive(Clone, Debug)]
pub struct Nerve {
    complex: SimplicialComplex,
    /// Generator index in the system for each vertex of `complex`.
    generator_of: Vec<usize>,
    vertex_of: Vec<usize>,
}

impl Nerve {
    pub fn new(sys: &CoxeterSystem) -> Self {
        let subsets = sys.spherical_subsets();
        let complex = SimplicialComplex::from_indexed(sys.names().to_vec(), subsets);
        let generator_of: Vec<usize> =
            complex.vertex_names().iter().map(|n| sys.index_of(n).expect("vertex from system")).collect();
        let mut vertex_of = vec![usize::MAX; sys.len()];
        for (v, &g) in generator_of.iter().enumerate() {
            vertex_of[g] = v;
        }
        Nerve { complex, generator_of, vertex_of }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }

    /// System generator indices of a simplex of the nerve.
    pub fn generators(&self, s: &[usize]) -> Vec<usize> {
        let mut g: Vec<usize> = s.iter().map(|&v| self.generator_of[v]).collect();
        g.sort_unstable();
        g
    }

    /// Nerve simplex spanned by system generators (sorted by vertex order).
    pub fn simplex_of(&self, gens: &[usize]) -> Simplex {
        let mut s: Simplex = gens.iter().map(|&g| self.vertex_of[g]).collect();
        s.sort_unstable();
        s
    }

    pub fn spherical_subset(&self, sys: &CoxeterSystem, s: &[usize]) -> SphericalSubset {
        sys.spherical_subset(&self.generators(s)).expect("nerve simplices are spherical")
    }
}

pub fn nerve(sys: &CoxeterSystem) -> Nerve {
    Nerve::new(sys)
}

/// Sum over spherical subsets `T` (the empty set included) of
/// `(-1)^|T| / |<T>|`.
pub fn chiswell_euler(sys: &CoxeterSystem) -> BigRational {
    let mut total = BigRational::zero();
    for t in sys.spherical_subsets() {
        let order = sys.special_subgroup_order(&t).finite().expect("spherical").clone();
        let term = BigRational::new(BigInt::one(), BigInt::from(order));
        if t.len() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// The right-angled form `1 + sum_k (-1)^(k+1) f_k / 2^(k+1)` over the face
/// numbers of a complex.
pub fn right_angled_euler_from_faces(f_vector: &[usize]) -> BigRational {
    let mut total = BigRational::one();
    for (k, &f) in f_vector.iter().enumerate() {
        let term = BigRational::new(BigInt::from(f), BigInt::one() << (k + 1));
        if k % 2 == 0 {
            total -= term;
        } else {
            total += term;
        }
    }
    total
}

/// A homomorphism to `(Z/2)^rank` given by the image of each generator.
/// Vectors are bit masks; bit `i` is coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGroupHom {
    rank: usize,
    names: Vec<String>,
    images: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawHom {
    rank: usize,
    images: BTreeMap<String, String>,
}

impl TwoGroupHom {
    pub fn new(rank: usize, names: Vec<String>, images: Vec<u64>) -> Result<Self> {
        if rank > 64 {
            return Err(Error::Validation(format!("rank {rank} exceeds 64")));
        }
        if names.len() != images.len() {
            return Err(Error::Validation("one image per generator required".into()));
        }
        for (n, &x) in names.iter().zip(&images) {
            if x == 0 {
                return Err(Error::Validation(format!("generator `{n}` maps to zero")));
            }
            if rank < 64 && x >> rank != 0 {
                return Err(Error::Validation(format!("image of `{n}` has more than {rank} coordinates")));
            }
        }
        Ok(TwoGroupHom { rank, names, images })
    }

    /// Sends each generator to the basis vector of its colour; colours are
    /// numbered by their order of appearance in the sorted colour list.
    pub fn from_coloring(sys: &CoxeterSystem, c: &Coloring) -> Result<Self> {
        c.check_proper_on_system(sys)?;
        let colours = c.colours();
        let position: HashMap<usize, usize> = colours.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let images = sys.names().iter().map(|n| Ok(1u64 << position[&c.colour_of(n)?])).collect::<Result<Vec<_>>>()?;
        Self::new(colours.len(), sys.names().to_vec(), images)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawHom = serde_json::from_str(text).map_err(Error::from_json)?;
        let mut names = Vec::new();
        let mut images = Vec::new();
        for (n, bits) in raw.images {
            if bits.len() != raw.rank || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Validation(format!("image of `{n}` must be a {}-character 0/1 string", raw.rank)));
            }
            let x = bits.chars().enumerate().fold(0u64, |acc, (i, c)| if c == '1' { acc | 1 << i } else { acc });
            names.push(n);
            images.push(x);
        }
        Self::new(raw.rank, names, images)
    }

    pub fn to_json(&self) -> String {
        let images = self.names.iter().zip(&self.images).map(|(n, &x)| (n.clone(), self.format_vector(x))).collect();
        serde_json::to_string_pretty(&RawHom { rank: self.rank, images }).expect("hom serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn image_of(&self, name: &str) -> Result<u64> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.images[i])
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Images listed in the order of `generators`.
    pub fn images_for(&self, generators: &[String]) -> Result<Vec<u64>> {
        generators.iter().map(|g| self.image_of(g)).collect()
    }

    /// Renders a vector as a 0/1 string, first coordinate first.
    pub fn format_vector(&self, x: u64) -> String {
        (0..self.rank).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Image of a word whose letters index `generators`; exponents do not
    /// matter modulo 2.
    pub fn evaluate(&self, w: &Word, generators: &[String]) -> Result<u64> {
        let images = self.images_for(generators)?;
        Ok(w.letters().iter().fold(0, |acc, l| acc ^ images[l.gen]))
    }

    /// Basis of the image subgroup in reduced echelon form.
    pub fn image_basis(&self) -> Vec<u64> {
        echelon(&self.images)
    }

    /// Order of the image subgroup, i.e. the index of the kernel.
    pub fn image_order(&self) -> u64 {
        1 << self.image_basis().len()
    }
}

pub fn evaluate_hom(psi: &TwoGroupHom, w: &Word, generators: &[String]) -> Result<u64> {
    psi.evaluate(w, generators)
}

/// Reduced echelon basis of the span of `vectors`: distinct leading bits,
/// each leading bit absent from every other basis vector. Sorted by
/// leading bit, highest first.
pub(crate) fn echelon(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let r = reduce(v, &basis);
        if r != 0 {
            let lead = 63 - r.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> lead & 1 == 1 {
                    *b ^= r;
                }
            }
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// Least element of the coset `v + span(basis)` for a reduced echelon basis.
pub(crate) fn reduce(mut v: u64, basis: &[u64]) -> u64 {
    for &b in basis {
        let lead = 63 - b.leading_zeros();
        if v >> lead & 1 == 1 {
            v ^= b;
        }
    }
    v
}

/// All elements of the span of a basis, ascending.
pub(crate) fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &b in basis {
        let more: Vec<u64> = out.iter().map(|&x| x ^ b).collect();
        out.extend(more);
    }
    out.sort_unstable();
    out
}

/// Checks that `psi` is injective on every maximal spherical subgroup of a
/// right-angled system: the images of each maximal clique are linearly
/// independent. This certifies that the kernel is torsion-free.
pub fn torsion_free_kernel_check(sys: &CoxeterSystem, psi: &TwoGroupHom) -> Result<bool> {
    sys.require_right_angled()?;
    let images = psi.images_for(sys.names())?;
    let nerve = Nerve::new(sys);
    Ok(nerve.complex().facets().iter().all(|f| {
        let gens = nerve.generators(f);
        let vecs: Vec<u64> = gens.iter().map(|&g| images[g]).collect();
        echelon(&vecs).len() == vecs.len()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{EdgeDefault, Label};

    fn triangle(m: u32) -> CoxeterSystem {
        let edges = [("a", "b"), ("b", "c"), ("a", "c")].map(|(u, v)| (u.to_string(), v.to_string(), Label::Finite(m)));
        CoxeterSystem::new(&["a", "b", "c"], edges, EdgeDefault::Infinity).unwrap()
    }

    #[test]
    fn nerves_of_triangles() {
        assert_eq!(Nerve::new(&triangle(2)).complex().f_vector(), vec![3, 3, 1]);
        for m in 3..7 {
            assert_eq!(Nerve::new(&triangle(m)).complex().f_vector(), vec![3, 3]);
        }
    }

    #[test]
    fn euler_characteristics() {
        let one = CoxeterSystem::right_angled(&["v"], &[]).unwrap();
        assert_eq!(chiswell_euler(&one), BigRational::new(1.into(), 2.into()));
        // finite group C2^3: 1 - 3/2 + 3/4 - 1/8 = 1/8
        assert_eq!(chiswell_euler(&triangle(2)), BigRational::new(1.into(), 8.into()));
        assert_eq!(right_angled_euler_from_faces(&[11, 30, 20]) * BigRational::from_integer(8.into()), BigRational::from_integer(4.into()));
        // A3 = S4 has order 24 and Euler characteristic 1/24
        let a3 = CoxeterSystem::new(
            &["a", "b", "c"],
            [("a".into(), "b".into(), Label::Finite(3)), ("b".into(), "c".into(), Label::Finite(3))],
            EdgeDefault::Two,
        )
        .unwrap();
        assert_eq!(chiswell_euler(&a3), BigRational::new(1.into(), 24.into()));
    }

    #[test]
    fn echelon_and_cosets() {
        let basis = echelon(&[0b011, 0b110, 0b101]);
        assert_eq!(basis.len(), 2);
        assert_eq!(span(&basis).len(), 4);
        for x in 0..8u64 {
            let r = reduce(x, &basis);
            let coset: Vec<u64> = span(&basis).iter().map(|s| s ^ x).collect();
            assert_eq!(r, *coset.iter().min().unwrap());
        }
    }

    #[test]
    fn hom_json_and_checks() {
        let sys = triangle(2);
        let psi = TwoGroupHom::new(3, sys.names().to_vec(), vec![1, 2, 4]).unwrap();
        assert_eq!(TwoGroupHom::from_json(&psi.to_json()).unwrap(), psi);
        assert!(torsion_free_kernel_check(&sys, &psi).unwrap());
        let bad = TwoGroupHom::new(2, sys.names().to_vec(), vec![1, 1, 2]).unwrap();
        assert!(!torsion_free_kernel_check(&sys, &bad).unwrap());
        assert!(TwoGroupHom::new(1, vec!["a".into()], vec![0]).is_err());
        assert_eq!(psi.image_of("z"), Err(Error::UnknownGenerator("z".into())));
        assert!(matches!(torsion_free_kernel_check(&triangle(3), &psi), Err(Error::NotRightAngled(..))));
    }
}
