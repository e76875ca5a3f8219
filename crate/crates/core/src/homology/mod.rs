//! Exact homology and cohomology of finite chain complexes over the
//! integers, the rationals and prime fields.

mod matrix;
mod sparse;

pub use matrix::{IntegerMatrix, SmithForm};
pub use sparse::SparseMatrix;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

use crate::simplicial::{drop_index, SimplicialComplex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Z,
    Q,
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl CoefficientRing {
    /// Prime field of order `p`; `p` must be a prime below 2^32.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not a prime below 2^32")));
        }
        Ok(CoefficientRing::Fp(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientRing::Z)
    }

    /// Short name for reports: `Z`, `Q`, `F2`, `F3`, ...
    pub fn symbol(self) -> String {
        match self {
            CoefficientRing::Z => "Z".into(),
            CoefficientRing::Q => "Q".into(),
            CoefficientRing::Fp(p) => format!("F{p}"),
        }
    }

    /// Whether 2 = 0 in the ring.
    pub fn has_characteristic_two(self) -> bool {
        self == CoefficientRing::Fp(2)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Z => write!(f, "Z"),
            CoefficientRing::Q => write!(f, "Q"),
            CoefficientRing::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(CoefficientRing::Z),
            "Q" => Ok(CoefficientRing::Q),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Validation(format!("unknown ring `{s}` (expected Z, Q or Fp:<p>)")))?;
                CoefficientRing::prime_field(p)
            }
        }
    }
}

/// A finitely generated abelian group: free rank plus invariant factors
/// `d1 | d2 | ...`, each at least 2. Over a field only the rank is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

pub type HomologyGroup = AbelianGroup;
pub type AbelianInvariants = AbelianGroup;

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Free rank plus torsion factors given as small integers.
    pub fn new(free_rank: usize, torsion: &[u64]) -> Self {
        AbelianGroup { free_rank, torsion: torsion.iter().map(|&t| BigUint::from(t)).collect() }
    }

    /// Group presented by a relation matrix with the given invariant factors
    /// over `generators` generators. Unit factors are dropped.
    pub fn from_invariant_factors(generators: usize, factors: &[BigUint]) -> Self {
        AbelianGroup {
            free_rank: generators - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|t| t.to_u64().map_or_else(|| Value::String(t.to_string()), Value::from))
            .collect();
        json!({ "free_rank": self.free_rank, "torsion": torsion, "text": self.to_string() })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses the format produced by `Display`, e.g. `Z^3 + (Z/2)^4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("cannot parse abelian group `{s}`"));
        let mut g = AbelianGroup::zero();
        if s.trim() == "0" {
            return Ok(g);
        }
        for part in s.split('+').map(str::trim) {
            let (base, count) = match part.rsplit_once('^') {
                Some((b, c)) => (b.trim_start_matches('(').trim_end_matches(')'), c.parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            if base == "Z" {
                g.free_rank += count;
            } else {
                let d: BigUint = base.strip_prefix("Z/").and_then(|d| d.parse().ok()).ok_or_else(bad)?;
                g.torsion.extend(std::iter::repeat_n(d, count));
            }
        }
        Ok(g)
    }
}

/// Homology or cohomology in consecutive degrees starting at `min_degree`
/// (`-1` for reduced theories).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroups {
    pub ring: CoefficientRing,
    pub min_degree: isize,
    pub groups: Vec<AbelianGroup>,
}

impl GradedGroups {
    /// Group in degree `k`; degrees outside the computed range are zero.
    pub fn degree(&self, k: isize) -> AbelianGroup {
        usize::try_from(k - self.min_degree)
            .ok()
            .and_then(|i| self.groups.get(i).cloned())
            .unwrap_or_default()
    }

    pub fn max_degree(&self) -> isize {
        self.min_degree + self.groups.len() as isize - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = (isize, &AbelianGroup)> {
        self.groups.iter().enumerate().map(move |(i, g)| (self.min_degree + i as isize, g))
    }

    /// Whether these are the reduced groups of a `d`-sphere over the ring:
    /// one copy of the ring in degree `d`, zero elsewhere.
    pub fn is_sphere_like(&self, d: isize) -> bool {
        d >= self.min_degree
            && d <= self.max_degree()
            && self.degrees().all(|(k, g)| if k == d { g == &AbelianGroup::free(1) } else { g.is_trivial() })
    }

    /// Text like `H0=Z H1=Z/2 H2=0`; field coefficients print dimensions.
    pub fn render(&self, cohomology: bool) -> String {
        let sep = if cohomology { "^" } else { "" };
        self.degrees()
            .map(|(k, g)| {
                let value = if self.ring.is_field() { g.free_rank.to_string() } else { g.to_string() };
                format!("H{sep}{k}={value}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> Value {
        let groups: Vec<Value> = self
            .degrees()
            .map(|(k, g)| {
                if self.ring.is_field() {
                    json!({ "degree": k, "dim": g.free_rank })
                } else {
                    let mut v = g.to_json();
                    v["degree"] = json!(k);
                    v
                }
            })
            .collect();
        json!({ "ring": self.ring.to_string(), "groups": groups })
    }
}

/// A finite chain complex of free abelian groups: cell counts per dimension
/// and boundary maps `d_k : C_k -> C_(k-1)` for `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplexData {
    cells: Vec<usize>,
    /// `boundaries[k - 1]` is `d_k`.
    boundaries: Vec<SparseMatrix>,
}

impl DeltaComplexData {
    /// Checks shapes and that consecutive boundaries compose to zero.
    pub fn new(cells: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != cells.len().max(1) {
            return Err(Error::Validation("need one boundary map per positive dimension".into()));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let k = i + 1;
            if d.cols() != cells[k] || d.rows() != cells[k - 1] {
                return Err(Error::Validation(format!("boundary map in degree {k} has the wrong shape")));
            }
        }
        let data = DeltaComplexData { cells, boundaries };
        if let Some(k) = data.first_nonzero_square() {
            return Err(Error::Validation(format!("boundary maps in degrees {} and {k} do not compose to zero", k + 1)));
        }
        Ok(data)
    }

    /// The oriented simplicial chain complex of `k`.
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let dim = k.dim();
        if dim < 0 {
            return DeltaComplexData { cells: Vec::new(), boundaries: Vec::new() };
        }
        let cells: Vec<usize> = k.f_vector();
        let mut boundaries = Vec::new();
        for d in 1..=dim as usize {
            let columns = k
                .faces(d)
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|i| {
                            let face = drop_index(s, i);
                            (k.face_index(&face).unwrap(), if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(cells[d - 1], columns));
        }
        DeltaComplexData { cells, boundaries }
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Top dimension, `-1` when there are no cells.
    pub fn dim(&self) -> isize {
        self.cells.len() as isize - 1
    }

    /// `d_k` for `1 <= k <= dim`.
    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k - 1]
    }

    pub fn boundary_dense(&self, k: usize) -> IntegerMatrix {
        self.boundary(k).to_dense()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Lowest `k` with `d_k d_(k+1) != 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (1..self.boundaries.len()).find(|&k| {
            self.boundaries[k - 1].checked_mul(&self.boundaries[k]).is_none_or(|p| !p.is_zero())
        })
    }

    /// The augmented chain complex with the augmentation `C_0 -> Z` in
    /// position `d_0`, as a list `[d_0, d_1, ..., d_dim]` together with the
    /// cell counts `[c_-1, c_0, ..., c_dim]`.
    fn maps(&self, reduced: bool) -> (Vec<usize>, Vec<SparseMatrix>) {
        let mut counts = Vec::new();
        let mut maps = Vec::new();
        if reduced {
            counts.push(1);
            let c0 = self.cells.first().copied().unwrap_or(0);
            maps.push(SparseMatrix::from_columns(1, (0..c0).map(|_| vec![(0, 1)]).collect()));
        }
        counts.extend(self.cells.iter().copied());
        maps.extend(self.boundaries.iter().cloned());
        (counts, maps)
    }

    pub fn homology(&self, ring: CoefficientRing, reduced: bool) -> GradedGroups {
        self.graded(ring, reduced, false)
    }

    /// Cohomology from the transposed (coboundary) maps.
    pub fn cohomology(&self, ring: CoefficientRing, reduced: bool) -> GradedGroups {
        self.graded(ring, reduced, true)
    }

    fn graded(&self, ring: CoefficientRing, reduced: bool, dual: bool) -> GradedGroups {
        let (counts, maps) = self.maps(reduced);
        // maps[i] goes from position i + 1 of `counts` to position i
        let data: Vec<MapData> = maps
            .iter()
            .map(|m| if dual { MapData::of(&m.transpose(), ring) } else { MapData::of(m, ring) })
            .collect();
        let groups = (0..counts.len())
            .map(|i| {
                let lower = i.checked_sub(1).and_then(|j| data.get(j));
                let upper = data.get(i);
                let rank = |m: Option<&MapData>| m.map_or(0, |m| m.rank);
                // homology torsion comes from the incoming boundary (upper),
                // cohomology torsion from the incoming coboundary (lower)
                let source = if dual { lower } else { upper };
                let torsion = match (ring, source) {
                    (CoefficientRing::Z, Some(m)) => m.factors.iter().filter(|d| !d.is_one()).cloned().collect(),
                    _ => Vec::new(),
                };
                AbelianGroup { free_rank: counts[i] - rank(lower) - rank(upper), torsion }
            })
            .collect();
        GradedGroups { ring, min_degree: if reduced { -1 } else { 0 }, groups }
    }
}

struct MapData {
    rank: usize,
    factors: Vec<BigUint>,
}

impl MapData {
    fn of(m: &SparseMatrix, ring: CoefficientRing) -> Self {
        match ring {
            CoefficientRing::Z => {
                let factors = m.invariant_factors();
                MapData { rank: factors.len(), factors }
            }
            CoefficientRing::Q => MapData { rank: m.rank(), factors: Vec::new() },
            CoefficientRing::Fp(p) => MapData { rank: m.rank_mod(p), factors: Vec::new() },
        }
    }
}

impl From<&SimplicialComplex> for DeltaComplexData {
    fn from(k: &SimplicialComplex) -> Self {
        DeltaComplexData::from_complex(k)
    }
}

impl SimplicialComplex {
    pub fn homology(&self, ring: CoefficientRing, reduced: bool) -> GradedGroups {
        DeltaComplexData::from_complex(self).homology(ring, reduced)
    }

    pub fn cohomology(&self, ring: CoefficientRing, reduced: bool) -> GradedGroups {
        DeltaComplexData::from_complex(self).cohomology(ring, reduced)
    }

    /// First simplex whose link fails to have the homology of a sphere of
    /// the right dimension, or `None` if this is an `R`-homology manifold
    /// of dimension `dim`. The empty complex is reported as failing at the
    /// empty simplex.
    pub fn homology_manifold_witness(&self, ring: CoefficientRing) -> Option<Vec<usize>> {
        let n = self.dim();
        if n < 0 {
            return Some(Vec::new());
        }
        for i in 0..=n as usize {
            for s in self.faces(i) {
                let link = self.link(s).expect("face of the complex");
                if !link.homology(ring, true).is_sphere_like(n - i as isize - 1) {
                    return Some(s.clone());
                }
            }
        }
        None
    }

    pub fn is_r_homology_manifold(&self, ring: CoefficientRing) -> bool {
        self.homology_manifold_witness(ring).is_none()
    }

    pub fn is_r_homology_sphere(&self, ring: CoefficientRing) -> bool {
        self.is_r_homology_manifold(ring) && self.homology(ring, true).is_sphere_like(self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoefficientRing::*;

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<CoefficientRing>().unwrap(), Z);
        assert_eq!("Fp:3".parse::<CoefficientRing>().unwrap(), Fp(3));
        assert!("Fp:4".parse::<CoefficientRing>().is_err());
        assert!("R".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn group_display_round_trip() {
        for (g, text) in [
            (AbelianGroup::zero(), "0"),
            (AbelianGroup::free(1), "Z"),
            (AbelianGroup::free(11), "Z^11"),
            (AbelianGroup::new(1, &[2]), "Z + Z/2"),
            (AbelianGroup::new(0, &[2, 2, 2, 2]), "(Z/2)^4"),
            (AbelianGroup::new(3, &[2, 2, 2, 2]), "Z^3 + (Z/2)^4"),
            (AbelianGroup::new(0, &[2, 6, 12]), "Z/2 + Z/6 + Z/12"),
        ] {
            assert_eq!(g.to_string(), text);
            assert_eq!(text.parse::<AbelianGroup>().unwrap(), g);
        }
    }

    #[test]
    fn point_and_circle() {
        let point = SimplicialComplex::from_facets(&[["p"]]).unwrap();
        assert_eq!(point.homology(Z, false).render(false), "H0=Z");
        assert_eq!(point.cohomology(Z, false).render(true), "H^0=Z");
        assert_eq!(point.homology(Z, true).render(false), "H-1=0 H0=0");
        let circle = SimplicialComplex::from_facets(&[["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
        let h = circle.cohomology(Z, true);
        assert_eq!(h.degree(0), AbelianGroup::zero());
        assert_eq!(h.degree(1), AbelianGroup::free(1));
    }

    #[test]
    fn empty_complex_is_minus_one_sphere() {
        let e = SimplicialComplex::empty();
        assert!(e.homology(Z, true).is_sphere_like(-1));
        assert!(e.homology(Z, false).groups.is_empty());
        assert!(!e.is_r_homology_manifold(Z));
    }

    #[test]
    fn spheres() {
        for n in 1..=4 {
            let s = SimplicialComplex::sphere(n);
            let h = s.homology(Z, false);
            for k in 0..=n as isize {
                let want = if k == 0 || k == n as isize { AbelianGroup::free(1) } else { AbelianGroup::zero() };
                assert_eq!(h.degree(k), want);
            }
            assert!(s.is_r_homology_sphere(Z));
            assert!(s.is_r_homology_sphere(Fp(2)));
        }
    }

    #[test]
    fn bow_tie_is_not_a_manifold() {
        let bow = SimplicialComplex::from_facets(&[["a", "b", "c"], ["c", "d", "e"]]).unwrap();
        assert!(!bow.is_r_homology_manifold(Z));
        assert_eq!(bow.homology_manifold_witness(Z), Some(vec![0]));
    }

    #[test]
    fn delta_complex_validation() {
        let d1 = SparseMatrix::from_columns(1, vec![vec![(0, 1)]]);
        let d2 = SparseMatrix::from_columns(1, vec![vec![(0, 1)]]);
        assert!(DeltaComplexData::new(vec![1, 1, 1], vec![d1, d2]).is_err());
        // circle as one vertex and one loop
        let loop_map = SparseMatrix::from_columns(1, vec![vec![(0, 1), (0, -1)]]);
        let c = DeltaComplexData::new(vec![1, 1], vec![loop_map]).unwrap();
        assert_eq!(c.homology(Z, false).render(false), "H0=Z H1=Z");
    }
}
