//! Cohomological dimension and free-coefficient cohomology read off from
//! the cohomology of the nerve.

use serde_json::{json, Value};

use super::Nerve;
use crate::coxeter::CoxeterSystem;
use crate::homology::{AbelianGroup, CoefficientRing, GradedGroups};
use crate::{Error, Result};

/// What the nerve's top cohomology says about the virtual cohomological
/// dimension over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VcdVerdict {
    /// The group is finite, so its vcd is zero.
    FiniteGroup,
    /// Pseudo-manifold nerve with nonzero top cohomology: vcd equals
    /// `dim K + 1`.
    Exact(isize),
    /// Pseudo-manifold nerve with vanishing top cohomology: vcd is at most
    /// `dim K`.
    AtMost(isize),
    /// No pseudo-manifold structure: top-degree cohomology of a torsion-free
    /// finite-index subgroup is only known to be a quotient of a finite sum
    /// of copies of the nerve's top reduced cohomology.
    QuotientOnly,
}

impl VcdVerdict {
    fn describe(&self, ring: CoefficientRing) -> String {
        match self {
            VcdVerdict::FiniteGroup => "vcd = 0 (finite group)".into(),
            VcdVerdict::Exact(d) => format!("vcd_{} = {d} certified", ring.symbol()),
            VcdVerdict::AtMost(d) => format!("vcd_{} <= {d}", ring.symbol()),
            VcdVerdict::QuotientOnly => {
                "top cohomology of a torsion-free finite-index subgroup is a quotient of a finite sum of copies of the top reduced cohomology of K; no exact value claimed".into()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingVcd {
    pub ring: CoefficientRing,
    pub reduced_cohomology: GradedGroups,
    pub verdict: VcdVerdict,
    /// The nerve is an `R`-homology sphere, so the group is virtually a
    /// Poincaré duality group over `R` of dimension `dim K + 1`.
    pub poincare_duality: bool,
}

#[derive(Clone, Debug)]
pub struct VcdReport {
    pub dim_k: isize,
    pub vcd_upper: isize,
    pub pseudo_manifold: bool,
    pub finite_group: bool,
    pub rings: Vec<RingVcd>,
}

impl VcdReport {
    pub fn to_json(&self) -> Value {
        let mut rings = serde_json::Map::new();
        for r in &self.rings {
            let vcd = match r.verdict {
                VcdVerdict::FiniteGroup => json!(0),
                VcdVerdict::Exact(d) => json!(d),
                _ => Value::Null,
            };
            rings.insert(
                r.ring.to_string(),
                json!({
                    "reduced_cohomology": r.reduced_cohomology.to_json()["groups"],
                    "vcd": vcd,
                    "verdict": r.verdict.describe(r.ring),
                    "poincare_duality": r.poincare_duality,
                }),
            );
        }
        json!({
            "dimK": self.dim_k,
            "vcd_upper": self.vcd_upper,
            "pseudo_manifold": self.pseudo_manifold,
            "finite_group": self.finite_group,
            "rings": rings,
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "dimK={} vcd<={} pseudo_manifold={} finite_group={}\n",
            self.dim_k, self.vcd_upper, self.pseudo_manifold, self.finite_group
        );
        for r in &self.rings {
            out += &format!("[{}] {}\n", r.ring, r.reduced_cohomology.render(true));
            out += &format!("[{}] {}\n", r.ring, r.verdict.describe(r.ring));
            if r.poincare_duality {
                out += &format!("[{}] virtually a Poincare duality group of dimension {}\n", r.ring, self.dim_k + 1);
            }
        }
        out
    }
}

pub fn vcd_report(sys: &CoxeterSystem, rings: &[CoefficientRing]) -> VcdReport {
    let k = Nerve::new(sys).into_complex();
    let n = k.dim();
    let all: Vec<usize> = (0..sys.len()).collect();
    let finite_group = sys.is_spherical(&all);
    let pseudo_manifold = k.is_pseudo_manifold();
    let rings = rings
        .iter()
        .map(|&ring| {
            let reduced_cohomology = k.cohomology(ring, true);
            let top_nonzero = !reduced_cohomology.degree(n).is_trivial();
            let verdict = if finite_group {
                VcdVerdict::FiniteGroup
            } else if pseudo_manifold && top_nonzero {
                VcdVerdict::Exact(n + 1)
            } else if pseudo_manifold {
                VcdVerdict::AtMost(n)
            } else {
                VcdVerdict::QuotientOnly
            };
            let poincare_duality = !finite_group && k.is_r_homology_sphere(ring);
            RingVcd { ring, reduced_cohomology, verdict, poincare_duality }
        })
        .collect();
    VcdReport { dim_k: n, vcd_upper: n + 1, pseudo_manifold, finite_group, rings }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeEntry {
    pub degree: usize,
    /// Cohomology of the nerve in degree `degree - 1` when this degree is a
    /// tensor product with the free module; `None` otherwise.
    pub factor: Option<AbelianGroup>,
    pub description: String,
}

#[derive(Clone, Debug)]
pub struct FreeCohomologyReport {
    pub ring: CoefficientRing,
    pub dim_k: usize,
    pub degrees: Vec<DegreeEntry>,
}

impl FreeCohomologyReport {
    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees
            .iter()
            .map(|d| json!({ "degree": d.degree, "module": d.description }))
            .collect();
        json!({ "ring": self.ring.to_string(), "dimK": self.dim_k, "degrees": degrees })
    }

    pub fn render(&self) -> String {
        self.degrees.iter().map(|d| format!("H^{}={}\n", d.degree, d.description)).collect()
    }
}

fn describe_group(g: &AbelianGroup, ring: CoefficientRing) -> String {
    match (ring, g.free_rank) {
        (CoefficientRing::Z, _) => g.to_string(),
        (_, 0) => "0".into(),
        (_, 1) => ring.symbol(),
        (_, d) => format!("{}^{d}", ring.symbol()),
    }
}

/// Cohomology with coefficients in the group ring, for nerves that are
/// closed `R`-homology manifolds (orientable unless `2 = 0` in `R`).
/// Degrees 0 and 1 vanish, the top degree `n + 1` is a rank-one module on
/// which each generator acts by `-1`, and each degree `i` in between is
/// `H^(i-1)(K; R)` tensored with the free module.
pub fn free_cohomology_report(sys: &CoxeterSystem, ring: CoefficientRing) -> Result<FreeCohomologyReport> {
    let k = Nerve::new(sys).into_complex();
    let pm = k.pseudo_manifold_report();
    if !pm.holds() {
        return Err(Error::Hypothesis(format!(
            "nerve is not a pseudo-manifold (pure={}, thin={}, strongly_connected={})",
            pm.pure, pm.thin, pm.strongly_connected
        )));
    }
    if let Some(s) = k.homology_manifold_witness(ring) {
        return Err(Error::Hypothesis(format!(
            "nerve is not a {}-homology manifold: link of {} is not a homology sphere",
            ring.symbol(),
            k.format_simplex(&s)
        )));
    }
    if !ring.has_characteristic_two() && !k.is_orientable()? {
        return Err(Error::Hypothesis(format!("nerve is not orientable and 2 != 0 in {}", ring.symbol())));
    }
    let n = pm.dim as usize;
    let cohomology = k.cohomology(ring, false);
    let degrees = (0..=n + 1)
        .map(|i| {
            if i == n + 1 {
                DegreeEntry { degree: i, factor: None, description: format!("{}° (rank one, generators act by -1)", ring.symbol()) }
            } else if i <= 1 {
                DegreeEntry { degree: i, factor: None, description: "0".into() }
            } else {
                let g = cohomology.degree(i as isize - 1);
                let description = if g.is_trivial() {
                    "0".into()
                } else {
                    format!("{} ⊗ free module", describe_group(&g, ring))
                };
                DegreeEntry { degree: i, factor: Some(g), description }
            }
        })
        .collect();
    Ok(FreeCohomologyReport { ring, dim_k: n, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;

    fn flag_system(k: &SimplicialComplex) -> CoxeterSystem {
        CoxeterSystem::from_flag_complex(k).unwrap()
    }

    #[test]
    fn solid_triangle_is_finite() {
        let k = SimplicialComplex::from_facets(&[["a", "b", "c"]]).unwrap();
        let r = vcd_report(&flag_system(&k), &[CoefficientRing::Z]);
        assert!(r.finite_group);
        assert_eq!(r.rings[0].verdict, VcdVerdict::FiniteGroup);
        assert_eq!(r.vcd_upper, 3);
    }

    #[test]
    fn circle_nerve() {
        let k = SimplicialComplex::from_facets(&[["a", "b"], ["b", "c"], ["c", "d"], ["a", "d"]]).unwrap();
        let sys = flag_system(&k);
        let r = vcd_report(&sys, &[CoefficientRing::Z, CoefficientRing::Q]);
        assert_eq!(r.rings[0].verdict, VcdVerdict::Exact(2));
        assert!(r.rings[1].poincare_duality);
        let f = free_cohomology_report(&sys, CoefficientRing::Z).unwrap();
        let d: Vec<&str> = f.degrees.iter().map(|d| d.description.as_str()).collect();
        assert_eq!(d, vec!["0", "0", "Z° (rank one, generators act by -1)"]);
    }

    #[test]
    fn non_manifold_is_rejected() {
        let k = SimplicialComplex::from_facets(&[["a", "b"], ["b", "c"]]).unwrap();
        let sys = flag_system(&k);
        assert!(matches!(free_cohomology_report(&sys, CoefficientRing::Z), Err(Error::Hypothesis(_))));
        let r = vcd_report(&sys, &[CoefficientRing::Z]);
        assert_eq!(r.rings[0].verdict, VcdVerdict::QuotientOnly);
    }
}
