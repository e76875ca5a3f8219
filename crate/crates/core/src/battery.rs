//! End-to-end checks over the built-in fixtures, each with a time budget.
//! Backs the `verify` command.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

use crate::coloring::{all_colorings, chromatic_number, conjugate_as_pair_product, pullback_presentation, Graph};
use crate::coxeter::CoxeterSystem;
use crate::fixtures;
use crate::homology::{AbelianGroup, CoefficientRing, IntegerMatrix};
use crate::nerve::{chiswell_euler, davis_quotient, TwoGroupHom};
use crate::presentations::{racg_normal_form, reidemeister_schreier, tietze_simplify, verify_presentation_hom, Word};
use crate::simplicial::SimplicialComplex;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn line(&self) -> String {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "{tag} [{}] {} ({:.3}s of {}s): {}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

type Check = fn() -> Result<String, String>;

/// `(id, name, budget in seconds, check)`.
pub const CHECKS: &[(usize, &str, u64, Check)] = &[
    (1, "orbifold Euler characteristic", 1, euler_values),
    (2, "bow-tie kernel abelianization", 60, bowtie_pipeline),
    (3, "Davis quotient against Reidemeister-Schreier", 60, quotient_vs_presentation),
    (4, "homology engine", 10, homology_engine),
    (5, "flag and manifold predicates", 5, predicates),
    (6, "chromatic numbers and star condition", 30, colourings),
    (7, "right-angled word problem", 10, word_problem),
    (8, "pullback presentation of the triangle", 5, pullback_triangle),
    (9, "printed presentations map to the identity", 10, printed_presentations),
];

pub fn run(id: usize) -> Option<CheckResult> {
    let &(id, name, budget, check) = CHECKS.iter().find(|c| c.0 == id)?;
    let budget = Duration::from_secs(budget);
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (status, detail) = match outcome {
        Ok(d) if elapsed <= budget => (Status::Pass, d),
        Ok(d) => (Status::Fail, format!("{d}; over time budget")),
        Err(d) => (Status::Fail, d),
    };
    Some(CheckResult { id, name, status, detail, elapsed, budget })
}

pub fn run_all() -> Vec<CheckResult> {
    CHECKS.iter().filter_map(|c| run(c.0)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn euler_values() -> Result<String, String> {
    let eight = BigRational::from_integer(8.into());
    let rp2 = fixtures::rp2_11_system();
    let a = chiswell_euler(&rp2) * &eight;
    ensure(a == BigRational::from_integer(4.into()), || format!("11/30/20 system: 8*chi = {a}, expected 4"))?;
    let pent = fixtures::pentagon_complex();
    ensure(pent.f_vector() == [21, 80, 60], || format!("pentagon complex f-vector {:?}", pent.f_vector()))?;
    let b = chiswell_euler(&CoxeterSystem::from_flag_complex(&pent).map_err(err)?) * &eight;
    ensure(b == BigRational::from_integer(24.into()), || format!("21/80/60 system: 8*chi = {b}, expected 24"))?;
    Ok(format!("8*chi = {a} and {b}"))
}

/// Abelianization of the kernel of the colouring-by-dimension map on the
/// subdivision of `k`, via Reidemeister-Schreier and Tietze moves.
fn kernel_abelianization(k: &SimplicialComplex) -> Result<(usize, u64, AbelianGroup), String> {
    let (sys, c) = fixtures::subdivision_system(k);
    let psi = TwoGroupHom::from_coloring(&sys, &c).map_err(err)?;
    let rs = reidemeister_schreier(&sys.presentation(), &psi).map_err(err)?;
    let simplified = tietze_simplify(&rs.presentation, 4);
    Ok((sys.len(), psi.image_order(), simplified.abelian_invariants()))
}

fn bowtie_pipeline() -> Result<String, String> {
    let (n, index, ab) = kernel_abelianization(&fixtures::bowtie())?;
    ensure(n == 13, || format!("{n} generators, expected 13"))?;
    ensure(index == 8, || format!("index {index}, expected 8"))?;
    ensure(ab == AbelianGroup::free(11), || format!("abelianization {ab}, expected Z^11"))?;
    Ok(format!("13 generators, index 8, abelianization {ab}"))
}

fn quotient_vs_presentation() -> Result<String, String> {
    let mut report = Vec::new();
    for (name, k) in [
        ("bow tie", fixtures::bowtie()),
        ("triangle", fixtures::triangle()),
        ("tetrahedron boundary", fixtures::tetrahedron_boundary()),
    ] {
        let (sys, c) = fixtures::subdivision_system(&k);
        let psi = TwoGroupHom::from_coloring(&sys, &c).map_err(err)?;
        let dq = davis_quotient(&sys, &psi).map_err(err)?;
        let h1 = dq.data.homology(CoefficientRing::Z, false).degree(1);
        let (_, _, ab) = kernel_abelianization(&k)?;
        ensure(h1 == ab, || format!("{name}: H1 = {h1} but abelianization = {ab}"))?;
        let expected = dq.group_euler.clone() * BigRational::from_integer(dq.index.into());
        let chi = BigRational::from_integer(dq.euler_characteristic().into());
        ensure(chi == expected, || format!("{name}: chi = {chi}, index * chi(group) = {expected}"))?;
        report.push(format!("{name}: H1 = {h1}, chi = {chi}"));
    }
    Ok(report.join("; "))
}

/// Invariant factors as ratios of successive gcds of `k x k` minors.
pub fn determinantal_divisors(m: &IntegerMatrix) -> Vec<BigUint> {
    let (r, c) = (m.rows(), m.cols());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                g = g.gcd(&determinant(minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| (&w[1] / &w[0]).abs().to_biguint().unwrap()).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Fraction-free (Bareiss) elimination.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn homology_engine() -> Result<String, String> {
    let rp2 = fixtures::rp2_6();
    let hz = rp2.homology(CoefficientRing::Z, false);
    let expected = [AbelianGroup::free(1), AbelianGroup::new(0, &[2]), AbelianGroup::zero()];
    for (d, e) in expected.iter().enumerate() {
        ensure(hz.degree(d as isize) == *e, || format!("RP2 H{d}(Z) = {}, expected {e}", hz.degree(d as isize)))?;
    }
    for (p, dims) in [(2, [1, 1, 1]), (3, [1, 0, 0])] {
        let h = rp2.homology(CoefficientRing::prime_field(p).map_err(err)?, false);
        for (d, &e) in dims.iter().enumerate() {
            let got = h.degree(d as isize).free_rank;
            ensure(got == e, || format!("RP2 dim H{d}(F{p}) = {got}, expected {e}"))?;
        }
    }
    for n in 1..=4 {
        ensure(SimplicialComplex::sphere(n).is_r_homology_sphere(CoefficientRing::Z), || format!("boundary of the {}-simplex is not a homology sphere", n + 1))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for t in 0..120 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntegerMatrix::from_rows(&rows);
        ensure(m.invariant_factors() == determinantal_divisors(&m), || format!("random matrix {t} disagrees with the minor-gcd oracle: {rows:?}"))?;
    }
    Ok("RP2 (Z, Z/2, 0), F2 dims (1,1,1), F3 dims (1,0,0); spheres 1..4; 120 random SNFs".into())
}

fn predicates() -> Result<String, String> {
    ensure(!fixtures::simplex6_2skeleton().is_flag(), || "2-skeleton of the 6-simplex accepted as flag".into())?;
    for k in [fixtures::rp2_6(), fixtures::bowtie(), fixtures::triangle(), fixtures::hollow_triangle(), fixtures::tetrahedron_boundary(), fixtures::octahedron(), fixtures::rp2_11(), fixtures::simplex6_2skeleton()] {
        let sd = k.barycentric_subdivision();
        ensure(sd.is_flag(), || format!("subdivision with {} vertices is not flag", sd.num_vertices()))?;
    }
    let rp2 = fixtures::rp2_6();
    ensure(rp2.is_r_homology_manifold(CoefficientRing::Z), || "RP2 is not a Z-homology manifold".into())?;
    for ring in [CoefficientRing::Z, CoefficientRing::Q, CoefficientRing::Fp(2), CoefficientRing::Fp(3)] {
        ensure(!rp2.is_r_homology_sphere(ring), || format!("RP2 is a {ring}-homology sphere"))?;
    }
    ensure(!fixtures::bowtie().is_r_homology_manifold(CoefficientRing::Z), || "bow tie is a homology manifold".into())?;
    Ok("flag, manifold and sphere predicates as expected".into())
}

fn colourings() -> Result<String, String> {
    let (k4, _, exact) = chromatic_number(&fixtures::k4());
    ensure(k4 == 4 && exact, || format!("K4 chromatic number {k4}"))?;
    let sys = fixtures::rp2_11_system();
    let graph = Graph::from_system(&sys);
    let (chi, _, exact) = chromatic_number(&graph);
    ensure(chi == 4 && exact, || format!("11-vertex RP2 chromatic number {chi} (exact: {exact})"))?;
    let all = all_colorings(&graph, 4);
    for c in &all {
        match pullback_presentation(&sys, c) {
            Err(Error::StarCondition(_)) => {}
            other => return Err(format!("a 4-colouring passes the star condition: {other:?}")),
        }
    }
    Ok(format!("chromatic numbers 4 and 4; all {} 4-colourings fail the star condition", all.len()))
}

/// Applies `steps` random relations of a right-angled group to a word over
/// its generators: commuting neighbours are swapped, and `v v` is inserted
/// or deleted.
pub fn random_rewrite(sys: &CoxeterSystem, word: &mut Vec<usize>, steps: usize, rng: &mut impl Rng) {
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if word.len() >= 2 => {
                let i = rng.gen_range(0..word.len() - 1);
                if sys.commute(word[i], word[i + 1]) {
                    word.swap(i, i + 1);
                }
            }
            1 => {
                let i = rng.gen_range(0..=word.len());
                let v = rng.gen_range(0..sys.len());
                word.splice(i..i, [v, v]);
            }
            _ => {
                if let Some(i) = (0..word.len().saturating_sub(1)).find(|&i| word[i] == word[i + 1]) {
                    word.drain(i..i + 2);
                }
            }
        }
    }
}

fn word_problem() -> Result<String, String> {
    let systems = [
        ("path", fixtures::path_system(6)),
        ("pentagon", fixtures::cycle_system(5)),
        ("11-vertex RP2", fixtures::rp2_11_system()),
        ("octahedron", CoxeterSystem::from_flag_complex(&fixtures::octahedron()).map_err(err)?),
        ("bow-tie subdivision", fixtures::subdivision_system(&fixtures::bowtie()).0),
    ];
    let mut rng = StdRng::seed_from_u64(7);
    let trials = 1000;
    for (name, sys) in &systems {
        for t in 0..trials {
            let len = rng.gen_range(0..16);
            let mut w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..sys.len())).collect();
            let before = racg_normal_form(sys, &Word::from_gens(&w)).map_err(err)?;
            random_rewrite(sys, &mut w, 50, &mut rng);
            let after = racg_normal_form(sys, &Word::from_gens(&w)).map_err(err)?;
            ensure(before == after, || format!("{name}: trial {t} changed the normal form"))?;
        }
    }
    let path = fixtures::path_system(5);
    let names: Vec<String> = path.names().to_vec();
    let c = crate::coloring::Coloring::from_vec(&names, &[0, 1, 0, 1, 0]);
    let factors = conjugate_as_pair_product(&path, &c, 1, 0, 4).map_err(err)?;
    let target = Word::from_gens(&[1, 0, 4, 1]);
    let residue = racg_normal_form(&path, &Word::product(factors.iter()).concat(&target.inverse())).map_err(err)?;
    ensure(residue.is_empty(), || format!("path identity leaves {}", residue.format(&names)))?;
    Ok(format!("{} fixtures x {trials} trials; path identity reduces to the empty word", systems.len()))
}

fn pullback_triangle() -> Result<String, String> {
    let (sys, c) = fixtures::subdivision_system(&fixtures::triangle());
    let p = pullback_presentation(&sys, &c).map_err(err)?;
    ensure(p.num_generators() == 7, || format!("{} generators", p.num_generators()))?;
    ensure(p.relators().len() == 16, || format!("{} relators", p.relators().len()))?;
    ensure(p.relators().iter().all(|r| r.len() == 4), || "a relator does not have length 4".into())?;
    let ab = p.abelian_invariants();
    ensure(ab == AbelianGroup::new(3, &[2, 2, 2, 2]), || format!("abelianization {ab}"))?;
    Ok(format!("7 generators, 16 relators of length 4, abelianization {ab}"))
}

fn printed_presentations() -> Result<String, String> {
    let sys = fixtures::rp2_11_system();
    let g1 = fixtures::gamma1();
    let d = fixtures::delta();
    if let Some(i) = verify_presentation_hom(&g1, &sys, &fixtures::gamma1_words()).map_err(err)? {
        return Err(format!("first presentation: relator {} is not sent to the identity", g1.format_word(&g1.relators()[i])));
    }
    if let Some(i) = verify_presentation_hom(&d, &sys, &fixtures::delta_phi()).map_err(err)? {
        return Err(format!("second presentation: relator {} is not sent to the identity", d.format_word(&d.relators()[i])));
    }
    let (a, b) = (g1.abelian_invariants(), d.abelian_invariants());
    ensure(a == b, || format!("abelianizations differ: {a} vs {b}"))?;
    Ok(format!("24 relators map to the identity; both abelianize to {a}"))
}
