//! Acceptance gate: one PASS/FAIL line per criterion, each within its time
//! budget. Library results are checked against the test oracles in
//! `common` and against the built-in battery.

mod common;

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

use coxsub::coloring::{all_colorings, chromatic_number, conjugate_as_pair_product, coloring_by_dimension, pullback_presentation, Graph};
use coxsub::nerve::{chiswell_euler, davis_quotient};
use coxsub::presentations::{racg_normal_form, reidemeister_schreier, tietze_simplify, verify_presentation_hom};
use coxsub::{battery, fixtures, AbelianGroup, CoefficientRing, Coloring, CoxeterSystem, Error, IntegerMatrix, SimplicialComplex, TwoGroupHom, Word};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Euler characteristic straight from nerve face counts.
fn face_count_euler(k: &SimplicialComplex) -> BigRational {
    let mut chi = rational(1);
    let mut weight = rational(1);
    for (i, &f) in k.f_vector().iter().enumerate() {
        weight /= rational(2);
        let term = &weight * rational(f as i64);
        chi = if i % 2 == 0 { chi - term } else { chi + term };
    }
    chi
}

fn criterion_1() -> Outcome {
    let rp2 = fixtures::rp2_11();
    ensure(rp2.f_vector() == [11, 30, 20], || format!("f-vector {:?}", rp2.f_vector()))?;
    let a = chiswell_euler(&CoxeterSystem::from_flag_complex(&rp2).unwrap()) * rational(8);
    ensure(a == rational(4), || format!("8*chi = {a}, expected 4"))?;
    ensure(face_count_euler(&rp2) * rational(8) == a, || "face-count formula disagrees".into())?;
    let pent = fixtures::pentagon_complex();
    ensure(pent.f_vector() == [21, 80, 60], || format!("f-vector {:?}", pent.f_vector()))?;
    let b = chiswell_euler(&CoxeterSystem::from_flag_complex(&pent).unwrap()) * rational(8);
    ensure(b == rational(24), || format!("8*chi = {b}, expected 24"))?;
    ensure(face_count_euler(&pent) * rational(8) == b, || "face-count formula disagrees".into())?;
    Ok(format!("8*chi = {a} (11/30/20), {b} (21/80/60)"))
}

fn kernel_abelianization(k: &SimplicialComplex) -> (CoxeterSystem, TwoGroupHom, AbelianGroup) {
    let sd = k.barycentric_subdivision();
    let sys = CoxeterSystem::from_flag_complex(&sd).unwrap();
    let c = coloring_by_dimension(&sd).unwrap();
    let psi = TwoGroupHom::from_coloring(&sys, &c).unwrap();
    let rs = reidemeister_schreier(&sys.presentation(), &psi).unwrap();
    let ab = tietze_simplify(&rs.presentation, 4).abelian_invariants();
    assert_eq!(ab, rs.presentation.abelian_invariants(), "Tietze changed the abelianization");
    (sys, psi, ab)
}

fn criterion_2() -> Outcome {
    let (sys, psi, ab) = kernel_abelianization(&fixtures::bowtie());
    ensure(sys.len() == 13, || format!("{} generators", sys.len()))?;
    ensure(psi.image_order() == 8, || format!("index {}", psi.image_order()))?;
    ensure(ab == AbelianGroup::free(11), || format!("abelianization {ab}"))?;
    Ok(format!("13 generators, index 8, abelianization {ab}"))
}

fn criterion_3_for(k: &SimplicialComplex) -> Outcome {
    let (sys, psi, ab) = kernel_abelianization(k);
    let dq = davis_quotient(&sys, &psi).map_err(|e| e.to_string())?;
    let h1 = dq.data.homology(CoefficientRing::Z, false).degree(1);
    ensure(h1 == ab, || format!("H1 {h1} vs abelianization {ab}"))?;
    let chi = rational(dq.euler_characteristic());
    let expected = face_count_euler(&k.barycentric_subdivision()) * rational(dq.index as i64);
    ensure(chi == expected, || format!("chi {chi} vs index * chi(group) {expected}"))?;
    Ok(format!("H1 = {h1}, chi = {chi}"))
}

fn criterion_4() -> Outcome {
    let rp2 = fixtures::rp2_6();
    let z = rp2.homology(CoefficientRing::Z, false);
    let want = [AbelianGroup::free(1), AbelianGroup::new(0, &[2]), AbelianGroup::zero()];
    for (d, w) in want.iter().enumerate() {
        ensure(z.degree(d as isize) == *w, || format!("H{d}(Z) = {}", z.degree(d as isize)))?;
    }
    let dims = |p: u64| -> Vec<usize> {
        let h = rp2.homology(CoefficientRing::Fp(p), false);
        (0..3).map(|d| h.degree(d).free_rank).collect()
    };
    ensure(dims(2) == [1, 1, 1], || format!("F2 dims {:?}", dims(2)))?;
    ensure(dims(3) == [1, 0, 0], || format!("F3 dims {:?}", dims(3)))?;
    for n in 1..=4 {
        ensure(SimplicialComplex::sphere(n).is_r_homology_sphere(CoefficientRing::Z), || format!("sphere {n}"))?;
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let trials = 120;
    for _ in 0..trials {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-7..=7)).collect()).collect();
        let ours = IntegerMatrix::from_rows(&rows).invariant_factors();
        ensure(ours == common::minor_gcd_invariants(&rows), || format!("SNF mismatch on {rows:?}"))?;
    }
    Ok(format!("RP2 (Z, Z/2, 0), F2 (1,1,1), F3 (1,0,0); spheres 1..4; {trials} SNFs match minor gcds"))
}

fn criterion_5() -> Outcome {
    ensure(!fixtures::simplex6_2skeleton().is_flag(), || "6-simplex 2-skeleton accepted".into())?;
    let fixtures_set = [
        fixtures::rp2_6(),
        fixtures::rp2_11(),
        fixtures::bowtie(),
        fixtures::triangle(),
        fixtures::hollow_triangle(),
        fixtures::tetrahedron_boundary(),
        fixtures::octahedron(),
        fixtures::simplex6_2skeleton(),
        fixtures::pentagon_complex(),
    ];
    for k in &fixtures_set {
        ensure(k.barycentric_subdivision().is_flag(), || "a subdivision is not flag".into())?;
    }
    let rp2 = fixtures::rp2_6();
    ensure(rp2.is_r_homology_manifold(CoefficientRing::Z), || "RP2 not a Z-manifold".into())?;
    for r in [CoefficientRing::Z, CoefficientRing::Q, CoefficientRing::Fp(2), CoefficientRing::Fp(3)] {
        ensure(!rp2.is_r_homology_sphere(r), || format!("RP2 is an {r}-sphere"))?;
    }
    ensure(!fixtures::bowtie().is_r_homology_manifold(CoefficientRing::Z), || "bow tie is a manifold".into())?;
    Ok(format!("flag checks on {} subdivisions; RP2 manifold not sphere; bow tie rejected", fixtures_set.len()))
}

fn criterion_6() -> Outcome {
    let (k4, _, exact) = chromatic_number(&fixtures::k4());
    ensure(k4 == 4 && exact, || format!("K4: {k4}"))?;
    let sys = fixtures::rp2_11_system();
    let g = Graph::from_system(&sys);
    let (chi, c, exact) = chromatic_number(&g);
    ensure(chi == 4 && exact, || format!("RP2-11: {chi}"))?;
    c.check_proper(&g).map_err(|e| e.to_string())?;
    let four = all_colorings(&g, 4);
    ensure(!four.is_empty(), || "no 4-colourings".into())?;
    for c in &four {
        let star_fails = coxsub::coloring::coloring_report(&sys, c).unwrap().star_failures().len();
        ensure(star_fails > 0, || "a colouring satisfies the star condition".into())?;
        match pullback_presentation(&sys, c) {
            Err(Error::StarCondition(_)) => {}
            other => return Err(format!("expected a star-condition error, got {other:?}")),
        }
    }
    Ok(format!("chromatic numbers 4, 4; {} colourings all fail the star condition", four.len()))
}

fn criterion_7() -> Outcome {
    let systems = [
        fixtures::path_system(6),
        fixtures::cycle_system(6),
        fixtures::rp2_11_system(),
        CoxeterSystem::from_flag_complex(&fixtures::octahedron()).unwrap(),
        CoxeterSystem::from_flag_complex(&fixtures::bowtie().barycentric_subdivision()).unwrap(),
    ];
    let mut rng = StdRng::seed_from_u64(99);
    let trials = 1000;
    for sys in &systems {
        for _ in 0..trials {
            let mut w: Vec<usize> = (0..rng.gen_range(0..14)).map(|_| rng.gen_range(0..sys.len())).collect();
            let before = racg_normal_form(sys, &Word::from_gens(&w)).unwrap();
            let tits = common::tits_matrix(sys, &w);
            battery::random_rewrite(sys, &mut w, 50, &mut rng);
            ensure(common::tits_matrix(sys, &w) == tits, || "rewrite oracle changed the element".into())?;
            ensure(racg_normal_form(sys, &Word::from_gens(&w)).unwrap() == before, || "normal form changed".into())?;
        }
    }
    // Path p0 - p1 - p2 - p3 - p4 with colours alternating.
    let path = fixtures::path_system(5);
    let c = Coloring::from_vec(path.names(), &[0, 1, 0, 1, 0]);
    let factors = conjugate_as_pair_product(&path, &c, 1, 0, 4).map_err(|e| e.to_string())?;
    ensure(factors.iter().all(|f| f.len() == 2), || "factor is not a pair".into())?;
    let target = Word::from_gens(&[1, 0, 4, 1]);
    let residue = racg_normal_form(&path, &Word::product(factors.iter()).concat(&target.inverse())).unwrap();
    ensure(residue.is_empty(), || "path identity does not reduce".into())?;
    Ok(format!("{} fixtures x {trials} rewrite trials; path identity reduces to the empty word", systems.len()))
}

fn criterion_8() -> Outcome {
    let sd = fixtures::triangle().barycentric_subdivision();
    let sys = CoxeterSystem::from_flag_complex(&sd).unwrap();
    let c = coloring_by_dimension(&sd).unwrap();
    let p = pullback_presentation(&sys, &c).map_err(|e| e.to_string())?;
    ensure(p.num_generators() == 7, || format!("{} generators", p.num_generators()))?;
    ensure(p.relators().len() == 16, || format!("{} relators", p.relators().len()))?;
    ensure(p.relators().iter().all(|r| r.len() == 4), || "relator length".into())?;
    let ab = p.abelian_invariants();
    ensure(ab == AbelianGroup::new(3, &[2, 2, 2, 2]), || format!("abelianization {ab}"))?;
    Ok(format!("7 generators, 16 relators of length 4, {ab}"))
}

fn criterion_9() -> Outcome {
    let sys = fixtures::rp2_11_system();
    let (g1, d) = (fixtures::gamma1(), fixtures::delta());
    ensure(g1.relators().len() == 12 && d.relators().len() == 12, || "relator counts".into())?;
    let first = verify_presentation_hom(&g1, &sys, &fixtures::gamma1_words()).unwrap();
    ensure(first.is_none(), || format!("first presentation fails at relator {first:?}"))?;
    let second = verify_presentation_hom(&d, &sys, &fixtures::delta_phi()).unwrap();
    ensure(second.is_none(), || format!("second presentation fails at relator {second:?}"))?;
    // Independent check through the faithful integer representation.
    for (p, images) in [(&g1, fixtures::gamma1_words()), (&d, fixtures::delta_phi())] {
        for r in p.relators() {
            let image: Vec<usize> = r
                .letters()
                .iter()
                .flat_map(|l| {
                    let w = &images[&p.generators()[l.gen]];
                    let mut gens: Vec<usize> = w.letters().iter().map(|x| x.gen).collect();
                    if l.inv {
                        gens.reverse();
                    }
                    gens
                })
                .collect();
            ensure(common::tits_matrix(&sys, &image) == common::tits_matrix(&sys, &[]), || format!("relator {} is not trivial", p.format_word(r)))?;
        }
    }
    let (a, b) = (g1.abelian_invariants(), d.abelian_invariants());
    ensure(a == b, || format!("{a} vs {b}"))?;
    Ok(format!("24 relators trivial in the group; both abelianize to {a}"))
}

fn report(label: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let ok = outcome.is_ok() && elapsed <= budget;
    let detail = match outcome {
        Ok(d) => d,
        Err(d) => d,
    };
    println!(
        "{} criterion {label}: {detail} [{:.3}s, budget {}s]",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    ok
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let mut all = true;
    all &= report("1 (Euler characteristic)", s(1), criterion_1);
    all &= report("2 (bow-tie pipeline)", s(60), criterion_2);
    for (name, k) in [("bow tie", fixtures::bowtie()), ("triangle", fixtures::triangle()), ("tetrahedron boundary", fixtures::tetrahedron_boundary())] {
        all &= report(&format!("3 (quotient vs presentation, {name})"), s(60), || criterion_3_for(&k));
    }
    all &= report("4 (homology engine)", s(10), criterion_4);
    all &= report("5 (predicates)", s(5), criterion_5);
    all &= report("6 (colourings)", s(30), criterion_6);
    all &= report("7 (word problem)", s(10), criterion_7);
    all &= report("8 (pullback presentation)", s(5), criterion_8);
    all &= report("9 (printed presentations)", s(10), criterion_9);
    for r in battery::run_all() {
        println!("{}", r.line());
        all &= r.passed();
    }
    assert!(all, "some acceptance criteria failed");
}
