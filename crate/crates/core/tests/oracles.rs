//! Library results checked against independent computations.

mod common;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

use coxsub::coloring::{all_colorings, exact_coloring, Graph};
use coxsub::coxeter::EdgeDefault;
use coxsub::fixtures;
use coxsub::nerve::{chiswell_euler, davis_quotient, right_angled_euler_from_faces, torsion_free_kernel_check};
use coxsub::presentations::{racg_equal, racg_normal_form, reidemeister_schreier};
use coxsub::{AbelianGroup, CoefficientRing, CoxeterSystem, GroupOrder, IntegerMatrix, Label, SimplicialComplex, TwoGroupHom, Word};

fn linear(names: &[&str], labels: &[u32]) -> CoxeterSystem {
    let edges = labels.iter().enumerate().map(|(i, &m)| (names[i].to_string(), names[i + 1].to_string(), Label::Finite(m)));
    CoxeterSystem::new(names, edges, EdgeDefault::Two).unwrap()
}

#[test]
fn smith_form_matches_minor_gcds() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..150 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = IntegerMatrix::from_rows(&rows);
        assert_eq!(m.invariant_factors(), common::minor_gcd_invariants(&rows), "{rows:?}");
    }
}

#[test]
fn special_subgroup_orders_match_enumeration() {
    let systems = [
        linear(&["a", "b", "c"], &[3, 3]),
        linear(&["a", "b", "c"], &[4, 3]),
        linear(&["a", "b", "c"], &[5, 3]),
        linear(&["a", "b", "c", "d"], &[3, 4, 3]),
        linear(&["a", "b"], &[7]),
        linear(&["a", "b", "c", "d"], &[3, 3, 3]),
        CoxeterSystem::new(
            &["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("b", "d")].iter().map(|&(u, v)| (u.to_string(), v.to_string(), Label::Finite(3))),
            EdgeDefault::Two,
        )
        .unwrap(),
        linear(&["a", "b", "c"], &[3, 6]),
    ];
    for sys in &systems {
        let n = sys.len();
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let oracle = common::reflection_group_order(sys, &subset, 5000);
            match sys.special_subgroup_order(&subset) {
                GroupOrder::Finite(o) => assert_eq!(Some(o), oracle.map(BigUint::from), "{subset:?} in {}", sys.to_json()),
                GroupOrder::Infinite => assert_eq!(oracle, None, "{subset:?} in {}", sys.to_json()),
            }
        }
    }
}

#[test]
fn chiswell_matches_face_counts_for_right_angled() {
    for k in [fixtures::rp2_11(), fixtures::octahedron(), fixtures::bowtie().barycentric_subdivision(), fixtures::pentagon_complex()] {
        let sys = CoxeterSystem::from_flag_complex(&k).unwrap();
        let mut expected = BigRational::from_integer(1.into());
        for (i, &f) in k.f_vector().iter().enumerate() {
            let term = BigRational::new(f.into(), (BigUint::from(2u32).pow(i as u32 + 1)).into());
            if i % 2 == 0 {
                expected -= term;
            } else {
                expected += term;
            }
        }
        assert_eq!(chiswell_euler(&sys), expected);
        assert_eq!(right_angled_euler_from_faces(&k.f_vector()), expected);
    }
}

#[test]
fn word_problem_matches_tits_representation() {
    let mut rng = StdRng::seed_from_u64(5);
    for sys in [fixtures::path_system(5), fixtures::cycle_system(5), fixtures::rp2_11_system()] {
        for _ in 0..300 {
            let len_a = rng.gen_range(0..10);
            let a: Vec<usize> = (0..len_a).map(|_| rng.gen_range(0..sys.len())).collect();
            // Bias towards equal pairs by rewriting a copy.
            let mut b = a.clone();
            if rng.gen_bool(0.5) {
                coxsub::battery::random_rewrite(&sys, &mut b, 20, &mut rng);
            } else {
                let len_b = rng.gen_range(0..10);
                b = (0..len_b).map(|_| rng.gen_range(0..sys.len())).collect();
            }
            let same = common::tits_matrix(&sys, &a) == common::tits_matrix(&sys, &b);
            assert_eq!(racg_equal(&sys, &Word::from_gens(&a), &Word::from_gens(&b)).unwrap(), same);
            let nf = racg_normal_form(&sys, &Word::from_gens(&a)).unwrap();
            let nf_gens: Vec<usize> = nf.letters().iter().map(|l| l.gen).collect();
            assert_eq!(common::tits_matrix(&sys, &nf_gens), common::tits_matrix(&sys, &a));
            assert!(nf.len() <= a.len());
        }
    }
}

fn brute_force_colourings(g: &Graph, k: usize) -> BTreeSet<Vec<usize>> {
    let n = g.len();
    let mut out = BTreeSet::new();
    let total = k.pow(n as u32);
    for code in 0..total {
        let colour: Vec<usize> = (0..n).map(|i| code / k.pow(i as u32) % k).collect();
        if g.edges().iter().any(|&(u, v)| colour[u] == colour[v]) {
            continue;
        }
        // Rename colours by first appearance.
        let mut rename = vec![usize::MAX; k];
        let mut next = 0;
        let canon = colour
            .iter()
            .map(|&c| {
                if rename[c] == usize::MAX {
                    rename[c] = next;
                    next += 1;
                }
                rename[c]
            })
            .collect();
        out.insert(canon);
    }
    out
}

#[test]
fn colourings_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.gen_range(1..=7);
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.4)).collect();
        let g = Graph::new((0..n).map(|i| format!("v{i}")).collect(), &edges);
        for k in 1..=4 {
            let oracle = brute_force_colourings(&g, k);
            let ours: BTreeSet<Vec<usize>> = all_colorings(&g, k).iter().map(|c| c.on_graph(&g).unwrap()).collect();
            assert_eq!(ours, oracle);
            assert_eq!(exact_coloring(&g, k).coloring.is_some(), !oracle.is_empty());
        }
    }
}

/// `dim H_k(F_p) = rank H_k(Z) + #{p | t in H_k} + #{p | t in H_(k-1)}`.
fn universal_coefficients(k: &SimplicialComplex, p: u64) {
    let hz = k.homology(CoefficientRing::Z, false);
    let hp = k.homology(CoefficientRing::Fp(p), false);
    let divisible = |g: &AbelianGroup| g.torsion.iter().filter(|t| (*t % p) == BigUint::from(0u32)).count();
    for d in 0..=k.dim().max(0) {
        let expected = hz.degree(d).free_rank + divisible(&hz.degree(d)) + divisible(&hz.degree(d - 1));
        assert_eq!(hp.degree(d).free_rank, expected, "degree {d} mod {p}");
        assert!(hp.degree(d).free_rank >= k.homology(CoefficientRing::Q, false).degree(d).free_rank);
    }
}

#[test]
fn field_homology_obeys_universal_coefficients() {
    for k in [fixtures::rp2_6(), fixtures::rp2_11(), fixtures::bowtie(), fixtures::octahedron(), fixtures::simplex6_2skeleton()] {
        for p in [2, 3, 5] {
            universal_coefficients(&k, p);
        }
        let chi: i64 = k
            .homology(CoefficientRing::Q, false)
            .degrees()
            .map(|(d, g)| if d % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) })
            .sum();
        assert_eq!(chi, k.euler_characteristic());
    }
}

#[test]
fn cohomology_matches_universal_coefficients() {
    // H^k(Z) = free(H_k) + torsion(H_(k-1)).
    for k in [fixtures::rp2_6(), fixtures::rp2_11(), fixtures::bowtie()] {
        let h = k.homology(CoefficientRing::Z, false);
        let c = k.cohomology(CoefficientRing::Z, false);
        for d in 0..=k.dim() {
            let expected = AbelianGroup { free_rank: h.degree(d).free_rank, torsion: h.degree(d - 1).torsion };
            assert_eq!(c.degree(d), expected);
        }
    }
}

#[test]
fn davis_quotient_agrees_with_schreier_on_printed_data() {
    let sys = fixtures::rp2_11_system();
    let psi = fixtures::rp2_11_psi();
    assert!(torsion_free_kernel_check(&sys, &psi).unwrap());
    let dq = davis_quotient(&sys, &psi).unwrap();
    assert_eq!(dq.index, 8);
    let h1 = dq.data.homology(CoefficientRing::Z, false).degree(1);
    let rs = reidemeister_schreier(&sys.presentation(), &psi).unwrap();
    assert_eq!(rs.presentation.abelian_invariants(), h1);
    assert_eq!(fixtures::gamma1().abelian_invariants(), h1);
    assert_eq!(dq.euler_characteristic(), 4);
}

#[test]
fn schreier_generator_count() {
    for k in [fixtures::bowtie(), fixtures::triangle()] {
        let (sys, c) = fixtures::subdivision_system(&k);
        let psi = TwoGroupHom::from_coloring(&sys, &c).unwrap();
        let q = psi.image_order() as usize;
        let rs = reidemeister_schreier(&sys.presentation(), &psi).unwrap();
        assert_eq!(rs.presentation.num_generators(), q * sys.len() - (q - 1));
    }
}

#[test]
fn printed_bcgi_lies_in_the_kernel() {
    let sys = fixtures::rp2_11_system();
    let w = Word::parse("bcgi", sys.names()).unwrap();
    assert_eq!(fixtures::rp2_11_psi().evaluate(&w, sys.names()).unwrap(), 0);
}
