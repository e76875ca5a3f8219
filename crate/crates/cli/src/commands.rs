//! One function per subcommand. Each returns the text to print and whether
//! the verdict was negative.

use serde_json::{json, Value};
use std::path::Path;

use coxsub::coloring::{
    chromatic_number, coloring_by_dimension_of_names, coloring_report, exact_coloring, kernel_generators, pullback_presentation,
};
use coxsub::homology::GradedGroups;
use coxsub::nerve::{chiswell_euler, davis_quotient, free_cohomology_report, vcd_report, Nerve};
use coxsub::presentations::{racg_normal_form, racg_reduce, reidemeister_schreier, tietze_simplify, verify_presentation_hom};
use coxsub::{battery, CoefficientRing, Coloring, CoxeterSystem, Graph, Presentation, SimplicialComplex, Word};
use num_rational::BigRational;

use crate::{input, Cli, CliError, Command, Format, Outcome, Output};

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.global.format;
    let jobs = cli.global.jobs.max(1);
    match &cli.command {
        Command::Nerve { system, out } => nerve(fmt, system, out),
        Command::FlagCheck { complex } => flag_check(fmt, complex),
        Command::Homology { complex, rings, reduced } => graded(fmt, jobs, complex, &rings.rings, *reduced, false),
        Command::Cohomology { complex, rings, reduced } => graded(fmt, jobs, complex, &rings.rings, *reduced, true),
        Command::ManifoldCheck { complex, rings } => manifold_check(fmt, jobs, complex, &rings.rings),
        Command::SphereCheck { complex, rings } => sphere_check(fmt, jobs, complex, &rings.rings),
        Command::Subdivide { complex, out } => subdivide(fmt, complex, out),
        Command::Color { system, colors, by_dimension, out } => color(fmt, system, *colors, *by_dimension, out),
        Command::ColorReport { system, coloring } => color_report(fmt, system, coloring),
        Command::SubgroupGens { system, coloring } => subgroup_gens(fmt, system, coloring),
        Command::PullbackPresentation { system, coloring, out } => pullback(fmt, system, coloring, out),
        Command::Euler { system, index } => euler(fmt, system, *index),
        Command::DavisQuotient { system, hom, rings } => davis(fmt, jobs, system, hom, &rings.rings),
        Command::VcdReport { system, rings } => vcd(fmt, system, &rings.rings),
        Command::FreeCohomology { system, rings } => free_cohomology(fmt, system, &rings.rings),
        Command::WordReduce { system, word, geodesic_only } => word_reduce(fmt, system, word, *geodesic_only),
        Command::VerifyHom { presentation, system, images } => verify_hom(fmt, presentation, system, images),
        Command::RsPresentation { presentation, hom, simplify, out } => rs_presentation(fmt, presentation, hom, *simplify, out),
        Command::Tietze { presentation, effort, out } => tietze(fmt, presentation, *effort, out),
        Command::Abelianize { presentation } => abelianize(fmt, presentation),
        Command::Verify { only } => verify(fmt, *only),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

/// Writes `document` to the output file if requested; prints it for JSON
/// output and `summary` otherwise.
fn emit_document(fmt: Format, out: &Output, document: String, summary: String) -> Result<Outcome, CliError> {
    if let Some(path) = &out.output {
        input::write(path, &document)?;
    }
    Ok(Outcome::ok(if fmt == Format::Json { document } else { summary }))
}

/// Applies `f` to every ring, on up to `jobs` threads; results keep the
/// ring order.
fn per_ring<T: Send>(jobs: usize, rings: &[CoefficientRing], f: impl Fn(CoefficientRing) -> T + Sync) -> Vec<T> {
    if jobs <= 1 || rings.len() <= 1 {
        return rings.iter().map(|&r| f(r)).collect();
    }
    let chunk = rings.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = rings.chunks(chunk).map(|c| s.spawn(|| c.iter().map(|&r| f(r)).collect::<Vec<T>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker thread panicked")).collect()
    })
}

fn ring_prefix(rings: &[CoefficientRing], r: CoefficientRing) -> String {
    if rings.len() > 1 {
        format!("[{r}] ")
    } else {
        String::new()
    }
}

fn complex_summary(k: &SimplicialComplex) -> String {
    let f: Vec<String> = k.f_vector().iter().map(usize::to_string).collect();
    let mut out = format!("dim {} f-vector {}\n", k.dim(), f.join(" "));
    for s in k.facets() {
        out += &k.format_simplex(s);
        out.push('\n');
    }
    out
}

fn nerve(fmt: Format, path: &Path, out: &Output) -> Result<Outcome, CliError> {
    let sys = input::system(path)?;
    let k = Nerve::new(&sys).into_complex();
    emit_document(fmt, out, k.to_json(), complex_summary(&k))
}

fn flag_check(fmt: Format, path: &Path) -> Result<Outcome, CliError> {
    let k = input::complex(path)?;
    let missing = k.missing_clique();
    let text = match (&missing, fmt) {
        (None, Format::Text) => "flag".to_string(),
        (Some(c), Format::Text) => format!("not flag: clique {} spans no simplex", k.format_simplex(c)),
        (_, Format::Json) => pretty(&json!({ "flag": missing.is_none(), "missing_clique": missing.as_ref().map(|c| k.names_of(c)) })),
    };
    Ok(Outcome::verdict(text, missing.is_none()))
}

fn graded(fmt: Format, jobs: usize, path: &Path, rings: &[CoefficientRing], reduced: bool, co: bool) -> Result<Outcome, CliError> {
    let k = input::complex(path)?;
    let groups: Vec<GradedGroups> = per_ring(jobs, rings, |r| if co { k.cohomology(r, reduced) } else { k.homology(r, reduced) });
    let text = match fmt {
        Format::Text => groups.iter().map(|g| format!("{}{}\n", ring_prefix(rings, g.ring), g.render(co))).collect(),
        Format::Json => pretty(&Value::Array(groups.iter().map(GradedGroups::to_json).collect())),
    };
    Ok(Outcome::ok(text))
}

fn manifold_check(fmt: Format, jobs: usize, path: &Path, rings: &[CoefficientRing]) -> Result<Outcome, CliError> {
    let k = input::complex(path)?;
    let pm = k.pseudo_manifold_report();
    let orientable = if pm.holds() { Some(k.is_orientable()?) } else { None };
    let witnesses = per_ring(jobs, rings, |r| k.homology_manifold_witness(r));
    let all = witnesses.iter().all(Option::is_none);
    let text = match fmt {
        Format::Text => {
            let mut t = format!(
                "pseudo-manifold: {} (dim={} pure={} thin={} strongly_connected={})\n",
                pm.holds(),
                pm.dim,
                pm.pure,
                pm.thin,
                pm.strongly_connected
            );
            if let Some(o) = orientable {
                t += &format!("orientable: {o}\n");
            }
            for (&r, w) in rings.iter().zip(&witnesses) {
                t += &match w {
                    None => format!("{r}-homology manifold: true\n"),
                    Some(s) => format!("{r}-homology manifold: false (link of {} is not a homology sphere of the right dimension)\n", k.format_simplex(s)),
                };
            }
            t
        }
        Format::Json => {
            let per: serde_json::Map<String, Value> = rings
                .iter()
                .zip(&witnesses)
                .map(|(r, w)| (r.to_string(), json!({ "homology_manifold": w.is_none(), "bad_link": w.as_ref().map(|s| k.names_of(s)) })))
                .collect();
            pretty(&json!({ "pseudo_manifold": pm, "orientable": orientable, "rings": per }))
        }
    };
    Ok(Outcome::verdict(text, all))
}

fn sphere_check(fmt: Format, jobs: usize, path: &Path, rings: &[CoefficientRing]) -> Result<Outcome, CliError> {
    let k = input::complex(path)?;
    let verdicts = per_ring(jobs, rings, |r| k.is_r_homology_sphere(r));
    let text = match fmt {
        Format::Text => rings.iter().zip(&verdicts).map(|(r, v)| format!("{r}-homology {}-sphere: {v}\n", k.dim())).collect(),
        Format::Json => {
            let per: serde_json::Map<String, Value> = rings.iter().zip(&verdicts).map(|(r, v)| (r.to_string(), json!(v))).collect();
            pretty(&json!({ "dim": k.dim(), "homology_sphere": per }))
        }
    };
    Ok(Outcome::verdict(text, verdicts.iter().all(|&v| v)))
}

fn subdivide(fmt: Format, path: &Path, out: &Output) -> Result<Outcome, CliError> {
    let sd = input::complex(path)?.barycentric_subdivision();
    emit_document(fmt, out, sd.to_json(), complex_summary(&sd))
}

fn coloring_summary(c: &Coloring) -> String {
    c.classes().iter().map(|(k, m)| format!("{k}: {}\n", m.join(" "))).collect()
}

fn color(fmt: Format, path: &Path, k: Option<usize>, by_dimension: bool, out: &Output) -> Result<Outcome, CliError> {
    let sys = input::system(path)?;
    let graph = Graph::from_system(&sys);
    let (found, exact, header) = if by_dimension {
        let c = coloring_by_dimension_of_names(sys.names())?;
        c.check_proper(&graph)?;
        let n = c.num_colours();
        (Some(c), true, format!("{n} colours by dimension"))
    } else if let Some(k) = k {
        let s = exact_coloring(&graph, k);
        let header = match (&s.coloring, s.exact) {
            (Some(c), _) => format!("found a colouring with {} colours (at most {k} requested)", c.num_colours()),
            (None, true) => format!("no colouring with {k} colours exists"),
            (None, false) => format!("greedy search found no colouring with {k} colours; not a proof"),
        };
        (s.coloring, s.exact, header)
    } else {
        let (n, c, exact) = chromatic_number(&graph);
        let header = if exact { format!("chromatic number {n}") } else { format!("at most {n} colours (greedy, not exact)") };
        (Some(c), exact, header)
    };
    match found {
        Some(c) => {
            let summary = format!("{header}\n{}", coloring_summary(&c));
            emit_document(fmt, out, c.to_json(), summary)
        }
        None => {
            let text = match fmt {
                Format::Text => header,
                Format::Json => pretty(&json!({ "found": false, "exact": exact, "colours": k })),
            };
            Ok(Outcome::verdict(text, false))
        }
    }
}

fn color_report(fmt: Format, system: &Path, coloring: &Path) -> Result<Outcome, CliError> {
    let sys = input::system(system)?;
    let c = input::coloring(coloring)?;
    let r = coloring_report(&sys, &c)?;
    let text = match fmt {
        Format::Text => r.render(),
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["all_pairs_adjacent"] = json!(r.all_pairs_adjacent());
            v["all_pairs_connected"] = json!(r.all_pairs_connected());
            v["star_condition"] = json!(r.star_condition());
            pretty(&v)
        }
    };
    Ok(Outcome::verdict(text, r.all_pairs_connected()))
}

fn format_words(sys: &CoxeterSystem, words: &[Word]) -> Vec<String> {
    words.iter().map(|w| w.format(sys.names())).collect()
}

fn subgroup_gens(fmt: Format, system: &Path, coloring: &Path) -> Result<Outcome, CliError> {
    let sys = input::system(system)?;
    let c = input::coloring(coloring)?;
    let k = kernel_generators(&sys, &c)?;
    let (full, eco) = (format_words(&sys, &k.full), format_words(&sys, &k.economical));
    let text = match fmt {
        Format::Text => {
            let mut t = format!("mode: {}\nfull ({}):\n", k.mode, full.len());
            for w in &full {
                t += &format!("  {w}\n");
            }
            t += &format!("economical ({}):\n", eco.len());
            for w in &eco {
                t += &format!("  {w}\n");
            }
            t
        }
        Format::Json => pretty(&json!({ "mode": k.mode.to_string(), "full": full, "economical": eco })),
    };
    Ok(Outcome::ok(text))
}

fn presentation_summary(p: &Presentation) -> String {
    format!(
        "{} generators, {} relators, total length {}\nabelian invariants: {}\n",
        p.num_generators(),
        p.relators().len(),
        p.total_length(),
        p.abelian_invariants()
    )
}

fn presentation_listing(p: &Presentation) -> String {
    let mut t = presentation_summary(p);
    t += &format!("generators: {}\n", p.generators().join(" "));
    for r in p.relators() {
        t += &format!("  {}\n", p.format_word(r));
    }
    t
}

fn pullback(fmt: Format, system: &Path, coloring: &Path, out: &Output) -> Result<Outcome, CliError> {
    let sys = input::system(system)?;
    let c = input::coloring(coloring)?;
    let p = pullback_presentation(&sys, &c)?;
    emit_document(fmt, out, p.to_json(), presentation_listing(&p))
}

fn euler(fmt: Format, path: &Path, index: Option<u64>) -> Result<Outcome, CliError> {
    let sys = input::system(path)?;
    let chi = chiswell_euler(&sys);
    let scaled = index.map(|n| &chi * BigRational::from_integer(n.into()));
    let text = match fmt {
        Format::Text => {
            let mut t = format!("chi = {chi}\n");
            if let (Some(n), Some(s)) = (index, &scaled) {
                t += &format!("{n}*chi = {s}\n");
            }
            t
        }
        Format::Json => pretty(&json!({
            "chi": chi.to_string(),
            "index": index,
            "index_times_chi": scaled.map(|s| s.to_string()),
        })),
    };
    Ok(Outcome::ok(text))
}

fn davis(fmt: Format, jobs: usize, system: &Path, hom: &Path, rings: &[CoefficientRing]) -> Result<Outcome, CliError> {
    let sys = input::system(system)?;
    let psi = input::hom(hom, &sys)?;
    let dq = davis_quotient(&sys, &psi)?;
    let expected = &dq.group_euler * BigRational::from_integer(dq.index.into());
    let groups = per_ring(jobs, rings, |r| dq.data.homology(r, false));
    let text = match fmt {
        Format::Text => {
            let cells: Vec<String> = dq.data.cells().iter().map(usize::to_string).collect();
            let mut t = format!(
                "index {}\ncells {}\nchi = {} (index * chi(group) = {expected})\n",
                dq.index,
                cells.join(" "),
                dq.euler_characteristic()
            );
            for g in &groups {
                t += &format!("{}{}\n", ring_prefix(rings, g.ring), g.render(false));
            }
            t
        }
        Format::Json => pretty(&json!({
            "index": dq.index,
            "cells": dq.data.cells(),
            "euler_characteristic": dq.euler_characteristic(),
            "index_times_group_euler": expected.to_string(),
            "homology": groups.iter().map(GradedGroups::to_json).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::ok(text))
}

fn vcd(fmt: Format, system: &Path, rings: &[CoefficientRing]) -> Result<Outcome, CliError> {
    let sys = input::system(system)?;
    let r = vcd_report(&sys, rings);
    Ok(Outcome::ok(match fmt {
        Format::Text => r.render(),
        Format::Json => pretty(&r.to_json()),
    }))
}

fn free_cohomology(fmt: Format, system: &Path, rings: &[CoefficientRing]) -> Result<Outcome, CliError> {
    let sys = input::system(system)?;
    let reports = rings.iter().map(|&r| free_cohomology_report(&sys, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::ok(match fmt {
        Format::Text => reports
            .iter()
            .flat_map(|r| r.render().lines().map(|l| format!("{}{l}\n", ring_prefix(rings, r.ring))).collect::<Vec<_>>())
            .collect(),
        Format::Json => pretty(&Value::Array(reports.iter().map(|r| r.to_json()).collect())),
    }))
}

fn word_reduce(fmt: Format, system: &Path, word: &str, geodesic_only: bool) -> Result<Outcome, CliError> {
    let sys = input::system(system)?;
    let w = Word::parse(word, sys.names())?.forget_inverses();
    let r = if geodesic_only { racg_reduce(&sys, &w)? } else { racg_normal_form(&sys, &w)? };
    let text = r.format(sys.names());
    Ok(Outcome::ok(match fmt {
        Format::Text => text,
        Format::Json => pretty(&json!({ "input": word, "result": text, "length": r.len() })),
    }))
}

fn verify_hom(fmt: Format, presentation: &Path, system: &Path, images: &Path) -> Result<Outcome, CliError> {
    let (p, _) = input::presentation(presentation)?;
    let sys = input::system(system)?;
    let map = coxsub::presentations::images_from_json(&input::read(images)?, sys.names())?;
    let failure = verify_presentation_hom(&p, &sys, &map)?;
    let text = match (fmt, failure) {
        (Format::Text, None) => format!("all {} relators map to the identity", p.relators().len()),
        (Format::Text, Some(i)) => format!("relator {} ({}) does not map to the identity", i, p.format_word(&p.relators()[i])),
        (Format::Json, f) => pretty(&json!({
            "holds": f.is_none(),
            "relators": p.relators().len(),
            "first_failure": f.map(|i| json!({ "index": i, "relator": p.format_word(&p.relators()[i]) })),
        })),
    };
    Ok(Outcome::verdict(text, failure.is_none()))
}

fn rs_presentation(fmt: Format, presentation: &Path, hom: &Path, simplify: Option<usize>, out: &Output) -> Result<Outcome, CliError> {
    let (p, sys) = input::presentation(presentation)?;
    let sys = match sys {
        Some(s) => s,
        None => CoxeterSystem::right_angled::<String>(p.generators(), &[])?,
    };
    let psi = input::hom(hom, &sys)?;
    let rs = reidemeister_schreier(&p, &psi)?;
    let result = match simplify {
        Some(e) => tietze_simplify(&rs.presentation, e),
        None => rs.presentation,
    };
    let summary = format!("index {}\n{}", rs.cosets.len(), presentation_summary(&result));
    emit_document(fmt, out, result.to_json(), summary)
}

fn tietze(fmt: Format, presentation: &Path, effort: usize, out: &Output) -> Result<Outcome, CliError> {
    let (p, _) = input::presentation(presentation)?;
    let s = tietze_simplify(&p, effort);
    emit_document(fmt, out, s.to_json(), presentation_listing(&s))
}

fn abelianize(fmt: Format, presentation: &Path) -> Result<Outcome, CliError> {
    let (p, _) = input::presentation(presentation)?;
    let a = p.abelian_invariants();
    Ok(Outcome::ok(match fmt {
        Format::Text => a.to_string(),
        Format::Json => pretty(&a.to_json()),
    }))
}

fn verify(fmt: Format, only: Option<usize>) -> Result<Outcome, CliError> {
    let results = match only {
        Some(id) => vec![battery::run(id).ok_or_else(|| CliError::Input(format!("no check numbered {id}")))?],
        None => battery::run_all(),
    };
    let passed = results.iter().filter(|r| r.passed()).count();
    let text = match fmt {
        Format::Text => {
            let mut t: String = results.iter().map(|r| r.line() + "\n").collect();
            t += &format!("{passed}/{} passed\n", results.len());
            t
        }
        Format::Json => pretty(&json!({
            "passed": passed,
            "total": results.len(),
            "checks": results.iter().map(|r| json!({
                "id": r.id,
                "name": r.name,
                "pass": r.passed(),
                "detail": r.detail,
                "seconds": r.elapsed.as_secs_f64(),
                "budget_seconds": r.budget.as_secs(),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome { stdout: text, negative: passed < results.len(), always_fail: passed < results.len() })
}
