//! Word problem for right-angled Coxeter groups.
//!
//! A word is shortened by deleting two occurrences of the same generator
//! whenever every letter between them commutes with it; a word admitting no
//! such deletion is geodesic, and any two geodesics for the same element
//! differ by commutations. The normal form is the lexicographically least
//! word in that commutation class, built by repeatedly taking the smallest
//! letter that can be shuffled to the front.

use std::collections::BTreeMap;

use super::{Letter, Presentation, Word};
use crate::coxeter::CoxeterSystem;
use crate::{Error, Result};

fn check(sys: &CoxeterSystem, w: &Word) -> Result<Vec<usize>> {
    sys.require_right_angled()?;
    w.letters()
        .iter()
        .map(|l| if l.gen < sys.len() { Ok(l.gen) } else { Err(Error::UnknownGenerator(format!("#{}", l.gen))) })
        .collect()
}

/// Deletes cancelling pairs until the word is geodesic. Letter order is
/// otherwise preserved.
pub fn racg_reduce(sys: &CoxeterSystem, w: &Word) -> Result<Word> {
    let mut gens = check(sys, w)?;
    'outer: loop {
        for i in 0..gens.len() {
            let v = gens[i];
            for j in (i + 1)..gens.len() {
                if gens[j] == v {
                    gens.remove(j);
                    gens.remove(i);
                    continue 'outer;
                }
                if !sys.commute(v, gens[j]) {
                    break;
                }
            }
        }
        break;
    }
    Ok(Word::from_gens(&gens))
}

pub fn racg_normal_form(sys: &CoxeterSystem, w: &Word) -> Result<Word> {
    let mut rest: Vec<usize> = racg_reduce(sys, w)?.letters().iter().map(|l| l.gen).collect();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            if best.is_some_and(|b| rest[b] <= rest[i]) {
                continue;
            }
            if rest[..i].iter().all(|&u| sys.commute(u, rest[i])) {
                best = Some(i);
            }
        }
        let b = best.expect("the first letter is always available");
        out.push(rest.remove(b));
    }
    Ok(Word::from_gens(&out))
}

pub fn racg_equal(sys: &CoxeterSystem, a: &Word, b: &Word) -> Result<bool> {
    Ok(racg_normal_form(sys, a)? == racg_normal_form(sys, b)?)
}

/// Substitutes `images` (words in the target's generators, one per source
/// generator) into each relator of `src` and tests it against the identity.
/// Returns the index of the first relator that does not map to the
/// identity.
pub fn verify_presentation_hom(src: &Presentation, target: &CoxeterSystem, images: &BTreeMap<String, Word>) -> Result<Option<usize>> {
    target.require_right_angled()?;
    let per_gen: Vec<&Word> = src
        .generators()
        .iter()
        .map(|g| images.get(g).ok_or_else(|| Error::UnknownGenerator(g.clone())))
        .collect::<Result<_>>()?;
    for (i, r) in src.relators().iter().enumerate() {
        let letters: Vec<Letter> = r
            .letters()
            .iter()
            .flat_map(|l| {
                let img = per_gen[l.gen];
                let w = if l.inv { img.inverse() } else { img.clone() };
                w.letters().to_vec()
            })
            .collect();
        let image = Word::from_letters(letters).forget_inverses();
        if !racg_reduce(target, &image)?.is_empty() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
