//! Modest Tietze simplification.

use super::{Letter, Presentation, Word};

/// Cyclically reduced relator in a canonical rotation: the least word among
/// all rotations of it and of its inverse.
fn canonical(w: &Word) -> Word {
    let w = w.cyclic_reduce();
    let n = w.len();
    let mut best = w.clone();
    for base in [w.clone(), w.inverse()] {
        for k in 0..n {
            let mut letters = base.letters()[k..].to_vec();
            letters.extend_from_slice(&base.letters()[..k]);
            let cand = Word::from_letters(letters);
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

fn tidy(relators: &mut Vec<Word>) {
    let mut out: Vec<Word> = relators.iter().map(canonical).filter(|r| !r.is_empty()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    *relators = out;
}

/// Finds a relator in which some generator occurs exactly once and whose
/// remaining part has length at most `bound`. Prefers short relators, then
/// low generator indices.
fn find_elimination(relators: &[Word], bound: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (ri, r) in relators.iter().enumerate() {
        if r.len() - 1 > bound {
            continue;
        }
        let mut counts = std::collections::BTreeMap::new();
        for l in r.letters() {
            *counts.entry(l.gen).or_insert(0usize) += 1;
        }
        if let Some((&g, _)) = counts.iter().find(|&(_, &c)| c == 1) {
            let key = (r.len(), g, ri);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, g, ri)| (ri, g))
}

/// Repeatedly: cyclically reduce relators and drop duplicates (up to
/// rotation and inversion) and empty ones; then eliminate a generator `g`
/// using a relator `g u^-1` in which `g` occurs once and `|u| <= effort`,
/// substituting `u` for `g` everywhere. Stops at a fixed point. Effort 0
/// only tidies relators.
pub fn tietze_simplify(pres: &Presentation, effort: usize) -> Presentation {
    let mut gens: Vec<String> = pres.generators().to_vec();
    let mut relators: Vec<Word> = pres.relators().to_vec();
    loop {
        tidy(&mut relators);
        let Some((ri, g)) = find_elimination(&relators, effort) else { break };
        let r = relators.remove(ri);
        let pos = r.letters().iter().position(|l| l.gen == g).unwrap();
        // rotate so the relator reads g^e · rest, then g = rest^-1 (e = +1)
        // or g = rest (e = -1)
        let mut rot = r.letters()[pos..].to_vec();
        rot.extend_from_slice(&r.letters()[..pos]);
        let rest = Word::from_letters(rot[1..].to_vec());
        let value = if rot[0].inv { rest } else { rest.inverse() };
        relators = relators
            .iter()
            .map(|w| {
                let letters: Vec<Letter> = w
                    .letters()
                    .iter()
                    .flat_map(|l| {
                        if l.gen == g {
                            if l.inv { value.inverse() } else { value.clone() }.letters().to_vec()
                        } else {
                            vec![*l]
                        }
                    })
                    .map(|l| Letter { gen: if l.gen > g { l.gen - 1 } else { l.gen }, inv: l.inv })
                    .collect();
                Word::from_letters(letters).free_reduce()
            })
            .collect();
        gens.remove(g);
    }
    Presentation::new(gens, relators).expect("generators stay consistent")
}
