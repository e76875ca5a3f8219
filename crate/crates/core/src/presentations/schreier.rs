//! Reidemeister–Schreier rewriting for kernels of maps onto elementary
//! abelian 2-groups.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{Letter, Presentation, Word};
use crate::nerve::TwoGroupHom;
use crate::{Error, Result};

/// A kernel presentation together with the coset data used to build it.
#[derive(Clone, Debug)]
pub struct SchreierPresentation {
    pub presentation: Presentation,
    /// Cosets (elements of the image group) in breadth-first order.
    pub cosets: Vec<u64>,
    /// Schreier transversal: representative word of each coset, same order.
    pub transversal: Vec<Word>,
}

impl SchreierPresentation {
    pub fn index(&self) -> usize {
        self.cosets.len()
    }
}

/// Presentation of the kernel of `psi` restricted to `pres`. Cosets are the
/// elements of the image of `psi`; the transversal is a breadth-first tree
/// exploring generators in order. Generator `g` at coset `q` names the
/// Schreier generator `t_q g t_(q + psi(g))^-1` and is written `g@q` with
/// `q` as a bit string. Every relator is rewritten at every coset.
pub fn reidemeister_schreier(pres: &Presentation, psi: &TwoGroupHom) -> Result<SchreierPresentation> {
    let images = psi.images_for(pres.generators())?;
    for (i, r) in pres.relators().iter().enumerate() {
        let value = r.letters().iter().fold(0u64, |acc, l| acc ^ images[l.gen]);
        if value != 0 {
            return Err(Error::Precondition(format!(
                "relator {} ({}) does not lie in the kernel",
                i,
                pres.format_word(r)
            )));
        }
    }
    let n = pres.num_generators();
    let mut position: HashMap<u64, usize> = HashMap::from([(0, 0)]);
    let mut cosets = vec![0u64];
    let mut transversal = vec![Word::empty()];
    let mut tree: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for (g, &img) in images.iter().enumerate() {
            let target = cosets[c] ^ img;
            if let std::collections::hash_map::Entry::Vacant(e) = position.entry(target) {
                e.insert(cosets.len());
                tree.insert((c, g));
                cosets.push(target);
                transversal.push(transversal[c].concat(&Word::from_gens(&[g])));
                queue.push_back(cosets.len() - 1);
            }
        }
    }
    let mut gen_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut names = Vec::new();
    for c in 0..cosets.len() {
        for g in 0..n {
            if !tree.contains(&(c, g)) {
                gen_id.insert((c, g), names.len());
                names.push(format!("{}@{}", pres.generators()[g], psi.format_vector(cosets[c])));
            }
        }
    }
    let mut relators = Vec::with_capacity(pres.relators().len() * cosets.len());
    for r in pres.relators() {
        for start in 0..cosets.len() {
            let mut c = start;
            let mut letters = Vec::new();
            for l in r.letters() {
                let other = position[&(cosets[c] ^ images[l.gen])];
                // an inverse letter read at c traverses the edge (other, g) backwards
                let (from, inv) = if l.inv { (other, true) } else { (c, false) };
                if let Some(&id) = gen_id.get(&(from, l.gen)) {
                    letters.push(Letter { gen: id, inv });
                }
                c = other;
            }
            debug_assert_eq!(c, start);
            relators.push(Word::from_letters(letters));
        }
    }
    let presentation = Presentation::new(names, relators)?;
    Ok(SchreierPresentation { presentation, cosets, transversal })
}
