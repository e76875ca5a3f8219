//! Words, finitely presented groups and the right-angled Coxeter word
//! problem.
//!
//! Letters refer to generators by index. Text forms: when every generator
//! name is a single lowercase character, words are written compactly with
//! uppercase marking inverses (`YsyS`); otherwise letters are whitespace
//! separated tokens with `^-1` for inverses (`v@01 w@10^-1`).

mod racg;
mod schreier;
mod tietze;

pub use racg::{racg_equal, racg_normal_form, racg_reduce, verify_presentation_hom};
pub use schreier::{reidemeister_schreier, SchreierPresentation};
pub use tietze::tietze_simplify;

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use crate::homology::{AbelianGroup, SparseMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn gen(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse_of(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Word of positive letters.
    pub fn from_gens(gens: &[usize]) -> Self {
        Word { letters: gens.iter().map(|&g| Letter::gen(g)).collect() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Product of the given words.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        Word { letters: words.into_iter().flat_map(|w| w.letters.iter().copied()).collect() }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free reduction followed by cancelling inverse letters at the two ends.
    pub fn cyclic_reduce(&self) -> Self {
        let w = self.free_reduce();
        let l = &w.letters;
        let mut i = 0;
        while i < l.len() / 2 && l[i] == l[l.len() - 1 - i].inverse() {
            i += 1;
        }
        Word { letters: l[i..l.len() - i].to_vec() }
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generators];
        for l in &self.letters {
            sums[l.gen] += if l.inv { -1 } else { 1 };
        }
        sums
    }

    /// Replaces every inverse letter by the generator itself, as for words
    /// in involutions.
    pub fn forget_inverses(&self) -> Self {
        Word { letters: self.letters.iter().map(|l| Letter::gen(l.gen)).collect() }
    }

    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let text = text.trim();
        if matches!(text, "" | "1" | "e") {
            return Ok(Word::empty());
        }
        let compact = !text.contains(char::is_whitespace) && !text.contains('^') && compact_names(names);
        let mut letters = Vec::new();
        if compact {
            for ch in text.chars() {
                let s = ch.to_string();
                if let Some(&g) = index.get(s.as_str()) {
                    letters.push(Letter::gen(g));
                } else if let Some(&g) = index.get(ch.to_lowercase().to_string().as_str()).filter(|_| ch.is_uppercase()) {
                    letters.push(Letter::inverse_of(g));
                } else {
                    return Err(Error::UnknownGenerator(s));
                }
            }
        } else {
            for token in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
                let (name, inv) = match token.strip_suffix("^-1") {
                    Some(n) => (n, true),
                    None => (token.strip_suffix("^1").unwrap_or(token), false),
                };
                let g = *index.get(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                letters.push(Letter { gen: g, inv });
            }
        }
        Ok(Word { letters })
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        if compact_names(names) {
            self.letters
                .iter()
                .map(|l| if l.inv { names[l.gen].to_uppercase() } else { names[l.gen].clone() })
                .collect()
        } else {
            self.letters
                .iter()
                .map(|l| if l.inv { format!("{}^-1", names[l.gen]) } else { names[l.gen].clone() })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// True when every name is one lowercase character whose uppercase form is
/// not itself a name, so the compact notation is unambiguous.
fn compact_names(names: &[String]) -> bool {
    names.iter().all(|n| {
        let mut chars = n.chars();
        matches!((chars.next(), chars.next()), (Some(c), None) if c.is_lowercase() && c.to_uppercase().count() == 1)
    })
}

/// A finite presentation. Relators are stored freely reduced, with empty
/// relators removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.as_str(), i).is_some() {
                return Err(Error::Validation(format!("duplicate generator `{g}`")));
            }
        }
        for r in &relators {
            if let Some(l) = r.letters.iter().find(|l| l.gen >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", l.gen)));
            }
        }
        let relators = relators.iter().map(Word::free_reduce).filter(|r| !r.is_empty()).collect();
        Ok(Presentation { generators, relators })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawPresentation = serde_json::from_str(text).map_err(Error::from_json)?;
        let relators = raw.relators.iter().map(|r| Word::parse(r, &raw.generators)).collect::<Result<Vec<_>>>()?;
        Self::new(raw.generators, relators)
    }

    pub fn to_json(&self) -> String {
        let raw = RawPresentation {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("presentation serializes")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generators)
    }

    /// Abelianization, from the Smith form of the exponent-sum matrix.
    pub fn abelian_invariants(&self) -> AbelianGroup {
        let n = self.generators.len();
        let columns = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(n).into_iter().enumerate().filter(|&(_, x)| x != 0).collect())
            .collect();
        let m = SparseMatrix::from_columns(n, columns);
        AbelianGroup::from_invariant_factors(n, &m.invariant_factors())
    }

    /// The same group with generators listed in a different order.
    pub fn permute_generators(&self, order: &[usize]) -> Self {
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let generators = order.iter().map(|&g| self.generators[g].clone()).collect();
        let relators = self
            .relators
            .iter()
            .map(|r| Word::from_letters(r.letters.iter().map(|l| Letter { gen: new_index[l.gen], inv: l.inv }).collect()))
            .collect();
        Presentation { generators, relators }
    }
}

/// Reads a generator-to-word map `{"s": "ca", ...}` with words over `target`.
pub fn images_from_json(text: &str, target: &[String]) -> Result<BTreeMap<String, Word>> {
    let raw: BTreeMap<String, String> = serde_json::from_str(text).map_err(Error::from_json)?;
    raw.into_iter().map(|(g, w)| Ok((g, Word::parse(&w, target)?))).collect()
}

pub fn images_to_json(images: &BTreeMap<String, Word>, target: &[String]) -> String {
    let raw: BTreeMap<&String, String> = images.iter().map(|(g, w)| (g, w.format(target))).collect();
    serde_json::to_string_pretty(&raw).expect("images serialize")
}

pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

pub fn abelian_invariants(p: &Presentation) -> AbelianGroup {
    p.abelian_invariants()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn free_reduction() {
        let n = names("stv");
        let w = Word::parse("vV", &n).unwrap();
        assert!(w.free_reduce().is_empty());
        assert!(Word::empty().free_reduce().is_empty());
        let w = Word::parse("stTs", &n).unwrap();
        assert_eq!(w.free_reduce().format(&n), "ss");
        assert_eq!(Word::parse("sTtS", &n).unwrap().free_reduce().format(&n), "1");
    }

    #[test]
    fn cyclic_reduction() {
        let n = names("ab");
        assert_eq!(Word::parse("abaA", &n).unwrap().cyclic_reduce().format(&n), "ab");
        assert_eq!(Word::parse("Aba", &n).unwrap().cyclic_reduce().format(&n), "b");
    }

    #[test]
    fn token_syntax() {
        let n: Vec<String> = vec!["v@0".into(), "w@1".into()];
        let w = Word::parse("v@0 w@1^-1  v@0^1", &n).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.format(&n), "v@0 w@1^-1 v@0");
        assert_eq!(Word::parse("x", &n), Err(Error::UnknownGenerator("x".into())));
    }

    #[test]
    fn abelian_invariants_basic() {
        let p = Presentation::new(vec!["x".into()], vec![Word::parse("xx", &names("x")).unwrap()]).unwrap();
        assert_eq!(p.abelian_invariants(), AbelianGroup::new(0, &[2]));
        let q = Presentation::from_json(r#"{"generators": ["a", "b"], "relators": ["aB"]}"#).unwrap();
        assert_eq!(q.abelian_invariants(), AbelianGroup::free(1));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"generators": ["s", "y"], "relators": ["YsyS", "ss"]}"#;
        let p = Presentation::from_json(text).unwrap();
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(p.total_length(), 6);
    }
}
