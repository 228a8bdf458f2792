use std::fmt;

use crate::error::{Error, Result};

use super::word::{GenId, Word};

/// A finitely presented group `⟨ generators | relators ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates generator ids and stores the relators freely reduced.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut p = Presentation {
            names,
            relators: Vec::with_capacity(relators.len()),
        };
        for r in relators {
            p.add_relator(r)?;
        }
        Ok(p)
    }

    pub fn free(names: &[&str]) -> Self {
        Presentation {
            names: names.iter().map(|s| s.to_string()).collect(),
            relators: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Presentation::default()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn gen(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name)
    }

    /// Word consisting of the single named generator; panics on unknown
    /// names, for use with hard-coded families.
    pub(crate) fn g(&self, name: &str) -> Word {
        Word::gen(self.gen(name).unwrap_or_else(|| panic!("no generator {name}")))
    }

    pub fn add_generator(&mut self, name: impl Into<String>) -> GenId {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.names.len() => Err(Error::UnknownGenerator(g)),
            _ => Ok(()),
        }
    }

    pub fn add_relator(&mut self, r: Word) -> Result<()> {
        self.check_word(&r)?;
        self.relators.push(r.free_reduce());
        Ok(())
    }

    pub fn with_relator(mut self, r: Word) -> Result<Self> {
        self.add_relator(r)?;
        Ok(self)
    }

    /// A presentation with zero generators; only such a presentation is ever
    /// reported as trivial.
    pub fn is_literally_trivial(&self) -> bool {
        self.names.is_empty()
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| (0..self.names.len()).map(|g| r.exponent_sum(g)).collect())
            .collect()
    }

    /// Canonical key of a relator up to cyclic rotation and inversion; two
    /// relators with the same key have the same normal closure.
    pub fn relator_key(r: &Word) -> Vec<(GenId, i64)> {
        let c = r.cyclic_reduce();
        let mut best: Option<Vec<(GenId, i64)>> = None;
        for cand in [c.expand(), c.inverse().expand()] {
            let n = cand.len();
            for k in 0..n.max(1) {
                let rot: Vec<_> = cand[k.min(n)..].iter().chain(&cand[..k.min(n)]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// True when both presentations have the same generator names and the
    /// same relators up to order, cyclic rotation and inversion.
    pub fn equivalent_relators(&self, other: &Presentation) -> bool {
        if self.names != other.names || self.relators.len() != other.relators.len() {
            return false;
        }
        let mut a: Vec<_> = self.relators.iter().map(Self::relator_key).collect();
        let mut b: Vec<_> = other.relators.iter().map(Self::relator_key).collect();
        a.sort();
        b.sort();
        a == b
    }

    pub(crate) fn into_parts(self) -> (Vec<String>, Vec<Word>) {
        (self.names, self.relators)
    }

    pub(crate) fn from_parts_unchecked(names: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation { names, relators }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}; rels: ", self.names.join(" "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", r.display_with(&self.names))?;
        }
        Ok(())
    }
}
