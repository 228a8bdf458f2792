//! Amalgamation of complement groups along a gluing surface, and the
//! closed deduction rule for sides whose group is only known through
//! declared facts.

use std::fmt;

use crate::error::{Error, Result};

use super::presentation::Presentation;
use super::tietze::tietze_simplify;
use super::word::Word;

const TRIVIALITY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactKind {
    /// The inclusion of the surface induces a surjection on π₁.
    SurjectiveFromSurface,
    /// The surface generators are trivial in the complement group.
    GeneratorsDieInComplement,
    /// The meridian of the surface is trivial in the complement group.
    MeridianDies,
}

impl FactKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FactKind::SurjectiveFromSurface => "SurjectiveFromSurface",
            FactKind::GeneratorsDieInComplement => "GeneratorsDieInComplement",
            FactKind::MeridianDies => "MeridianDies",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeclaredFact {
    pub kind: FactKind,
    pub surface: String,
    pub citation: String,
}

impl DeclaredFact {
    pub fn new(kind: FactKind, surface: impl Into<String>, citation: impl Into<String>) -> Result<Self> {
        let citation = citation.into();
        if citation.trim().is_empty() {
            return Err(Error::PreconditionViolated(
                "declared facts need a citation".into(),
            ));
        }
        Ok(DeclaredFact {
            kind,
            surface: surface.into(),
            citation,
        })
    }
}

impl fmt::Display for DeclaredFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) [{}]", self.kind.as_str(), self.surface, self.citation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pi1Datum {
    Explicit(Presentation),
    Declared(Vec<DeclaredFact>),
    Undetermined { reason: String },
}

impl Pi1Datum {
    pub fn trivial() -> Self {
        Pi1Datum::Explicit(Presentation::trivial())
    }

    pub fn has_fact(&self, kind: FactKind, surface: &str) -> bool {
        match self {
            Pi1Datum::Declared(facts) => facts.iter().any(|f| f.kind == kind && f.surface == surface),
            _ => false,
        }
    }

    pub fn facts(&self) -> &[DeclaredFact] {
        match self {
            Pi1Datum::Declared(facts) => facts,
            _ => &[],
        }
    }

    /// Adds a fact. An explicit presentation is kept as is; an undetermined
    /// datum becomes a fact list.
    pub fn declare(&mut self, fact: DeclaredFact) {
        match self {
            Pi1Datum::Declared(facts) => {
                if !facts.contains(&fact) {
                    facts.push(fact);
                }
            }
            Pi1Datum::Undetermined { .. } => *self = Pi1Datum::Declared(vec![fact]),
            Pi1Datum::Explicit(_) => {}
        }
    }

    /// Moves facts attached to `from` onto `to`.
    pub fn rename_surface(&mut self, from: &str, to: &str) {
        if let Pi1Datum::Declared(facts) = self {
            for f in facts.iter_mut().filter(|f| f.surface == from) {
                f.surface = to.to_string();
            }
        }
    }
}

/// Data of one gluing: the surface names on each side, the identified
/// surface loops, and the meridian words when the sides are explicit.
#[derive(Debug, Clone, Default)]
pub struct Gluing {
    pub surface_a: String,
    pub surface_b: String,
    pub loops_a: Vec<Word>,
    pub loops_b: Vec<Word>,
    pub meridians: Option<(Word, Word)>,
    pub kill_meridians: bool,
}

fn merge(pa: &Presentation, pb: &Presentation, g: &Gluing) -> Result<Presentation> {
    g.loops_a.iter().try_for_each(|w| pa.check_word(w))?;
    g.loops_b.iter().try_for_each(|w| pb.check_word(w))?;
    if let Some((ma, mb)) = &g.meridians {
        pa.check_word(ma)?;
        pb.check_word(mb)?;
    }
    let (mut names, mut rels) = pa.clone().into_parts();
    let offset = names.len();
    for n in pb.names() {
        let mut name = n.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    let shift = |w: &Word| Word::new(w.letters().iter().map(|&(x, e)| (x + offset, e)));
    rels.extend(pb.relators().iter().map(shift));
    for (wa, wb) in g.loops_a.iter().zip(&g.loops_b) {
        rels.push(wa.mul(&shift(wb).inverse()));
    }
    if let Some((ma, mb)) = &g.meridians {
        if g.kill_meridians {
            rels.push(ma.clone());
            rels.push(shift(mb));
        } else {
            rels.push(ma.mul(&shift(mb)));
        }
    }
    Presentation::new(names, rels)
}

fn trivial_by_simplification(p: &Presentation) -> bool {
    tietze_simplify(p, TRIVIALITY_BUDGET).0.is_literally_trivial()
}

fn surjects(d: &Pi1Datum, surface: &str) -> bool {
    d.has_fact(FactKind::SurjectiveFromSurface, surface)
}

/// The identified loops die on this side.
fn kills_loops(d: &Pi1Datum, surface: &str) -> bool {
    match d {
        Pi1Datum::Explicit(p) => trivial_by_simplification(p),
        _ => d.has_fact(FactKind::GeneratorsDieInComplement, surface),
    }
}

fn kills_meridian(d: &Pi1Datum, surface: &str) -> bool {
    match d {
        Pi1Datum::Explicit(p) => trivial_by_simplification(p),
        _ => d.has_fact(FactKind::MeridianDies, surface),
    }
}

/// π₁ of the glued manifold. Two explicit sides are amalgamated directly.
/// Otherwise the result is trivial exactly when one side surjects from its
/// surface, the other side kills every surface loop, and some side kills
/// the meridian; in every other case it is undetermined.
pub fn van_kampen_sum(a: &Pi1Datum, b: &Pi1Datum, g: &Gluing) -> Result<Pi1Datum> {
    if g.loops_a.len() != g.loops_b.len() {
        return Err(Error::InconsistentIdentification {
            left: g.loops_a.len(),
            right: g.loops_b.len(),
        });
    }
    if let (Pi1Datum::Explicit(pa), Pi1Datum::Explicit(pb)) = (a, b) {
        return merge(pa, pb, g).map(Pi1Datum::Explicit);
    }
    let (sa, sb) = (g.surface_a.as_str(), g.surface_b.as_str());
    let generated = (surjects(a, sa) && kills_loops(b, sb)) || (surjects(b, sb) && kills_loops(a, sa));
    let meridian = kills_meridian(a, sa) || kills_meridian(b, sb);
    if generated && meridian {
        return Ok(Pi1Datum::trivial());
    }
    let missing = match (generated, meridian) {
        (false, false) => "no surjectivity/kill pair and no meridian fact",
        (false, true) => "no surjectivity/kill pair",
        _ => "no meridian fact",
    };
    Ok(Pi1Datum::Undetermined {
        reason: format!("gluing {sa} to {sb}: {missing}"),
    })
}
