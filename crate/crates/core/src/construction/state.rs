use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{abelianize, tietze_simplify, DeclaredFact, FactKind, Pi1Datum, Presentation, Word};
use crate::invariants::InvariantVector;

const SIMPLIFY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Symplectic,
    Lagrangian,
    Complex,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Symplectic => "symplectic",
            Tag::Lagrangian => "lagrangian",
            Tag::Complex => "complex",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedSurface {
    pub name: String,
    pub genus: u32,
    pub self_intersection: i64,
    pub tags: BTreeSet<Tag>,
    /// Geometric transverse intersection counts with other tracked surfaces.
    pub intersections: BTreeMap<String, u32>,
    /// Free-form annotations such as `boundary-touching`.
    pub notes: Vec<String>,
}

impl TrackedSurface {
    pub fn new(name: impl Into<String>, genus: u32, self_intersection: i64, tags: &[Tag]) -> Self {
        TrackedSurface {
            name: name.into(),
            genus,
            self_intersection,
            tags: tags.iter().copied().collect(),
            intersections: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn meets(&self, other: &str) -> u32 {
        self.intersections.get(other).copied().unwrap_or(0)
    }

    pub fn is_square_zero_torus(&self) -> bool {
        self.genus == 1 && self.self_intersection == 0
    }
}

/// Meridian of a torus that has not been surgered yet, and the named
/// curves on it usable as surgery curves, as words in the state's group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusLoops {
    pub meridian: Word,
    pub curves: BTreeMap<String, Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenanceEntry {
    pub op: String,
    pub citation: String,
}

impl fmt::Display for ProvenanceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.citation.is_empty() {
            write!(f, "{}", self.op)
        } else {
            write!(f, "{} [{}]", self.op, self.citation)
        }
    }
}

/// What is known about π₁ of the manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKnowledge {
    /// π₁ of the complement of the pending tori; the manifold group adds
    /// their meridians as relators.
    Explicit(Presentation),
    /// Known only through declared facts (and the declared flags of the
    /// invariant vector).
    Declared,
    Undetermined { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldState {
    pub name: String,
    pub invariants: InvariantVector,
    pub surfaces: Vec<TrackedSurface>,
    pub group: GroupKnowledge,
    pub facts: Vec<DeclaredFact>,
    /// Tori whose meridians are not yet relators, keyed by surface name.
    pub tori: BTreeMap<String, TorusLoops>,
    pub provenance: Vec<ProvenanceEntry>,
}

impl ManifoldState {
    pub fn new(name: impl Into<String>, invariants: InvariantVector) -> Self {
        ManifoldState {
            name: name.into(),
            invariants,
            surfaces: Vec::new(),
            group: GroupKnowledge::Declared,
            facts: Vec::new(),
            tori: BTreeMap::new(),
            provenance: Vec::new(),
        }
    }

    pub fn surface(&self, name: &str) -> Result<&TrackedSurface> {
        self.surfaces
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSurface(name.to_string()))
    }

    pub(crate) fn surface_mut(&mut self, name: &str) -> Result<&mut TrackedSurface> {
        self.surfaces
            .iter_mut()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSurface(name.to_string()))
    }

    pub fn has_surface(&self, name: &str) -> bool {
        self.surfaces.iter().any(|s| s.name == name)
    }

    pub fn add_surface(&mut self, s: TrackedSurface) {
        self.surfaces.push(s);
    }

    /// Sets the intersection count symmetrically; zero removes the entry.
    pub fn set_intersection(&mut self, a: &str, b: &str, count: u32) -> Result<()> {
        if a == b {
            return Err(Error::PreconditionViolated(format!("{a} cannot meet itself")));
        }
        self.surface(a)?;
        self.surface(b)?;
        for (x, y) in [(a, b), (b, a)] {
            let s = self.surface_mut(x)?;
            if count == 0 {
                s.intersections.remove(y);
            } else {
                s.intersections.insert(y.to_string(), count);
            }
        }
        Ok(())
    }

    pub fn record(&mut self, op: impl Into<String>, citation: impl Into<String>) {
        self.provenance.push(ProvenanceEntry {
            op: op.into(),
            citation: citation.into(),
        });
    }

    pub fn has_fact(&self, kind: FactKind, surface: &str) -> bool {
        self.facts.iter().any(|f| f.kind == kind && f.surface == surface)
    }

    pub fn add_fact(&mut self, fact: DeclaredFact) {
        if !self.facts.contains(&fact) {
            self.facts.push(fact);
        }
    }

    /// The manifold group when it is explicit: the complement presentation
    /// plus the meridians of all pending tori.
    pub fn manifold_presentation(&self) -> Option<Presentation> {
        match &self.group {
            GroupKnowledge::Explicit(p) => {
                let mut p = p.clone();
                for loops in self.tori.values() {
                    p.add_relator(loops.meridian.clone()).ok()?;
                }
                Some(p)
            }
            _ => None,
        }
    }

    /// The group datum offered to a gluing along `surface`.
    pub fn pi1(&self) -> Pi1Datum {
        match &self.group {
            GroupKnowledge::Explicit(_) => Pi1Datum::Explicit(self.manifold_presentation().unwrap_or_default()),
            GroupKnowledge::Declared => Pi1Datum::Declared(self.facts.clone()),
            GroupKnowledge::Undetermined { reason } if self.facts.is_empty() => {
                Pi1Datum::Undetermined { reason: reason.clone() }
            }
            GroupKnowledge::Undetermined { .. } => Pi1Datum::Declared(self.facts.clone()),
        }
    }

    /// Recomputes `b1` and simple connectivity from an explicit group.
    pub(crate) fn refresh_from_group(&mut self) {
        if let Some(p) = self.manifold_presentation() {
            let h = abelianize(&p);
            self.invariants.b1 = Some(h.free_rank as i64);
            self.invariants.simply_connected = tietze_simplify(&p, SIMPLIFY_BUDGET).0.is_literally_trivial();
        }
    }

    /// Summary used in reports: `trivial`, the abelianization, or
    /// `undetermined`.
    pub fn pi1_summary(&self) -> String {
        if let Some(p) = self.manifold_presentation() {
            if tietze_simplify(&p, SIMPLIFY_BUDGET).0.is_literally_trivial() {
                return "trivial".into();
            }
            let h = abelianize(&p);
            if !h.is_trivial() {
                return h.to_string().replace(' ', "");
            }
            return "undetermined".into();
        }
        if self.invariants.simply_connected {
            "trivial".into()
        } else {
            "undetermined".into()
        }
    }

    /// Checks the invariants every operation must preserve.
    pub fn check_integrity(&self) -> Result<()> {
        for s in &self.surfaces {
            if s.intersections.contains_key(&s.name) {
                return Err(Error::PreconditionViolated(format!("{} meets itself", s.name)));
            }
            for (other, &n) in &s.intersections {
                if self.surface(other)?.meets(&s.name) != n {
                    return Err(Error::PreconditionViolated(format!(
                        "asymmetric intersection {} / {other}",
                        s.name
                    )));
                }
            }
        }
        let mut names = BTreeSet::new();
        for s in &self.surfaces {
            if !names.insert(&s.name) {
                return Err(Error::PreconditionViolated(format!("duplicate surface {}", s.name)));
            }
        }
        Ok(())
    }
}
