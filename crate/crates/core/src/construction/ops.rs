use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{
    tietze_simplify, torus_surgery_quotient, van_kampen_sum, DeclaredFact, FactKind, Gluing, Pi1Datum,
};
use crate::invariants::Spin;

use super::state::{GroupKnowledge, ManifoldState, Tag, TrackedSurface};

pub const BOUNDARY_TOUCHING: &str = "boundary-touching";

/// Torus surgery with coefficient `num/den`: the new relator is
/// `μ^num · γ^den`. Luttinger surgery is `num = 1`, `den = ±m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuttingerSpec {
    pub torus: String,
    pub curve: String,
    pub num: i64,
    pub den: i64,
}

impl LuttingerSpec {
    pub fn new(torus: impl Into<String>, curve: impl Into<String>, num: i64, den: i64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::BadParameter("surgery coefficient 0/0".into()));
        }
        Ok(LuttingerSpec {
            torus: torus.into(),
            curve: curve.into(),
            num,
            den,
        })
    }

    /// `(torus, curve, 1/m)`.
    pub fn luttinger(torus: impl Into<String>, curve: impl Into<String>, m: i64) -> Self {
        LuttingerSpec {
            torus: torus.into(),
            curve: curve.into(),
            num: 1,
            den: m,
        }
    }
}

fn overflow(what: &str) -> Error {
    Error::BadParameter(format!("{what} overflows"))
}

fn fresh_name(s: &ManifoldState, stem: &str) -> String {
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|n| !s.has_surface(n))
        .expect("unbounded name supply")
}

fn blow_up_point(s: &ManifoldState, on: &[&str], label: String) -> Result<ManifoldState> {
    let mut out = s.clone();
    for n in on {
        out.surface(n)?;
    }
    out.invariants.e = out.invariants.e.checked_add(1).ok_or_else(|| overflow("e"))?;
    out.invariants.sigma = out.invariants.sigma.checked_sub(1).ok_or_else(|| overflow("sigma"))?;
    out.invariants.spin = Spin::NonSpin;
    out.invariants.minimal = false;
    let exc = fresh_name(&out, "e");
    out.add_surface(TrackedSurface::new(&exc, 0, -1, &[Tag::Symplectic, Tag::Complex]));
    for n in on {
        let surf = out.surface_mut(n)?;
        surf.self_intersection = surf
            .self_intersection
            .checked_sub(1)
            .ok_or_else(|| overflow("self-intersection"))?;
        out.set_intersection(n, &exc, 1)?;
        out.add_fact(DeclaredFact::new(
            FactKind::MeridianDies,
            *n,
            format!("exceptional sphere {exc} meets {n} once, so its meridian bounds a disk"),
        )?);
    }
    out.record(label, "");
    Ok(out)
}

/// Blows up a point, on `on_surface` when given. The new exceptional
/// sphere is named `e1`, `e2`, ...
pub fn blow_up(s: &ManifoldState, on_surface: Option<&str>) -> Result<ManifoldState> {
    match on_surface {
        Some(n) => blow_up_point(s, &[n], format!("blow_up({n})")),
        None => blow_up_point(s, &[], "blow_up()".into()),
    }
}

/// Blows up one transverse intersection point of `a` and `b`: both squares
/// drop by one and they meet once fewer.
pub fn blow_up_at_intersection(s: &ManifoldState, a: &str, b: &str) -> Result<ManifoldState> {
    let k = s.surface(a)?.meets(b);
    s.surface(b)?;
    if k == 0 {
        return Err(Error::PreconditionViolated(format!("{a} and {b} do not meet")));
    }
    let mut out = blow_up_point(s, &[a, b], format!("blow_up({a} & {b})"))?;
    out.set_intersection(a, b, k - 1)?;
    Ok(out)
}

/// Replaces a connected configuration by its symplectic resolution
/// `into`: genus `Σg + P − k + 1`, square `Σsq + 2P`.
pub fn resolve(s: &ManifoldState, names: &[&str], into: &str) -> Result<ManifoldState> {
    if names.is_empty() {
        return Err(Error::PreconditionViolated("nothing to resolve".into()));
    }
    let parts: Vec<&TrackedSurface> = names.iter().map(|n| s.surface(n)).collect::<Result<_>>()?;
    let set: BTreeSet<&str> = names.iter().copied().collect();
    if set.len() != names.len() {
        return Err(Error::PreconditionViolated("repeated surface in resolution".into()));
    }
    if s.has_surface(into) && !set.contains(into) {
        return Err(Error::PreconditionViolated(format!("{into} already exists")));
    }

    let mut seen = BTreeSet::from([names[0]]);
    let mut queue = VecDeque::from([names[0]]);
    while let Some(x) = queue.pop_front() {
        for y in names {
            if s.surface(x)?.meets(y) > 0 && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    if seen.len() != names.len() {
        return Err(Error::DisconnectedConfiguration(names.iter().map(|n| n.to_string()).collect()));
    }

    let mut pairs: i64 = 0;
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            pairs += i64::from(a.meets(&b.name));
        }
    }
    let k = names.len() as i64;
    let genus_sum: i64 = parts.iter().map(|p| i64::from(p.genus)).sum();
    let genus = u32::try_from(genus_sum + pairs - k + 1).map_err(|_| overflow("genus"))?;
    let square = parts
        .iter()
        .try_fold(2 * pairs, |acc, p| acc.checked_add(p.self_intersection))
        .ok_or_else(|| overflow("self-intersection"))?;
    let tags = parts
        .iter()
        .skip(1)
        .fold(parts[0].tags.clone(), |acc, p| acc.intersection(&p.tags).copied().collect());
    let mut outside: BTreeMap<String, u32> = BTreeMap::new();
    for p in &parts {
        for (other, &c) in &p.intersections {
            if !set.contains(other.as_str()) {
                *outside.entry(other.clone()).or_default() += c;
            }
        }
    }

    let mut out = s.clone();
    let pos = out.surfaces.iter().position(|x| x.name == names[0]).unwrap_or(0);
    out.surfaces.retain(|x| !set.contains(x.name.as_str()));
    for x in &mut out.surfaces {
        x.intersections.retain(|o, _| !set.contains(o.as_str()));
    }
    let mut merged = TrackedSurface::new(into, genus, square, &[]);
    merged.tags = tags;
    out.surfaces.insert(pos.min(out.surfaces.len()), merged);
    for (other, c) in outside {
        out.set_intersection(into, &other, c)?;
    }
    out.facts.retain(|f| !set.contains(f.surface.as_str()));
    for n in names {
        out.tori.remove(*n);
    }
    out.record(format!("resolve({}) -> {into}", names.join(", ")), "");
    mark_odd(&mut out, into, square);
    Ok(out)
}

/// A closed surface of odd square makes the intersection form odd.
fn mark_odd(s: &mut ManifoldState, name: &str, square: i64) {
    if square.rem_euclid(2) == 1 && s.invariants.spin != Spin::NonSpin {
        s.invariants.spin = Spin::NonSpin;
        s.record(format!("nonspin witness {name}"), "closed surface of odd square");
    }
}

fn odd_witness(s: &ManifoldState, glued: &str) -> Option<String> {
    s.surfaces
        .iter()
        .find(|x| x.name != glued && x.self_intersection.rem_euclid(2) == 1 && x.meets(glued) == 0)
        .map(|x| x.name.clone())
}

fn trivial_explicit(d: &Pi1Datum) -> bool {
    matches!(d, Pi1Datum::Explicit(p) if tietze_simplify(p, 10_000).0.is_literally_trivial())
}

/// Symplectic connected sum of `a` and `b` along `surf_a` and `surf_b`.
pub fn symplectic_sum(a: &ManifoldState, surf_a: &str, b: &ManifoldState, surf_b: &str) -> Result<ManifoldState> {
    let (sa, sb) = (a.surface(surf_a)?, b.surface(surf_b)?);
    if sa.genus != sb.genus {
        return Err(Error::GenusMismatch(sa.genus, sb.genus));
    }
    if sa.self_intersection.checked_add(sb.self_intersection) != Some(0) {
        return Err(Error::NormalBundleMismatch(sa.self_intersection, sb.self_intersection));
    }
    let g = i64::from(sa.genus);
    let (ia, ib) = (a.invariants, b.invariants);
    let e = ia
        .e
        .checked_add(ib.e)
        .and_then(|x| x.checked_add(4 * (g - 1)))
        .ok_or_else(|| overflow("e"))?;
    let sigma = ia.sigma.checked_add(ib.sigma).ok_or_else(|| overflow("sigma"))?;

    let mut out = ManifoldState::new(format!("{} #[{surf_a}={surf_b}] {}", a.name, b.name), ia);
    out.invariants.e = e;
    out.invariants.sigma = sigma;
    out.invariants.symplectic = ia.symplectic && ib.symplectic;
    out.invariants.minimal = false;
    let witness = odd_witness(a, surf_a).or_else(|| odd_witness(b, surf_b).map(|w| rename_clash(a, &w)));
    out.invariants.spin = if witness.is_some() { Spin::NonSpin } else { Spin::Unknown };

    let mut renames = BTreeMap::new();
    for x in &b.surfaces {
        if x.name != surf_b {
            renames.insert(x.name.clone(), rename_clash(a, &x.name));
        }
    }
    let carry = |x: &TrackedSurface, glued: &str, map: &dyn Fn(&str) -> String| {
        let mut y = x.clone();
        y.name = map(&x.name);
        if let Some(c) = y.intersections.remove(glued) {
            y.notes.push(format!("{BOUNDARY_TOUCHING} ({c} point{})", if c == 1 { "" } else { "s" }));
        }
        y.intersections = y.intersections.into_iter().map(|(k, v)| (map(&k), v)).collect();
        y
    };
    let id = |n: &str| n.to_string();
    let ren = |n: &str| renames.get(n).cloned().unwrap_or_else(|| n.to_string());
    for x in a.surfaces.iter().filter(|x| x.name != surf_a) {
        out.surfaces.push(carry(x, surf_a, &id));
    }
    for x in b.surfaces.iter().filter(|x| x.name != surf_b) {
        out.surfaces.push(carry(x, surf_b, &ren));
    }

    let (da, db) = (a.pi1(), b.pi1());
    let glued = match (&da, &db) {
        (Pi1Datum::Explicit(_), Pi1Datum::Explicit(_)) => {
            if trivial_explicit(&da) && trivial_explicit(&db) {
                Pi1Datum::trivial()
            } else {
                Pi1Datum::Undetermined {
                    reason: "surface loop words are not tracked for explicit sides".into(),
                }
            }
        }
        _ => van_kampen_sum(
            &da,
            &db,
            &Gluing {
                surface_a: surf_a.into(),
                surface_b: surf_b.into(),
                kill_meridians: true,
                ..Gluing::default()
            },
        )?,
    };
    match glued {
        Pi1Datum::Explicit(p) => {
            out.group = GroupKnowledge::Explicit(p);
            out.refresh_from_group();
        }
        Pi1Datum::Undetermined { reason } => {
            out.group = GroupKnowledge::Undetermined { reason };
            out.invariants.b1 = None;
            out.invariants.simply_connected = false;
        }
        Pi1Datum::Declared(_) => {
            out.group = GroupKnowledge::Declared;
            out.invariants.b1 = None;
            out.invariants.simply_connected = false;
        }
    }
    for f in a.facts.iter().filter(|f| f.surface != surf_a) {
        out.add_fact(f.clone());
    }
    for f in b.facts.iter().filter(|f| f.surface != surf_b) {
        let mut f = f.clone();
        f.surface = ren(&f.surface);
        out.add_fact(f);
    }
    out.provenance = a.provenance.iter().chain(&b.provenance).cloned().collect();
    out.record(
        format!("symplectic_sum({}[{surf_a}], {}[{surf_b}])", a.name, b.name),
        "e = eA + eB + 4(g-1), sigma additive",
    );
    if let Some(w) = witness {
        out.record(format!("nonspin witness {w}"), "odd square surface disjoint from the gluing locus");
    }
    Ok(out)
}

fn rename_clash(other: &ManifoldState, name: &str) -> String {
    let mut n = name.to_string();
    while other.has_surface(&n) {
        n.push('\'');
    }
    n
}

fn require_torus(s: &ManifoldState, torus: &str) -> Result<()> {
    if s.surface(torus)?.is_square_zero_torus() {
        Ok(())
    } else {
        Err(Error::NotATorus(torus.to_string()))
    }
}

/// Torus surgery. With explicit loops the group gains `μ^num · γ^den`;
/// otherwise π₁ becomes undetermined.
pub fn luttinger(s: &ManifoldState, spec: &LuttingerSpec) -> Result<ManifoldState> {
    if spec.num == 0 && spec.den == 0 {
        return Err(Error::BadParameter("surgery coefficient 0/0".into()));
    }
    require_torus(s, &spec.torus)?;
    let mut out = s.clone();
    let loops = out.tori.get(&spec.torus).cloned();
    match (&out.group, loops) {
        (GroupKnowledge::Explicit(p), Some(loops)) => {
            let gamma = loops.curves.get(&spec.curve).ok_or_else(|| {
                Error::BadParameter(format!("no curve {} on {}", spec.curve, spec.torus))
            })?;
            let q = torus_surgery_quotient(p, &loops.meridian, gamma, spec.num, spec.den)?;
            out.group = GroupKnowledge::Explicit(q);
            out.tori.remove(&spec.torus);
            out.refresh_from_group();
        }
        _ => {
            out.group = GroupKnowledge::Undetermined {
                reason: format!("surgery on {} without explicit loops", spec.torus),
            };
            out.facts.clear();
            out.invariants.b1 = None;
            out.invariants.simply_connected = false;
        }
    }
    let lagrangian = s.surface(&spec.torus)?.tags.contains(&Tag::Lagrangian);
    out.invariants.symplectic = s.invariants.symplectic && lagrangian && spec.num.abs() == 1;
    out.record(
        format!("torus_surgery({}, {}, {}/{})", spec.torus, spec.curve, spec.num, spec.den),
        "e and sigma unchanged; pi1 gains mu^num gamma^den",
    );
    Ok(out)
}

/// Knot surgery on a square-zero torus whose complement is simply
/// connected. Only the smooth family label changes; a nonzero index
/// stands for a non-fibered knot and clears the symplectic flag.
pub fn knot_surgery(s: &ManifoldState, torus: &str, family_index: u32) -> Result<ManifoldState> {
    require_torus(s, torus)?;
    if !s.invariants.simply_connected || !s.has_fact(FactKind::MeridianDies, torus) {
        return Err(Error::MissingComplementFact(torus.to_string()));
    }
    let mut out = s.clone();
    out.invariants.symplectic = s.invariants.symplectic && family_index == 0;
    out.record(
        format!("knot_surgery({torus}, K{family_index})"),
        format!("smooth family label K{family_index}"),
    );
    Ok(out)
}

pub fn declare_fact(s: &ManifoldState, kind: FactKind, surface: &str, citation: &str) -> Result<ManifoldState> {
    s.surface(surface)?;
    let mut out = s.clone();
    out.add_fact(DeclaredFact::new(kind, surface, citation)?);
    out.record(format!("declare {}({surface})", kind.as_str()), citation);
    Ok(out)
}

pub fn declare_minimal(s: &ManifoldState, citation: &str) -> Result<ManifoldState> {
    if citation.trim().is_empty() {
        return Err(Error::PreconditionViolated("declared flag needs a citation".into()));
    }
    let mut out = s.clone();
    out.invariants.minimal = true;
    out.record("declare minimal", citation);
    Ok(out)
}

/// Records a cited external result that the manifold is simply connected.
pub fn declare_simply_connected(s: &ManifoldState, citation: &str) -> Result<ManifoldState> {
    if citation.trim().is_empty() {
        return Err(Error::PreconditionViolated("declared flag needs a citation".into()));
    }
    let mut out = s.clone();
    out.group = GroupKnowledge::Declared;
    out.invariants = out.invariants.with_simply_connected(true);
    out.tori.clear();
    out.record("declare simply connected", citation);
    Ok(out)
}

pub fn rename_surface(s: &ManifoldState, from: &str, to: &str) -> Result<ManifoldState> {
    s.surface(from)?;
    if s.has_surface(to) {
        return Err(Error::PreconditionViolated(format!("{to} already exists")));
    }
    let mut out = s.clone();
    for x in &mut out.surfaces {
        if x.name == from {
            x.name = to.to_string();
        }
        if let Some(c) = x.intersections.remove(from) {
            x.intersections.insert(to.to_string(), c);
        }
    }
    for f in &mut out.facts {
        if f.surface == from {
            f.surface = to.to_string();
        }
    }
    if let Some(t) = out.tori.remove(from) {
        out.tori.insert(to.to_string(), t);
    }
    out.record(format!("rename({from} -> {to})"), "");
    Ok(out)
}

/// Joins punctured pieces left by a sum into one closed surface: genera
/// and squares add. Every piece must be boundary-touching.
pub fn internal_sum(s: &ManifoldState, parts: &[&str], into: &str, citation: &str) -> Result<ManifoldState> {
    if parts.len() < 2 {
        return Err(Error::PreconditionViolated("internal sum needs two pieces".into()));
    }
    for p in parts {
        let x = s.surface(p)?;
        if !x.notes.iter().any(|n| n.starts_with(BOUNDARY_TOUCHING)) {
            return Err(Error::PreconditionViolated(format!("{p} does not touch the gluing region")));
        }
    }
    let mut genus: u32 = 0;
    let mut square: i64 = 0;
    for p in parts {
        let x = s.surface(p)?;
        genus = genus.checked_add(x.genus).ok_or_else(|| overflow("genus"))?;
        square = square.checked_add(x.self_intersection).ok_or_else(|| overflow("square"))?;
    }
    let mut out = s.clone();
    let set: BTreeSet<&str> = parts.iter().copied().collect();
    if s.has_surface(into) && !set.contains(into) {
        return Err(Error::PreconditionViolated(format!("{into} already exists")));
    }
    let mut outside: BTreeMap<String, u32> = BTreeMap::new();
    let mut tags: Option<BTreeSet<Tag>> = None;
    for p in parts {
        let x = s.surface(p)?;
        tags = Some(match tags {
            None => x.tags.clone(),
            Some(t) => t.intersection(&x.tags).copied().collect(),
        });
        for (o, &c) in &x.intersections {
            if !set.contains(o.as_str()) {
                *outside.entry(o.clone()).or_default() += c;
            }
        }
    }
    out.surfaces.retain(|x| !set.contains(x.name.as_str()));
    for x in &mut out.surfaces {
        x.intersections.retain(|o, _| !set.contains(o.as_str()));
    }
    let mut merged = TrackedSurface::new(into, genus, square, &[]);
    merged.tags = tags.unwrap_or_default();
    out.add_surface(merged);
    for (o, c) in outside {
        out.set_intersection(into, &o, c)?;
    }
    out.facts.retain(|f| !set.contains(f.surface.as_str()));
    out.record(format!("internal_sum({}) -> {into}", parts.join(", ")), citation);
    mark_odd(&mut out, into, square);
    Ok(out)
}
