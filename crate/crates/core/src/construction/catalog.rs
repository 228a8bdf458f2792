//! Named building blocks. Values that come from theorem statements carry a
//! citation in the provenance; everything else is derived by the
//! operations in [`super::ops`].

use std::collections::BTreeMap;

use crate::covers::{pairing, quadrangle_cover_surface, quadrangle_spec, riemann_hurwitz_genus};
use crate::error::{Error, Result};
use crate::group::{y_n_surgery_data, FactKind, Presentation, Word};
use crate::group::make_y_n_pq_presentation;
use crate::invariants::{InvariantVector, Spin};

use super::ops::{blow_up, blow_up_at_intersection, declare_fact, luttinger, rename_surface, resolve, LuttingerSpec};
use super::state::{GroupKnowledge, ManifoldState, Tag, TorusLoops, TrackedSurface};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    let e = |name, params, summary| CatalogEntry { name, params, summary };
    vec![
        e("S", "n (default 5, coprime to 6)", "quadrangle surface S(n) with curves R1..R10"),
        e("S_hat", "", "S#CP2bar with the genus 6 curve Rtilde of square 0"),
        e("X", "k >= 1, m != 0", "X(k,m): e = 4k+4, sigma = -4, genus 2k surface Sigma{2k}"),
        e("X_gg2", "g >= 1", "X_{g,g+2}: e = 4g+2, sigma = -2, Sigma2 with S1, S2"),
        e("X_gg1", "g >= 1", "X_{g,g+1}: e = 4g+1, sigma = -1, Sigma2 and Sigma{g+1}"),
        e("T4", "", "four-torus with tori T2xpt, ptxT2, ptxT2', Tbeta"),
        e("T4#2CP2bar", "", "genus 2 surface Sigma2 of square 0 from two resolved tori"),
        e("T4#CP2bar", "", "genus 2 surface Sigma2 of square 0 through the torus Tbeta"),
        e("SigmaxSigma", "g >= 1, h >= 1", "product of surfaces with explicit group"),
        e("Sigma2xSigman", "n >= 2", "Sigma2 x Sigma_n with the Y_n surgery tori pending"),
        e("Y_n", "n >= 2", "Sigma2 x Sigma_n after the full surgery list"),
        e("Y_n_pq", "n >= 2, p, q >= 1, m", "Y_n(1/p, m/q) with explicit group"),
        e("quadrangle", "n coprime to 6", "alias of S(n)"),
        e("hirzebruch_tower", "m >= 2", "invariants of the m-th tower surface"),
    ]
}

/// Splits `X(3,1)`, `X_{4,6}`, `Y_n(3)` style names into a catalog name and
/// parameters. Plain names pass through unchanged.
pub fn parse_block_name(text: &str) -> Result<(String, Vec<i64>)> {
    let unknown = || Error::UnknownBlock(text.to_string());
    let ints = |s: &str| -> Result<Vec<i64>> {
        s.split([',', ';'])
            .map(|x| x.trim().parse::<i64>().map_err(|_| unknown()))
            .collect()
    };
    if let Some(rest) = text.strip_prefix("X_{").and_then(|r| r.strip_suffix('}')) {
        let v = ints(rest)?;
        return match v.as_slice() {
            [g, h] if h - g == 2 => Ok(("X_gg2".into(), vec![*g])),
            [g, h] if h - g == 1 => Ok(("X_gg1".into(), vec![*g])),
            _ => Err(unknown()),
        };
    }
    if let Some(open) = text.find('(') {
        let inner = text[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        return Ok((text[..open].to_string(), ints(inner)?));
    }
    Ok((text.to_string(), Vec::new()))
}

fn param(params: &[i64], i: usize, default: Option<i64>, block: &str) -> Result<i64> {
    params
        .get(i)
        .copied()
        .or(default)
        .ok_or_else(|| Error::BadParameter(format!("{block} needs parameter {}", i + 1)))
}

fn arity(params: &[i64], max: usize, block: &str) -> Result<()> {
    if params.len() > max {
        return Err(Error::BadParameter(format!("{block} takes at most {max} parameters")));
    }
    Ok(())
}

pub fn catalog_block(name: &str, params: &[i64]) -> Result<ManifoldState> {
    let (name, params) = if params.is_empty() {
        parse_block_name(name)?
    } else {
        (name.to_string(), params.to_vec())
    };
    let p = params.as_slice();
    match name.as_str() {
        "S" | "quadrangle" => {
            arity(p, 1, &name)?;
            quadrangle_block(param(p, 0, Some(5), &name)?)
        }
        "S_hat" => {
            arity(p, 0, &name)?;
            s_hat()
        }
        "X" => {
            arity(p, 2, &name)?;
            x_km(param(p, 0, None, &name)?, param(p, 1, None, &name)?)
        }
        "X_gg2" => {
            arity(p, 1, &name)?;
            x_gg2(param(p, 0, None, &name)?)
        }
        "X_gg1" => {
            arity(p, 1, &name)?;
            x_gg1(param(p, 0, None, &name)?)
        }
        "T4" => {
            arity(p, 0, &name)?;
            Ok(four_torus())
        }
        "T4#2CP2bar" => {
            arity(p, 0, &name)?;
            t4_two_blowups()
        }
        "T4#CP2bar" => {
            arity(p, 0, &name)?;
            t4_one_blowup()
        }
        "SigmaxSigma" => {
            arity(p, 2, &name)?;
            surface_product(param(p, 0, None, &name)?, param(p, 1, None, &name)?)
        }
        "Sigma2xSigman" => {
            arity(p, 1, &name)?;
            sigma2_times_sigma_n(param(p, 0, None, &name)?)
        }
        "Y_n" => {
            arity(p, 1, &name)?;
            y_n(param(p, 0, None, &name)?)
        }
        "Y_n_pq" => {
            arity(p, 4, &name)?;
            y_n_pq(
                param(p, 0, None, &name)?,
                param(p, 1, None, &name)?,
                param(p, 2, None, &name)?,
                param(p, 3, Some(1), &name)?,
            )
        }
        "hirzebruch_tower" => {
            arity(p, 1, &name)?;
            tower(param(p, 0, None, &name)?)
        }
        _ => Err(Error::UnknownBlock(name)),
    }
}

fn cited(mut s: ManifoldState, what: &str, citation: &str) -> ManifoldState {
    s.record(format!("catalog {what}"), citation);
    s
}

/// `S(n)` with the ten curves `R_i = π⁻¹(D_i)_red`. `π*D = n·R`, so
/// `R_a·R_b = |G|·D_a·D_b/n²`; `R → D` has degree `n` and is totally
/// ramified over the nodes on `D`.
fn quadrangle_block(n: i64) -> Result<ManifoldState> {
    let surf = quadrangle_cover_surface(n)?;
    let spec = quadrangle_spec(n)?;
    let form = &spec.base_form;
    let comps = &spec.branch_components;
    // R1..R3 over L1'..L3', R4..R6 over L1..L3, R7..R10 over E0..E3.
    let order = ["L1'", "L2'", "L3'", "L1", "L2", "L3", "E0", "E1", "E2", "E3"];
    let idx: Vec<usize> = order
        .iter()
        .map(|o| comps.iter().position(|c| c.name == *o).expect("quadrangle component"))
        .collect();
    let scale = |q: num_rational::Ratio<i64>| -> Result<i64> {
        let v = q * spec.group_order / (n * n);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegral(format!("curve intersection {v}")))
        }
    };
    let mut s = ManifoldState::new(format!("S({n})"), surf.invariants);
    for (k, &i) in idx.iter().enumerate() {
        let d = &comps[i].class;
        let mut nodes = 0;
        for (j, c) in comps.iter().enumerate() {
            if j != i {
                nodes += pairing(d, &c.class, form)?.to_integer();
            }
        }
        let genus = riemann_hurwitz_genus(n, 0, &vec![n; nodes as usize])?;
        let square = scale(pairing(d, d, form)?)?;
        s.add_surface(TrackedSurface::new(
            format!("R{}", k + 1),
            genus as u32,
            square,
            &[Tag::Complex, Tag::Symplectic],
        ));
    }
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate().skip(a + 1) {
            let x = scale(pairing(&comps[i].class, &comps[j].class, form)?)?;
            if x > 0 {
                s.set_intersection(&format!("R{}", a + 1), &format!("R{}", b + 1), x as u32)?;
            }
        }
    }
    Ok(cited(
        s,
        &format!("S({n})"),
        "complete quadrangle cover; irregularity q = (n-1)/2 taken as catalog data",
    ))
}

fn s_hat() -> Result<ManifoldState> {
    let s = quadrangle_block(5)?;
    let s = resolve(&s, &["R3", "R7", "R10"], "R")?;
    let s = declare_fact(
        &s,
        FactKind::SurjectiveFromSurface,
        "R",
        "inclusion of the genus 6 curve R induces a surjection on fundamental groups",
    )?;
    let s = blow_up(&s, Some("R"))?;
    let s = rename_surface(&s, "R", "Rtilde")?;
    let mut s = declare_fact(
        &s,
        FactKind::SurjectiveFromSurface,
        "Rtilde",
        "surjectivity persists for the proper transform in S#CP2bar",
    )?;
    s.name = "S_hat".into();
    Ok(s)
}

fn declared(name: String, inv: InvariantVector) -> ManifoldState {
    let mut s = ManifoldState::new(name, inv);
    s.group = GroupKnowledge::Declared;
    s
}

fn link(s: &mut ManifoldState, a: &str, b: &str) -> Result<()> {
    s.set_intersection(a, b, 1)
}

/// `X(k, m)`: simply connected, `e = 4k + 4`, `σ = −4`; symplectic and
/// minimal for `m = ±1`.
fn x_km(k: i64, m: i64) -> Result<ManifoldState> {
    if k < 1 || m == 0 {
        return Err(Error::BadParameter(format!("X(k,m) needs k >= 1 and m != 0, got ({k},{m})")));
    }
    let e = k.checked_mul(4).and_then(|x| x.checked_add(4)).ok_or_else(|| Error::BadParameter("k overflows".into()))?;
    let lutt = m.abs() == 1;
    let inv = InvariantVector::derive(e, -4, 0, Spin::NonSpin)
        .with_simply_connected(true)
        .with_symplectic(lutt)
        .with_minimal(lutt);
    let mut s = declared(format!("X({k},{m})"), inv);
    let g = u32::try_from(2 * k).map_err(|_| Error::BadParameter("k too large".into()))?;
    let sigma = format!("Sigma{g}");
    s.add_surface(TrackedSurface::new(&sigma, g, 0, &[Tag::Symplectic]));
    for i in 1..=4 {
        let t = format!("T{i}");
        s.add_surface(TrackedSurface::new(&t, 1, -1, &[Tag::Symplectic]));
        link(&mut s, &t, &sigma)?;
    }
    for i in 1..=2 * k - 2 {
        let (r, v) = (format!("Rbar{i}"), format!("V{i}"));
        s.add_surface(TrackedSurface::new(&r, 1, 0, &[Tag::Lagrangian]));
        s.add_surface(TrackedSurface::new(&v, 1, -2, &[Tag::Lagrangian]));
        link(&mut s, &r, &v)?;
        s = declare_fact(&s, FactKind::MeridianDies, &r, "rim torus with a dual vanishing class")?;
    }
    let top = format!("Sigma{}", g + 1);
    s.add_surface(TrackedSurface::new(&top, g + 1, 0, &[Tag::Symplectic]));
    s = declare_fact(
        &s,
        FactKind::GeneratorsDieInComplement,
        &sigma,
        "standard generators of the genus 2k surface are nullhomotopic in its complement",
    )?;
    s = declare_fact(&s, FactKind::MeridianDies, &sigma, "meridian bounds a punctured -1 torus T1")?;
    Ok(cited(
        s,
        &format!("X({k},{m})"),
        "building block theorem: e = 4k+4, sigma = -4, simply connected; nonspin via square -1 tori",
    ))
}

/// `X_{g,g+2}`: `e = 4g + 2`, `σ = −2`, containing `Σ₂` of square 0 and
/// two genus `g` surfaces of square −1 meeting it once.
fn x_gg2(g: i64) -> Result<ManifoldState> {
    if g < 1 {
        return Err(Error::BadParameter(format!("X_{{g,g+2}} needs g >= 1, got {g}")));
    }
    let e = g.checked_mul(4).and_then(|x| x.checked_add(2)).ok_or_else(|| Error::BadParameter("g overflows".into()))?;
    let inv = InvariantVector::derive(e, -2, 0, Spin::NonSpin)
        .with_simply_connected(true)
        .with_symplectic(true)
        .with_minimal(true);
    let mut s = declared(format!("X_{{{},{}}}", g, g + 2), inv);
    let gu = u32::try_from(g).map_err(|_| Error::BadParameter("g too large".into()))?;
    s.add_surface(TrackedSurface::new("Sigma2", 2, 0, &[Tag::Symplectic]));
    for n in ["S1", "S2"] {
        s.add_surface(TrackedSurface::new(n, gu, -1, &[Tag::Symplectic]));
        link(&mut s, n, "Sigma2")?;
    }
    add_lagrangian_pair(&mut s)?;
    Ok(cited(
        s,
        &format!("X_{{{},{}}}", g, g + 2),
        "building block theorem: e = 4g+2, sigma = -2, simply connected; nonspin via square -1 surfaces",
    ))
}

/// `X_{g,g+1}`: `e = 4g + 1`, `σ = −1`, containing `Σ₂` and `Σ_{g+1}`
/// of square 0 meeting once.
fn x_gg1(g: i64) -> Result<ManifoldState> {
    if g < 1 {
        return Err(Error::BadParameter(format!("X_{{g,g+1}} needs g >= 1, got {g}")));
    }
    let e = g.checked_mul(4).and_then(|x| x.checked_add(1)).ok_or_else(|| Error::BadParameter("g overflows".into()))?;
    let inv = InvariantVector::derive(e, -1, 0, Spin::NonSpin)
        .with_simply_connected(true)
        .with_symplectic(true)
        .with_minimal(true);
    let mut s = declared(format!("X_{{{},{}}}", g, g + 1), inv);
    let top = u32::try_from(g + 1).map_err(|_| Error::BadParameter("g too large".into()))?;
    let big = format!("Sigma{top}");
    s.add_surface(TrackedSurface::new("Sigma2", 2, 0, &[Tag::Symplectic]));
    s.add_surface(TrackedSurface::new(&big, top, 0, &[Tag::Symplectic]));
    link(&mut s, "Sigma2", &big)?;
    s = declare_fact(
        &s,
        FactKind::GeneratorsDieInComplement,
        &big,
        "generators of the internal sum surface die in the complement",
    )?;
    s = declare_fact(&s, FactKind::MeridianDies, &big, "meridian bounds a punctured Sigma2")?;
    add_lagrangian_pair(&mut s)?;
    Ok(cited(
        s,
        &format!("X_{{{},{}}}", g, g + 1),
        "building block theorem: e = 4g+1, sigma = -1, simply connected; nonspin since 16 does not divide sigma",
    ))
}

fn add_lagrangian_pair(s: &mut ManifoldState) -> Result<()> {
    for t in ["T1", "T2"] {
        s.add_surface(TrackedSurface::new(t, 1, 0, &[Tag::Lagrangian]));
        *s = declare_fact(s, FactKind::MeridianDies, t, "complement of the Lagrangian tori is simply connected")?;
    }
    Ok(())
}

fn torus_group(names: &[&str]) -> Presentation {
    let mut p = Presentation::free(names);
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            p.add_relator(Word::commutator(&Word::gen(i), &Word::gen(j)))
                .expect("generators in range");
        }
    }
    p
}

fn four_torus() -> ManifoldState {
    let inv = InvariantVector::derive(0, 0, 4, Spin::Spin)
        .with_symplectic(true)
        .with_minimal(true);
    let mut s = ManifoldState::new("T4", inv);
    s.group = GroupKnowledge::Explicit(torus_group(&["x1", "x2", "x3", "x4"]));
    for n in ["T2xpt", "ptxT2", "ptxT2'", "Tbeta"] {
        s.add_surface(TrackedSurface::new(n, 1, 0, &[Tag::Symplectic]));
    }
    let pairs = [("T2xpt", "ptxT2", 1), ("T2xpt", "ptxT2'", 1), ("T2xpt", "Tbeta", 2)];
    for (a, b, c) in pairs {
        s.set_intersection(a, b, c).expect("surfaces present");
    }
    cited(s, "T4", "Tbeta is a symplectic torus meeting T2xpt twice")
}

fn t4_two_blowups() -> Result<ManifoldState> {
    let s = resolve(&four_torus(), &["T2xpt", "ptxT2"], "Sigma2")?;
    let s = blow_up(&s, Some("Sigma2"))?;
    let mut s = blow_up(&s, Some("Sigma2"))?;
    s.name = "T4#2CP2bar".into();
    Ok(s)
}

fn t4_one_blowup() -> Result<ManifoldState> {
    let s = blow_up_at_intersection(&four_torus(), "T2xpt", "Tbeta")?;
    let mut s = resolve(&s, &["T2xpt", "Tbeta"], "Sigma2")?;
    s.name = "T4#CP2bar".into();
    Ok(s)
}

fn surface_group(prefix: (&str, &str), g: usize, names: &mut Vec<String>) -> Vec<(usize, usize)> {
    let start = names.len();
    for i in 1..=g {
        names.push(format!("{}{i}", prefix.0));
        names.push(format!("{}{i}", prefix.1));
    }
    (0..g).map(|i| (start + 2 * i, start + 2 * i + 1)).collect()
}

fn product_of_commutators(pairs: &[(usize, usize)]) -> Word {
    pairs
        .iter()
        .fold(Word::identity(), |w, &(a, b)| w.mul(&Word::commutator(&Word::gen(a), &Word::gen(b))))
}

fn surface_product(g: i64, h: i64) -> Result<ManifoldState> {
    if g < 1 || h < 1 || g > 1000 || h > 1000 {
        return Err(Error::BadParameter(format!("surface product needs 1 <= g, h <= 1000, got ({g},{h})")));
    }
    let e = (2 - 2 * g) * (2 - 2 * h);
    let inv = InvariantVector::derive(e, 0, 2 * (g + h), Spin::Spin)
        .with_symplectic(true)
        .with_minimal(true);
    let mut names = Vec::new();
    let left = surface_group(("a", "b"), g as usize, &mut names);
    let right = surface_group(("c", "d"), h as usize, &mut names);
    let mut rels = vec![product_of_commutators(&left), product_of_commutators(&right)];
    for &(a, b) in &left {
        for &(c, d) in &right {
            for (x, y) in [(a, c), (a, d), (b, c), (b, d)] {
                rels.push(Word::commutator(&Word::gen(x), &Word::gen(y)));
            }
        }
    }
    let mut s = ManifoldState::new(format!("Sigma{g}xSigma{h}"), inv);
    s.group = GroupKnowledge::Explicit(Presentation::new(names, rels)?);
    let (gu, hu) = (g as u32, h as u32);
    let (horiz, vert) = (format!("Sigma{g}xpt"), format!("ptxSigma{h}"));
    s.add_surface(TrackedSurface::new(&horiz, gu, 0, &[Tag::Symplectic, Tag::Complex]));
    s.add_surface(TrackedSurface::new(&vert, hu, 0, &[Tag::Symplectic, Tag::Complex]));
    s.add_surface(TrackedSurface::new(format!("{vert}'"), hu, 0, &[Tag::Symplectic, Tag::Complex]));
    link(&mut s, &horiz, &vert)?;
    link(&mut s, &horiz, &format!("{vert}'"))?;
    s.refresh_from_group();
    Ok(s)
}

/// `Σ₂ × Σ_n` with the `Y_n` surgery tori tracked as Lagrangian tori whose
/// meridians are still relators.
fn sigma2_times_sigma_n(n: i64) -> Result<ManifoldState> {
    let (complement, tori) = y_n_surgery_data(n)?;
    let e = 4 * (n - 1);
    let inv = InvariantVector::derive(e, 0, 4 + 2 * n, Spin::Spin).with_symplectic(true).with_minimal(true);
    let mut s = ManifoldState::new(format!("Sigma2xSigma{n}"), inv);
    s.group = GroupKnowledge::Explicit(complement);
    for t in tori {
        s.add_surface(TrackedSurface::new(&t.torus, 1, 0, &[Tag::Lagrangian]));
        // The loops are stored so that the surgery `(torus, curve, sign)` is
        // the coefficient `1/sign`.
        s.tori.insert(
            t.torus.clone(),
            TorusLoops {
                meridian: t.meridian,
                curves: BTreeMap::from([(t.curve, t.curve_word)]),
            },
        );
    }
    s.refresh_from_group();
    Ok(s)
}

fn y_n(n: i64) -> Result<ManifoldState> {
    let (_, tori) = y_n_surgery_data(n)?;
    let mut s = sigma2_times_sigma_n(n)?;
    for t in tori {
        s = luttinger(&s, &LuttingerSpec::luttinger(&t.torus, &t.curve, t.sign))?;
    }
    s.name = format!("Y_{n}");
    Ok(s)
}

fn y_n_pq(n: i64, p: i64, q: i64, m: i64) -> Result<ManifoldState> {
    let pres = make_y_n_pq_presentation(n, p, q, m)?;
    let inv = InvariantVector::derive(0, 0, 0, Spin::Unknown)
        .with_symplectic(m == 1)
        .with_minimal(m == 1);
    let mut s = ManifoldState::new(format!("Y_{n}(1/{p},{m}/{q})"), inv);
    s.group = GroupKnowledge::Explicit(pres);
    s.refresh_from_group();
    Ok(cited(
        s,
        "Y_n(1/p,m/q)",
        "torus surgeries on Sigma_n x T2 keep e = 0 and sigma = 0; minimal symplectic for m = 1",
    ))
}

fn tower(m: i64) -> Result<ManifoldState> {
    let (c1_sq, e) = crate::covers::hirzebruch_tower(m)?;
    // c1² = 2e + 3σ.
    let sigma = (c1_sq - 2 * e) / 3;
    let inv = InvariantVector::derive(e, sigma, 0, Spin::Unknown)
        .with_b1(None)
        .with_symplectic(true);
    let mut s = ManifoldState::new(format!("X({m})"), inv);
    s.group = GroupKnowledge::Undetermined {
        reason: "irregularity of tower surfaces is not tracked".into(),
    };
    Ok(cited(s, "hirzebruch_tower", "iterated quadrangle covers on the BMY line"))
}
