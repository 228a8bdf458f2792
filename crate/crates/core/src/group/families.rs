//! Presentations of the Luttinger-surgered products used as building blocks.
//!
//! Every displayed relation `lhs = rhs` is stored as the relator
//! `lhs · rhs⁻¹`, with commutators expanded as `[x, y] = x⁻¹y⁻¹xy`.

use crate::error::{Error, Result};

use super::presentation::Presentation;
use super::word::Word;

fn comm(x: &Word, y: &Word) -> Word {
    Word::commutator(x, y)
}

fn inv(w: &Word) -> Word {
    w.inverse()
}

/// `lhs = rhs` as a relator.
fn eq(lhs: &Word, rhs: &Word) -> Word {
    lhs.mul(&rhs.inverse())
}

fn y_n_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = ["a1", "a2", "b1", "b2"].iter().map(|s| s.to_string()).collect();
    names.extend((1..=n).map(|j| format!("c{j}")));
    names.extend((1..=n).map(|j| format!("d{j}")));
    names
}

/// One Luttinger surgery of the `Y_n` list: the torus, its surgery curve,
/// the meridian word (oriented so that `μ · γ^sign` is the displayed
/// relation) and the sign of the `±1` coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryTorus {
    pub torus: String,
    pub curve: String,
    pub meridian: Word,
    pub curve_word: Word,
    pub sign: i64,
}

/// The `Y_n` surgery list together with the relations that hold before
/// any surgery (commuting and surface relations).
pub fn y_n_surgery_data(n: i64) -> Result<(Presentation, Vec<SurgeryTorus>)> {
    if n < 2 {
        return Err(Error::BadParameter(format!("Y_n needs n >= 2, got {n}")));
    }
    let n = n as usize;
    let mut p = Presentation::from_parts_unchecked(y_n_names(n), Vec::new());
    let g = |s: &str| p.g(s);
    let (a1, a2, b1, b2) = (g("a1"), g("a2"), g("b1"), g("b2"));
    let c = |j: usize| g(&format!("c{j}"));
    let d = |j: usize| g(&format!("d{j}"));

    // (torus, curve, commutator, curve word, sign)
    let mut list: Vec<(String, String, Word, Word, i64)> = vec![
        ("a1'xc1'".into(), "a1'".into(), comm(&inv(&b1), &inv(&d(1))), a1.clone(), -1),
        ("b1'xc1''".into(), "b1'".into(), comm(&inv(&a1), &d(1)), b1.clone(), -1),
        ("a2'xc2'".into(), "a2'".into(), comm(&inv(&b2), &inv(&d(2))), a2.clone(), -1),
        ("b2'xc2''".into(), "b2'".into(), comm(&inv(&a2), &d(2)), b2.clone(), -1),
        ("a2'xc1'".into(), "c1'".into(), comm(&inv(&d(1)), &inv(&b2)), c(1), 1),
        ("a2''xd1'".into(), "d1'".into(), comm(&inv(&c(1)), &b2), d(1), 1),
        ("a1'xc2'".into(), "c2'".into(), comm(&inv(&d(2)), &inv(&b1)), c(2), 1),
        ("a1''xd2'".into(), "d2'".into(), comm(&inv(&c(2)), &b1), d(2), 1),
    ];
    for j in 3..=n {
        let cj = (format!("b1'xc{j}'"), format!("c{j}'"), comm(&inv(&a1), &inv(&d(j))), c(j), -1);
        let dj = (format!("b2'xd{j}'"), format!("d{j}'"), comm(&inv(&a2), &inv(&c(j))), d(j), -1);
        list.push(cj);
        list.push(dj);
    }
    let tori = list
        .into_iter()
        .map(|(torus, curve, cm, curve_word, sign)| SurgeryTorus {
            torus,
            curve,
            // μ · γ^sign = 1 must read cm = γ, so μ = cm for sign −1 and
            // μ = cm⁻¹ for sign +1.
            meridian: if sign < 0 { cm } else { inv(&cm) },
            curve_word,
            sign,
        })
        .collect();

    let mut rels = vec![
        comm(&a1, &c(1)),
        comm(&a1, &c(2)),
        comm(&a1, &d(2)),
        comm(&b1, &c(1)),
        comm(&a2, &c(1)),
        comm(&a2, &c(2)),
        comm(&a2, &d(1)),
        comm(&b2, &c(2)),
        comm(&a1, &b1).mul(&comm(&a2, &b2)),
        (1..=n).fold(Word::identity(), |w, j| w.mul(&comm(&c(j), &d(j)))),
    ];
    for j in 3..=n {
        rels.push(comm(&b1, &c(j)));
        rels.push(comm(&b2, &d(j)));
    }
    for r in rels {
        p.add_relator(r)?;
    }
    Ok((p, tori))
}

/// `π₁(Y_n)` with generators `a1 a2 b1 b2 c1..cn d1..dn` and the full
/// relation list: 8 commutator-defining relations, 8 commuting relations,
/// 2 surface relations, then `2(n−2)` defining and `2(n−2)` commuting
/// relations for `j ≥ 3`.
pub fn make_y_n_presentation(n: i64) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::BadParameter(format!("Y_n needs n >= 2, got {n}")));
    }
    let n = n as usize;
    let mut p = Presentation::from_parts_unchecked(y_n_names(n), Vec::new());
    let g = |s: &str| p.g(s);
    let (a1, a2, b1, b2) = (g("a1"), g("a2"), g("b1"), g("b2"));
    let c = |j: usize| g(&format!("c{j}"));
    let d = |j: usize| g(&format!("d{j}"));
    let mut rels = vec![
        eq(&comm(&inv(&b1), &inv(&d(1))), &a1),
        eq(&comm(&inv(&a1), &d(1)), &b1),
        eq(&comm(&inv(&b2), &inv(&d(2))), &a2),
        eq(&comm(&inv(&a2), &d(2)), &b2),
        eq(&comm(&inv(&d(1)), &inv(&b2)), &c(1)),
        eq(&comm(&inv(&c(1)), &b2), &d(1)),
        eq(&comm(&inv(&d(2)), &inv(&b1)), &c(2)),
        eq(&comm(&inv(&c(2)), &b1), &d(2)),
        comm(&a1, &c(1)),
        comm(&a1, &c(2)),
        comm(&a1, &d(2)),
        comm(&b1, &c(1)),
        comm(&a2, &c(1)),
        comm(&a2, &c(2)),
        comm(&a2, &d(1)),
        comm(&b2, &c(2)),
        comm(&a1, &b1).mul(&comm(&a2, &b2)),
        (1..=n).fold(Word::identity(), |w, j| w.mul(&comm(&c(j), &d(j)))),
    ];
    for j in 3..=n {
        rels.push(eq(&comm(&inv(&a1), &inv(&d(j))), &c(j)));
        rels.push(eq(&comm(&inv(&a2), &inv(&c(j))), &d(j)));
    }
    for j in 3..=n {
        rels.push(comm(&b1, &c(j)));
        rels.push(comm(&b2, &d(j)));
    }
    for r in rels {
        p.add_relator(r)?;
    }
    Ok(p)
}

/// `π₁(Y_n(1/p, m/q))` with generators `a1..an b1..bn c d`.
pub fn make_y_n_pq_presentation(n: i64, p: i64, q: i64, m: i64) -> Result<Presentation> {
    if n < 2 || p < 1 || q < 1 {
        return Err(Error::BadParameter(format!(
            "Y_n(1/p,m/q) needs n >= 2, p >= 1, q >= 1; got n={n}, p={p}, q={q}"
        )));
    }
    let n = n as usize;
    let mut names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    names.extend((1..=n).map(|i| format!("b{i}")));
    names.push("c".into());
    names.push("d".into());
    let mut pres = Presentation::from_parts_unchecked(names, Vec::new());
    let g = |s: &str| pres.g(s);
    let a = |i: usize| g(&format!("a{i}"));
    let b = |i: usize| g(&format!("b{i}"));
    let (c, d) = (g("c"), g("d"));
    let mut rels = Vec::new();
    for i in 1..n {
        rels.push(eq(&comm(&inv(&b(i)), &inv(&d)), &a(i)));
        rels.push(eq(&comm(&inv(&a(i)), &d), &b(i)));
    }
    rels.push(eq(&comm(&inv(&d), &inv(&b(n))), &c.pow(p)));
    rels.push(eq(&comm(&inv(&c), &b(n)).pow(-m), &d.pow(q)));
    for i in 1..n {
        rels.push(comm(&a(i), &c));
        rels.push(comm(&b(i), &c));
    }
    rels.push(comm(&a(n), &c));
    rels.push(comm(&a(n), &d));
    rels.push((1..=n).fold(Word::identity(), |w, i| w.mul(&comm(&a(i), &b(i)))));
    rels.push(comm(&c, &d));
    for r in rels {
        pres.add_relator(r)?;
    }
    Ok(pres)
}
