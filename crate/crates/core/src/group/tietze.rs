//! Deterministic best-effort Tietze simplification.
//!
//! Moves are tried in a fixed order: reduce (cyclic reduction, dropping
//! trivial and duplicate relators), eliminate a generator isolated by the
//! shortest relator, then substitute the longest relator fragment that
//! appears in another relator. Each applied move is logged together with
//! the presentation it produced.

use super::presentation::Presentation;
use super::word::{GenId, Word};

/// Eliminations that would push the total relator length past this bound
/// are skipped.
const MAX_TOTAL_LENGTH: u64 = 50_000;
/// Relators longer than this are not used as substitution rules.
const MAX_RULE_LENGTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeMove {
    Reduce { removed: usize },
    Eliminate { generator: String, value: String },
    Substitute { target: usize, using: usize, saved: u64 },
}

#[derive(Debug, Clone)]
pub struct TietzeStep {
    pub mv: TietzeMove,
    pub result: Presentation,
}

#[derive(Debug, Clone)]
pub struct Transcript {
    pub steps: Vec<TietzeStep>,
    pub budget_exhausted: bool,
}

fn total_length(rels: &[Word]) -> u64 {
    rels.iter().map(Word::length).sum()
}

fn reduce(rels: &[Word]) -> Option<(Vec<Word>, usize)> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(rels.len());
    let mut changed = false;
    for r in rels {
        let c = r.cyclic_reduce();
        if c != *r {
            changed = true;
        }
        if c.is_identity() || !seen.insert(Presentation::relator_key(&c)) {
            changed = true;
            continue;
        }
        out.push(c);
    }
    let removed = rels.len() - out.len();
    changed.then_some((out, removed))
}

/// Generator occurring exactly once, with exponent ±1, in `r`.
fn isolated_generators(r: &Word) -> Vec<(usize, GenId, i64)> {
    let letters = r.letters();
    letters
        .iter()
        .enumerate()
        .filter(|(_, &(g, e))| e.abs() == 1 && letters.iter().filter(|l| l.0 == g).count() == 1)
        .map(|(k, &(g, e))| (k, g, e))
        .collect()
}

fn eliminate(names: &[String], rels: &[Word]) -> Option<(Vec<String>, Vec<Word>, TietzeMove)> {
    let mut order: Vec<usize> = (0..rels.len()).collect();
    order.sort_by_key(|&i| (rels[i].length(), i));
    let budget = MAX_TOTAL_LENGTH.max(4 * total_length(rels));
    for i in order {
        let mut cands = isolated_generators(&rels[i]);
        cands.sort_by_key(|c| c.1);
        for (k, g, e) in cands {
            let letters = rels[i].letters();
            // r ~ g^e · rest, so g = rest^(-e).
            let rest = Word::new(letters[k + 1..].iter().chain(&letters[..k]).copied());
            let value = rest.pow(-e);
            let renumber = |h: GenId| if h > g { h - 1 } else { h };
            let subst = |h: GenId| {
                if h == g {
                    Word::new(value.letters().iter().map(|&(x, ex)| (renumber(x), ex)))
                } else {
                    Word::gen(renumber(h))
                }
            };
            let new_rels: Vec<Word> = rels
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.substitute(subst))
                .collect();
            if total_length(&new_rels) > budget {
                continue;
            }
            let mv = TietzeMove::Eliminate {
                generator: names[g].clone(),
                value: value.display_with(names).to_string(),
            };
            let mut new_names = names.to_vec();
            new_names.remove(g);
            return Some((new_names, new_rels, mv));
        }
    }
    None
}

fn find_sub(hay: &[(GenId, i64)], needle: &[(GenId, i64)]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

fn substitute(rels: &[Word]) -> Option<(Vec<Word>, TietzeMove)> {
    // (saved, target, using, new word)
    let mut best: Option<(u64, usize, usize, Word)> = None;
    let expanded: Vec<Vec<(GenId, i64)>> = rels.iter().map(Word::expand).collect();
    for (i, rule) in rels.iter().enumerate() {
        let rule = rule.cyclic_reduce();
        let l = rule.length() as usize;
        if !(2..=MAX_RULE_LENGTH).contains(&l) {
            continue;
        }
        for oriented in [rule.expand(), rule.inverse().expand()] {
            for rot in 0..l {
                let s: Vec<_> = oriented[rot..].iter().chain(&oriented[..rot]).copied().collect();
                for k in (l / 2 + 1..=l).rev() {
                    let saved = (2 * k - l) as u64;
                    if best.as_ref().is_some_and(|b| b.0 >= saved) {
                        break;
                    }
                    let (u, v) = s.split_at(k);
                    for (j, hay) in expanded.iter().enumerate() {
                        if j == i {
                            continue;
                        }
                        if let Some(pos) = find_sub(hay, u) {
                            let replacement = Word::new(v.iter().copied()).inverse();
                            let new = Word::new(hay[..pos].iter().copied())
                                .mul(&replacement)
                                .mul(&Word::new(hay[pos + k..].iter().copied()));
                            best = Some((saved, j, i, new));
                            break;
                        }
                    }
                }
            }
        }
    }
    let (saved, target, using, new) = best?;
    let mut out = rels.to_vec();
    out[target] = new;
    Some((out, TietzeMove::Substitute { target, using, saved }))
}

/// Simplifies `p` with at most `budget` moves. The result presents an
/// isomorphic group; it is trivial only if no generators remain.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> (Presentation, Transcript) {
    let (mut names, mut rels) = p.clone().into_parts();
    let mut steps = Vec::new();
    let mut budget_exhausted = false;
    loop {
        if steps.len() >= budget {
            budget_exhausted = true;
            break;
        }
        let mv = if let Some((r, removed)) = reduce(&rels) {
            rels = r;
            TietzeMove::Reduce { removed }
        } else if let Some((n, r, mv)) = eliminate(&names, &rels) {
            names = n;
            rels = r;
            mv
        } else if let Some((r, mv)) = substitute(&rels) {
            rels = r;
            mv
        } else {
            break;
        };
        steps.push(TietzeStep {
            mv,
            result: Presentation::from_parts_unchecked(names.clone(), rels.clone()),
        });
    }
    (
        Presentation::from_parts_unchecked(names, rels),
        Transcript {
            steps,
            budget_exhausted,
        },
    )
}
