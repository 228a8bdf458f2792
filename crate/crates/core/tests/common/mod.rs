#![allow(dead_code)]

use fourcalc::construction::{
    blow_up, catalog_block, knot_surgery, luttinger, resolve, symplectic_sum, LuttingerSpec, ManifoldState, Tag,
    TrackedSurface,
};
use fourcalc::group::{Presentation, Word};
use fourcalc::invariants::{InvariantVector, Spin};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free elimination.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Invariant factors `d_k / d_{k-1}` from gcds of `k × k` minors.
pub fn determinantal_factors(a: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        combinations(rows, k, |rs| {
            combinations(cols, k, |cs| {
                let m: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| i128::from(a[r][c])).collect()).collect();
                g = gcd(g, det(&m));
                g != 1
            });
            g != 1
        });
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Diagonalizes by repeated Euclidean steps, then normalizes to a
/// divisibility chain with gcd/lcm swaps. Returns `(rank, nonzero factors)`.
pub fn naive_invariant_factors(a: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = (0..rows).map(|r| (0..cols).map(|c| i128::from(a[r][c])).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if m[r][c] != 0 && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else {
                break;
            };
            m.swap(t, br);
            for row in m.iter_mut() {
                row.swap(t, bc);
            }
            let p = m[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let q = m[r][t] / p;
                for c in t..cols {
                    m[r][c] -= q * m[t][c];
                }
                clean &= m[r][t] == 0;
            }
            for c in t + 1..cols {
                let q = m[t][c] / p;
                for r in t..rows {
                    m[r][c] -= q * m[r][t];
                }
                clean &= m[t][c] == 0;
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
        if diag.len() <= t {
            break;
        }
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (a, b) = (diag[i], diag[j]);
            let g = gcd(a, b);
            diag[i] = g;
            diag[j] = a / g * b;
        }
    }
    diag
}

/// `(free rank, torsion ≥ 2)` of the group presented by `p`, via the naive
/// reduction.
pub fn naive_h1(p: &Presentation) -> (usize, Vec<i64>) {
    let cols = p.num_generators();
    let rows = p.relators().len();
    let matrix: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| (0..cols).map(|g| r.exponent_sum(g)).collect())
        .collect();
    let f = naive_invariant_factors(&matrix, rows, cols);
    let torsion = f.iter().filter(|&&d| d > 1).map(|&d| d as i64).collect();
    (cols - f.len(), torsion)
}

pub fn random_word<R: Rng>(rng: &mut R, gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| {
        let e = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (rng.gen_range(0..gens), e)
    }))
}

pub fn random_presentation<R: Rng>(rng: &mut R) -> Presentation {
    let gens = rng.gen_range(1..=4);
    let rels = rng.gen_range(0..=4);
    let names = (0..gens).map(|i| format!("x{i}")).collect();
    let relators = (0..rels).map(|_| random_word(rng, gens, 6)).collect();
    Presentation::new(names, relators).expect("generators in range")
}

/// Catalog blocks cheap enough to build in bulk.
pub fn base_states() -> Vec<ManifoldState> {
    let specs: &[(&str, &[i64])] = &[
        ("X", &[1, 1]),
        ("X", &[2, 1]),
        ("X", &[3, 1]),
        ("X", &[2, -2]),
        ("X_gg2", &[2]),
        ("X_gg2", &[4]),
        ("X_gg1", &[3]),
        ("X_gg1", &[5]),
        ("T4", &[]),
        ("T4#CP2bar", &[]),
        ("T4#2CP2bar", &[]),
        ("S_hat", &[]),
        ("S", &[5]),
        ("SigmaxSigma", &[1, 2]),
    ];
    specs
        .iter()
        .map(|(n, p)| catalog_block(n, p).expect("catalog block"))
        .collect()
}

/// A synthetic block with one surface `P` that can be glued to `s`.
pub fn partner<R: Rng>(rng: &mut R, s: &TrackedSurface) -> ManifoldState {
    let e = rng.gen_range(-10..=40);
    let sigma = rng.gen_range(-10..=10);
    let spin = *[Spin::Spin, Spin::NonSpin, Spin::Unknown].choose(rng).unwrap();
    let mut p = ManifoldState::new("P", InvariantVector::derive(e, sigma, 0, spin));
    p.add_surface(TrackedSurface::new("P", s.genus, -s.self_intersection, &[Tag::Symplectic]));
    if rng.gen_bool(0.3) {
        p.add_surface(TrackedSurface::new("Q", 0, -1, &[]));
    }
    p
}

/// Expected change of `(e, σ)` for an applied operation.
pub struct Step {
    pub state: ManifoldState,
    pub op: String,
    pub delta: (i64, i64),
}

pub fn random_step<R: Rng>(rng: &mut R, s: &ManifoldState) -> Option<Step> {
    let names: Vec<String> = s.surfaces.iter().map(|t| t.name.clone()).collect();
    let tori: Vec<String> = s.surfaces.iter().filter(|t| t.is_square_zero_torus()).map(|t| t.name.clone()).collect();
    match rng.gen_range(0..5) {
        0 => {
            let on = if names.is_empty() || rng.gen_bool(0.3) { None } else { names.choose(rng).cloned() };
            let state = blow_up(s, on.as_deref()).ok()?;
            Some(Step { state, op: format!("blow_up({on:?})"), delta: (1, -1) })
        }
        1 => {
            let pairs: Vec<(String, String)> = s
                .surfaces
                .iter()
                .flat_map(|a| a.intersections.keys().map(move |b| (a.name.clone(), b.clone())))
                .collect();
            let (a, b) = pairs.choose(rng)?.clone();
            let state = resolve(s, &[&a, &b], "Res").ok()?;
            Some(Step { state, op: format!("resolve({a}, {b})"), delta: (0, 0) })
        }
        2 => {
            let t = tori.choose(rng)?.clone();
            let curve = s.tori.get(&t).and_then(|l| l.curves.keys().next().cloned()).unwrap_or_else(|| "gamma".into());
            let m = rng.gen_range(-3..=3);
            let state = luttinger(s, &LuttingerSpec::luttinger(&t, &curve, m)).ok()?;
            Some(Step { state, op: format!("luttinger({t}, {curve}, 1/{m})"), delta: (0, 0) })
        }
        3 => {
            let t = tori.choose(rng)?.clone();
            let state = knot_surgery(s, &t, rng.gen_range(0..5)).ok()?;
            Some(Step { state, op: format!("knot({t})"), delta: (0, 0) })
        }
        _ => {
            let surf = s.surfaces.choose(rng)?.clone();
            let b = partner(rng, &surf);
            let state = symplectic_sum(s, &surf.name, &b, "P").ok()?;
            let g = i64::from(surf.genus);
            Some(Step {
                state,
                op: format!("sum({}, P)", surf.name),
                delta: (b.invariants.e + 4 * (g - 1), b.invariants.sigma),
            })
        }
    }
}

/// A base block followed by up to three random operations.
pub fn random_state<R: Rng>(rng: &mut R, bases: &[ManifoldState]) -> ManifoldState {
    let mut s = bases.choose(rng).unwrap().clone();
    for _ in 0..rng.gen_range(0..=3) {
        if let Some(step) = random_step(rng, &s) {
            s = step.state;
        }
    }
    s
}

/// The identities every state must satisfy.
pub fn identities_hold(s: &ManifoldState) -> bool {
    let v = s.invariants;
    let chi_ok = v.chi_h().value().is_none_or(|chi| 12 * chi - v.c1_sq() == v.e);
    v.c1_sq() == 2 * v.e + 3 * v.sigma && chi_ok && s.check_integrity().is_ok()
}
