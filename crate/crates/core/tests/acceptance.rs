//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use fourcalc::audit::{audit, Status};
use fourcalc::construction::{blow_up, run_named_pipeline, symplectic_sum};
use fourcalc::covers::{hirzebruch_tower, quadrangle_cover_surface, riemann_hurwitz_genus, singular_fiber_budget};
use fourcalc::geography::{exotic_threshold, extend, threshold_n, LatticePoint};
use fourcalc::group::{
    abelianize, make_y_n_pq_presentation, make_y_n_presentation, smith_normal_form, tietze_simplify,
    verify_certificate, AbelianGroupDescription, Pi1Datum,
};
use fourcalc::invariants::homeomorphism_type;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const CHECKS: usize = 10_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Suite<'a> = &'a mut dyn FnMut(&mut ChaCha8Rng) -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn branched_covers() -> Outcome {
    let s = quadrangle_cover_surface(5).map_err(|e| e.to_string())?;
    let v = s.invariants;
    let got = (v.c1_sq(), v.e, v.sigma, v.chi_h().value(), s.q);
    ensure(got == (45, 15, 5, Some(5), 2), || format!("S(5) = {got:?}"))?;
    for n in [5i64, 7, 11, 13, 17] {
        let v = quadrangle_cover_surface(n).map_err(|e| e.to_string())?.invariants;
        let closed = (5 * (n - 2) * (n - 2), 2 * n * n - 10 * n + 15, (n * n - 10) / 3);
        ensure((v.c1_sq(), v.e, v.sigma) == closed, || format!("S({n}) = {:?}, closed forms {closed:?}", (v.c1_sq(), v.e, v.sigma)))?;
    }
    Ok("S(5) = (45, 15, 5, 5, q=2); closed forms for n = 5, 7, 11, 13, 17".into())
}

fn tower() -> Outcome {
    let t2 = hirzebruch_tower(2).map_err(|e| e.to_string())?;
    let t3 = hirzebruch_tower(3).map_err(|e| e.to_string())?;
    ensure(t2 == (45, 15) && t3 == (225, 75), || format!("tower(2) = {t2:?}, tower(3) = {t3:?}"))?;
    Ok("tower(2) = (45, 15), tower(3) = (225, 75)".into())
}

fn fibration() -> Outcome {
    let g = riemann_hurwitz_genus(5, 0, &[5, 5, 5, 5]).map_err(|e| e.to_string())?;
    let b5 = singular_fiber_budget(15, -6, -2);
    let b7 = singular_fiber_budget(43, -10, -4);
    ensure((g, b5, b7) == (4, 3, 3), || format!("genus {g}, budgets {b5}, {b7}"))?;
    Ok("genus 4; singular fiber budgets 3 and 3".into())
}

fn pipelines() -> Outcome {
    let expected = [
        ("Z3", [52, 0, 104, 13], (25, 25)),
        ("Z2", [48, 0, 96, 12], (23, 23)),
        ("M14", [55, 1, 113, 14], (27, 26)),
        ("M35", [57, 3, 123, 15], (29, 26)),
    ];
    for (name, vec, ty) in expected {
        let s = run_named_pipeline(name).map_err(|e| e.to_string())?.state;
        let v = s.invariants;
        let got = [v.e, v.sigma, v.c1_sq(), v.chi_h().value().unwrap_or(i64::MIN)];
        let t = homeomorphism_type(&v).map_err(|e| format!("{name}: {e}"))?;
        ensure(got == vec && t == ty, || format!("{name}: {got:?} type {t:?}"))?;
    }
    Ok("Z3, Z2, M14, M35 vectors and types".into())
}

fn audit_findings() -> Outcome {
    let rows = audit().map_err(|e| e.to_string())?;
    let find = |id: &str| rows.iter().find(|r| r.claim_id == id).ok_or_else(|| format!("missing row {id}"));
    for (id, stated, computed) in [
        ("M25.e", 50, 58),
        ("M25.sigma", 2, 2),
        ("M25.c1sq", 106, 122),
        ("M25.chi_h", 13, 15),
        ("X24_blown.c1sq", 16, 12),
        ("Z2.c1sq", 96, 96),
    ] {
        let r = find(id)?;
        let status = if stated == computed { Status::Match } else { Status::Mismatch };
        ensure((r.stated, r.computed, r.status) == (stated, computed, status), || format!("{r}"))?;
    }
    let mismatches: Vec<&str> = rows.iter().filter(|r| r.status == Status::Mismatch).map(|r| r.claim_id.as_str()).collect();
    Ok(format!("{} claims; mismatches: {}", rows.len(), mismatches.join(", ")))
}

fn thresholds() -> Outcome {
    let n = |b, s| exotic_threshold(b, s, s).map(threshold_n).map_err(|e| e.to_string());
    let got = [n(27, 1)?, n(25, 2)?, n(29, 3)?, n(25, 0)?];
    ensure(got == [14, 13, 15, 13], || format!("{got:?}"))?;
    let z2 = homeomorphism_type(&run_named_pipeline("Z2").map_err(|e| e.to_string())?.state.invariants)
        .map_err(|e| e.to_string())?;
    ensure(threshold_n(z2.0) == 12 && z2.0 == z2.1, || format!("Z2 type {z2:?}"))?;
    Ok("n >= 14, 13, 15, 13; Z2 fills n = 12".into())
}

fn group_calculus() -> Outcome {
    for n in 2..=6 {
        let p = make_y_n_presentation(n).map_err(|e| e.to_string())?;
        let h = abelianize(&p);
        ensure(h.is_trivial() && naive_h1(&p) == (0, vec![]), || format!("Y_{n}: {h}"))?;
    }
    for n in 2..=4 {
        for p in 1..=3 {
            for q in 1..=3 {
                let pres = make_y_n_pq_presentation(n, p, q, 1).map_err(|e| e.to_string())?;
                let expected = AbelianGroupDescription::from_cyclic_orders(2, &[p, q]);
                let h = abelianize(&pres);
                let naive = naive_h1(&pres);
                ensure(h == expected && (naive.0, naive.1.as_slice()) == (h.free_rank, h.torsion.as_slice()), || {
                    format!("Y_{n}({p},{q}): {h}, naive {naive:?}")
                })?;
            }
        }
    }
    // Determinantal divisors on the smallest cases.
    for pres in [make_y_n_presentation(2), make_y_n_pq_presentation(2, 1, 1, 1)] {
        let pres = pres.map_err(|e| e.to_string())?;
        let cols = pres.num_generators();
        let m: Vec<Vec<i64>> = pres.relators().iter().map(|r| (0..cols).map(|g| r.exponent_sum(g)).collect()).collect();
        let factors = determinantal_factors(&m, m.len(), cols);
        let h = abelianize(&pres);
        let torsion: Vec<i64> = factors.iter().filter(|&&d| d > 1).map(|&d| d as i64).collect();
        ensure(cols - factors.len() == h.free_rank && torsion == h.torsion, || format!("minors give {factors:?}, engine {h}"))?;
    }
    let z3 = run_named_pipeline("Z3").map_err(|e| e.to_string())?.state;
    match z3.pi1() {
        Pi1Datum::Explicit(p) if p.is_literally_trivial() && abelianize(&p).is_trivial() => {}
        other => return Err(format!("Z3 group {other:?}")),
    }
    Ok("Y_n trivial for n = 2..6; Y_n(p,q) = Z^2+Z/p+Z/q; Z3 group explicit trivial".into())
}

fn property_a(rng: &mut ChaCha8Rng, bases: &[fourcalc::construction::ManifoldState]) -> Result<(), String> {
    let mut done = 0;
    while done < CHECKS {
        let s = random_state(rng, bases);
        let Some(step) = random_step(rng, &s) else { continue };
        let (a, b) = (s.invariants, step.state.invariants);
        let delta = (b.e - a.e, b.sigma - a.sigma);
        ensure(identities_hold(&step.state) && delta == step.delta, || {
            format!("{} on {}: delta {delta:?}, expected {:?}", step.op, s.name, step.delta)
        })?;
        ensure(b.c1_sq() - a.c1_sq() == 2 * step.delta.0 + 3 * step.delta.1, || format!("{}: c1^2 drift", step.op))?;
        done += 1;
    }
    Ok(())
}

fn property_bc(rng: &mut ChaCha8Rng, bases: &[fourcalc::construction::ManifoldState]) -> Result<(), String> {
    let mut done = 0;
    while done < CHECKS {
        let a = random_state(rng, bases);
        if a.surfaces.is_empty() {
            continue;
        }
        let surf = a.surfaces[rng.gen_range(0..a.surfaces.len())].clone();
        let b = partner(rng, &surf);
        let ab = symplectic_sum(&a, &surf.name, &b, "P").map_err(|e| e.to_string())?;
        let ba = symplectic_sum(&b, "P", &a, &surf.name).map_err(|e| e.to_string())?;
        ensure(ab.invariants == ba.invariants, || format!("{} along {}: {:?} vs {:?}", a.name, surf.name, ab.invariants, ba.invariants))?;
        let first = symplectic_sum(&blow_up(&a, None).map_err(|e| e.to_string())?, &surf.name, &b, "P").map_err(|e| e.to_string())?;
        let second = blow_up(&ab, None).map_err(|e| e.to_string())?;
        ensure(first.invariants == second.invariants, || format!("{} along {}: blow-up does not commute", a.name, surf.name))?;
        done += 1;
    }
    Ok(())
}

fn property_d(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..CHECKS {
        let p = random_presentation(rng);
        let h = abelianize(&p);
        let (_, transcript) = tietze_simplify(&p, 200);
        for step in &transcript.steps {
            ensure(abelianize(&step.result) == h, || format!("{p}: {:?} changed H1", step.mv))?;
        }
    }
    Ok(())
}

fn property_e(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..CHECKS {
        let (rows, cols) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let snf = smith_normal_form(&a, rows, cols);
        ensure(verify_certificate(&a, rows, cols, &snf), || format!("{a:?}: certificate fails"))?;
        let diag: Vec<i128> = snf.diagonal().into_iter().filter(|&d| d != 0).map(|d| i128::from(d).abs()).collect();
        ensure(diag == determinantal_factors(&a, rows, cols), || format!("{a:?}: {diag:?}"))?;
    }
    Ok(())
}

fn property_f(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..CHECKS {
        let base = LatticePoint::new(rng.gen_range(-5..=20), rng.gen_range(-20..=200), "b");
        let chi_max = rng.gen_range(1..=20);
        let (x0, y0) = (base.chi_h + rng.gen_range(-3..=10), base.c1_sq + rng.gen_range(-20..=60));
        let (x1, y1) = (x0 + rng.gen_range(0..=15), y0 + rng.gen_range(0..=120));
        let got: BTreeSet<(i64, i64)> = extend(&base, chi_max)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|p| p.point.coords())
            .filter(|&(x, y)| (x0..=x1).contains(&x) && (y0..=y1).contains(&y))
            .collect();
        let mut brute = BTreeSet::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                let (d, c) = (x - base.chi_h, y - base.c1_sq);
                if (1..=chi_max).contains(&d) && (0..=8 * d).contains(&c) {
                    brute.insert((x, y));
                }
            }
        }
        ensure(got == brute, || format!("base {:?}, chi_max {chi_max}", base.coords()))?;
    }
    Ok(())
}

fn properties() -> Outcome {
    let bases = base_states();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let parts: [(&str, Suite); 5] = [
        ("a", &mut |r| property_a(r, &bases)),
        ("b,c", &mut |r| property_bc(r, &bases)),
        ("d", &mut property_d),
        ("e", &mut property_e),
        ("f", &mut property_f),
    ];
    for (label, f) in parts {
        f(&mut rng).map_err(|e| format!("({label}) {e}"))?;
    }
    Ok(format!("{CHECKS} seeded checks each for (a)-(f)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("branched covers", branched_covers),
        ("tower", tower),
        ("fibration", fibration),
        ("pipelines", pipelines),
        ("audit findings", audit_findings),
        ("thresholds", thresholds),
        ("group calculus", group_calculus),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
