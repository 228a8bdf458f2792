use crate::audit::AuditRow;
use crate::covers::quadrangle_cover_surface;
use crate::error::{Error, Result};
use crate::group::FactKind;
use crate::invariants::{homeomorphism_type, ChiH};

use super::catalog::catalog_block;
use super::ops::{
    blow_up, declare_fact, declare_minimal, declare_simply_connected, internal_sum, rename_surface, resolve,
    symplectic_sum,
};
use super::state::ManifoldState;

pub const PIPELINES: [&str; 6] = ["Z3", "Z2", "M14", "M25", "M35", "S_n_family(n)"];

const MINIMAL: &str = "symplectic sum along genus 6 surfaces without exceptional spheres meeting them is minimal";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineRun {
    pub state: ManifoldState,
    pub rows: Vec<AuditRow>,
}

fn chi_value(s: &ManifoldState) -> i64 {
    match s.invariants.chi_h() {
        ChiH::Integral(v) => v,
        // A non-integral value can never equal a stated integer; report the
        // numerator so the mismatch is visible.
        ChiH::NonIntegral { numerator } => numerator,
    }
}

/// Rows for stated `(e, σ, c₁², χ)`.
fn vector_rows(id: &str, label: &str, stated: [i64; 4], s: &ManifoldState) -> Vec<AuditRow> {
    let v = s.invariants;
    let computed = [v.e, v.sigma, v.c1_sq(), chi_value(s)];
    let keys = ["e", "sigma", "c1sq", "chi_h"];
    let shown = ["e", "sigma", "c1^2", "chi"];
    (0..4)
        .map(|i| {
            AuditRow::new(
                format!("{id}.{}", keys[i]),
                format!("{}({label}) = {}", shown[i], stated[i]),
                stated[i],
                computed[i],
            )
        })
        .collect()
}

/// Rows for a stated homeomorphism type `a CP2 # b CP2bar`.
fn type_rows(id: &str, label: &str, stated: (i64, i64), s: &ManifoldState) -> Result<Vec<AuditRow>> {
    let (a, b) = homeomorphism_type(&s.invariants)?;
    let citation = format!("{label} is homeomorphic to {}CP2 # {}CP2bar", stated.0, stated.1);
    Ok(vec![
        AuditRow::new(format!("{id}.b2plus"), citation.clone(), stated.0, a),
        AuditRow::new(format!("{id}.b2minus"), citation, stated.1, b),
    ])
}

fn s_hat_rows(rows: &mut Vec<AuditRow>, a: &ManifoldState) {
    rows.extend(vector_rows("S_hat", "S#CP2bar", [16, 4, 44, 5], a));
}

fn finish(mut s: ManifoldState, name: &str) -> Result<ManifoldState> {
    s = declare_minimal(&s, MINIMAL)?;
    s.name = name.to_string();
    s.check_integrity()?;
    Ok(s)
}

fn z3() -> Result<PipelineRun> {
    let mut rows = Vec::new();
    let a = catalog_block("S_hat", &[])?;
    s_hat_rows(&mut rows, &a);
    let b = catalog_block("X", &[3, 1])?;
    rows.extend(vector_rows("X31", "X(3,1)", [16, -4, 20, 3], &b));
    let z = finish(symplectic_sum(&a, "Rtilde", &b, "Sigma6")?, "Z(3)")?;
    rows.extend(vector_rows("Z3", "Z(3)", [52, 0, 104, 13], &z));
    rows.extend(type_rows("Z3", "Z(3)", (25, 25), &z)?);
    Ok(PipelineRun { state: z, rows })
}

fn z2() -> Result<PipelineRun> {
    let mut rows = Vec::new();
    let a = catalog_block("S_hat", &[])?;
    s_hat_rows(&mut rows, &a);
    let x = catalog_block("X_gg2", &[2])?;
    let x = resolve(&x, &["Sigma2", "S1", "S2"], "Sigma6'")?;
    let x = blow_up(&x, Some("Sigma6'"))?;
    let x = blow_up(&x, Some("Sigma6'"))?;
    let x = rename_surface(&x, "Sigma6'", "Sigma6''")?;
    let x = declare_fact(
        &x,
        FactKind::GeneratorsDieInComplement,
        "Sigma6''",
        "standard generators of Sigma6'' are trivial in the complement",
    )?;
    rows.extend(vector_rows("X24_blown", "X_{2,4}#2CP2bar", [12, -4, 16, 2], &x));
    let z = finish(symplectic_sum(&a, "Rtilde", &x, "Sigma6''")?, "Z(2)")?;
    rows.extend(vector_rows("Z2", "Z(2)", [48, 0, 96, 12], &z));
    rows.extend(type_rows("Z2", "Z(2)", (23, 23), &z)?);
    Ok(PipelineRun { state: z, rows })
}

fn m14() -> Result<PipelineRun> {
    let mut rows = Vec::new();
    let a = catalog_block("S_hat", &[])?;
    s_hat_rows(&mut rows, &a);
    let x = catalog_block("X_gg2", &[4])?;
    rows.extend(vector_rows("X46", "X_{4,6}", [18, -2, 30, 4], &x));
    rows.extend(type_rows("X46", "X_{4,6}", (7, 9), &x)?);
    let x = resolve(&x, &["Sigma2", "S1"], "Sigma6'")?;
    let x = blow_up(&x, Some("Sigma6'"))?;
    let x = rename_surface(&x, "Sigma6'", "Sigma6")?;
    let x = declare_fact(
        &x,
        FactKind::GeneratorsDieInComplement,
        "Sigma6",
        "standard generators of Sigma6 are trivial in the complement",
    )?;
    rows.extend(vector_rows("X46_blown", "X_{4,6}#CP2bar", [19, -3, 29, 4], &x));
    let z = finish(symplectic_sum(&a, "Rtilde", &x, "Sigma6")?, "M(1,4)")?;
    rows.extend(vector_rows("M14", "M(1,4)", [55, 1, 113, 14], &z));
    rows.extend(type_rows("M14", "M(1,4)", (27, 26), &z)?);
    Ok(PipelineRun { state: z, rows })
}

/// `X_{5,7}` from `T⁴#2CP̄²` and `Σ₂×Σ₅`, with `Σ₆` and `S₁` formed by
/// internal sums. The Luttinger surgeries that kill π₁ only enter as a
/// cited declaration.
pub fn x57_route() -> Result<ManifoldState> {
    let t = catalog_block("T4#2CP2bar", &[])?;
    let p = catalog_block("SigmaxSigma", &[2, 5])?;
    let x = symplectic_sum(&t, "Sigma2", &p, "Sigma2xpt")?;
    let x = internal_sum(&x, &["ptxT2'", "ptxSigma5"], "Sigma6", "punctured torus and punctured genus five surface")?;
    let x = internal_sum(&x, &["e1", "ptxSigma5'"], "S1", "punctured exceptional sphere and punctured genus five surface")?;
    let x = declare_simply_connected(&x, "the +-1 Luttinger surgeries of the X_{g,g+2} construction kill pi1")?;
    let x = declare_fact(
        &x,
        FactKind::GeneratorsDieInComplement,
        "Sigma6",
        "standard generators of Sigma6 are trivial in the complement",
    )?;
    let mut x = declare_fact(&x, FactKind::MeridianDies, "Sigma6", "meridian of Sigma6 bounds a punctured exceptional sphere")?;
    x.name = "X_{5,7}".into();
    Ok(x)
}

/// `X_{5,6}` from `T⁴#CP̄²` and `Σ₂×Σ₅`; same conventions as
/// [`x57_route`].
pub fn x56_route() -> Result<ManifoldState> {
    let t = catalog_block("T4#CP2bar", &[])?;
    let p = catalog_block("SigmaxSigma", &[2, 5])?;
    let x = symplectic_sum(&t, "Sigma2", &p, "Sigma2xpt")?;
    let x = internal_sum(&x, &["ptxT2", "ptxSigma5"], "Sigma6", "punctured torus and punctured genus five surface")?;
    let mut x = declare_simply_connected(&x, "the +-1 Luttinger surgeries of the X_{g,g+1} construction kill pi1")?;
    x.name = "X_{5,6}".into();
    Ok(x)
}

fn m25() -> Result<PipelineRun> {
    let mut rows = Vec::new();
    let a = catalog_block("S_hat", &[])?;
    s_hat_rows(&mut rows, &a);
    let x = x57_route()?;
    rows.extend(type_rows("X57", "X_{5,7}", (9, 11), &x)?);
    let z = finish(symplectic_sum(&a, "Rtilde", &x, "Sigma6")?, "M(2,5)")?;
    rows.extend(vector_rows("M25", "M(2,5)", [50, 2, 106, 13], &z));
    rows.extend(type_rows("M25", "M(2,5)", (25, 23), &z)?);
    Ok(PipelineRun { state: z, rows })
}

fn m35() -> Result<PipelineRun> {
    let mut rows = Vec::new();
    let a = catalog_block("S_hat", &[])?;
    s_hat_rows(&mut rows, &a);
    rows.extend(vector_rows("T4_blown", "T4#CP2bar", [1, -1, -1, 0], &catalog_block("T4#CP2bar", &[])?));
    rows.extend(vector_rows("S2xS5", "Sigma2xSigma5", [16, 0, 32, 4], &catalog_block("SigmaxSigma", &[2, 5])?));
    rows.extend(vector_rows("X56", "X_{5,6}", [21, -1, 39, 5], &x56_route()?));
    let x = catalog_block("X_gg1", &[5])?;
    rows.extend(type_rows("X56", "X_{5,6}", (9, 10), &x)?);
    let z = finish(symplectic_sum(&a, "Rtilde", &x, "Sigma6")?, "M(3,5)")?;
    rows.extend(vector_rows("M35", "M(3,5)", [57, 3, 123, 15], &z));
    rows.extend(type_rows("M35", "M(3,5)", (29, 26), &z)?);
    Ok(PipelineRun { state: z, rows })
}

/// `S(n)` against its closed forms and fibration data.
fn s_n_family(n: i64) -> Result<PipelineRun> {
    let surf = quadrangle_cover_surface(n)?;
    let state = catalog_block("S", &[n])?;
    let v = surf.invariants;
    let id = |k: &str| format!("S({n}).{k}");
    let label = format!("S({n})");
    let sq = (n - 2) * (n - 2);
    let rows = vec![
        AuditRow::new(id("c1sq"), format!("c1^2({label}) = 5(n-2)^2"), 5 * sq, v.c1_sq()),
        AuditRow::new(id("e"), format!("c2({label}) = 2n^2 - 10n + 15"), 2 * n * n - 10 * n + 15, v.e),
        AuditRow::new(id("sigma"), format!("sigma({label}) = (n^2 - 10)/3"), (n * n - 10) / 3, v.sigma),
        AuditRow::new(id("q"), format!("q({label}) = (n-1)/2"), (n - 1) / 2, surf.q),
        AuditRow::new(id("fiber_genus"), format!("{label} fibers have genus n-1"), n - 1, surf.fibration.fiber_genus),
        AuditRow::new(id("base_genus"), format!("{label} base has genus (n-1)/2"), (n - 1) / 2, surf.fibration.base_genus),
        AuditRow::new(id("singular_fibers"), format!("{label} has three singular fibers"), 3, surf.fibration.singular_fibers),
    ];
    Ok(PipelineRun { state, rows })
}

pub fn run_named_pipeline(name: &str) -> Result<PipelineRun> {
    match name {
        "Z3" => z3(),
        "Z2" => z2(),
        "M14" => m14(),
        "M25" => m25(),
        "M35" => m35(),
        _ => {
            let n = name
                .strip_prefix("S_n_family(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse::<i64>().ok())
                .ok_or_else(|| Error::UnknownPipeline(name.to_string()))?;
            s_n_family(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::Status;
    use crate::invariants::Spin;

    fn vector(r: &PipelineRun) -> (i64, i64, i64, ChiH) {
        let v = r.state.invariants;
        (v.e, v.sigma, v.c1_sq(), v.chi_h())
    }

    fn status(r: &PipelineRun, id: &str) -> Status {
        r.rows.iter().find(|x| x.claim_id == id).expect(id).status
    }

    #[test]
    fn z3_vector_and_group() {
        let r = run_named_pipeline("Z3").unwrap();
        assert_eq!(vector(&r), (52, 0, 104, ChiH::Integral(13)));
        assert!(r.state.invariants.simply_connected);
        assert_eq!(r.state.invariants.spin, Spin::NonSpin);
        assert_eq!(r.state.pi1_summary(), "trivial");
        assert!(r.state.manifold_presentation().unwrap().is_literally_trivial());
        assert_eq!(homeomorphism_type(&r.state.invariants).unwrap(), (25, 25));
        assert!(r.rows.iter().all(|x| x.status == Status::Match));
    }

    #[test]
    fn z2_intermediate_mismatch() {
        let r = run_named_pipeline("Z2").unwrap();
        assert_eq!(vector(&r), (48, 0, 96, ChiH::Integral(12)));
        assert_eq!(status(&r, "X24_blown.c1sq"), Status::Mismatch);
        for k in ["e", "sigma", "c1sq", "chi_h", "b2plus", "b2minus"] {
            assert_eq!(status(&r, &format!("Z2.{k}")), Status::Match, "{k}");
        }
    }

    #[test]
    fn m14_and_m35() {
        let r = run_named_pipeline("M14").unwrap();
        assert_eq!(vector(&r), (55, 1, 113, ChiH::Integral(14)));
        assert_eq!(homeomorphism_type(&r.state.invariants).unwrap(), (27, 26));
        assert!(r.rows.iter().all(|x| x.status == Status::Match));
        let r = run_named_pipeline("M35").unwrap();
        assert_eq!(vector(&r), (57, 3, 123, ChiH::Integral(15)));
        assert_eq!(homeomorphism_type(&r.state.invariants).unwrap(), (29, 26));
        assert!(r.rows.iter().all(|x| x.status == Status::Match));
    }

    #[test]
    fn m25_reports_the_stated_values() {
        let r = run_named_pipeline("M25").unwrap();
        assert_eq!(vector(&r), (58, 2, 122, ChiH::Integral(15)));
        let row = r.rows.iter().find(|x| x.claim_id == "M25.e").unwrap();
        assert_eq!((row.stated, row.computed, row.status), (50, 58, Status::Mismatch));
        assert_eq!(status(&r, "M25.sigma"), Status::Match);
        assert_eq!(status(&r, "M25.c1sq"), Status::Mismatch);
        assert_eq!(status(&r, "M25.chi_h"), Status::Mismatch);
        assert_eq!(homeomorphism_type(&r.state.invariants).unwrap(), (29, 27));
    }

    #[test]
    fn routes_agree_with_catalog() {
        let x = x56_route().unwrap();
        let c = catalog_block("X_gg1", &[5]).unwrap();
        assert_eq!((x.invariants.e, x.invariants.sigma), (c.invariants.e, c.invariants.sigma));
        let s = x.surface("Sigma6").unwrap();
        assert_eq!((s.genus, s.self_intersection), (6, 0));
        let x = x57_route().unwrap();
        let c = catalog_block("X_gg2", &[5]).unwrap();
        assert_eq!((x.invariants.e, x.invariants.sigma), (c.invariants.e, c.invariants.sigma));
        let s1 = x.surface("S1").unwrap();
        assert_eq!((s1.genus, s1.self_intersection), (5, -1));
        assert_eq!(x.invariants.spin, Spin::NonSpin);
    }

    #[test]
    fn s_n_family_rows() {
        for n in [5, 7, 11, 13, 17] {
            let r = run_named_pipeline(&format!("S_n_family({n})")).unwrap();
            assert!(r.rows.iter().all(|x| x.status == Status::Match), "n={n}");
        }
    }

    #[test]
    fn unknown_pipeline() {
        assert_eq!(run_named_pipeline("Z4"), Err(Error::UnknownPipeline("Z4".into())));
        assert!(matches!(run_named_pipeline("S_n_family(6)"), Err(Error::BadParameter(_))));
    }
}
