//! Claim-by-claim comparison of stated values against computed ones.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::construction::run_named_pipeline;
use crate::covers::{hirzebruch_tower, quadrangle_cover_surface, riemann_hurwitz_genus, singular_fiber_budget};
use crate::error::Result;
use crate::geography::{exotic_threshold, threshold_n};
use crate::invariants::homeomorphism_type;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub claim_id: String,
    pub citation: String,
    pub stated: i64,
    pub computed: i64,
    pub status: Status,
}

impl AuditRow {
    pub fn new(claim_id: impl Into<String>, citation: impl Into<String>, stated: i64, computed: i64) -> Self {
        AuditRow {
            claim_id: claim_id.into(),
            citation: citation.into(),
            stated,
            computed,
            status: if stated == computed { Status::Match } else { Status::Mismatch },
        }
    }
}

impl fmt::Display for AuditRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<22} {:>6} {:>6}  {:<8} {}",
            self.claim_id, self.stated, self.computed, self.status, self.citation
        )
    }
}

fn surface_rows() -> Result<Vec<AuditRow>> {
    let s = quadrangle_cover_surface(5)?;
    let v = s.invariants;
    let chi = v.chi_h().value().unwrap_or(i64::MIN);
    let mut rows = vec![
        AuditRow::new("S.c1sq", "K_S^2 = 9^2 - 4*3^2 = 45", 45, v.c1_sq()),
        AuditRow::new("S.e", "e(S) = 15", 15, v.e),
        AuditRow::new("S.sigma", "sigma(S) = 5", 5, v.sigma),
        AuditRow::new("S.chi_h", "chi_h(S) = 5", 5, chi),
        AuditRow::new("S.q", "q(S) = 2", 2, s.q),
        AuditRow::new("S.fiber_genus", "fibers of S have genus 4", 4, riemann_hurwitz_genus(5, 0, &[5; 4])?),
        AuditRow::new("S.singular_fibers", "e(S) = 15, e(C) = -2, e(S_gen) = -6", 3, singular_fiber_budget(15, -6, -2)),
    ];
    for m in [2, 3] {
        let (c, e) = hirzebruch_tower(m)?;
        let p = 5i64.pow(m as u32 - 2);
        rows.push(AuditRow::new(format!("tower({m}).c1sq"), format!("c1^2(X({m})) = 45*5^{}", m - 2), 45 * p, c));
        rows.push(AuditRow::new(format!("tower({m}).e"), format!("e(X({m})) = 15*5^{}", m - 2), 15 * p, e));
    }
    Ok(rows)
}

fn threshold_row(id: &str, citation: &str, stated_n: i64, b2_plus: i64, sigma: i64) -> Result<AuditRow> {
    let k = exotic_threshold(b2_plus, sigma, sigma)?;
    Ok(AuditRow::new(id, citation, stated_n, threshold_n(k)))
}

/// Every stated numeric claim with its computed value, in a fixed order.
/// Claims repeated across pipelines appear once.
pub fn audit() -> Result<Vec<AuditRow>> {
    let mut rows = surface_rows()?;
    for n in [5, 7, 11, 13, 17] {
        rows.extend(run_named_pipeline(&format!("S_n_family({n})"))?.rows);
    }
    let mut types = Vec::new();
    for p in ["Z3", "Z2", "M14", "M25", "M35"] {
        let run = run_named_pipeline(p)?;
        types.push(homeomorphism_type(&run.state.invariants)?);
        rows.extend(run.rows);
    }
    let [z3, z2, m14, m25, m35] = [types[0], types[1], types[2], types[3], types[4]];
    rows.push(threshold_row("threshold.Z3", "(2n-1)CP2 # (2n-1)CP2bar for n >= 13", 13, z3.0, 0)?);
    rows.push(AuditRow::new("threshold.Z2", "23CP2 # 23CP2bar is the case n = 12", 12, threshold_n(z2.0)));
    rows.push(threshold_row("threshold.M14", "(2n-1)CP2 # (2n-2)CP2bar for n >= 14", 14, m14.0, 1)?);
    rows.push(threshold_row("threshold.M25_stated", "(2n-1)CP2 # (2n-3)CP2bar for n >= 13, from b2+ = 25", 13, 25, 2)?);
    rows.push(threshold_row("threshold.M25", "(2n-1)CP2 # (2n-3)CP2bar for n >= 13", 13, m25.0, 2)?);
    rows.push(threshold_row("threshold.M35", "(2n-1)CP2 # (2n-4)CP2bar for n >= 15", 15, m35.0, 3)?);
    let mut seen = BTreeSet::new();
    rows.retain(|r| seen.insert(r.claim_id.clone()));
    Ok(rows)
}
