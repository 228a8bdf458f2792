//! Lattice points `(χ_h, c₁²)`: the extension region above a realized
//! point, the exotic threshold `l(σ)`, BMY position and window scans.

use std::io::Write;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub const EXTENSION_CITATION: &str = "geography extension: chi >= 1 and 0 <= c <= 8chi above a realized point";
pub const ODD_FORM_CITATION: &str = "odd indefinite intersection form when c < 8chi";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub chi_h: i64,
    pub c1_sq: i64,
    pub realized_by: String,
}

impl LatticePoint {
    pub fn new(chi_h: i64, c1_sq: i64, realized_by: impl Into<String>) -> Self {
        LatticePoint {
            chi_h,
            c1_sq,
            realized_by: realized_by.into(),
        }
    }

    pub fn coords(&self) -> (i64, i64) {
        (self.chi_h, self.c1_sq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    OddForm,
    AsCited,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedPoint {
    pub point: LatticePoint,
    pub parity: Parity,
}

/// All `(χ_h + χ, c₁² + c)` with `1 ≤ χ ≤ chi_max`, `0 ≤ c ≤ 8χ`, in
/// `(χ, c)` order.
pub fn extend(base: &LatticePoint, chi_max: i64) -> Result<Vec<ExtendedPoint>> {
    if chi_max < 1 {
        return Err(Error::BadParameter(format!("chi_max must be >= 1, got {chi_max}")));
    }
    let bad = || Error::BadParameter("extension region overflows".into());
    let mut out = Vec::new();
    for chi in 1..=chi_max {
        let top = chi.checked_mul(8).ok_or_else(bad)?;
        let x = base.chi_h.checked_add(chi).ok_or_else(bad)?;
        for c in 0..=top {
            let y = base.c1_sq.checked_add(c).ok_or_else(bad)?;
            let parity = if c < top { Parity::OddForm } else { Parity::AsCited };
            let cite = match parity {
                Parity::OddForm => format!("{EXTENSION_CITATION}; {ODD_FORM_CITATION}; base {}", base.realized_by),
                Parity::AsCited => format!("{EXTENSION_CITATION}; base {}", base.realized_by),
            };
            out.push(ExtendedPoint {
                point: LatticePoint::new(x, y, cite),
                parity,
            });
        }
    }
    Ok(out)
}

/// `⌈(σ_X − σ)/8 − 1⌉ = ⌈(σ_X − σ − 8)/8⌉`.
pub fn l_sigma(sigma_x: i64, sigma: i64) -> Result<i64> {
    if sigma < 0 || sigma > sigma_x {
        return Err(Error::BadParameter(format!("sigma {sigma} outside [0, {sigma_x}]")));
    }
    Ok(Integer::div_ceil(&(sigma_x - sigma - 8), &8))
}

/// Smallest odd `k ≥ b₂⁺(X) + 2·l(σ) + 2`.
pub fn exotic_threshold(b2_plus_x: i64, sigma_x: i64, sigma: i64) -> Result<i64> {
    let bound = b2_plus_x
        .checked_add(2 * l_sigma(sigma_x, sigma)? + 2)
        .ok_or_else(|| Error::BadParameter("threshold overflows".into()))?;
    Ok(if bound.is_odd() { bound } else { bound + 1 })
}

/// `n` with `2n − 1 = k`.
pub fn threshold_n(k: i64) -> i64 {
    (k + 1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmyPosition {
    OnBMYLine,
    Below,
    Violates,
}

pub fn bmy_position(chi_h: i64, c1_sq: i64) -> Result<BmyPosition> {
    if chi_h < 1 {
        return Err(Error::BadParameter(format!("chi_h must be >= 1, got {chi_h}")));
    }
    let line = chi_h
        .checked_mul(9)
        .ok_or_else(|| Error::BadParameter("chi_h overflows".into()))?;
    Ok(match c1_sq.cmp(&line) {
        std::cmp::Ordering::Equal => BmyPosition::OnBMYLine,
        std::cmp::Ordering::Less => BmyPosition::Below,
        std::cmp::Ordering::Greater => BmyPosition::Violates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub chi_min: i64,
    pub chi_max: i64,
    pub c_min: i64,
    pub c_max: i64,
}

impl Window {
    pub fn is_empty(&self) -> bool {
        self.chi_min > self.chi_max || self.c_min > self.c_max
    }

    pub fn contains(&self, chi: i64, c: i64) -> bool {
        (self.chi_min..=self.chi_max).contains(&chi) && (self.c_min..=self.c_max).contains(&c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub chi_h: i64,
    pub c1_sq: i64,
    pub realized: bool,
    pub citation: String,
}

const MAX_SCAN_POINTS: i128 = 10_000_000;

/// Whether `(chi, c)` lies in the region over `base` (the base point
/// itself counts as realized).
fn realized_by(base: &LatticePoint, chi: i64, c: i64) -> bool {
    let d = i128::from(chi) - i128::from(base.chi_h);
    let dc = i128::from(c) - i128::from(base.c1_sq);
    (d == 0 && dc == 0) || (d >= 1 && (0..=8 * d).contains(&dc))
}

/// Marks each window point realized or not, citing the first base that
/// realizes it. Rows are ordered by `χ` then `c`. An empty window gives no
/// rows.
pub fn lattice_scan(window: Window, bases: &[LatticePoint]) -> Result<Vec<ScanRow>> {
    if window.is_empty() {
        return Ok(Vec::new());
    }
    let size = (i128::from(window.chi_max) - i128::from(window.chi_min) + 1)
        * (i128::from(window.c_max) - i128::from(window.c_min) + 1);
    if size > MAX_SCAN_POINTS {
        return Err(Error::BadParameter(format!("window has {size} points, limit {MAX_SCAN_POINTS}")));
    }
    let mut rows = Vec::new();
    for chi in window.chi_min..=window.chi_max {
        for c in window.c_min..=window.c_max {
            let hit = bases.iter().find(|b| realized_by(b, chi, c));
            rows.push(ScanRow {
                chi_h: chi,
                c1_sq: c,
                realized: hit.is_some(),
                citation: match hit {
                    Some(b) if b.chi_h == chi && b.c1_sq == c => b.realized_by.clone(),
                    Some(b) => format!("{EXTENSION_CITATION}; base {}", b.realized_by),
                    None => String::new(),
                },
            });
        }
    }
    Ok(rows)
}

/// CSV with header `chi_h,c1_sq,realized,citation` and LF line endings.
pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::BadParameter(format!("csv: {e}"));
    w.write_record(["chi_h", "c1_sq", "realized", "citation"]).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::BadParameter(format!("csv: {e}")))?;
    Ok(())
}
