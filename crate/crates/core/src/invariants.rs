//! Numerical invariants of closed oriented 4-manifolds.
//!
//! An [`InvariantVector`] stores the primary data (Euler characteristic,
//! signature, first Betti number and a few declared flags); everything else
//! (b₂, b₂±, c₁², χ_h) is derived on demand with exact integer arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parity of the intersection form, as declared by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Spin,
    NonSpin,
    Unknown,
}

impl Spin {
    pub fn as_str(self) -> &'static str {
        match self {
            Spin::Spin => "spin",
            Spin::NonSpin => "nonspin",
            Spin::Unknown => "unknown",
        }
    }
}

/// Holomorphic Euler characteristic `(e + σ)/4`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChiH {
    Integral(i64),
    /// `e + σ` is not divisible by 4; the numerator is kept for reporting.
    NonIntegral { numerator: i64 },
}

impl ChiH {
    pub fn value(self) -> Option<i64> {
        match self {
            ChiH::Integral(v) => Some(v),
            ChiH::NonIntegral { .. } => None,
        }
    }
}

impl fmt::Display for ChiH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiH::Integral(v) => write!(f, "{v}"),
            ChiH::NonIntegral { numerator } => write!(f, "{numerator}/4"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvariantVector {
    pub e: i64,
    pub sigma: i64,
    /// `None` when the fundamental group is undetermined.
    pub b1: Option<i64>,
    pub spin: Spin,
    pub simply_connected: bool,
    pub symplectic: bool,
    pub minimal: bool,
}

impl InvariantVector {
    /// Builds a vector from its primary data. Total: degenerate inputs give a
    /// vector for which [`is_realizable`](Self::is_realizable) is false.
    pub fn derive(e: i64, sigma: i64, b1: i64, spin: Spin) -> Self {
        InvariantVector {
            e,
            sigma,
            b1: Some(b1),
            spin,
            simply_connected: false,
            symplectic: false,
            minimal: false,
        }
    }

    /// Marks the vector simply connected; this forces `b1 = 0`.
    pub fn with_simply_connected(mut self, yes: bool) -> Self {
        self.simply_connected = yes;
        if yes {
            self.b1 = Some(0);
        }
        self
    }

    pub fn with_symplectic(mut self, yes: bool) -> Self {
        self.symplectic = yes;
        self
    }

    pub fn with_minimal(mut self, yes: bool) -> Self {
        self.minimal = yes;
        self
    }

    pub fn with_b1(mut self, b1: Option<i64>) -> Self {
        self.b1 = b1;
        self
    }

    pub fn c1_sq(&self) -> i64 {
        2 * self.e + 3 * self.sigma
    }

    pub fn chi_h(&self) -> ChiH {
        let num = self.e + self.sigma;
        if num.rem_euclid(4) == 0 {
            ChiH::Integral(num / 4)
        } else {
            ChiH::NonIntegral { numerator: num }
        }
    }

    /// `b₂ = e − 2 + 2·b₁`.
    pub fn b2(&self) -> Option<i64> {
        self.b1.map(|b1| self.e - 2 + 2 * b1)
    }

    /// `(b₂ + σ)/2` when b₂ is known and has the parity of σ.
    pub fn b2_plus(&self) -> Option<i64> {
        let b2 = self.b2()?;
        ((b2 + self.sigma).rem_euclid(2) == 0).then(|| (b2 + self.sigma) / 2)
    }

    pub fn b2_minus(&self) -> Option<i64> {
        let b2 = self.b2()?;
        ((b2 - self.sigma).rem_euclid(2) == 0).then(|| (b2 - self.sigma) / 2)
    }

    /// b₁ ≥ 0, b₂ ≥ 0 and b₂± are non-negative integers.
    pub fn is_realizable(&self) -> bool {
        match (self.b1, self.b2_plus(), self.b2_minus()) {
            (Some(b1), Some(p), Some(m)) => b1 >= 0 && p >= 0 && m >= 0,
            _ => false,
        }
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(e={}, sigma={}, c1^2={}, chi_h={})",
            self.e,
            self.sigma,
            self.c1_sq(),
            self.chi_h()
        )
    }
}

/// One violated identity with both sides evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub violations: Vec<Violation>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "PASS");
        }
        write!(f, "FAIL")?;
        for v in &self.violations {
            write!(f, "; {}: {} != {}", v.identity, v.lhs, v.rhs)?;
        }
        Ok(())
    }
}

/// Compares claimed c₁² and χ_h against the values derived from `(e, σ)`.
pub fn consistency_check(
    v: &InvariantVector,
    claimed_c1_sq: i64,
    claimed_chi_h: Option<i64>,
) -> ConsistencyReport {
    let mut violations = Vec::new();
    if claimed_c1_sq != v.c1_sq() {
        violations.push(Violation {
            identity: "c1^2 = 2e + 3sigma",
            lhs: claimed_c1_sq,
            rhs: v.c1_sq(),
        });
    }
    if let Some(chi) = claimed_chi_h {
        match v.chi_h() {
            ChiH::Integral(d) if d == chi => {}
            ChiH::Integral(d) => violations.push(Violation {
                identity: "chi_h = (e + sigma)/4",
                lhs: chi,
                rhs: d,
            }),
            ChiH::NonIntegral { numerator } => violations.push(Violation {
                identity: "4 chi_h = e + sigma",
                lhs: 4 * chi,
                rhs: numerator,
            }),
        }
        if 12 * chi - claimed_c1_sq != v.e {
            violations.push(Violation {
                identity: "12 chi_h - c1^2 = e",
                lhs: 12 * chi - claimed_c1_sq,
                rhs: v.e,
            });
        }
    }
    ConsistencyReport { violations }
}

/// Freedman type `(a, b)`: the vector is homeomorphic to `a·CP² # b·(−CP²)`.
pub fn homeomorphism_type(v: &InvariantVector) -> Result<(i64, i64)> {
    if !v.simply_connected {
        return Err(Error::PreconditionViolated("not simply connected".into()));
    }
    if v.spin != Spin::NonSpin {
        return Err(Error::PreconditionViolated(format!(
            "intersection form parity is {}, need nonspin",
            v.spin.as_str()
        )));
    }
    match (v.b2_plus(), v.b2_minus()) {
        (Some(a), Some(b)) if a >= 1 && b >= 0 => Ok((a, b)),
        _ => Err(Error::PreconditionViolated(format!(
            "b2+/b2- not realizable for e={}, sigma={}",
            v.e, v.sigma
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(e: i64, sigma: i64) -> InvariantVector {
        InvariantVector::derive(e, sigma, 0, Spin::NonSpin).with_simply_connected(true)
    }

    #[test]
    fn derive_examples() {
        let z3 = InvariantVector::derive(52, 0, 0, Spin::NonSpin);
        assert_eq!(z3.chi_h(), ChiH::Integral(13));
        assert_eq!(z3.c1_sq(), 104);
        assert_eq!((z3.b2_plus(), z3.b2_minus()), (Some(25), Some(25)));

        let s = InvariantVector::derive(15, 5, 4, Spin::NonSpin);
        assert_eq!(s.chi_h(), ChiH::Integral(5));
        assert_eq!(s.c1_sq(), 45);

        let d = InvariantVector::derive(2, 0, 0, Spin::Unknown);
        assert_eq!(d.b2(), Some(0));
        assert_eq!(d.chi_h(), ChiH::NonIntegral { numerator: 2 });
        assert_eq!(d.chi_h().value(), None);
    }

    #[test]
    fn non_realizable_is_flagged_not_rejected() {
        let v = InvariantVector::derive(-5, 0, 0, Spin::Unknown);
        assert!(!v.is_realizable());
        let odd = InvariantVector::derive(5, 0, 0, Spin::Unknown);
        assert_eq!(odd.b2_plus(), None);
        assert!(!odd.is_realizable());
    }

    #[test]
    fn consistency_examples() {
        assert!(consistency_check(&sc(52, 0), 104, Some(13)).passed());
        let r = consistency_check(&sc(12, -4), 16, None);
        assert!(!r.passed());
        assert_eq!(r.violations[0].lhs, 16);
        assert_eq!(r.violations[0].rhs, 12);
        assert!(consistency_check(&sc(0, 0), 0, None).passed());
    }

    #[test]
    fn consistency_reports_every_identity() {
        let r = consistency_check(&sc(12, -4), 16, Some(2));
        assert_eq!(r.violations.len(), 2);
        assert!(r.to_string().starts_with("FAIL"));
    }

    #[test]
    fn homeomorphism_examples() {
        assert_eq!(homeomorphism_type(&sc(55, 1)), Ok((27, 26)));
        assert_eq!(homeomorphism_type(&sc(4, 0)), Ok((1, 1)));
        assert_eq!(homeomorphism_type(&sc(58, 2)), Ok((29, 27)));
    }

    #[test]
    fn homeomorphism_preconditions() {
        let spin = InvariantVector::derive(4, 0, 0, Spin::Spin).with_simply_connected(true);
        assert!(matches!(homeomorphism_type(&spin), Err(Error::PreconditionViolated(_))));
        let not_sc = InvariantVector::derive(4, 0, 0, Spin::NonSpin);
        assert!(homeomorphism_type(&not_sc).is_err());
        // b2+ = 0
        assert!(homeomorphism_type(&sc(3, -1)).is_err());
    }
}
