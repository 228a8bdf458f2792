//! Invariants of abelian covers branched over curve arrangements.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::invariants::{InvariantVector, Spin};

pub type Q = Ratio<i64>;

/// A symmetric integer pairing on a named basis of H₂.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    basis: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn new(basis: Vec<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = basis.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::BadParameter("intersection matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::BadParameter(format!(
                        "intersection matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(IntersectionForm { basis, matrix })
    }

    /// `CP² # k·(−CP²)` with basis `H, E0, …, E(k−1)`.
    pub fn blown_up_plane(k: usize) -> Self {
        let mut basis = vec!["H".to_string()];
        basis.extend((0..k).map(|i| format!("E{i}")));
        let matrix = (0..=k)
            .map(|i| {
                (0..=k)
                    .map(|j| match (i == j, i) {
                        (false, _) => 0,
                        (true, 0) => 1,
                        (true, _) => -1,
                    })
                    .collect()
            })
            .collect();
        IntersectionForm { basis, matrix }
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis vector with the given name.
    pub fn class(&self, name: &str) -> Result<DivisorClass> {
        let i = self
            .basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::BasisMismatch(format!("no basis element {name}")))?;
        let mut d = DivisorClass::zero(self.rank());
        d.coefficients[i] = Q::from_integer(1);
        Ok(d)
    }
}

/// A divisor class with exact rational coefficients in a form's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub coefficients: Vec<Q>,
}

impl DivisorClass {
    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coefficients: vec![Q::from_integer(0); rank],
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DivisorClass {
            coefficients: coeffs.iter().map(|&c| Q::from_integer(c)).collect(),
        }
    }

    fn check(&self, other: &DivisorClass) -> Result<()> {
        if self.coefficients.len() != other.coefficients.len() {
            return Err(Error::BasisMismatch(format!(
                "classes of rank {} and {}",
                self.coefficients.len(),
                other.coefficients.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check(other)?;
        Ok(DivisorClass {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: Q) -> DivisorClass {
        DivisorClass {
            coefficients: self.coefficients.iter().map(|c| c * k).collect(),
        }
    }
}

/// Bilinear extension of the form to rational classes.
pub fn pairing(d1: &DivisorClass, d2: &DivisorClass, form: &IntersectionForm) -> Result<Q> {
    d1.check(d2)?;
    if d1.coefficients.len() != form.rank() {
        return Err(Error::BasisMismatch(format!(
            "class of rank {} on a form of rank {}",
            d1.coefficients.len(),
            form.rank()
        )));
    }
    let mut total = Q::from_integer(0);
    for (i, a) in d1.coefficients.iter().enumerate() {
        for (j, b) in d2.coefficients.iter().enumerate() {
            let m = form.matrix[i][j];
            if m != 0 {
                total += a * b * Q::from_integer(m);
            }
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchComponent {
    pub name: String,
    pub class: DivisorClass,
    pub ram_index: i64,
}

/// A piece of a stratification of the base: its Euler characteristic and
/// the number of cover points over each of its points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub label: String,
    pub euler: i64,
    pub fiber_cardinality: i64,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub group_order: i64,
    pub base_form: IntersectionForm,
    pub k_base: DivisorClass,
    pub branch_components: Vec<BranchComponent>,
    pub strata: Vec<Stratum>,
}

impl CoverSpec {
    pub fn new(
        group_order: i64,
        base_form: IntersectionForm,
        k_base: DivisorClass,
        branch_components: Vec<BranchComponent>,
        strata: Vec<Stratum>,
    ) -> Result<Self> {
        if group_order < 1 {
            return Err(Error::BadParameter(format!("group order {group_order}")));
        }
        let zero = DivisorClass::zero(base_form.rank());
        k_base.check(&zero)?;
        for c in &branch_components {
            c.class.check(&zero)?;
            if c.ram_index < 2 || group_order % c.ram_index != 0 {
                return Err(Error::BadParameter(format!(
                    "ramification index {} of {} must be >= 2 and divide {group_order}",
                    c.ram_index, c.name
                )));
            }
        }
        for s in &strata {
            if s.fiber_cardinality < 1 || group_order % s.fiber_cardinality != 0 {
                return Err(Error::BadParameter(format!(
                    "fiber cardinality {} over {} must divide {group_order}",
                    s.fiber_cardinality, s.label
                )));
            }
        }
        Ok(CoverSpec {
            group_order,
            base_form,
            k_base,
            branch_components,
            strata,
        })
    }

    /// `K_Y + Σ (m−1)/m · D`.
    pub fn pulled_back_canonical(&self) -> Result<DivisorClass> {
        self.branch_components.iter().try_fold(self.k_base.clone(), |acc, c| {
            acc.add(&c.class.scale(Q::new(c.ram_index - 1, c.ram_index)))
        })
    }
}

/// `K_X² = |G| · (K_Y + Σ (m−1)/m · D)²`.
pub fn pardini_k_squared(spec: &CoverSpec) -> Result<Q> {
    let k = spec.pulled_back_canonical()?;
    Ok(pairing(&k, &k, &spec.base_form)? * Q::from_integer(spec.group_order))
}

/// `e(X) = Σ fiber_cardinality · e(stratum)`; the strata must partition the
/// base.
pub fn stratified_euler(spec: &CoverSpec) -> i64 {
    spec.strata.iter().map(|s| s.fiber_cardinality * s.euler).sum()
}

/// Genus of a degree-`d` branched cover of a genus-`g_b` curve with the
/// given ramification indices: `2g − 2 = d(2g_b − 2) + Σ (d − d/m)`.
pub fn riemann_hurwitz_genus(degree: i64, base_genus: i64, branch_points: &[i64]) -> Result<i64> {
    if degree < 1 || base_genus < 0 {
        return Err(Error::BadParameter(format!(
            "degree {degree} and base genus {base_genus}"
        )));
    }
    let mut two_g_minus_2 = degree * (2 * base_genus - 2);
    for &m in branch_points {
        if m < 1 || degree % m != 0 {
            return Err(Error::BadParameter(format!(
                "ramification index {m} does not divide degree {degree}"
            )));
        }
        two_g_minus_2 += degree - degree / m;
    }
    if two_g_minus_2.is_odd() || two_g_minus_2 < -2 {
        return Err(Error::NonIntegralGenus(two_g_minus_2));
    }
    Ok(two_g_minus_2 / 2 + 1)
}

/// `Σ (e(X_s) − e(X_gen)) = e(X) − e(F)·e(C)`.
pub fn singular_fiber_budget(e_total: i64, e_fiber: i64, e_base: i64) -> i64 {
    e_total - e_fiber * e_base
}

/// Genus of a smooth branch curve by adjunction: `2g − 2 = D² + K·D`.
fn adjunction_genus(d: &DivisorClass, k: &DivisorClass, form: &IntersectionForm) -> Result<i64> {
    let v = pairing(d, d, form)? + pairing(k, d, form)?;
    if !v.is_integer() || v.to_integer().is_odd() {
        return Err(Error::NonIntegral(format!("2g - 2 = {v}")));
    }
    Ok(v.to_integer() / 2 + 1)
}

/// The complete quadrangle cover with group `(ℤ/n)²`: the base is the plane
/// blown up at the four vertices, branched over the six strict transforms
/// of the lines and the four exceptional curves, each with index `n`.
///
/// Strata are derived from the branch data: the nodes are the pairwise
/// intersections, each open curve is a sphere minus its nodes, and the
/// complement gets the rest of `e(Y)`. Over a node the stabilizer is all of
/// `G`, so the fiber has one point.
pub fn quadrangle_spec(n: i64) -> Result<CoverSpec> {
    if n < 2 {
        return Err(Error::BadParameter(format!("quadrangle cover needs n >= 2, got {n}")));
    }
    let form = IntersectionForm::blown_up_plane(4);
    let h = form.class("H")?;
    let e: Vec<DivisorClass> = (0..4).map(|i| form.class(&format!("E{i}"))).collect::<Result<_>>()?;
    let neg = |d: &DivisorClass| d.scale(Q::from_integer(-1));
    let k_base = e.iter().try_fold(h.scale(Q::from_integer(-3)), |acc, ei| acc.add(ei))?;

    let mut comps = Vec::new();
    let line = |i: usize, j: usize| -> Result<DivisorClass> { h.add(&neg(&e[i]))?.add(&neg(&e[j])) };
    // L̃_j through the two vertices other than E0 and E_j; L̃_j' through E0 and E_j.
    for (j, (i, k)) in [(2, 3), (1, 3), (1, 2)].into_iter().enumerate() {
        comps.push(BranchComponent {
            name: format!("L{}", j + 1),
            class: line(i, k)?,
            ram_index: n,
        });
    }
    for j in 1..=3 {
        comps.push(BranchComponent {
            name: format!("L{j}'"),
            class: line(0, j)?,
            ram_index: n,
        });
    }
    for (i, ei) in e.iter().enumerate() {
        comps.push(BranchComponent {
            name: format!("E{i}"),
            class: ei.clone(),
            ram_index: n,
        });
    }

    // b₀ + b₂ + b₄ of the simply connected base.
    let e_base = 2 + form.rank() as i64;
    let mut nodes = 0;
    let mut open_curves = 0;
    for (a, ca) in comps.iter().enumerate() {
        let mut on_a = 0;
        for (b, cb) in comps.iter().enumerate() {
            if a != b {
                let x = pairing(&ca.class, &cb.class, &form)?;
                on_a += x.to_integer();
                if b > a {
                    nodes += x.to_integer();
                }
            }
        }
        let g = adjunction_genus(&ca.class, &k_base, &form)?;
        open_curves += 2 - 2 * g - on_a;
    }
    let complement = e_base - open_curves - nodes;
    let strata = vec![
        Stratum {
            label: "complement".into(),
            euler: complement,
            fiber_cardinality: n * n,
            citation: "free action off the branch locus".into(),
        },
        Stratum {
            label: "open branch curves".into(),
            euler: open_curves,
            fiber_cardinality: n,
            citation: "cyclic stabilizer of order n along a branch curve".into(),
        },
        Stratum {
            label: "nodes".into(),
            euler: nodes,
            fiber_cardinality: 1,
            citation: "stabilizers of two crossing branch curves generate G".into(),
        },
    ];
    CoverSpec::new(n * n, form, k_base, comps, strata)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fibration {
    pub fiber_genus: i64,
    pub base_genus: i64,
    pub singular_fibers: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadrangleSurface {
    pub invariants: InvariantVector,
    pub q: i64,
    pub fibration: Fibration,
}

/// `S(n)`: invariants from [`pardini_k_squared`] and [`stratified_euler`]
/// on [`quadrangle_spec`], `σ = (c₁² − 2e)/3`. The pencil through one
/// vertex pulls back to a fibration whose fiber covers a line branched at
/// four points and whose base covers a line branched at three; every
/// singular fiber has Euler deviation +1.
pub fn quadrangle_cover_surface(n: i64) -> Result<QuadrangleSurface> {
    if n <= 1 || n.gcd(&6) != 1 {
        return Err(Error::BadParameter(format!(
            "quadrangle surface needs n > 1 coprime to 6, got {n}"
        )));
    }
    let spec = quadrangle_spec(n)?;
    let k2 = pardini_k_squared(&spec)?;
    if !k2.is_integer() {
        return Err(Error::NonIntegral(format!("K^2 = {k2}")));
    }
    let c1_sq = k2.to_integer();
    let e = stratified_euler(&spec);
    if (c1_sq - 2 * e) % 3 != 0 {
        return Err(Error::NonIntegral(format!("sigma = ({c1_sq} - 2*{e})/3")));
    }
    let sigma = (c1_sq - 2 * e) / 3;
    let q = (n - 1) / 2;
    // The preimage of a branch curve D with index n has square |G|·D²/n² = −1.
    let invariants = InvariantVector::derive(e, sigma, 2 * q, Spin::NonSpin)
        .with_symplectic(true)
        .with_minimal(true);
    let fiber_genus = riemann_hurwitz_genus(n, 0, &[n; 4])?;
    let base_genus = riemann_hurwitz_genus(n, 0, &[n; 3])?;
    let singular_fibers = singular_fiber_budget(e, 2 - 2 * fiber_genus, 2 - 2 * base_genus);
    Ok(QuadrangleSurface {
        invariants,
        q,
        fibration: Fibration {
            fiber_genus,
            base_genus,
            singular_fibers,
        },
    })
}

/// `(c₁², e)` of the `m`-th surface in the iterated quadrangle tower.
pub fn hirzebruch_tower(m: i64) -> Result<(i64, i64)> {
    if m < 2 {
        return Err(Error::BadParameter(format!("tower index must be >= 2, got {m}")));
    }
    let too_big = || Error::BadParameter(format!("tower index {m} overflows"));
    let exp = u32::try_from(m - 2).map_err(|_| too_big())?;
    let p = 5i64.checked_pow(exp).ok_or_else(too_big)?;
    Ok((45i64.checked_mul(p).ok_or_else(too_big)?, 15 * p))
}
