use std::fmt;

use super::presentation::Presentation;
use super::snf::{smith_normal_form, Matrix, SmithForm};

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k` with
/// `t_i | t_{i+1}` and every `t_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupDescription {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroupDescription {
    pub fn trivial() -> Self {
        AbelianGroupDescription {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Normalizes `ℤ^rank ⊕ ⨁ ℤ/orders[i]` into invariant-factor form.
    /// Orders of 1 contribute nothing, orders of 0 add free rank.
    pub fn from_cyclic_orders(rank: usize, orders: &[i64]) -> Self {
        let n = orders.len();
        let diag: Matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { orders[i].abs() } else { 0 }).collect())
            .collect();
        let snf = smith_normal_form(&diag, n, n);
        Self::from_diagonal(rank + n, &snf.diagonal())
    }

    fn from_diagonal(columns: usize, diag: &[i64]) -> Self {
        let nonzero = diag.iter().filter(|&&x| x != 0).count();
        AbelianGroupDescription {
            free_rank: columns - nonzero,
            torsion: diag.iter().copied().filter(|&x| x > 1).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// H₁ of a presentation together with the Smith normal form it came from.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub group: AbelianGroupDescription,
    pub matrix: Matrix,
    pub snf: SmithForm,
}

pub fn abelianize_with_certificate(p: &Presentation) -> Abelianization {
    let matrix = p.relation_matrix();
    let (rows, cols) = (matrix.len(), p.num_generators());
    let snf = smith_normal_form(&matrix, rows, cols);
    let group = AbelianGroupDescription::from_diagonal(cols, &snf.diagonal());
    Abelianization { group, matrix, snf }
}

/// H₁ of the presented group via the Smith normal form of the relator
/// exponent-sum matrix.
pub fn abelianize(p: &Presentation) -> AbelianGroupDescription {
    abelianize_with_certificate(p).group
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::word::Word;

    #[test]
    fn torus_group() {
        let p = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word::commutator(&Word::gen(0), &Word::gen(1))],
        )
        .unwrap();
        assert_eq!(
            abelianize(&p),
            AbelianGroupDescription { free_rank: 2, torsion: vec![] }
        );
    }

    #[test]
    fn cyclic_of_order_two() {
        let p = Presentation::new(vec!["x".into()], vec![Word::power_of(0, 2)]).unwrap();
        assert_eq!(abelianize(&p).torsion, vec![2]);
        assert_eq!(abelianize(&p).free_rank, 0);
    }

    #[test]
    fn no_relators_is_free_abelian() {
        let p = Presentation::free(&["a", "b", "c"]);
        assert_eq!(abelianize(&p).free_rank, 3);
    }

    #[test]
    fn cyclic_orders_normalize() {
        let g = AbelianGroupDescription::from_cyclic_orders(2, &[2, 3]);
        assert_eq!(g, AbelianGroupDescription { free_rank: 2, torsion: vec![6] });
        let g = AbelianGroupDescription::from_cyclic_orders(0, &[1, 1]);
        assert!(g.is_trivial());
        assert_eq!(AbelianGroupDescription::from_cyclic_orders(0, &[2, 4]).torsion, vec![2, 4]);
        assert_eq!(g.to_string(), "trivial");
        assert_eq!(
            AbelianGroupDescription::from_cyclic_orders(1, &[3]).to_string(),
            "Z^1 + Z/3"
        );
    }
}
