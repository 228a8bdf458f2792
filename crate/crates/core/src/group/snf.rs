//! Smith normal form over the integers with unimodular certificates.
//!
//! Elimination runs on arbitrary-precision integers: the transforms `u`
//! and `v` can outgrow 64 bits even for small dense inputs.

use num_bigint::{BigInt, Sign};

pub type Matrix = Vec<Vec<i64>>;
pub type BigMatrix = Vec<Vec<BigInt>>;

/// `u · a · v = d`, with `u`, `v` unimodular and `d` diagonal with
/// non-negative entries forming a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: BigMatrix,
    pub u: BigMatrix,
    pub v: BigMatrix,
}

impl SmithForm {
    /// Diagonal entries. Each divides a minor of the input, so it fits in
    /// `i64` whenever the input's minors do; larger values panic.
    pub fn diagonal(&self) -> Vec<i64> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k)
            .map(|i| i64::try_from(&self.d[i][i]).expect("invariant factor exceeds i64"))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

fn is_zero(x: &BigInt) -> bool {
    x.sign() == Sign::NoSign
}

pub fn identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect()
}

fn to_big(a: &Matrix, rows: usize, cols: usize) -> BigMatrix {
    (0..rows)
        .map(|i| (0..cols).map(|j| BigInt::from(a.get(i).map_or(0, |r| r[j]))).collect())
        .collect()
}

pub fn mat_mul(a: &BigMatrix, b: &BigMatrix, inner: usize) -> BigMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

struct Calc {
    a: BigMatrix,
    u: BigMatrix,
    v: BigMatrix,
    rows: usize,
    cols: usize,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += k · row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m[0].len() {
                let t = k * &m[j][c];
                m[i][c] += t;
            }
        }
    }

    /// col_i += k · col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = k * &row[j];
                row[i] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    /// Nonzero entry of minimal absolute value in the lower-right block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if !is_zero(x) && best.is_none_or(|(bi, bj)| x.magnitude() < self.a[bi][bj].magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Whether row `t` and column `t` are zero off the diagonal.
    fn cross_clear(&self, t: usize) -> bool {
        (t + 1..self.rows).all(|i| is_zero(&self.a[i][t])) && (t + 1..self.cols).all(|j| is_zero(&self.a[t][j]))
    }

    fn run(&mut self) {
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            loop {
                // The smallest entry of the remaining block becomes the pivot;
                // division then leaves only smaller remainders in the cross.
                let Some((pi, pj)) = self.min_pivot(t) else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t].clone();
                for i in t + 1..self.rows {
                    let q = &self.a[i][t] / &p;
                    if !is_zero(&q) {
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..self.cols {
                    let q = &self.a[t][j] / &p;
                    if !is_zero(&q) {
                        self.add_col(j, t, &-q);
                    }
                }
                if !self.cross_clear(t) {
                    continue;
                }
                let bad = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !is_zero(&(&self.a[i][j] % &p))));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[t][t].sign() == Sign::Minus {
                self.negate_row(t);
            }
        }
    }
}

/// Computes the Smith normal form of a `rows × cols` matrix. Pivots are
/// chosen by minimal absolute value to limit entry growth.
pub fn smith_normal_form(a: &Matrix, rows: usize, cols: usize) -> SmithForm {
    let mut calc = Calc {
        a: to_big(a, rows, cols),
        u: identity(rows),
        v: identity(cols),
        rows,
        cols,
    };
    if rows > 0 && cols > 0 {
        calc.run();
    }
    SmithForm {
        d: calc.a,
        u: calc.u,
        v: calc.v,
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &BigMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Checks the certificate: `u·a·v = d`, `|det u| = |det v| = 1`, `d`
/// diagonal, non-negative, with each diagonal entry dividing the next.
pub fn verify_certificate(a: &Matrix, rows: usize, cols: usize, snf: &SmithForm) -> bool {
    if rows == 0 || cols == 0 {
        return true;
    }
    let uav = mat_mul(&mat_mul(&snf.u, &to_big(a, rows, cols), rows), &snf.v, cols);
    if uav != snf.d {
        return false;
    }
    let one = BigInt::from(1);
    if determinant(&snf.u).magnitude() != one.magnitude() || determinant(&snf.v).magnitude() != one.magnitude() {
        return false;
    }
    for i in 0..rows {
        for j in 0..cols {
            if i != j && !is_zero(&snf.d[i][j]) {
                return false;
            }
        }
    }
    let k = rows.min(cols);
    let diag: Vec<&BigInt> = (0..k).map(|i| &snf.d[i][i]).collect();
    if diag.iter().any(|x| x.sign() == Sign::Minus) {
        return false;
    }
    diag.windows(2).all(|w| {
        if is_zero(w[0]) {
            is_zero(w[1])
        } else {
            is_zero(&(w[1] % w[0]))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a, 3, 3);
        assert_eq!(s.diagonal(), vec![2, 6, 12]);
        assert!(verify_certificate(&a, 3, 3, &s));
    }

    #[test]
    fn rectangular_and_zero() {
        let a = vec![vec![0, 0], vec![0, 0], vec![0, 3]];
        let s = smith_normal_form(&a, 3, 2);
        assert_eq!(s.diagonal(), vec![3, 0]);
        assert!(verify_certificate(&a, 3, 2, &s));
    }

    #[test]
    fn coprime_pair_combines() {
        let a = vec![vec![2, 0], vec![0, 3]];
        let s = smith_normal_form(&a, 2, 2);
        assert_eq!(s.diagonal(), vec![1, 6]);
        assert!(verify_certificate(&a, 2, 2, &s));
    }

    #[test]
    fn bareiss_determinant() {
        let det = |m: Matrix| determinant(&to_big(&m, m.len(), m.len()));
        assert_eq!(det(vec![vec![2, 1], vec![7, 4]]), BigInt::from(1));
        assert_eq!(det(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]), BigInt::from(-2));
        assert_eq!(det(vec![vec![1, 2], vec![2, 4]]), BigInt::from(0));
    }

    #[test]
    fn dense_input_keeps_exact_transforms() {
        let a = vec![
            vec![17, -9, 4, 20, -13],
            vec![-6, 19, -18, 3, 11],
            vec![14, 2, -20, -7, 16],
            vec![-19, 12, 8, -15, 5],
            vec![9, -16, 13, 18, -2],
        ];
        let s = smith_normal_form(&a, 5, 5);
        assert!(verify_certificate(&a, 5, 5, &s));
        assert_eq!(s.rank(), 5);
    }
}
