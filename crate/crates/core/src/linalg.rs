//! Dense rational vectors and matrices, exact linear system solving, rank.

use std::fmt;
use std::ops::Index;

use num_traits::Zero;

use crate::rational::{int, Rational};

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector {
    entries: Vec<Rational>,
}

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![Rational::zero(); len],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len, "unit index {i} out of range for length {len}");
        let mut v = Self::zeros(len);
        v.entries[i] = int(1);
        v
    }

    pub fn ones(len: usize) -> Self {
        Self {
            entries: vec![int(1); len],
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self {
            entries: values.iter().map(|&v| int(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.len(), other.len(), "dot product length mismatch");
        let mut acc = Rational::zero();
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len(), "vector add length mismatch");
        QVector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len(), "vector sub length mismatch");
        QVector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rational) -> QVector {
        QVector::new(self.entries.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector::new(self.entries.iter().map(|a| -a).collect())
    }

    pub fn sum(&self) -> Rational {
        let mut acc = Rational::zero();
        for a in &self.entries {
            acc += a;
        }
        acc
    }

    pub fn is_zero_vector(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }
}

impl Index<usize> for QVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Rectangular matrix of exact rationals. Row count may be zero, so the
/// column count is stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<QVector>,
    cols: usize,
}

impl QMatrix {
    pub fn from_rows(rows: Vec<QVector>, cols: usize) -> Self {
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(
                r.len(),
                cols,
                "row {i} has length {}, expected {cols}",
                r.len()
            );
        }
        Self { rows, cols }
    }

    pub fn empty(cols: usize) -> Self {
        Self {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(v.len(), self.cols, "matrix-vector length mismatch");
        QVector::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }
}

/// Result of [`solve_linear_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolve {
    Solution {
        particular: QVector,
        /// Basis of the kernel of the coefficient matrix; empty when the
        /// solution is unique.
        nullspace: Vec<QVector>,
    },
    Inconsistent,
}

/// Reduce `rows` (each of width `cols + extra`, where the last `extra`
/// columns are carried along but never pivoted on) to reduced row echelon
/// form. Returns the pivot (row, col) pairs, in order.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = {
            let p = &rows[pivot_row][col];
            p.recip()
        };
        for e in rows[pivot_row].iter_mut() {
            if !e.is_zero() {
                *e *= &inv;
            }
        }
        let prow = std::mem::take(&mut rows[pivot_row]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row {
                continue;
            }
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for (e, pe) in row.iter_mut().zip(prow.iter()) {
                if !pe.is_zero() {
                    *e -= &f * pe;
                }
            }
        }
        rows[pivot_row] = prow;
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    pivots
}

/// Solve `A x = b` exactly. Returns a particular solution (free variables
/// set to zero) together with a basis of the kernel of `A`, or
/// [`LinearSolve::Inconsistent`].
pub fn solve_linear_system(a: &QMatrix, b: &QVector) -> LinearSolve {
    assert_eq!(a.n_rows(), b.len(), "system row count mismatch");
    let n = a.n_cols();
    let mut rows: Vec<Vec<Rational>> = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(r, rhs)| {
            let mut row: Vec<Rational> = r.entries().to_vec();
            row.push(rhs.clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, n);

    for (r, row) in rows.iter().enumerate() {
        let has_pivot = pivots.iter().any(|&(pr, _)| pr == r);
        if !has_pivot && !row[n].is_zero() {
            return LinearSolve::Inconsistent;
        }
    }

    let mut particular = QVector::zeros(n);
    for &(r, c) in &pivots {
        particular.entries[c] = rows[r][n].clone();
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut nullspace = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = QVector::zeros(n);
        v.entries[free] = int(1);
        for &(r, c) in &pivots {
            v.entries[c] = -rows[r][free].clone();
        }
        nullspace.push(v);
    }

    LinearSolve::Solution {
        particular,
        nullspace,
    }
}

/// Exact rank over the rationals.
pub fn matrix_rank(a: &QMatrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = a.rows().iter().map(|r| r.entries().to_vec()).collect();
    rref(&mut rows, a.n_cols()).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn qv(values: &[i64]) -> QVector {
        QVector::from_ints(values)
    }

    #[test]
    fn identity_system_returns_rhs() {
        let a = QMatrix::identity(2);
        let b = qv(&[3, 5]);
        let solved = solve_linear_system(&a, &b);
        assert_eq!(
            solved,
            LinearSolve::Solution {
                particular: qv(&[3, 5]),
                nullspace: vec![],
            }
        );
    }

    #[test]
    fn one_by_one_system() {
        let a = QMatrix::from_rows(vec![qv(&[2])], 1);
        let b = qv(&[4]);
        let solved = solve_linear_system(&a, &b);
        assert_eq!(
            solved,
            LinearSolve::Solution {
                particular: qv(&[2]),
                nullspace: vec![],
            }
        );
    }

    #[test]
    fn zero_times_x_equals_one_is_inconsistent() {
        let a = QMatrix::from_rows(vec![qv(&[0])], 1);
        let b = qv(&[1]);
        assert_eq!(solve_linear_system(&a, &b), LinearSolve::Inconsistent);
    }

    #[test]
    fn underdetermined_system_has_nullspace() {
        // x + y = 2: particular (2, 0), kernel spanned by (-1, 1).
        let a = QMatrix::from_rows(vec![qv(&[1, 1])], 2);
        let b = qv(&[2]);
        match solve_linear_system(&a, &b) {
            LinearSolve::Solution {
                particular,
                nullspace,
            } => {
                assert_eq!(a.mul_vec(&particular), b);
                assert_eq!(nullspace.len(), 1);
                assert!(a.mul_vec(&nullspace[0]).is_zero_vector());
            }
            LinearSolve::Inconsistent => panic!("consistent system reported inconsistent"),
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(matrix_rank(&QMatrix::identity(3)), 3);
        assert_eq!(
            matrix_rank(&QMatrix::from_rows(vec![qv(&[0, 0]), qv(&[0, 0])], 2)),
            0
        );
        assert_eq!(
            matrix_rank(&QMatrix::from_rows(vec![qv(&[1, 1]), qv(&[2, 2])], 2)),
            1
        );
    }

    #[test]
    fn rational_entries_are_exact() {
        // (1/3) x = 5/3 has the unique solution x = 5.
        let a = QMatrix::from_rows(vec![QVector::new(vec![rat(1, 3)])], 1);
        let b = QVector::new(vec![rat(5, 3)]);
        match solve_linear_system(&a, &b) {
            LinearSolve::Solution { particular, .. } => assert_eq!(particular, qv(&[5])),
            LinearSolve::Inconsistent => panic!("unexpected inconsistency"),
        }
    }

    proptest! {
        /// Any solution reported satisfies A·x = b and A·v = 0 exactly.
        #[test]
        fn solutions_satisfy_system(
            rows in 1usize..4,
            cols in 1usize..4,
            entries in prop::collection::vec(-5i64..5, 16),
            rhs in prop::collection::vec(-5i64..5, 4),
        ) {
            let a = QMatrix::from_rows(
                (0..rows)
                    .map(|r| QVector::from_ints(&entries[r * cols..(r + 1) * cols]))
                    .collect(),
                cols,
            );
            let b = QVector::from_ints(&rhs[..rows]);
            if let LinearSolve::Solution { particular, nullspace } = solve_linear_system(&a, &b) {
                prop_assert_eq!(a.mul_vec(&particular), b);
                for v in &nullspace {
                    prop_assert!(a.mul_vec(v).is_zero_vector());
                }
                prop_assert_eq!(nullspace.len(), cols - matrix_rank(&a));
            }
        }
    }
}
