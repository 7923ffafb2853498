//! Exact linear algebra over a [`Field`]: dense matrices with reduced
//! row echelon form, kernel bases and linear solves, plus an
//! incremental sparse echelon used for span/rank/membership work on
//! larger, mostly-empty systems.
//!
//! Pivoting is deterministic: the first nonzero entry per column in row
//! order. There is no numerical pivoting to do, since every entry is
//! exact, and determinism keeps reduced forms and reports reproducible.

use std::collections::BTreeMap;

use crate::field::Field;

/// A dense matrix with exact entries, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            field,
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    if !self.field.is_zero(self.get(i, j)) && !self.field.is_zero(&v[j]) {
                        acc = self.field.add(&acc, &self.field.mul(self.get(i, j), &v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; pivots are the first nonzero entry per
    /// column in row order.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(src, pivot_row);
            // Scale the pivot row to leading 1.
            let inv = f.inv(m.get(pivot_row, col)).expect("nonzero pivot");
            for j in col..m.cols {
                let v = f.mul(m.get(pivot_row, j), &inv);
                m.set(pivot_row, j, v);
            }
            // Eliminate the column everywhere else.
            for r in 0..m.rows {
                if r == pivot_row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(pivot_row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the null space, ordered by ascending free column.
    /// The number of vectors is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field.clone();
        let r = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in r.pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![f.zero(); self.cols];
            vec[free] = f.one();
            for (col, prow) in pivot_set.iter().enumerate() {
                if let Some(row) = prow {
                    vec[col] = f.neg(r.reduced.get(*row, free));
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "rhs length must equal row count");
        let f = self.field.clone();
        // Row-reduce the augmented matrix.
        let mut aug = Matrix::zero(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let r = aug.rref();
        // Inconsistent iff some pivot lands in the augmented column.
        if r.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &col) in r.pivots.iter().enumerate() {
            x[col] = r.reduced.get(row, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// A sparse row: `(column, coefficient)` pairs sorted by column, no
/// zero coefficients.
pub type SparseRow<F> = Vec<(usize, <F as Field>::Elem)>;

/// Incremental row space in reduced echelon form. Rows are inserted one
/// at a time; each insert reduces against the existing pivots and, if a
/// residual survives, normalizes it and back-substitutes so the stored
/// rows stay fully reduced.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseRow<F>>,
    pivot_rows: BTreeMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Ascending pivot columns.
    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_rows.keys().copied().collect()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_rows.contains_key(&col)
    }

    /// Residual of `row` after elimination against the stored rows.
    pub fn reduce(&self, row: SparseRow<F>) -> SparseRow<F> {
        let f = &self.field;
        let mut work = row;
        let mut out: SparseRow<F> = Vec::new();
        // Entries are processed in column order; a pivot hit folds the
        // whole stored row in and re-sorts the remaining work.
        while let Some((col, coeff)) = pop_front(&mut work) {
            if f.is_zero(&coeff) {
                continue;
            }
            match self.pivot_rows.get(&col) {
                None => out.push((col, coeff)),
                Some(&ri) => {
                    // work -= coeff * rows[ri]  (stored rows have leading 1)
                    let stored = &self.rows[ri];
                    let scaled: SparseRow<F> = stored
                        .iter()
                        .map(|(c, v)| (*c, f.mul(&coeff, v)))
                        .collect();
                    work = row_sub(f, &prepend((col, coeff), work), &scaled);
                    // `prepend` restores the popped entry so the
                    // subtraction cancels it exactly.
                }
            }
        }
        out
    }

    /// Inserts a row; returns the new pivot column if the row enlarged
    /// the span, `None` if it was already in the span.
    pub fn insert(&mut self, row: SparseRow<F>) -> Option<usize> {
        let f = self.field.clone();
        let red = self.reduce(row);
        let (&(pivot, ref lead), _) = red.split_first()?;
        let inv = f.inv(lead).expect("nonzero leading coefficient");
        let normalized: SparseRow<F> = red.iter().map(|(c, v)| (*c, f.mul(v, &inv))).collect();
        // Back-substitute into stored rows to keep them reduced.
        for stored in &mut self.rows {
            if let Some(pos) = stored.iter().position(|(c, _)| *c == pivot) {
                let factor = stored[pos].1.clone();
                let scaled: SparseRow<F> = normalized
                    .iter()
                    .map(|(c, v)| (*c, f.mul(&factor, v)))
                    .collect();
                *stored = row_sub(&f, stored, &scaled);
            }
        }
        self.rows.push(normalized);
        self.pivot_rows.insert(pivot, self.rows.len() - 1);
        Some(pivot)
    }

    /// Stored rows in ascending pivot order.
    pub fn reduced_rows(&self) -> Vec<&SparseRow<F>> {
        self.pivot_rows.values().map(|&i| &self.rows[i]).collect()
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }
}

fn pop_front<T>(row: &mut Vec<T>) -> Option<T> {
    if row.is_empty() {
        None
    } else {
        Some(row.remove(0))
    }
}

fn prepend<T>(head: T, rest: Vec<T>) -> Vec<T> {
    let mut v = Vec::with_capacity(rest.len() + 1);
    v.push(head);
    v.extend(rest);
    v
}

/// `a - b` for sorted sparse rows.
pub fn row_sub<F: Field>(f: &F, a: &SparseRow<F>, b: &SparseRow<F>) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = f.sub(va, vb);
                if !f.is_zero(&v) {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                out.push((*cb, f.neg(vb)));
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, f.neg(vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Dense vector to sparse row.
pub fn to_sparse<F: Field>(f: &F, dense: &[F::Elem]) -> SparseRow<F> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !f.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Sparse row to dense vector of the given width.
pub fn to_dense<F: Field>(f: &F, row: &SparseRow<F>, width: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); width];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Rationals> {
        let q = Rationals;
        Matrix::from_rows(
            q,
            rows.into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| BigRational::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let m = qm(vec![vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn equal_rows_over_f2_have_rank_one() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_rows(f2, vec![vec![1u64, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn identity_is_fixed_by_rref() {
        let m = Matrix::identity(Rationals, 4);
        let r = m.rref();
        assert_eq!(r.rank, 4);
        assert_eq!(r.reduced, m);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = qm(vec![vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]]);
        let r1 = m.rref();
        let r2 = r1.reduced.rref();
        assert_eq!(r1.reduced, r2.reduced);
    }

    #[test]
    fn kernel_of_proportional_rows() {
        let m = qm(vec![vec![1, 2], vec![2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // Proportional to (-2, 1).
        let q = Rationals;
        let ratio = q.div(&k[0][0], &k[0][1]).unwrap();
        assert_eq!(ratio, q.from_int(-2));
        assert!(m.mul_vec(&k[0]).iter().all(|v| q.is_zero(v)));
    }

    #[test]
    fn kernel_of_invertible_matrix_is_empty() {
        let m = qm(vec![vec![1, 1], vec![0, 1]]);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let m = Matrix::<Rationals>::zero(Rationals, 2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let m = Matrix::identity(Rationals, 3);
        let q = Rationals;
        let b = vec![q.from_int(4), q.from_int(-1), q.from_int(0)];
        assert_eq!(m.solve(&b).unwrap(), b);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = qm(vec![vec![1, 2], vec![2, 4]]);
        let q = Rationals;
        assert!(m.solve(&[q.from_int(1), q.from_int(3)]).is_none());
        let x = m.solve(&[q.from_int(1), q.from_int(2)]).unwrap();
        let got = m.mul_vec(&x);
        assert_eq!(got, vec![q.from_int(1), q.from_int(2)]);
    }

    #[test]
    fn echelon_matches_dense_rank() {
        let q = Rationals;
        let m = qm(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let mut e = Echelon::new(q);
        for i in 0..m.rows() {
            e.insert(to_sparse(m.field(), m.row(i)));
        }
        assert_eq!(e.rank(), m.rank());
        assert!(e.contains(to_sparse(m.field(), m.row(1))));
        assert!(!e.contains(vec![(0, Rationals.from_int(1))]));
    }
}
