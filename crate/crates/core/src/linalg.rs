//! Sparse exact linear algebra over a [`Field`].
//!
//! Matrices act on column vectors. Rows are stored as ordered maps so that
//! elimination can find leading entries cheaply.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Field, FieldElement};

/// A sparse vector: index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, FieldElement>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry from field {found} in a matrix over {expected}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("index ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}

/// `y += a * x`, dropping cancelled entries.
pub fn axpy(y: &mut SparseVec, a: &FieldElement, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (&k, v) in x {
        let t = a * v;
        add_entry(y, k, &t);
    }
}

/// `y[k] += v`, dropping the entry if it cancels.
pub fn add_entry(y: &mut SparseVec, k: usize, v: &FieldElement) {
    if v.is_zero() {
        return;
    }
    match y.get_mut(&k) {
        Some(e) => {
            *e += v;
            if e.is_zero() {
                y.remove(&k);
            }
        }
        None => {
            y.insert(k, v.clone());
        }
    }
}

pub fn scale_vec(x: &SparseVec, a: &FieldElement) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(&k, v)| (k, v * a)).collect()
}

pub fn dense_to_sparse(v: &[FieldElement]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(field: Field, v: &SparseVec, len: usize) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); len];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i].insert(i, field.one());
        }
        m
    }

    pub fn from_entries<I>(field: Field, rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, FieldElement)>,
    {
        let mut m = Self::zero(field, rows, cols);
        for (r, c, v) in entries {
            if v.field() != field {
                return Err(LinalgError::FieldMismatch {
                    expected: field,
                    found: v.field(),
                });
            }
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds { row: r, col: c, rows, cols });
            }
            add_entry(&mut m.data[r], c, &v);
        }
        Ok(m)
    }

    /// Small integer matrices, mostly for tests and examples.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.data[r].insert(c, field.from_i64(x));
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                m.data[r].insert(c, v.clone());
            }
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<SparseVec>) -> Self {
        SparseMatrix {
            field,
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(&c).map(|v| (r, v.clone())))
            .collect()
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r].get(&c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &FieldElement) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        add_entry(&mut self.data[r], c, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FieldElement)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(r, row)| row.len() == 1 && row.get(&r).is_some_and(FieldElement::is_one))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.field, self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out = SparseVec::new();
                for (k, a) in row {
                    axpy(&mut out, a, &other.data[*k]);
                }
                out
            })
            .collect();
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// `self * x` for a sparse column vector.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = self.field.zero();
            let (small, large) = if row.len() <= x.len() { (row, x) } else { (x, row) };
            for (k, a) in small {
                if let Some(b) = large.get(k) {
                    acc += &(a * b);
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    pub fn apply_dense(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (k, a) in row {
                    acc += &(a * &x[*k]);
                }
                acc
            })
            .collect()
    }

    /// `y * self` for a sparse row vector.
    pub fn left_apply(&self, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&r, a) in y {
            axpy(&mut out, a, &self.data[r]);
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(other, &self.field.one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(other, &self.field.from_i64(-1))
    }

    /// `self + a * other`.
    pub fn add_scaled(&self, other: &SparseMatrix, a: &FieldElement) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (r, row) in other.data.iter().enumerate() {
            axpy(&mut out.data[r], a, row);
        }
        out
    }

    pub fn scale(&self, a: &FieldElement) -> SparseMatrix {
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| scale_vec(r, a)).collect(),
        }
    }

    /// Adds `a * block` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &SparseMatrix, a: &FieldElement) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (r, c, v) in block.entries() {
            add_entry(&mut self.data[r0 + r], c0 + c, &(v * a));
        }
    }

    /// Restriction to the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| {
                self.data[r]
                    .iter()
                    .filter(|(c, _)| pos[**c] != usize::MAX)
                    .map(|(c, v)| (pos[*c], v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            field: self.field,
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        self.data
            .iter()
            .map(|row| sparse_to_dense(self.field, row, self.cols))
            .collect()
    }

    pub fn rank(&self) -> usize {
        RowReduced::new(self.field, self.cols, self.data.clone()).rank()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        self.kernel_sparse()
            .into_iter()
            .map(|v| sparse_to_dense(self.field, &v, self.cols))
            .collect()
    }

    pub fn kernel_sparse(&self) -> Vec<SparseVec> {
        let rr = RowReduced::new(self.field, self.cols, self.data.clone());
        let mut basis = Vec::new();
        for f in rr.free_columns() {
            let mut v = SparseVec::new();
            v.insert(f, self.field.one());
            for (p, row) in rr.pivots.iter().zip(&rr.rows) {
                if let Some(x) = row.get(&f) {
                    v.insert(*p, -x);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        if let Some(x) = rhs.iter().find(|x| x.field() != self.field) {
            return Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: x.field(),
            });
        }
        Ok(self
            .solve_sparse(&dense_to_sparse(rhs))
            .map(|x| sparse_to_dense(self.field, &x, self.cols)))
    }

    pub fn solve_sparse(&self, rhs: &SparseVec) -> Option<SparseVec> {
        let aug = self.cols;
        let rows = self
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut row = row.clone();
                if let Some(v) = rhs.get(&r) {
                    row.insert(aug, v.clone());
                }
                row
            })
            .collect();
        let rr = RowReduced::new(self.field, aug + 1, rows);
        if rr.pivots.last() == Some(&aug) {
            return None;
        }
        let mut x = SparseVec::new();
        for (p, row) in rr.pivots.iter().zip(&rr.rows) {
            if let Some(v) = row.get(&aug) {
                x.insert(*p, v.clone());
            }
        }
        Some(x)
    }

    pub fn invert(&self) -> Result<SparseMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let rows = self
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut row = row.clone();
                row.insert(n + r, self.field.one());
                row
            })
            .collect();
        let rr = RowReduced::new(self.field, 2 * n, rows);
        if rr.rank() < n || rr.pivots.get(n - 1).is_some_and(|&p| p >= n) {
            return Err(LinalgError::Singular);
        }
        let data = rr
            .rows
            .into_iter()
            .map(|row| row.into_iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v)).collect())
            .collect();
        Ok(SparseMatrix {
            field: self.field,
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn determinant(&self) -> Result<FieldElement, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut rows = self.to_dense();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det = det * &pivot;
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let f = &rows[r][c] * &inv;
                for k in c..n {
                    let t = &f * &rows[c][k];
                    rows[r][k] -= &t;
                }
            }
        }
        Ok(det)
    }
}

/// Reduced row echelon form of a list of sparse rows.
///
/// Elimination proceeds column by column; among the rows whose leading entry
/// sits in the current column the pivot is the one of smallest bit-length,
/// ties broken by the lowest row index.
#[derive(Clone, Debug)]
pub struct RowReduced {
    field: Field,
    width: usize,
    pivots: Vec<usize>,
    rows: Vec<SparseVec>,
}

impl RowReduced {
    pub fn new(field: Field, width: usize, input: Vec<SparseVec>) -> Self {
        let mut rows: Vec<SparseVec> = input;
        let mut by_lead: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, r) in rows.iter().enumerate() {
            if let Some((&c, _)) = r.iter().next() {
                by_lead.entry(c).or_default().push(i);
            }
        }
        let mut pivots = Vec::new();
        let mut reduced = Vec::new();
        while let Some((c, idxs)) = by_lead.pop_first() {
            let &best = idxs
                .iter()
                .min_by_key(|&&i| (rows[i][&c].size(), i))
                .expect("nonempty bucket");
            let inv = rows[best][&c].inverse().expect("leading entry is nonzero");
            let pivot_row = scale_vec(&std::mem::take(&mut rows[best]), &inv);
            for &i in &idxs {
                if i == best {
                    continue;
                }
                let f = -&rows[i][&c];
                let mut r = std::mem::take(&mut rows[i]);
                axpy(&mut r, &f, &pivot_row);
                if let Some((&lead, _)) = r.iter().next() {
                    by_lead.entry(lead).or_default().push(i);
                }
                rows[i] = r;
            }
            pivots.push(c);
            reduced.push(pivot_row);
        }
        for k in (0..reduced.len()).rev() {
            let p = pivots[k];
            let (head, tail) = reduced.split_at_mut(k);
            let prow = &tail[0];
            for row in head.iter_mut() {
                if let Some(f) = row.get(&p).cloned() {
                    axpy(row, &-f, prow);
                }
            }
        }
        RowReduced {
            field,
            width,
            pivots,
            rows: reduced,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut k = 0;
        let mut out = Vec::new();
        for c in 0..self.width {
            if k < self.pivots.len() && self.pivots[k] == c {
                k += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Canonical representative of `v` modulo the row space: the result has no
    /// entries in pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<(usize, FieldElement)> = v
            .iter()
            .filter_map(|(c, x)| self.pivots.binary_search(c).ok().map(|k| (k, x.clone())))
            .collect();
        for (k, x) in hits {
            axpy(&mut out, &-x, &self.rows[k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&lead, x)) = r.iter().next() else {
            return false;
        };
        let row = scale_vec(&r, &x.inverse().expect("nonzero"));
        for other in self.rows.iter_mut() {
            if let Some(f) = other.get(&lead).cloned() {
                axpy(other, &-f, &row);
            }
        }
        let k = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(k, lead);
        self.rows.insert(k, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElement {
        Field::Rational.from_i64(n)
    }

    fn m(rows: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_i64(Field::Rational, rows)
    }

    #[test]
    fn ranks() {
        assert_eq!(SparseMatrix::identity(Field::Rational, 2).rank(), 2);
        assert_eq!(SparseMatrix::zero(Field::Rational, 3, 4).rank(), 0);
        assert_eq!(m(&[vec![1, 2], vec![0, 1]]).rank(), 2);
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernels() {
        assert_eq!(SparseMatrix::zero(Field::Rational, 2, 3).kernel_basis().len(), 3);
        assert!(SparseMatrix::identity(Field::Rational, 2).kernel_basis().is_empty());
        let k = m(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn solving() {
        let a = m(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(a.solve(&[q(0), q(1)]).unwrap(), Some(vec![q(-2), q(1)]));
        let id = SparseMatrix::identity(Field::Rational, 3);
        let v = vec![q(4), q(-1), q(7)];
        assert_eq!(id.solve(&v).unwrap(), Some(v));
        assert_eq!(m(&[vec![0]]).solve(&[q(1)]).unwrap(), None);
        assert!(matches!(a.solve(&[q(1)]), Err(LinalgError::DimensionMismatch { .. })));
    }

    #[test]
    fn inverses() {
        let a = m(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(a.invert().unwrap(), m(&[vec![1, -2], vec![0, 1]]));
        let id = SparseMatrix::identity(Field::Rational, 4);
        assert_eq!(id.invert().unwrap(), id);
        assert_eq!(m(&[vec![1, 1], vec![1, 1]]).invert(), Err(LinalgError::Singular));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(), q(-1));
    }

    #[test]
    fn mixed_fields_rejected() {
        let e = SparseMatrix::from_entries(Field::Prime(5), 1, 1, [(0, 0, Field::Prime(7).one())]);
        assert!(matches!(e, Err(LinalgError::FieldMismatch { .. })));
    }

    #[test]
    fn incremental_insert_matches_batch() {
        let rows = [vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let mut rr = RowReduced::new(Field::Rational, 3, vec![]);
        let added: Vec<bool> = rows
            .iter()
            .map(|r| rr.insert(&dense_to_sparse(&r.iter().map(|&x| q(x)).collect::<Vec<_>>())))
            .collect();
        assert_eq!(added, vec![true, false, true]);
        let batch = m(&rows.to_vec());
        assert_eq!(rr.rank(), batch.rank());
    }
}
