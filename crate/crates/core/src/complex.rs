//! Finite cochain complexes, their cohomology, and deformation retractions
//! onto cohomology.
//!
//! A complex has a single global basis; every basis vector carries a degree
//! and the differential raises degree by one. Per-degree blocks are extracted
//! on demand.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{RowReduced, SparseMatrix, SparseVec};
use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d o d is nonzero starting in degree {0}")]
    SquareNonzero(i64),
    #[error("differential sends basis vector {from} (degree {from_degree}) to vector {to} of degree {to_degree}")]
    Degree {
        from: usize,
        from_degree: i64,
        to: usize,
        to_degree: i64,
    },
    #[error("differential has shape {rows}x{cols} but the space has dimension {dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
}

/// A finite graded vector space with a distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    degrees: Vec<i64>,
    labels: Vec<String>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<i64>) -> Self {
        let labels = (0..degrees.len()).map(|k| format!("x{k}")).collect();
        GradedSpace { degrees, labels }
    }

    pub fn with_labels(degrees: Vec<i64>, labels: Vec<String>) -> Self {
        assert_eq!(degrees.len(), labels.len());
        GradedSpace { degrees, labels }
    }

    /// Basis sorted by degree with `dims[n]` vectors in degree `n`.
    pub fn from_dims(dims: &BTreeMap<i64, usize>) -> Self {
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for (&n, &k) in dims {
            for j in 0..k {
                degrees.push(n);
                labels.push(format!("h{n}_{j}"));
            }
        }
        GradedSpace { degrees, labels }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, k: usize) -> i64 {
        self.degrees[k]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero dimensions per degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &n in &self.degrees {
            *out.entry(n).or_insert(0) += 1;
        }
        out
    }

    pub fn dim_in(&self, n: i64) -> usize {
        self.degrees.iter().filter(|&&d| d == n).count()
    }

    pub fn indices_in(&self, n: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.degrees[k] == n).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|&n| if n.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }

    /// `X[k]`: a vector of degree `n` now sits in degree `n - k`.
    pub fn shift(&self, k: i64) -> Self {
        GradedSpace {
            degrees: self.degrees.iter().map(|n| n - k).collect(),
            labels: self.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    space: GradedSpace,
    d: SparseMatrix,
}

impl ChainComplex {
    /// Checks degree compatibility and `d o d = 0`.
    pub fn new(space: GradedSpace, d: SparseMatrix) -> Result<Self, ComplexError> {
        let x = ChainComplex { space, d };
        x.validate()?;
        Ok(x)
    }

    /// Skips validation; for callers that assert `d o d = 0` separately.
    pub fn new_unchecked(space: GradedSpace, d: SparseMatrix) -> Self {
        ChainComplex { space, d }
    }

    pub fn zero_differential(field: Field, space: GradedSpace) -> Self {
        let n = space.dim();
        ChainComplex {
            space,
            d: SparseMatrix::zero(field, n, n),
        }
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        let n = self.space.dim();
        if self.d.rows() != n || self.d.cols() != n {
            return Err(ComplexError::Shape {
                rows: self.d.rows(),
                cols: self.d.cols(),
                dim: n,
            });
        }
        for (r, c, _) in self.d.entries() {
            if self.space.degree(r) != self.space.degree(c) + 1 {
                return Err(ComplexError::Degree {
                    from: c,
                    from_degree: self.space.degree(c),
                    to: r,
                    to_degree: self.space.degree(r),
                });
            }
        }
        let dd = self.d.mul(&self.d);
        if let Some((_, c, _)) = dd.entries().min_by_key(|(_, c, _)| self.space.degree(*c)) {
            return Err(ComplexError::SquareNonzero(self.space.degree(c)));
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.d.field()
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn differential(&self) -> &SparseMatrix {
        &self.d
    }

    /// The block `d_n : X^n -> X^{n+1}` in local coordinates.
    pub fn d_block(&self, n: i64) -> SparseMatrix {
        self.d
            .submatrix(&self.space.indices_in(n + 1), &self.space.indices_in(n))
    }

    /// `X[k]` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        ChainComplex {
            space: self.space.shift(k),
            d: self.d.scale(&self.field().sign(k)),
        }
    }

    pub fn cohomology(&self) -> GradedSpace {
        let mut dims = BTreeMap::new();
        for (&n, &dim) in &self.space.dims() {
            let rank_out = self.d_block(n).rank();
            let rank_in = self.d_block(n - 1).rank();
            let h = dim - rank_out - rank_in;
            if h > 0 {
                dims.insert(n, h);
            }
        }
        GradedSpace::from_dims(&dims)
    }

    /// `sum (-1)^n dim H^n`, cross-checked against `sum (-1)^n dim X^n`.
    pub fn euler_characteristic(&self) -> i64 {
        let h = self.cohomology().euler_characteristic();
        let x = self.space.euler_characteristic();
        assert_eq!(h, x, "Euler characteristic of cohomology differs from that of the chains");
        h
    }

    pub fn build_retraction(&self) -> Retraction {
        Retraction::build(self)
    }
}

/// Deformation retraction data `(p, i, H)` of a complex onto its cohomology,
/// with `p i = 1`, `i p - 1 = d H + H d` and the side conditions
/// `p H = 0`, `H i = 0`, `H H = 0`.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub source: ChainComplex,
    pub cohomology: GradedSpace,
    pub p: SparseMatrix,
    pub i: SparseMatrix,
    pub h: SparseMatrix,
}

impl Retraction {
    /// Splits each `X^n` as `B^n + H^n + C^n` where `B^n = d(C^{n-1})`, `H^n`
    /// complements `B^n` in the cycles, and `C^n` is spanned by standard basis
    /// vectors completing the basis. `H` sends `d(c)` to `-c`.
    pub fn build(x: &ChainComplex) -> Retraction {
        let field = x.field();
        let n_x = x.dim();
        let space = x.space();
        let d = x.differential();
        let mut complement_prev: Vec<SparseVec> = Vec::new();
        let mut prev_degree: Option<i64> = None;
        let mut h_degrees = Vec::new();
        let mut p_rows: Vec<SparseVec> = Vec::new();
        let mut i_cols: Vec<SparseVec> = Vec::new();
        let mut h_op = SparseMatrix::zero(field, n_x, n_x);

        for (&n, _) in &space.dims() {
            let idx = space.indices_in(n);
            if prev_degree != Some(n - 1) {
                complement_prev.clear();
            }
            let boundaries: Vec<SparseVec> = complement_prev.iter().map(|c| d.apply(c)).collect();
            let d_n = x.d_block(n);
            let cycles: Vec<SparseVec> = d_n
                .kernel_sparse()
                .into_iter()
                .map(|v| v.into_iter().map(|(k, a)| (idx[k], a)).collect())
                .collect();

            let mut span = RowReduced::new(field, n_x, Vec::new());
            for b in &boundaries {
                let fresh = span.insert(b);
                debug_assert!(fresh, "boundaries must be independent");
            }
            let mut reps = Vec::new();
            for z in cycles {
                if span.insert(&z) {
                    reps.push(z);
                }
            }
            let mut complement = Vec::new();
            for &k in &idx {
                let e: SparseVec = [(k, field.one())].into_iter().collect();
                if span.insert(&e) {
                    complement.push(e);
                }
            }

            // Change of basis on X^n: columns are B, then H reps, then C.
            let local = |v: &SparseVec| -> SparseVec {
                v.iter()
                    .map(|(k, a)| (idx.binary_search(k).expect("vector in degree n"), a.clone()))
                    .collect()
            };
            let basis: Vec<SparseVec> = boundaries
                .iter()
                .chain(&reps)
                .chain(&complement)
                .map(local)
                .collect();
            let change = SparseMatrix::from_columns(field, idx.len(), &basis);
            let coords = change.invert().expect("basis of X^n");
            let nb = boundaries.len();
            let nh = reps.len();

            for j in 0..nh {
                let row: SparseVec = coords
                    .row(nb + j)
                    .iter()
                    .map(|(k, a)| (idx[*k], a.clone()))
                    .collect();
                p_rows.push(row);
                h_degrees.push(n);
            }
            i_cols.extend(reps);
            let minus_one = field.from_i64(-1);
            for b in 0..nb {
                for (k, a) in coords.row(b) {
                    let coeff = a * &minus_one;
                    for (t, c) in &complement_prev[b] {
                        h_op.add_to(*t, idx[*k], &(&coeff * c));
                    }
                }
            }
            complement_prev = complement;
            prev_degree = Some(n);
        }

        let nh = h_degrees.len();
        let p = SparseMatrix::from_rows(field, n_x, p_rows);
        let i = SparseMatrix::from_columns(field, n_x, &i_cols);
        debug_assert_eq!(i.cols(), nh);
        Retraction {
            source: x.clone(),
            cohomology: GradedSpace::from_dims(&{
                let mut m = BTreeMap::new();
                for n in &h_degrees {
                    *m.entry(*n).or_insert(0) += 1;
                }
                m
            }),
            p,
            i,
            h: h_op,
        }
    }

    /// Names of the identities that fail, empty when all five hold.
    pub fn check(&self) -> Vec<&'static str> {
        let field = self.source.field();
        let d = self.source.differential();
        let mut failed = Vec::new();
        let nh = self.cohomology.dim();
        if !self.p.mul(&self.i).sub(&SparseMatrix::identity(field, nh)).is_zero() {
            failed.push("p i = 1");
        }
        let ip = self.i.mul(&self.p).sub(&SparseMatrix::identity(field, self.source.dim()));
        let dh = d.mul(&self.h).add(&self.h.mul(d));
        if ip != dh {
            failed.push("i p - 1 = d H + H d");
        }
        if !self.p.mul(&self.h).is_zero() {
            failed.push("p H = 0");
        }
        if !self.h.mul(&self.i).is_zero() {
            failed.push("H i = 0");
        }
        if !self.h.mul(&self.h).is_zero() {
            failed.push("H H = 0");
        }
        failed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn example() -> ChainComplex {
        // degrees 0,1,1,2 with d0 = (1,0)^T and d1 = (0,1)
        let space = GradedSpace::new(vec![0, 1, 1, 2]);
        let d = SparseMatrix::from_i64(
            q(),
            &[vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0]],
        );
        ChainComplex::new(space, d).unwrap()
    }

    #[test]
    fn cohomology_examples() {
        let acyclic = ChainComplex::new(
            GradedSpace::new(vec![0, 1]),
            SparseMatrix::from_i64(q(), &[vec![0, 0], vec![1, 0]]),
        )
        .unwrap();
        assert_eq!(acyclic.cohomology().dim(), 0);
        assert_eq!(acyclic.euler_characteristic(), 0);

        let point = ChainComplex::zero_differential(q(), GradedSpace::new(vec![0]));
        assert_eq!(point.cohomology().dims(), BTreeMap::from([(0, 1)]));
        assert_eq!(point.euler_characteristic(), 1);

        // im d0 = ker d1, so the (1,2,1) example is acyclic
        let x = example();
        assert_eq!(x.cohomology().dim(), 0);
        assert_eq!(x.euler_characteristic(), 0);
    }

    #[test]
    fn square_nonzero_is_reported() {
        let space = GradedSpace::new(vec![0, 1, 2]);
        let d = SparseMatrix::from_i64(q(), &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(ChainComplex::new(space, d), Err(ComplexError::SquareNonzero(0)));
    }

    #[test]
    fn retractions() {
        let point = ChainComplex::zero_differential(q(), GradedSpace::new(vec![0, 3]));
        let r = point.build_retraction();
        assert!(r.check().is_empty());
        assert!(r.p.is_identity() && r.i.is_identity() && r.h.is_zero());

        let acyclic = ChainComplex::new(
            GradedSpace::new(vec![0, 1]),
            SparseMatrix::from_i64(q(), &[vec![0, 0], vec![1, 0]]),
        )
        .unwrap();
        let r = acyclic.build_retraction();
        assert!(r.check().is_empty());
        assert_eq!(r.p.rows(), 0);
        assert_eq!(r.h.get(0, 1), q().from_i64(-1));

        assert!(example().build_retraction().check().is_empty());
    }

    #[test]
    fn shift_moves_cohomology_down() {
        let space = GradedSpace::new(vec![0, 1, 1, 2]);
        let d = SparseMatrix::from_i64(
            q(),
            &[vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0]],
        );
        let x = ChainComplex::new(space, d).unwrap();
        assert_eq!(x.cohomology().dims(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(x.shift(1).cohomology().dims(), BTreeMap::from([(-1, 1), (0, 1)]));
    }
}
