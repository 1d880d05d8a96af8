//! Finite-dimensional unital DG algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{ChainComplex, GradedSpace};
use crate::linalg::{add_entry, axpy, scale_vec, SparseMatrix, SparseVec};
use crate::scalar::{Field, FieldElement};

/// Elements are coefficient vectors in the basis of their algebra.
pub type AlgebraElement = SparseVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("{what} has length {found}, expected {expected}")]
    Length {
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("scalar from {found} in an algebra over {expected}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("element is not homogeneous")]
    Inhomogeneous,
}

/// One violated algebra axiom, with the first offending basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraFailure {
    Associativity(usize, usize, usize),
    LeftUnit(usize),
    RightUnit(usize),
    UnitDegree,
    UnitDifferential,
    ProductDegree(usize, usize),
    DifferentialDegree(usize),
    Leibniz(usize, usize),
    DifferentialSquare(usize),
}

impl fmt::Display for AlgebraFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraFailure::Associativity(i, j, k) => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            AlgebraFailure::LeftUnit(i) => write!(f, "1 * e{i} != e{i}"),
            AlgebraFailure::RightUnit(i) => write!(f, "e{i} * 1 != e{i}"),
            AlgebraFailure::UnitDegree => write!(f, "unit is not of degree 0"),
            AlgebraFailure::UnitDifferential => write!(f, "d(1) != 0"),
            AlgebraFailure::ProductDegree(i, j) => write!(f, "e{i} * e{j} has the wrong degree"),
            AlgebraFailure::DifferentialDegree(i) => write!(f, "d(e{i}) has the wrong degree"),
            AlgebraFailure::Leibniz(i, j) => write!(f, "Leibniz rule fails on pair ({i}, {j})"),
            AlgebraFailure::DifferentialSquare(i) => write!(f, "d(d(e{i})) != 0"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AlgebraFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebra {
    field: Field,
    labels: Vec<String>,
    degrees: Vec<i64>,
    unit: SparseVec,
    // mult[i][j] = e_i e_j
    mult: Vec<BTreeMap<usize, SparseVec>>,
    // diff[i] = d(e_i)
    diff: Vec<SparseVec>,
}

impl DgAlgebra {
    /// Builds an algebra from structure constants. `mult` entries `(i, j, k, c)`
    /// mean that `e_i e_j` has coefficient `c` on `e_k`; `diff` entries
    /// `(i, k, c)` mean that `d(e_i)` has coefficient `c` on `e_k`.
    /// Only shapes are checked here; see [`DgAlgebra::validate`].
    pub fn new(
        field: Field,
        labels: Vec<String>,
        degrees: Vec<i64>,
        unit: SparseVec,
        mult: impl IntoIterator<Item = (usize, usize, usize, FieldElement)>,
        diff: impl IntoIterator<Item = (usize, usize, FieldElement)>,
    ) -> Result<Self, AlgebraError> {
        let n = degrees.len();
        if labels.len() != n {
            return Err(AlgebraError::Length {
                what: "labels",
                found: labels.len(),
                expected: n,
            });
        }
        let check = |index: usize| {
            if index >= n {
                Err(AlgebraError::IndexOutOfRange { index, dim: n })
            } else {
                Ok(())
            }
        };
        let check_field = |x: &FieldElement| {
            if x.field() != field {
                Err(AlgebraError::FieldMismatch {
                    expected: field,
                    found: x.field(),
                })
            } else {
                Ok(())
            }
        };
        for (&k, x) in &unit {
            check(k)?;
            check_field(x)?;
        }
        let mut table = vec![BTreeMap::new(); n];
        for (i, j, k, c) in mult {
            check(i)?;
            check(j)?;
            check(k)?;
            check_field(&c)?;
            let entry: &mut SparseVec = table[i].entry(j).or_default();
            add_entry(entry, k, &c);
        }
        for row in table.iter_mut() {
            row.retain(|_, v: &mut SparseVec| !v.is_empty());
        }
        let mut d = vec![SparseVec::new(); n];
        for (i, k, c) in diff {
            check(i)?;
            check(k)?;
            check_field(&c)?;
            add_entry(&mut d[i], k, &c);
        }
        let unit = unit.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        Ok(DgAlgebra {
            field,
            labels,
            degrees,
            unit,
            mult: table,
            diff: d,
        })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        DgAlgebra::new(
            field,
            vec!["1".into()],
            vec![0],
            [(0, field.one())].into(),
            [(0, 0, 0, field.one())],
            [],
        )
        .expect("ground field")
    }

    pub fn relabeled(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    /// Index of the unit if it is a single basis vector with coefficient 1.
    pub fn unit_index(&self) -> Option<usize> {
        match self.unit.iter().next() {
            Some((&k, c)) if self.unit.len() == 1 && c.is_one() => Some(k),
            _ => None,
        }
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        [(i, self.field.one())].into()
    }

    /// `e_i e_j`, or `None` when it vanishes.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.mult[i].get(&j)
    }

    /// Nonzero products `e_i e_j` for fixed `i`.
    pub fn products_from(&self, i: usize) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.mult[i].iter().map(|(j, v)| (*j, v))
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(BTreeMap::is_empty)
    }

    pub fn is_ungraded(&self) -> bool {
        self.degrees.iter().all(|&n| n == 0)
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            let row = &self.mult[i];
            if row.is_empty() {
                continue;
            }
            for (&j, b) in y {
                if let Some(p) = row.get(&j) {
                    axpy(&mut out, &(a * b), p);
                }
            }
        }
        out
    }

    pub fn d(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            axpy(&mut out, a, &self.diff[i]);
        }
        out
    }

    pub fn diff_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.field, self.dim(), &self.diff)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, x: &SparseVec) -> Option<i64> {
        let mut it = x.keys().map(|&k| self.degrees[k]);
        let first = it.next()?;
        it.all(|n| n == first).then_some(first)
    }

    pub fn homogeneous_components(&self, x: &SparseVec) -> BTreeMap<i64, SparseVec> {
        let mut out: BTreeMap<i64, SparseVec> = BTreeMap::new();
        for (&k, a) in x {
            out.entry(self.degrees[k]).or_default().insert(k, a.clone());
        }
        out
    }

    /// The underlying space with `d` as a cochain complex.
    pub fn as_complex(&self) -> ChainComplex {
        ChainComplex::new_unchecked(
            GradedSpace::with_labels(self.degrees.clone(), self.labels.clone()),
            self.diff_matrix(),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.dim();
        let field = self.field;
        if self.unit.keys().any(|&k| self.degrees[k] != 0) {
            failures.push(AlgebraFailure::UnitDegree);
        }
        if !self.d(&self.unit).is_empty() {
            failures.push(AlgebraFailure::UnitDifferential);
        }
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e {
                failures.push(AlgebraFailure::LeftUnit(i));
                break;
            }
        }
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&e, &self.unit) != e {
                failures.push(AlgebraFailure::RightUnit(i));
                break;
            }
        }
        'deg: for i in 0..n {
            for (&j, p) in &self.mult[i] {
                if p.keys().any(|&k| self.degrees[k] != self.degrees[i] + self.degrees[j]) {
                    failures.push(AlgebraFailure::ProductDegree(i, j));
                    break 'deg;
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| self.diff[i].keys().any(|&k| self.degrees[k] != self.degrees[i] + 1)) {
            failures.push(AlgebraFailure::DifferentialDegree(i));
        }
        if let Some(i) = (0..n).find(|&i| !self.d(&self.diff[i]).is_empty()) {
            failures.push(AlgebraFailure::DifferentialSquare(i));
        }
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).cloned().unwrap_or_default();
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = self.basis_product(j, k).cloned().unwrap_or_default();
                    let right = self.mul(&self.basis(i), &jk);
                    if left != right {
                        failures.push(AlgebraFailure::Associativity(i, j, k));
                        break 'assoc;
                    }
                }
            }
        }
        'leib: for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).cloned().unwrap_or_default();
                let lhs = self.d(&ij);
                let mut rhs = self.mul(&self.diff[i], &self.basis(j));
                let t = self.mul(&self.basis(i), &self.diff[j]);
                axpy(&mut rhs, &field.sign(self.degrees[i]), &t);
                if lhs != rhs {
                    failures.push(AlgebraFailure::Leibniz(i, j));
                    break 'leib;
                }
            }
        }
        ValidationReport { failures }
    }

    /// `A^op`: same space and differential, `e_i * e_j = (-1)^{|e_i||e_j|} e_j e_i`.
    pub fn opposite(&self) -> DgAlgebra {
        let mut mult = vec![BTreeMap::new(); self.dim()];
        for (j, row) in self.mult.iter().enumerate() {
            for (&i, p) in row {
                let s = self.field.sign(self.degrees[i] * self.degrees[j]);
                mult[i].insert(j, scale_vec(p, &s));
            }
        }
        DgAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            unit: self.unit.clone(),
            mult,
            diff: self.diff.clone(),
        }
    }

    /// `A (x) B` with basis pairs in lexicographic order, index `a * dim B + b`.
    pub fn tensor(&self, other: &DgAlgebra) -> Result<DgAlgebra, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let nb = other.dim();
        let n = self.dim() * nb;
        let idx = |a: usize, b: usize| a * nb + b;
        let mut labels = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for a in 0..self.dim() {
            for b in 0..nb {
                labels.push(format!("{}|{}", self.labels[a], other.labels[b]));
                degrees.push(self.degrees[a] + other.degrees[b]);
            }
        }
        let mut unit = SparseVec::new();
        for (&a, x) in &self.unit {
            for (&b, y) in &other.unit {
                unit.insert(idx(a, b), x * y);
            }
        }
        let mut mult = vec![BTreeMap::new(); n];
        for a1 in 0..self.dim() {
            for (a2, pa) in &self.mult[a1] {
                for b1 in 0..nb {
                    for (b2, pb) in &other.mult[b1] {
                        let s = self.field.sign(other.degrees[b1] * self.degrees[*a2]);
                        let mut prod = SparseVec::new();
                        for (&ka, x) in pa {
                            for (&kb, y) in pb {
                                add_entry(&mut prod, idx(ka, kb), &(&(x * y) * &s));
                            }
                        }
                        if !prod.is_empty() {
                            mult[idx(a1, b1)].insert(idx(*a2, *b2), prod);
                        }
                    }
                }
            }
        }
        let mut diff = vec![SparseVec::new(); n];
        for a in 0..self.dim() {
            for b in 0..nb {
                let out = &mut diff[idx(a, b)];
                for (&ka, x) in &self.diff[a] {
                    add_entry(out, idx(ka, b), x);
                }
                let s = self.field.sign(self.degrees[a]);
                for (&kb, y) in &other.diff[b] {
                    add_entry(out, idx(a, kb), &(y * &s));
                }
            }
        }
        Ok(DgAlgebra {
            field: self.field,
            labels,
            degrees,
            unit,
            mult,
            diff,
        })
    }

    /// `L(x): c -> x c`.
    pub fn left_operator(&self, x: &SparseVec) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|c| self.mul(x, &self.basis(c))).collect();
        SparseMatrix::from_columns(self.field, self.dim(), &cols)
    }

    /// `R(y): c -> (-1)^{|c||y|} c y`, applied per homogeneous component of `y`.
    pub fn right_operator(&self, y: &SparseVec) -> SparseMatrix {
        let comps = self.homogeneous_components(y);
        let cols: Vec<SparseVec> = (0..self.dim())
            .map(|c| {
                let mut out = SparseVec::new();
                for (deg, comp) in &comps {
                    let prod = self.mul(&self.basis(c), comp);
                    axpy(&mut out, &self.field.sign(self.degrees[c] * deg), &prod);
                }
                out
            })
            .collect();
        SparseMatrix::from_columns(self.field, self.dim(), &cols)
    }

    /// `sum_c (-1)^{|c|} T_cc` for an operator on the underlying space.
    pub fn supertrace(&self, t: &SparseMatrix) -> FieldElement {
        let mut acc = self.field.zero();
        for c in 0..self.dim() {
            let x = t.get(c, c);
            acc += &x.signed(self.degrees[c].rem_euclid(2) == 1);
        }
        acc
    }

    pub fn trace(&self, t: &SparseMatrix) -> FieldElement {
        let mut acc = self.field.zero();
        for c in 0..self.dim() {
            acc += &t.get(c, c);
        }
        acc
    }
}

/// `End_k(X)` for a finite complex `X`, with basis the elementary maps
/// `E_{uv}: e_v -> e_u` at index `u * dim X + v`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    complex: ChainComplex,
    algebra: DgAlgebra,
}

impl EndAlgebra {
    pub fn new(x: &ChainComplex) -> Self {
        let field = x.field();
        let n = x.dim();
        let deg = |k: usize| x.space().degree(k);
        let idx = |u: usize, v: usize| u * n + v;
        let mut labels = Vec::with_capacity(n * n);
        let mut degrees = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                labels.push(format!("E{u},{v}"));
                degrees.push(deg(u) - deg(v));
            }
        }
        let unit = (0..n).map(|u| (idx(u, u), field.one())).collect();
        let mut mult = Vec::new();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    mult.push((idx(u, v), idx(v, w), idx(u, w), field.one()));
                }
            }
        }
        let d = x.differential();
        let mut diff = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let s = field.sign(deg(u) - deg(v) + 1);
                for t in 0..n {
                    let a = d.get(t, u);
                    if !a.is_zero() {
                        diff.push((idx(u, v), idx(t, v), a));
                    }
                }
                for (w, a) in d.row(v) {
                    diff.push((idx(u, v), idx(u, *w), a * &s));
                }
            }
        }
        let algebra = DgAlgebra::new(field, labels, degrees, unit, mult, diff).expect("well-formed table");
        EndAlgebra {
            complex: x.clone(),
            algebra,
        }
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn element(&self, t: &SparseMatrix) -> SparseVec {
        let n = self.complex.dim();
        t.entries().map(|(u, v, a)| (u * n + v, a.clone())).collect()
    }

    pub fn matrix(&self, x: &SparseVec) -> SparseMatrix {
        let n = self.complex.dim();
        let mut m = SparseMatrix::zero(self.complex.field(), n, n);
        for (&k, a) in x {
            m.set(k / n, k % n, a.clone());
        }
        m
    }
}

/// `End_k(X)` as a DG algebra.
pub fn endomorphism_algebra(x: &ChainComplex) -> DgAlgebra {
    EndAlgebra::new(x).algebra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_algebras_validate() {
        for a in [corpus::dual_numbers(Field::Rational), corpus::exterior(Field::Rational, 1)] {
            assert!(a.validate().is_ok(), "{:?}", a.validate());
        }
    }

    #[test]
    fn broken_associativity_reports_triple() {
        let f = Field::Rational;
        // e1 e1 = e2, e2 e1 = 0, e1 e2 = e2: (e1 e1) e1 = 0 but e1 (e1 e1) = e2
        let a = DgAlgebra::new(
            f,
            vec!["1".into(), "a".into(), "b".into()],
            vec![0, 0, 0],
            [(0, f.one())].into(),
            [
                (0, 0, 0, f.one()),
                (0, 1, 1, f.one()),
                (1, 0, 1, f.one()),
                (0, 2, 2, f.one()),
                (2, 0, 2, f.one()),
                (1, 1, 2, f.one()),
                (1, 2, 2, f.one()),
            ],
            [],
        )
        .unwrap();
        assert_eq!(a.validate().failures, vec![AlgebraFailure::Associativity(1, 1, 1)]);
    }

    #[test]
    fn opposite_is_involution() {
        let f = Field::Rational;
        for a in [corpus::truncated_poly(f), corpus::dual_numbers(f), corpus::exterior(f, 2)] {
            assert_eq!(a.opposite().opposite(), a);
            assert!(a.opposite().validate().is_ok());
        }
        let comm = corpus::truncated_poly(f);
        assert_eq!(comm.opposite(), comm);
        let eps = corpus::dual_numbers(f);
        assert_eq!(eps.opposite(), eps);
    }

    #[test]
    fn tensor_koszul_sign() {
        let f = Field::Rational;
        let e = corpus::dual_numbers(f);
        let t = e.tensor(&e).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.validate().is_ok());
        // index a * 2 + b: 1 = (0,0), 1|eps = 1, eps|1 = 2, eps|eps = 3
        assert_eq!(t.basis_product(2, 1), Some(&[(3, f.one())].into()));
        assert_eq!(t.basis_product(1, 2), Some(&[(3, f.from_i64(-1))].into()));
        let k = DgAlgebra::ground(f);
        let ka = k.tensor(&corpus::exterior(f, 2)).unwrap();
        assert_eq!(ka.dim(), 4);
        assert!(corpus::exterior(f, 1).tensor(&corpus::truncated_poly(f)).unwrap().validate().is_ok());
    }

    #[test]
    fn endomorphisms_of_two_term_complex() {
        let f = Field::Rational;
        let x = ChainComplex::zero_differential(f, GradedSpace::new(vec![0, 1]));
        let end = endomorphism_algebra(&x);
        let mut degs = end.degrees().to_vec();
        degs.sort();
        assert_eq!(degs, vec![-1, 0, 0, 1]);
        assert!(end.validate().is_ok());
        let point = ChainComplex::zero_differential(f, GradedSpace::new(vec![3]));
        assert_eq!(endomorphism_algebra(&point).dim(), 1);
    }

    #[test]
    fn operators() {
        let f = Field::Rational;
        let eps = corpus::dual_numbers(f);
        let one = eps.unit().clone();
        let id = SparseMatrix::identity(f, 2);
        assert_eq!(eps.left_operator(&one), id);
        assert_eq!(eps.right_operator(&one), id);
        let r = eps.right_operator(&eps.basis(1));
        assert_eq!(r.apply(&eps.basis(0)), eps.basis(1));
        assert!(r.apply(&eps.basis(1)).is_empty());
        assert_eq!(eps.supertrace(&id), f.zero());
    }
}
