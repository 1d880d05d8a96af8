//! Twisted modules `(sum A[r_j], d_Free + alpha)` over a DG algebra, their
//! morphism complexes, cones, shifts, duals, tensor products over `A`, and
//! the Euler form computed from cohomology.
//!
//! A morphism `A[r_j] -> A[s_i]` is stored as an element `a` of `A` standing
//! for `e(s_i, r_j) (x) a`, of degree `|a| - s_i + r_j`. It acts on the
//! generator by `1_{r_j} (x) x -> (-1)^{|a| r_j} 1_{s_i} (x) a x`, so that
//!
//! * composition is `(e(t, s) (x) a')(e(s, r) (x) a) = (-1)^{|a'|(r - s)} e(t, r) (x) a' a`,
//! * `d_Free(e(s, r) (x) a) = (-1)^{s - r} e(s, r) (x) da`.
//!
//! These are exactly the product and differential of `End(K) (x) A` where `K`
//! has basis vectors in degrees `-r_j`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::DgAlgebra;
use crate::complex::{ChainComplex, GradedSpace};
use crate::linalg::{add_entry, axpy, scale_vec, SparseMatrix, SparseVec};
use crate::scalar::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("alpha entry ({0}, {1}) is not strictly above the diagonal")]
    NotStrictlyUpper(usize, usize),
    #[error("alpha entry ({i}, {j}) is not homogeneous of degree {expected}")]
    Degree { i: usize, j: usize, expected: i64 },
    #[error("Maurer-Cartan equation fails at entry ({0}, {1})")]
    MaurerCartan(usize, usize),
    #[error("alpha has shape {rows}x{cols}, expected {n}x{n}")]
    Shape { rows: usize, cols: usize, n: usize },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("morphism is not of degree {0}")]
    MorphismDegree(i64),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("not an idempotent up to homotopy")]
    NotIdempotent,
}

/// A matrix of algebra elements; entry `(i, j)` is a morphism from summand
/// `j` of the source to summand `i` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), SparseVec>,
}

impl MorphismMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MorphismMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Identity on a module of rank `n`.
    pub fn identity(alg: &DgAlgebra, n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, alg.unit().clone());
        }
        m
    }

    pub fn diagonal(entries: Vec<SparseVec>) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, x: SparseVec) {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        if x.is_empty() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &SparseVec, c: &FieldElement) {
        let e = self.entries.entry((i, j)).or_default();
        axpy(e, c, x);
        if e.is_empty() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_scaled(&self, other: &MorphismMatrix, c: &FieldElement) -> MorphismMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, j, x) in other.entries() {
            out.add_to(i, j, x, c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> MorphismMatrix {
        let mut out = Self::zero(self.rows, self.cols);
        for (i, j, x) in self.entries() {
            out.set(i, j, scale_vec(x, c));
        }
        out
    }

    /// Degree as a morphism `A[r] -> A[s]`, or `None` if zero or inhomogeneous.
    pub fn degree(&self, alg: &DgAlgebra, target: &[i64], source: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (i, j, x) in self.entries() {
            for &k in x.keys() {
                let dk = alg.degree(k) - target[i] + source[j];
                match deg {
                    None => deg = Some(dk),
                    Some(d) if d != dk => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Splits into homogeneous pieces keyed by morphism degree.
    pub fn homogeneous_components(&self, alg: &DgAlgebra, target: &[i64], source: &[i64]) -> BTreeMap<i64, MorphismMatrix> {
        let mut out: BTreeMap<i64, MorphismMatrix> = BTreeMap::new();
        for (i, j, x) in self.entries() {
            for (&k, c) in x {
                let dk = alg.degree(k) - target[i] + source[j];
                let m = out.entry(dk).or_insert_with(|| Self::zero(self.rows, self.cols));
                let e = m.entries.entry((i, j)).or_default();
                add_entry(e, k, c);
            }
        }
        out
    }

    pub fn transpose_map(&self, f: impl Fn(usize, usize, &SparseVec) -> SparseVec) -> MorphismMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for (i, j, x) in self.entries() {
            out.set(j, i, f(i, j, x));
        }
        out
    }
}

/// `g o f` where `f: A[r] -> A[s]` and `g: A[s] -> A[t]`.
pub fn compose(alg: &DgAlgebra, g: &MorphismMatrix, f: &MorphismMatrix, mid: &[i64], source: &[i64]) -> MorphismMatrix {
    assert_eq!(g.cols, f.rows, "composition shape mismatch");
    let field = alg.field();
    let mut by_row: BTreeMap<usize, Vec<(usize, &SparseVec)>> = BTreeMap::new();
    for (i, j, x) in f.entries() {
        by_row.entry(i).or_default().push((j, x));
    }
    let mut out = MorphismMatrix::zero(g.rows, f.cols);
    for (k, i, a) in g.entries() {
        let Some(row) = by_row.get(&i) else { continue };
        for &(j, b) in row {
            let mut prod = SparseVec::new();
            for (&c, x) in a {
                let s = field.sign(alg.degree(c) * (source[j] - mid[i]));
                let t = alg.mul(&alg.basis(c), b);
                axpy(&mut prod, &(x * &s), &t);
            }
            if !prod.is_empty() {
                out.add_to(k, j, &prod, &field.one());
            }
        }
    }
    out
}

/// `d_Free` on a morphism `A[r] -> A[s]`.
pub fn d_free(alg: &DgAlgebra, f: &MorphismMatrix, target: &[i64], source: &[i64]) -> MorphismMatrix {
    let mut out = MorphismMatrix::zero(f.rows, f.cols);
    for (i, j, x) in f.entries() {
        out.set(i, j, scale_vec(&alg.d(x), &alg.field().sign(target[i] - source[j])));
    }
    out
}

/// A twisted module over `algebra`: shifts `r_j` and a strictly upper
/// triangular Maurer-Cartan matrix `alpha` with entries of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedModule {
    algebra: Arc<DgAlgebra>,
    shifts: Vec<i64>,
    alpha: MorphismMatrix,
}

impl TwistedModule {
    pub fn new(algebra: Arc<DgAlgebra>, shifts: Vec<i64>, alpha: MorphismMatrix) -> Result<Self, ModuleError> {
        let m = TwistedModule { algebra, shifts, alpha };
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(algebra: Arc<DgAlgebra>, shifts: Vec<i64>, alpha: MorphismMatrix) -> Self {
        TwistedModule { algebra, shifts, alpha }
    }

    /// `sum A[r_j]` with `alpha = 0`.
    pub fn free(algebra: Arc<DgAlgebra>, shifts: Vec<i64>) -> Self {
        let n = shifts.len();
        TwistedModule {
            algebra,
            shifts,
            alpha: MorphismMatrix::zero(n, n),
        }
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn alpha(&self) -> &MorphismMatrix {
        &self.alpha
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Strict upper triangularity, entry degrees, then Maurer-Cartan.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let n = self.rank();
        let alg = &self.algebra;
        if self.alpha.rows != n || self.alpha.cols != n {
            return Err(ModuleError::Shape {
                rows: self.alpha.rows,
                cols: self.alpha.cols,
                n,
            });
        }
        for (i, j, x) in self.alpha.entries() {
            if i >= j {
                return Err(ModuleError::NotStrictlyUpper(i, j));
            }
            let expected = 1 + self.shifts[i] - self.shifts[j];
            if x.keys().any(|&k| alg.degree(k) != expected) {
                return Err(ModuleError::Degree { i, j, expected });
            }
        }
        let mc = d_free(alg, &self.alpha, &self.shifts, &self.shifts).add_scaled(
            &compose(alg, &self.alpha, &self.alpha, &self.shifts, &self.shifts),
            &alg.field().one(),
        );
        if let Some((i, j, _)) = mc.entries().next() {
            return Err(ModuleError::MaurerCartan(i, j));
        }
        Ok(())
    }

    /// `M[k]`: shifts raised by `k`, `alpha_ij` multiplied by `(-1)^{k(r_i + r_j)}`.
    pub fn shift(&self, k: i64) -> TwistedModule {
        let field = self.field();
        let mut alpha = MorphismMatrix::zero(self.rank(), self.rank());
        for (i, j, x) in self.alpha.entries() {
            alpha.set(i, j, scale_vec(x, &field.sign(k * (self.shifts[i] + self.shifts[j]))));
        }
        TwistedModule {
            algebra: self.algebra.clone(),
            shifts: self.shifts.iter().map(|r| r + k).collect(),
            alpha,
        }
    }

    /// The matching conjugation of an endomorphism under [`TwistedModule::shift`].
    pub fn shift_endomorphism(&self, f: &MorphismMatrix, k: i64) -> MorphismMatrix {
        let field = self.field();
        let mut out = MorphismMatrix::zero(f.rows, f.cols);
        for (i, j, x) in f.entries() {
            out.set(i, j, scale_vec(x, &field.sign(k * (self.shifts[i] + self.shifts[j]))));
        }
        out
    }

    /// `M (+) N` with block-diagonal `alpha`.
    pub fn direct_sum(&self, other: &TwistedModule) -> Result<TwistedModule, ModuleError> {
        same_algebra(self, other)?;
        let n = self.rank();
        let total = n + other.rank();
        let mut alpha = MorphismMatrix::zero(total, total);
        for (i, j, x) in self.alpha.entries() {
            alpha.set(i, j, x.clone());
        }
        for (i, j, x) in other.alpha.entries() {
            alpha.set(n + i, n + j, x.clone());
        }
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        Ok(TwistedModule {
            algebra: self.algebra.clone(),
            shifts,
            alpha,
        })
    }

    /// `d_Tw(f) = d_Free(f) + beta f - (-1)^{|f|} f alpha` for `f: self -> target`.
    pub fn d_tw(&self, target: &TwistedModule, f: &MorphismMatrix) -> MorphismMatrix {
        let alg = &self.algebra;
        let field = alg.field();
        let mut out = MorphismMatrix::zero(f.rows, f.cols);
        for (deg, comp) in f.homogeneous_components(alg, &target.shifts, &self.shifts) {
            let t = d_free(alg, &comp, &target.shifts, &self.shifts)
                .add_scaled(&compose(alg, &target.alpha, &comp, &target.shifts, &self.shifts), &field.one())
                .add_scaled(&compose(alg, &comp, &self.alpha, &self.shifts, &self.shifts), &-field.sign(deg));
            out = out.add_scaled(&t, &field.one());
        }
        out
    }

    /// `Cone(f) = N (+) M[1]` for a closed degree-0 `f: self -> target`, with
    /// `alpha = [[beta, f~], [0, alpha[1]]]` and `f~_ij = (-1)^{|f_ij|} f_ij`.
    pub fn cone(&self, target: &TwistedModule, f: &MorphismMatrix) -> Result<TwistedModule, ModuleError> {
        same_algebra(self, target)?;
        let alg = &self.algebra;
        if !f.is_zero() && f.degree(alg, &target.shifts, &self.shifts) != Some(0) {
            return Err(ModuleError::MorphismDegree(0));
        }
        if !self.d_tw(target, f).is_zero() {
            return Err(ModuleError::NotClosed);
        }
        let shifted = self.shift(1);
        let n = target.rank();
        let total = n + self.rank();
        let mut alpha = MorphismMatrix::zero(total, total);
        for (i, j, x) in target.alpha.entries() {
            alpha.set(i, j, x.clone());
        }
        for (i, j, x) in shifted.alpha.entries() {
            alpha.set(n + i, n + j, x.clone());
        }
        for (i, j, x) in f.entries() {
            let signed: SparseVec = x
                .iter()
                .map(|(&k, c)| (k, c.clone().signed(alg.degree(k).rem_euclid(2) == 1)))
                .collect();
            alpha.set(i, n + j, signed);
        }
        let mut shifts = target.shifts.clone();
        shifts.extend_from_slice(&shifted.shifts);
        let cone = TwistedModule {
            algebra: self.algebra.clone(),
            shifts,
            alpha,
        };
        cone.validate()?;
        Ok(cone)
    }

    /// The dual `Hom(M, A)` as a twisted module over `A^op`. Summands are
    /// listed in reverse order with shifts `-r`, and
    /// `(D alpha)_{ij} = -(-1)^{r_j + r_i r_j} e(r_i) e(r_j) alpha_ji` before
    /// reversal, where `e(r) = (-1)^{r(r+1)/2}`.
    pub fn dual(&self) -> TwistedModule {
        let field = self.field();
        let n = self.rank();
        let r = &self.shifts;
        let rev = |i: usize| n - 1 - i;
        let mut alpha = MorphismMatrix::zero(n, n);
        for (j, i, x) in self.alpha.entries() {
            let s = -(field.sign(r[j] + r[i] * r[j]) * field.sign(koszul_eps(r[i]) + koszul_eps(r[j])));
            alpha.set(rev(i), rev(j), scale_vec(x, &s));
        }
        TwistedModule {
            algebra: Arc::new(self.algebra.opposite()),
            shifts: (0..n).map(|p| -r[rev(p)]).collect(),
            alpha,
        }
    }

    /// The endomorphism of the dual induced by an endomorphism of degree 0.
    pub fn dual_endomorphism(&self, pi: &MorphismMatrix) -> MorphismMatrix {
        let field = self.field();
        let alg = &self.algebra;
        let n = self.rank();
        let r = &self.shifts;
        let rev = |i: usize| n - 1 - i;
        let mut out = MorphismMatrix::zero(n, n);
        for (j, i, x) in pi.entries() {
            let eps = field.sign(koszul_eps(r[i]) + koszul_eps(r[j]));
            let v: SparseVec = x
                .iter()
                .map(|(&k, c)| (k, &(c * &eps) * &field.sign(alg.degree(k) * r[j])))
                .collect();
            out.set(rev(i), rev(j), v);
        }
        out
    }
}

fn koszul_eps(r: i64) -> i64 {
    r * (r + 1) / 2
}

fn same_algebra(m: &TwistedModule, n: &TwistedModule) -> Result<(), ModuleError> {
    if Arc::ptr_eq(&m.algebra, &n.algebra) || m.algebra == n.algebra {
        Ok(())
    } else {
        Err(ModuleError::AlgebraMismatch)
    }
}

/// `Hom(M, N)` with the twisted differential, as a complex whose basis is
/// `(i, j, k)` for `e(s_i, r_j) (x) e_k`, indexed by `(i * rank M + j) * dim A + k`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: TwistedModule,
    pub target: TwistedModule,
    pub complex: ChainComplex,
}

impl HomComplex {
    pub fn new(source: &TwistedModule, target: &TwistedModule) -> Result<Self, ModuleError> {
        same_algebra(source, target)?;
        let alg = source.algebra.clone();
        let (m, n, da) = (source.rank(), target.rank(), alg.dim());
        let mut degrees = Vec::with_capacity(n * m * da);
        for i in 0..n {
            for j in 0..m {
                for k in 0..da {
                    degrees.push(alg.degree(k) - target.shifts[i] + source.shifts[j]);
                }
            }
        }
        let dim = degrees.len();
        let mut columns = Vec::with_capacity(dim);
        let mut hc = HomComplex {
            source: source.clone(),
            target: target.clone(),
            complex: ChainComplex::zero_differential(alg.field(), GradedSpace::new(vec![])),
        };
        for idx in 0..dim {
            let mut f = MorphismMatrix::zero(n, m);
            let k = idx % da;
            let ij = idx / da;
            f.set(ij / m, ij % m, alg.basis(k));
            columns.push(hc.flatten(&source.d_tw(target, &f)));
        }
        let d = SparseMatrix::from_columns(alg.field(), dim, &columns);
        hc.complex = ChainComplex::new_unchecked(GradedSpace::new(degrees), d);
        Ok(hc)
    }

    pub fn flatten(&self, f: &MorphismMatrix) -> SparseVec {
        let m = self.source.rank();
        let da = self.source.algebra.dim();
        let mut out = SparseVec::new();
        for (i, j, x) in f.entries() {
            for (&k, c) in x {
                out.insert((i * m + j) * da + k, c.clone());
            }
        }
        out
    }

    pub fn unflatten(&self, v: &SparseVec) -> MorphismMatrix {
        let m = self.source.rank();
        let da = self.source.algebra.dim();
        let mut f = MorphismMatrix::zero(self.target.rank(), m);
        for (&idx, c) in v {
            let k = idx % da;
            let ij = idx / da;
            f.add_to(ij / m, ij % m, &[(k, c.clone())].into(), &c.field().one());
        }
        f
    }

    /// The operator `f -> post o f o pre` on the complex.
    pub fn conjugation_operator(&self, post: &MorphismMatrix, pre: &MorphismMatrix) -> SparseMatrix {
        let alg = &self.source.algebra;
        let dim = self.complex.dim();
        let columns: Vec<SparseVec> = (0..dim)
            .map(|idx| {
                let f = self.unflatten(&[(idx, alg.field().one())].into());
                let g = compose(alg, &f, pre, &self.source.shifts, &self.source.shifts);
                let h = compose(alg, post, &g, &self.target.shifts, &self.source.shifts);
                self.flatten(&h)
            })
            .collect();
        SparseMatrix::from_columns(alg.field(), dim, &columns)
    }
}

/// A twisted module with a homotopy idempotent `pi` and a witness `h` of
/// degree -1 with `pi^2 - pi = d_Tw(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyIdempotent {
    pub pi: MorphismMatrix,
    pub h: MorphismMatrix,
}

/// Checks `d_Tw(pi) = 0` and solves `pi^2 - pi = d_Tw(h)`.
pub fn is_homotopy_idempotent(n: &TwistedModule, pi: &MorphismMatrix) -> Option<HomotopyIdempotent> {
    let alg = &n.algebra;
    if !pi.is_zero() && pi.degree(alg, &n.shifts, &n.shifts) != Some(0) {
        return None;
    }
    if !n.d_tw(n, pi).is_zero() {
        return None;
    }
    let field = alg.field();
    let sq = compose(alg, pi, pi, &n.shifts, &n.shifts).add_scaled(pi, &field.from_i64(-1));
    if sq.is_zero() {
        return Some(HomotopyIdempotent {
            pi: pi.clone(),
            h: MorphismMatrix::zero(n.rank(), n.rank()),
        });
    }
    let hom = HomComplex::new(n, n).ok()?;
    let cols = hom.complex.space().indices_in(-1);
    let rows: Vec<usize> = (0..hom.complex.dim()).collect();
    let d = hom.complex.differential().submatrix(&rows, &cols);
    let x = d.solve_sparse(&hom.flatten(&sq))?;
    let h: SparseVec = x.into_iter().map(|(k, c)| (cols[k], c)).collect();
    Some(HomotopyIdempotent {
        pi: pi.clone(),
        h: hom.unflatten(&h),
    })
}

/// A twisted module together with an optional verified homotopy idempotent;
/// without one the module is the whole twisted module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectModule {
    pub module: TwistedModule,
    pub idempotent: Option<HomotopyIdempotent>,
}

impl PerfectModule {
    pub fn whole(module: TwistedModule) -> Self {
        PerfectModule { module, idempotent: None }
    }

    pub fn summand(module: TwistedModule, pi: &MorphismMatrix) -> Result<Self, ModuleError> {
        let idempotent = is_homotopy_idempotent(&module, pi).ok_or(ModuleError::NotIdempotent)?;
        Ok(PerfectModule {
            module,
            idempotent: Some(idempotent),
        })
    }

    pub fn pi(&self) -> MorphismMatrix {
        match &self.idempotent {
            Some(e) => e.pi.clone(),
            None => MorphismMatrix::identity(&self.module.algebra, self.module.rank()),
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        let module = self.module.shift(k);
        let idempotent = self.idempotent.as_ref().map(|e| HomotopyIdempotent {
            pi: self.module.shift_endomorphism(&e.pi, k),
            h: self.module.shift_endomorphism(&e.h, k),
        });
        PerfectModule { module, idempotent }
    }

    /// The dual over `A^op`; the induced idempotent is re-verified.
    pub fn dual(&self) -> Result<Self, ModuleError> {
        let module = self.module.dual();
        match &self.idempotent {
            None => Ok(PerfectModule::whole(module)),
            Some(e) => {
                let pi = self.module.dual_endomorphism(&e.pi);
                PerfectModule::summand(module, &pi)
            }
        }
    }

    pub fn direct_sum(&self, other: &PerfectModule) -> Result<Self, ModuleError> {
        let module = self.module.direct_sum(&other.module)?;
        if self.idempotent.is_none() && other.idempotent.is_none() {
            return Ok(PerfectModule::whole(module));
        }
        let n = self.module.rank();
        let mut pi = MorphismMatrix::zero(module.rank(), module.rank());
        for (i, j, x) in self.pi().entries() {
            pi.set(i, j, x.clone());
        }
        for (i, j, x) in other.pi().entries() {
            pi.set(n + i, n + j, x.clone());
        }
        PerfectModule::summand(module, &pi)
    }

    /// Cone of a closed degree-0 morphism `f: self -> target` with
    /// `f = pi_N f pi_M`; the idempotent is `diag(pi_N, pi_M[1])`.
    pub fn cone(&self, target: &PerfectModule, f: &MorphismMatrix) -> Result<Self, ModuleError> {
        let module = self.module.cone(&target.module, f)?;
        if self.idempotent.is_none() && target.idempotent.is_none() {
            return Ok(PerfectModule::whole(module));
        }
        let n = target.module.rank();
        let mut pi = MorphismMatrix::zero(module.rank(), module.rank());
        for (i, j, x) in target.pi().entries() {
            pi.set(i, j, x.clone());
        }
        for (i, j, x) in self.module.shift_endomorphism(&self.pi(), 1).entries() {
            pi.set(n + i, n + j, x.clone());
        }
        PerfectModule::summand(module, &pi)
    }
}

/// Sum over degrees of `(-1)^n rank` of the map induced on cohomology by a
/// degree-0 chain map `op` of `x`, together with the ranks per degree.
pub fn induced_ranks(x: &ChainComplex, op: Option<&SparseMatrix>) -> BTreeMap<i64, usize> {
    match op {
        None => x.cohomology().dims(),
        Some(op) => {
            let r = x.build_retraction();
            let induced = r.p.mul(op).mul(&r.i);
            let mut out = BTreeMap::new();
            for (&n, _) in &r.cohomology.dims() {
                let idx = r.cohomology.indices_in(n);
                let rank = induced.submatrix(&idx, &idx).rank();
                if rank > 0 {
                    out.insert(n, rank);
                }
            }
            out
        }
    }
}

fn alternating(dims: &BTreeMap<i64, usize>) -> i64 {
    dims.iter()
        .map(|(&n, &k)| if n.rem_euclid(2) == 0 { k as i64 } else { -(k as i64) })
        .sum()
}

/// `dim Hom(M, N[n])` in the homotopy category, per degree `n`.
pub fn ext_dims(m: &PerfectModule, n: &PerfectModule) -> Result<BTreeMap<i64, usize>, ModuleError> {
    let hom = HomComplex::new(&m.module, &n.module)?;
    if m.idempotent.is_none() && n.idempotent.is_none() {
        return Ok(induced_ranks(&hom.complex, None));
    }
    let op = hom.conjugation_operator(&n.pi(), &m.pi());
    Ok(induced_ranks(&hom.complex, Some(&op)))
}

/// The Euler form `chi(M, N) = sum (-1)^n dim Hom(M, N[n])`.
pub fn chi(m: &PerfectModule, n: &PerfectModule) -> Result<i64, ModuleError> {
    Ok(alternating(&ext_dims(m, n)?))
}

/// `N (x)_A M` for `N` over `A` and `M` over `A^op`, with basis `(j, i, k)`
/// for `(1_{r_j} (x) 1) (x) (1_{s_i} (x) e_k)` in degree `|e_k| - r_j - s_i`,
/// indexed by `(j * rank M + i) * dim A + k`.
pub struct TensorComplex {
    pub complex: ChainComplex,
    m_rank: usize,
    dim_a: usize,
}

impl TensorComplex {
    pub fn new(n: &TwistedModule, m: &TwistedModule) -> Result<Self, ModuleError> {
        let alg = &n.algebra;
        if *m.algebra != alg.opposite() {
            return Err(ModuleError::AlgebraMismatch);
        }
        let (nr, mr, da) = (n.rank(), m.rank(), alg.dim());
        let mut degrees = Vec::with_capacity(nr * mr * da);
        for j in 0..nr {
            for i in 0..mr {
                for k in 0..da {
                    degrees.push(alg.degree(k) - n.shifts[j] - m.shifts[i]);
                }
            }
        }
        let tc = TensorComplex {
            complex: ChainComplex::zero_differential(alg.field(), GradedSpace::new(vec![])),
            m_rank: mr,
            dim_a: da,
        };
        let field = alg.field();
        let dim = degrees.len();
        let mut columns = Vec::with_capacity(dim);
        for idx in 0..dim {
            let (j, i, k) = tc.split(idx);
            let mut out = SparseVec::new();
            let s = field.sign(n.shifts[j] + m.shifts[i]);
            for (&t, c) in alg.d_basis(k) {
                add_entry(&mut out, tc.index(j, i, t), &(c * &s));
            }
            tc.left_action(alg, n, m, &n.alpha, j, i, k, &field.one(), &mut out);
            tc.right_action(alg, n, m, &m.alpha, 1, j, i, k, &field.one(), &mut out);
            columns.push(out);
        }
        let d = SparseMatrix::from_columns(field, dim, &columns);
        Ok(TensorComplex {
            complex: ChainComplex::new_unchecked(GradedSpace::new(degrees), d),
            ..tc
        })
    }

    fn index(&self, j: usize, i: usize, k: usize) -> usize {
        (j * self.m_rank + i) * self.dim_a + k
    }

    fn split(&self, idx: usize) -> (usize, usize, usize) {
        let k = idx % self.dim_a;
        let ji = idx / self.dim_a;
        (ji / self.m_rank, ji % self.m_rank, k)
    }

    /// A morphism `e(r_l, r_j) (x) a` of `N` acts on `(j, i, y)` by
    /// `(-1)^{|a|(r_j + s_i)} (l, i, a y)`.
    #[allow(clippy::too_many_arguments)]
    fn left_action(
        &self,
        alg: &DgAlgebra,
        n: &TwistedModule,
        m: &TwistedModule,
        g: &MorphismMatrix,
        j: usize,
        i: usize,
        k: usize,
        c: &FieldElement,
        out: &mut SparseVec,
    ) {
        let field = alg.field();
        for (l, jj, a) in g.entries() {
            if jj != j {
                continue;
            }
            for (&t, x) in a {
                let s = field.sign(alg.degree(t) * (n.shifts[j] + m.shifts[i]));
                if let Some(p) = alg.basis_product(t, k) {
                    for (&u, y) in p {
                        add_entry(out, self.index(l, i, u), &(&(&(c * x) * &s) * y));
                    }
                }
            }
        }
    }

    /// A morphism `g = e(s_t, s_i) (x) b` of `M` of degree `|g|` acts on
    /// `(j, i, y)` by `(-1)^{|g| r_j + |b| s_i + |b||y|} (j, t, y b)`.
    #[allow(clippy::too_many_arguments)]
    fn right_action(
        &self,
        alg: &DgAlgebra,
        n: &TwistedModule,
        m: &TwistedModule,
        g: &MorphismMatrix,
        g_degree: i64,
        j: usize,
        i: usize,
        k: usize,
        c: &FieldElement,
        out: &mut SparseVec,
    ) {
        let field = alg.field();
        for (t, ii, bb) in g.entries() {
            if ii != i {
                continue;
            }
            for (&w, x) in bb {
                let db = alg.degree(w);
                let s = field.sign(g_degree * n.shifts[j] + db * m.shifts[i] + db * alg.degree(k));
                if let Some(p) = alg.basis_product(k, w) {
                    for (&u, y) in p {
                        add_entry(out, self.index(j, t, u), &(&(&(c * x) * &s) * y));
                    }
                }
            }
        }
    }

    /// The operator `pi_N (x) pi_M` for degree-0 endomorphisms.
    pub fn idempotent_operator(&self, n: &TwistedModule, m: &TwistedModule, pi_n: &MorphismMatrix, pi_m: &MorphismMatrix) -> SparseMatrix {
        let alg = &n.algebra;
        let field = alg.field();
        let dim = self.complex.dim();
        let mut left_cols = Vec::with_capacity(dim);
        let mut right_cols = Vec::with_capacity(dim);
        for idx in 0..dim {
            let (j, i, k) = self.split(idx);
            let mut l = SparseVec::new();
            self.left_action(alg, n, m, pi_n, j, i, k, &field.one(), &mut l);
            left_cols.push(l);
            let mut r = SparseVec::new();
            self.right_action(alg, n, m, pi_m, 0, j, i, k, &field.one(), &mut r);
            right_cols.push(r);
        }
        let left = SparseMatrix::from_columns(field, dim, &left_cols);
        let right = SparseMatrix::from_columns(field, dim, &right_cols);
        left.mul(&right)
    }
}

/// `sum (-1)^n dim H^n(N (x)_A M)` for perfect `N` over `A` and `M` over `A^op`.
pub fn tensor_euler_characteristic(n: &PerfectModule, m: &PerfectModule) -> Result<i64, ModuleError> {
    let tc = TensorComplex::new(&n.module, &m.module)?;
    if n.idempotent.is_none() && m.idempotent.is_none() {
        return Ok(tc.complex.euler_characteristic());
    }
    let op = tc.idempotent_operator(&n.module, &m.module, &n.pi(), &m.pi());
    Ok(alternating(&induced_ranks(&tc.complex, Some(&op))))
}

/// `N (x)_A M` as a complex.
pub fn tensor_over_a(n: &TwistedModule, m: &TwistedModule) -> Result<ChainComplex, ModuleError> {
    Ok(TensorComplex::new(n, m)?.complex)
}
