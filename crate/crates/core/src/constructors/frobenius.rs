//! Frobenius algebras `(A, tau)`: the copairing `gamma`, the cubic tensor
//! `Phi`, and the two-input pairing `sum_i tau(a gamma'_i b gamma''_i)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::DgAlgebra;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::random::{self, TestRng};
use crate::scalar::FieldElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("trace has length {found}, expected {expected}")]
    Length { found: usize, expected: usize },
    #[error("trace does not vanish on d(e{0})")]
    Closed(usize),
    #[error("trace does not vanish on the commutator [e{0}, e{1}]")]
    Commutator(usize, usize),
    #[error("trace is nonzero on e{0}, which is not of degree {1}")]
    Degree(usize, i64),
    #[error("the trace form is degenerate")]
    Degenerate,
}

/// `tau` as values on the basis; nonzero only in degree `cy_dimension`.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    algebra: Arc<DgAlgebra>,
    trace: Vec<FieldElement>,
    cy_dimension: i64,
    gram_inverse: SparseMatrix,
}

/// Tensors as coefficients on tuples of basis indices.
pub type Tensor2 = BTreeMap<(usize, usize), FieldElement>;
pub type Tensor3 = BTreeMap<(usize, usize, usize), FieldElement>;

impl FrobeniusData {
    pub fn new(algebra: Arc<DgAlgebra>, trace: Vec<FieldElement>, cy_dimension: i64) -> Result<Self, FrobeniusError> {
        let n = algebra.dim();
        if trace.len() != n {
            return Err(FrobeniusError::Length {
                found: trace.len(),
                expected: n,
            });
        }
        let tau = |x: &SparseVec| -> FieldElement {
            let mut acc = algebra.field().zero();
            for (&k, c) in x {
                acc += &(c * &trace[k]);
            }
            acc
        };
        for (k, t) in trace.iter().enumerate() {
            if !t.is_zero() && algebra.degree(k) != cy_dimension {
                return Err(FrobeniusError::Degree(k, cy_dimension));
            }
        }
        for i in 0..n {
            if !tau(algebra.d_basis(i)).is_zero() {
                return Err(FrobeniusError::Closed(i));
            }
        }
        let mut gram = SparseMatrix::zero(algebra.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                let ij = algebra.mul(&algebra.basis(i), &algebra.basis(j));
                let ji = algebra.mul(&algebra.basis(j), &algebra.basis(i));
                let s = algebra.field().sign(algebra.degree(i) * algebra.degree(j));
                if tau(&ij) != &tau(&ji) * &s {
                    return Err(FrobeniusError::Commutator(i, j));
                }
                gram.set(i, j, tau(&ij));
            }
        }
        let gram_inverse = gram.invert().map_err(|_| FrobeniusError::Degenerate)?;
        Ok(FrobeniusData {
            algebra,
            trace,
            cy_dimension,
            gram_inverse,
        })
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn cy_dimension(&self) -> i64 {
        self.cy_dimension
    }

    /// Graded data are only partially covered by the theory; results on them
    /// are reported as experimental.
    pub fn is_graded(&self) -> bool {
        !self.algebra.is_ungraded()
    }

    pub fn tau(&self, x: &SparseVec) -> FieldElement {
        let mut acc = self.algebra.field().zero();
        for (&k, c) in x {
            acc += &(c * &self.trace[k]);
        }
        acc
    }

    /// `gamma = sum (G^{-1})_ij e_i (x) e_j` with `G_ij = tau(e_i e_j)`, so that
    /// `a = sum gamma' tau(gamma'' a)`.
    pub fn gamma(&self) -> Tensor2 {
        self.gram_inverse.entries().map(|(i, j, c)| ((i, j), c.clone())).collect()
    }

    /// `Phi = sum gamma'_i (x) gamma'_j gamma''_i (x) gamma''_j`.
    pub fn phi(&self) -> Tensor3 {
        let alg = &self.algebra;
        let gamma = self.gamma();
        let mut out = Tensor3::new();
        for (&(i1, i2), c) in &gamma {
            for (&(j1, j2), e) in &gamma {
                if let Some(p) = alg.basis_product(j1, i2) {
                    for (&k, x) in p {
                        let v = out.entry((i1, k, j2)).or_insert_with(|| alg.field().zero());
                        *v += &(&(c * e) * x);
                        if v.is_zero() {
                            out.remove(&(i1, k, j2));
                        }
                    }
                }
            }
        }
        out
    }

    /// `a = sum gamma' tau(gamma'' a)` on every basis vector.
    pub fn gamma_is_copairing(&self) -> bool {
        let alg = &self.algebra;
        let gamma = self.gamma();
        (0..alg.dim()).all(|a| {
            let mut acc = SparseVec::new();
            for (&(i, j), c) in &gamma {
                let t = self.tau(&alg.mul(&alg.basis(j), &alg.basis(a)));
                crate::linalg::add_entry(&mut acc, i, &(c * &t));
            }
            acc == alg.basis(a)
        })
    }

    pub fn gamma_is_symmetric(&self) -> bool {
        let g = self.gamma();
        g.iter().all(|(&(i, j), c)| g.get(&(j, i)) == Some(c))
    }

    /// `tau(abc) = sum tau(a phi') tau(b phi'') tau(c phi''')` on basis triples.
    pub fn phi_represents_triple_product(&self) -> bool {
        let alg = &self.algebra;
        let phi = self.phi();
        let n = alg.dim();
        let t2 = |a: usize, b: usize| self.tau(&alg.mul(&alg.basis(a), &alg.basis(b)));
        for a in 0..n {
            for b in 0..n {
                let ab = alg.mul(&alg.basis(a), &alg.basis(b));
                for c in 0..n {
                    let lhs = self.tau(&alg.mul(&ab, &alg.basis(c)));
                    let mut rhs = alg.field().zero();
                    for (&(x, y, z), k) in &phi {
                        rhs += &(&(&(k * &t2(a, x)) * &t2(b, y)) * &t2(c, z));
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn phi_is_cyclic(&self) -> bool {
        let phi = self.phi();
        phi.iter().all(|(&(x, y, z), c)| phi.get(&(y, z, x)) == Some(c))
    }

    /// `<a, b>_tau = sum_i tau(a gamma'_i b gamma''_i)`.
    pub fn tft_pair(&self, a: &SparseVec, b: &SparseVec) -> FieldElement {
        let alg = &self.algebra;
        let mut acc = alg.field().zero();
        for ((i, j), c) in self.gamma() {
            let x = alg.mul(&alg.mul(&alg.mul(a, &alg.basis(i)), b), &alg.basis(j));
            acc += &(&c * &self.tau(&x));
        }
        acc
    }

    /// `tr(L(a)R(b))`, or the supertrace for graded data.
    pub fn operator_pair(&self, a: &SparseVec, b: &SparseVec) -> FieldElement {
        let alg = &self.algebra;
        let t = alg.left_operator(a).mul(&alg.right_operator(b));
        if self.is_graded() {
            alg.supertrace(&t)
        } else {
            alg.trace(&t)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub trials: usize,
    pub agreed: usize,
    pub gamma_copairing: bool,
    pub gamma_symmetric: bool,
    pub phi_identity: bool,
    pub phi_cyclic: bool,
    pub experimental: bool,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.agreed == self.trials && self.gamma_copairing && self.gamma_symmetric && self.phi_identity && self.phi_cyclic
    }
}

/// Compares `tft_pair` with the operator trace on random pairs and checks the
/// defining identities of `gamma` and `Phi`.
pub fn frobenius_check(f: &FrobeniusData, trials: usize, rng: &mut TestRng) -> FrobeniusReport {
    let alg = f.algebra();
    let mut agreed = 0;
    for _ in 0..trials {
        let a = random::element(rng, alg);
        let b = random::element(rng, alg);
        if f.tft_pair(&a, &b) == f.operator_pair(&a, &b) {
            agreed += 1;
        }
    }
    FrobeniusReport {
        trials,
        agreed,
        gamma_copairing: f.gamma_is_copairing(),
        gamma_symmetric: f.gamma_is_symmetric(),
        phi_identity: f.phi_represents_triple_product(),
        phi_cyclic: f.phi_is_cyclic(),
        experimental: f.is_graded(),
    }
}
