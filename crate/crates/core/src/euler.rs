//! Supertraces, Euler classes of twisted modules, and the canonical pairing
//! `HH(A) x HH(A^op) -> k` with its Riemann-Roch check.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{DgAlgebra, EndAlgebra};
use crate::complex::{ChainComplex, Retraction};
use crate::hochschild::{b, kunneth, vee, BarWord, HochschildChain, HochschildError};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::perfect::{chi, tensor_euler_characteristic, ModuleError, MorphismMatrix, PerfectModule};
use crate::scalar::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error("input chain is not a cycle")]
    NotACycle,
    #[error("euler chain failed the cycle check")]
    EulerNotClosed,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

/// Sign exponent of one path `j = i_0 -> i_1 -> ... -> i_m = j` through the
/// matrices, for basis letters of the given degrees.
fn str_sign(shifts: &[i64], path: &[usize], degrees: &[i64]) -> i64 {
    let j = path[0];
    let m = degrees.len();
    let i1 = if m == 1 { j } else { path[1] };
    let mut e = shifts[i1] + (shifts[i1] - shifts[j]) * degrees[0];
    for k in 1..m.saturating_sub(1) {
        e += (shifts[path[k + 1]] - shifts[j]) * (degrees[k] - 1);
    }
    e
}

/// `str(A'[A''|...|A^(m)])` for matrices over the free module `sum A[r_j]`:
/// the cyclic sum over `j, i_1, ..., i_{m-1}` of
/// `(-1)^* a'_{j i_1}[a''_{i_1 i_2}|...|a^(m)_{i_{m-1} j}]`.
///
/// The sign is checked by the chain map property `b str = str b`.
pub fn str_word(alg: &DgAlgebra, shifts: &[i64], mats: &[&MorphismMatrix], coeff: &FieldElement, out: &mut HochschildChain) {
    let n = shifts.len();
    let m = mats.len();
    assert!(m > 0, "str of an empty word");
    let rows: Vec<BTreeMap<usize, Vec<(usize, &SparseVec)>>> = mats
        .iter()
        .map(|a| {
            let mut r: BTreeMap<usize, Vec<(usize, &SparseVec)>> = BTreeMap::new();
            for (i, j, x) in a.entries() {
                r.entry(i).or_default().push((j, x));
            }
            r
        })
        .collect();
    let mut path = Vec::with_capacity(m + 1);
    let mut entries: Vec<&SparseVec> = Vec::with_capacity(m);
    for j in 0..n {
        path.clear();
        path.push(j);
        walk(alg, shifts, &rows, m, &mut path, &mut entries, coeff, out);
    }
}

#[allow(clippy::too_many_arguments)]
fn walk<'a>(
    alg: &DgAlgebra,
    shifts: &[i64],
    rows: &'a [BTreeMap<usize, Vec<(usize, &'a SparseVec)>>],
    m: usize,
    path: &mut Vec<usize>,
    entries: &mut Vec<&'a SparseVec>,
    coeff: &FieldElement,
    out: &mut HochschildChain,
) {
    let k = entries.len();
    if k == m {
        if path[m] == path[0] {
            emit(alg, shifts, path, entries, coeff, out);
        }
        return;
    }
    let Some(row) = rows[k].get(&path[k]) else { return };
    for &(next, x) in row {
        if k + 1 == m && next != path[0] {
            continue;
        }
        path.push(next);
        entries.push(x);
        walk(alg, shifts, rows, m, path, entries, coeff, out);
        entries.pop();
        path.pop();
    }
}

fn emit(alg: &DgAlgebra, shifts: &[i64], path: &[usize], entries: &[&SparseVec], coeff: &FieldElement, out: &mut HochschildChain) {
    let mut basis = vec![0; entries.len()];
    let mut degrees = vec![0; entries.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        alg: &DgAlgebra,
        shifts: &[i64],
        path: &[usize],
        entries: &[&SparseVec],
        k: usize,
        c: FieldElement,
        basis: &mut Vec<usize>,
        degrees: &mut Vec<i64>,
        out: &mut HochschildChain,
    ) {
        if k == entries.len() {
            let s = alg.field().sign(str_sign(shifts, path, degrees));
            out.add_term(BarWord::new(basis[0], basis[1..].to_vec()), &(&c * &s));
            return;
        }
        for (&t, x) in entries[k] {
            basis[k] = t;
            degrees[k] = alg.degree(t);
            rec(alg, shifts, path, entries, k + 1, &c * x, basis, degrees, out);
        }
    }
    rec(alg, shifts, path, entries, 0, coeff.clone(), &mut basis, &mut degrees, out);
}

/// `End(K) (x) A` where `K` has basis vectors in degrees `-r_j`; its basis
/// vector `(i * n + j) * dim A + k` is the matrix with entry `e_k` at `(i, j)`.
pub fn matrix_algebra_over(alg: &DgAlgebra, shifts: &[i64]) -> DgAlgebra {
    let k = ChainComplex::zero_differential(
        alg.field(),
        crate::complex::GradedSpace::new(shifts.iter().map(|r| -r).collect()),
    );
    EndAlgebra::new(&k).algebra().tensor(alg).expect("same field")
}

/// `str` applied to a chain over [`matrix_algebra_over`].
pub fn str_chain(alg: &DgAlgebra, shifts: &[i64], c: &HochschildChain) -> HochschildChain {
    let n = shifts.len();
    let da = alg.dim();
    let unpack = |idx: usize| {
        let k = idx % da;
        let ij = idx / da;
        let mut m = MorphismMatrix::zero(n, n);
        m.set(ij / n, ij % n, alg.basis(k));
        m
    };
    let mut out = HochschildChain::zero(alg.field());
    for (w, coeff) in c.terms() {
        let mats: Vec<MorphismMatrix> = std::iter::once(w.a0).chain(w.letters.iter().copied()).map(unpack).collect();
        str_word(alg, shifts, &mats.iter().collect::<Vec<_>>(), coeff, &mut out);
    }
    out
}

/// `eu = sum_{l=0}^{n-1} (-1)^l str(pi[alpha|...|alpha])`, checked to be a cycle.
pub fn euler_chain(m: &PerfectModule) -> Result<HochschildChain, EulerError> {
    let module = &m.module;
    let alg = module.algebra();
    let field = alg.field();
    let pi = m.pi();
    let mut out = HochschildChain::zero(field);
    let alpha = module.alpha();
    for l in 0..module.rank() {
        if l > 0 && alpha.is_zero() {
            break;
        }
        let mut mats = vec![&pi];
        mats.extend(std::iter::repeat(alpha).take(l));
        str_word(alg, module.shifts(), &mats, &field.sign(l as i64), &mut out);
    }
    if !b(alg, &out).is_zero() {
        return Err(EulerError::EulerNotClosed);
    }
    Ok(out)
}

/// A Hochschild chain with letters given as operators on a complex `X`:
/// each term is a word `T1[T2|...|Tn]` of indices into `operators`.
#[derive(Clone, Debug)]
pub struct OperatorChain {
    field: Field,
    operators: Vec<SparseMatrix>,
    degrees: Vec<i64>,
    terms: BTreeMap<Vec<usize>, FieldElement>,
}

impl OperatorChain {
    /// Pushes a chain over `alg` along the representation `rep[k]` of basis vector `k`.
    pub fn from_representation(alg: &DgAlgebra, rep: Vec<SparseMatrix>, c: &HochschildChain) -> Self {
        let terms = c
            .terms()
            .iter()
            .map(|(w, x)| {
                let word: Vec<usize> = std::iter::once(w.a0).chain(w.letters.iter().copied()).collect();
                (word, x.clone())
            })
            .collect();
        OperatorChain {
            field: alg.field(),
            operators: rep,
            degrees: alg.degrees().to_vec(),
            terms,
        }
    }

    /// A chain over `End_k(X)` read as operators on `X`.
    pub fn from_end_chain(end: &EndAlgebra, c: &HochschildChain) -> Self {
        let alg = end.algebra();
        let rep = (0..alg.dim()).map(|k| end.matrix(&alg.basis(k))).collect();
        Self::from_representation(alg, rep, c)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<&SparseMatrix>, &FieldElement)> {
        self.terms.iter().map(|(w, c)| (w.iter().map(|&k| &self.operators[k]).collect(), c))
    }

    /// The chain as elements of `End_k(X)`.
    pub fn to_chain(&self, end: &EndAlgebra) -> HochschildChain {
        let mut out = HochschildChain::zero(self.field);
        for (word, c) in &self.terms {
            let parts: Vec<SparseVec> = word.iter().map(|&k| end.element(&self.operators[k])).collect();
            out.add_expanded(c, &parts.iter().collect::<Vec<_>>());
        }
        out
    }
}

/// `a ^ b = sum L(a0)R(b0) sh[L(a1)|...|L(al)|R(b1)|...|R(bm)]` with the
/// shuffle signs; computed as the shuffle in `A (x) A^op` pushed along
/// `x (x) y -> L(x)R(y)`.
pub fn wedge(alg: &DgAlgebra, a: &HochschildChain, bchain: &HochschildChain) -> Result<OperatorChain, EulerError> {
    let op = alg.opposite();
    if !b(alg, a).is_zero() || !b(&op, bchain).is_zero() {
        return Err(EulerError::NotACycle);
    }
    let ab = alg.tensor(&op).expect("same field");
    let prod = kunneth(alg, &op, &ab, a, bchain)?;
    let n = alg.dim();
    let lefts: Vec<SparseMatrix> = (0..n).map(|i| alg.left_operator(&alg.basis(i))).collect();
    let rights: Vec<SparseMatrix> = (0..n).map(|j| alg.right_operator(&alg.basis(j))).collect();
    let mut rep = Vec::with_capacity(n * n);
    for l in &lefts {
        for r in &rights {
            rep.push(l.mul(r));
        }
    }
    Ok(OperatorChain::from_representation(&ab, rep, &prod))
}

fn op_degree(chain: &OperatorChain, k: usize) -> i64 {
    chain.degrees[k]
}

/// The integral `phi(T1[T2|...|Tn]) = sum_j str_H(F_n(tau^j(T1[T2|...|Tn])))`
/// with `F_n = p T1 H T2 H ... H Tn i` and the signed rotation
/// `tau(T1[...|Tn]) = (-1)^{|sTn|(|sT1| + ... + |sT(n-1)|)} Tn[T1|...|T(n-1)]`.
///
/// `H` here is the negative of the retraction's homotopy: `i p = 1 - (dH + Hd)`.
pub fn fls_integral(r: &Retraction, c: &OperatorChain) -> FieldElement {
    let field = c.field;
    let mut acc = field.zero();
    if r.cohomology.dim() == 0 {
        return acc;
    }
    let h = r.h.scale(&field.from_i64(-1));
    let hdeg = r.cohomology.degrees().to_vec();
    let str_h = |m: &SparseMatrix| {
        let mut t = field.zero();
        for (k, &d) in hdeg.iter().enumerate() {
            t += &m.get(k, k).signed(d.rem_euclid(2) == 1);
        }
        t
    };
    // every rotation of a longer word passes through H
    let h_zero = h.is_zero();
    let mut p_ops: Vec<Option<SparseMatrix>> = vec![None; c.operators.len()];
    let mut h_ops: Vec<Option<SparseMatrix>> = vec![None; c.operators.len()];
    for (word, coeff) in &c.terms {
        let n = word.len();
        if h_zero && n > 1 {
            continue;
        }
        let sdeg: Vec<i64> = word.iter().map(|&k| op_degree(c, k) - 1).collect();
        let mut w: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for _ in 0..n {
            let first = word[w[0]];
            let mut m = p_ops[first].get_or_insert_with(|| r.p.mul(&c.operators[first])).clone();
            for &k in &w[1..] {
                if m.is_zero() {
                    break;
                }
                let op = word[k];
                m = m.mul(h_ops[op].get_or_insert_with(|| h.mul(&c.operators[op])));
            }
            if !m.is_zero() {
                let f = m.mul(&r.i);
                acc += &(coeff * &str_h(&f).signed(odd));
            }
            let last = w[n - 1];
            let rest: i64 = w[..n - 1].iter().map(|&k| sdeg[k]).sum();
            odd ^= (sdeg[last] * rest).rem_euclid(2) == 1;
            w.rotate_right(1);
        }
    }
    acc
}

/// Which formula [`pair`] used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairPath {
    Trace,
    Supertrace,
    Integral,
}

/// `tr_A(L(a0)R(b0))` on the length-zero components.
pub fn pair_trace(alg: &DgAlgebra, a: &HochschildChain, bchain: &HochschildChain) -> FieldElement {
    let t = alg.left_operator(&a.length_zero()).mul(&alg.right_operator(&bchain.length_zero()));
    alg.trace(&t)
}

/// `str_A(L(a0)R(b0))` on the length-zero components.
pub fn pair_supertrace(alg: &DgAlgebra, a: &HochschildChain, bchain: &HochschildChain) -> FieldElement {
    let t = alg.left_operator(&a.length_zero()).mul(&alg.right_operator(&bchain.length_zero()));
    alg.supertrace(&t)
}

/// The integral of `a ^ b` over `A` viewed as a complex.
pub fn pair_integral(alg: &DgAlgebra, a: &HochschildChain, bchain: &HochschildChain) -> Result<FieldElement, EulerError> {
    let w = wedge(alg, a, bchain)?;
    let r = alg.as_complex().build_retraction();
    Ok(fls_integral(&r, &w))
}

/// `<a, b>` for cycles `a` over `A` and `b` over `A^op`.
pub fn pair(alg: &DgAlgebra, a: &HochschildChain, bchain: &HochschildChain) -> Result<(FieldElement, PairPath), EulerError> {
    if !b(alg, a).is_zero() || !b(&alg.opposite(), bchain).is_zero() {
        return Err(EulerError::NotACycle);
    }
    if alg.is_ungraded() {
        Ok((pair_trace(alg, a, bchain), PairPath::Trace))
    } else if alg.has_zero_differential() {
        Ok((pair_supertrace(alg, a, bchain), PairPath::Supertrace))
    } else {
        Ok((pair_integral(alg, a, bchain)?, PairPath::Integral))
    }
}

/// Gram matrix `(<left_i, right_j>)`.
pub fn pairing_gram(alg: &DgAlgebra, left: &[HochschildChain], right: &[HochschildChain]) -> Result<SparseMatrix, EulerError> {
    let mut m = SparseMatrix::zero(alg.field(), left.len(), right.len());
    for (i, a) in left.iter().enumerate() {
        for (j, y) in right.iter().enumerate() {
            m.set(i, j, pair(alg, a, y)?.0);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSummary {
    pub terms: usize,
    pub max_length: usize,
}

impl ChainSummary {
    pub fn of(c: &HochschildChain) -> Self {
        ChainSummary {
            terms: c.len(),
            max_length: c.max_length(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerChainSummary {
    pub source: ChainSummary,
    pub target: ChainSummary,
    pub path: PairPath,
}

/// Both sides of `chi(M, N) = <eu(N), eu(M)^vee>`, plus `chi(N (x)_A DM)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HrrReport {
    pub chi_oracle: i64,
    #[serde(serialize_with = "crate::scalar::serialize_display")]
    pub pairing: FieldElement,
    pub rr1_tensor: i64,
    pub equal: bool,
    pub euler_chain_summary: EulerChainSummary,
}

pub fn hrr_verify(m: &PerfectModule, n: &PerfectModule) -> Result<HrrReport, EulerError> {
    let alg = m.module.algebra();
    let chi_oracle = chi(m, n)?;
    let eu_m = euler_chain(m)?;
    let eu_n = euler_chain(n)?;
    let (pairing, path) = pair(alg, &eu_n, &vee(alg, &eu_m))?;
    let rr1_tensor = tensor_euler_characteristic(n, &m.dual()?)?;
    let equal = pairing == alg.field().from_i64(chi_oracle) && rr1_tensor == chi_oracle;
    Ok(HrrReport {
        chi_oracle,
        pairing,
        rr1_tensor,
        equal,
        euler_chain_summary: EulerChainSummary {
            source: ChainSummary::of(&eu_m),
            target: ChainSummary::of(&eu_n),
            path,
        },
    })
}
