//! Hochschild chains `a0[a1|...|an]` of a DG algebra, the differential
//! `b = b0 + b1`, shuffle products, the Kunneth map, the duality map to the
//! opposite algebra, and exact homology computations.
//!
//! Letters are suspended: `|s a| = |a| - 1`, and the total degree of a word is
//! `|a0| + sum |s ai|`. The differential has degree +1.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::DgAlgebra;
use crate::linalg::{axpy, RowReduced, SparseMatrix, SparseVec};
use crate::scalar::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("element is not of degree 0")]
    NotDegreeZero,
    #[error("bar cap must be at least 1")]
    BarCap,
    #[error("field mismatch: {0} and {1}")]
    FieldMismatch(Field, Field),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarWord {
    pub a0: usize,
    pub letters: Vec<usize>,
}

impl BarWord {
    pub fn new(a0: usize, letters: Vec<usize>) -> Self {
        BarWord { a0, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self, alg: &DgAlgebra) -> i64 {
        alg.degree(self.a0) + self.letters.iter().map(|&a| alg.degree(a) - 1).sum::<i64>()
    }

    /// Partial sums `eta_i = |a0| + |s a1| + ... + |s ai|` for `i = 0..=n`.
    pub fn etas(&self, alg: &DgAlgebra) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = alg.degree(self.a0);
        out.push(acc);
        for &a in &self.letters {
            acc += alg.degree(a) - 1;
            out.push(acc);
        }
        out
    }
}

impl Ord for BarWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then(self.a0.cmp(&other.a0))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for BarWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of bar words, with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildChain {
    field: Field,
    terms: BTreeMap<BarWord, FieldElement>,
}

impl HochschildChain {
    pub fn zero(field: Field) -> Self {
        HochschildChain {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(field: Field, a0: usize, letters: Vec<usize>) -> Self {
        let mut c = Self::zero(field);
        c.add_term(BarWord::new(a0, letters), &field.one());
        c
    }

    /// The length-0 chain of an algebra element.
    pub fn from_element(field: Field, x: &SparseVec) -> Self {
        let mut c = Self::zero(field);
        for (&k, a) in x {
            c.add_term(BarWord::new(k, vec![]), a);
        }
        c
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<BarWord, FieldElement> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<BarWord, FieldElement> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: BarWord, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &HochschildChain, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &HochschildChain) -> HochschildChain {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one());
        out
    }

    pub fn sub(&self, other: &HochschildChain) -> HochschildChain {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.from_i64(-1));
        out
    }

    pub fn scale(&self, c: &FieldElement) -> HochschildChain {
        let mut out = Self::zero(self.field);
        out.add_scaled(self, c);
        out
    }

    /// The algebra element formed by the length-0 words.
    pub fn length_zero(&self) -> SparseVec {
        self.terms
            .iter()
            .filter(|(w, _)| w.is_empty())
            .map(|(w, c)| (w.a0, c.clone()))
            .collect()
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(BarWord::len).max().unwrap_or(0)
    }

    /// Splits the chain by total degree.
    pub fn homogeneous_components(&self, alg: &DgAlgebra) -> BTreeMap<i64, HochschildChain> {
        let mut out: BTreeMap<i64, HochschildChain> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree(alg))
                .or_insert_with(|| Self::zero(self.field))
                .add_term(w.clone(), c);
        }
        out
    }

    /// `sum c * a0 (x) a1 (x) ... ` expanded over the basis.
    pub fn add_expanded(&mut self, c: &FieldElement, parts: &[&SparseVec]) {
        fn rec(out: &mut HochschildChain, parts: &[&SparseVec], pos: usize, c: FieldElement, buf: &mut Vec<usize>) {
            if pos == parts.len() {
                out.add_term(BarWord::new(buf[0], buf[1..].to_vec()), &c);
                return;
            }
            for (&k, x) in parts[pos] {
                buf.push(k);
                rec(out, parts, pos + 1, &c * x, buf);
                buf.pop();
            }
        }
        if c.is_zero() || parts.iter().any(|p| p.is_empty()) {
            return;
        }
        let mut buf = Vec::with_capacity(parts.len());
        rec(self, parts, 0, c.clone(), &mut buf);
    }
}

fn basis_vecs(alg: &DgAlgebra, w: &BarWord) -> Vec<SparseVec> {
    std::iter::once(w.a0)
        .chain(w.letters.iter().copied())
        .map(|k| alg.basis(k))
        .collect()
}

fn product(alg: &DgAlgebra, i: usize, j: usize) -> SparseVec {
    alg.basis_product(i, j).cloned().unwrap_or_default()
}

/// The internal differential part `b0`.
pub fn b0(alg: &DgAlgebra, c: &HochschildChain) -> HochschildChain {
    let field = alg.field();
    let mut out = HochschildChain::zero(field);
    for (w, coeff) in c.terms() {
        let etas = w.etas(alg);
        let mut parts = basis_vecs(alg, w);
        let d0 = alg.d_basis(w.a0).clone();
        if !d0.is_empty() {
            let saved = std::mem::replace(&mut parts[0], d0);
            out.add_expanded(coeff, &parts.iter().collect::<Vec<_>>());
            parts[0] = saved;
        }
        for i in 1..=w.len() {
            let di = alg.d_basis(w.letters[i - 1]).clone();
            if di.is_empty() {
                continue;
            }
            let sign = -field.sign(etas[i - 1]);
            let saved = std::mem::replace(&mut parts[i], di);
            out.add_expanded(&(coeff * &sign), &parts.iter().collect::<Vec<_>>());
            parts[i] = saved;
        }
    }
    out
}

/// The multiplicative part `b1`.
pub fn b1(alg: &DgAlgebra, c: &HochschildChain) -> HochschildChain {
    let field = alg.field();
    let mut out = HochschildChain::zero(field);
    for (w, coeff) in c.terms() {
        let n = w.len();
        if n == 0 {
            continue;
        }
        let etas = w.etas(alg);
        let a = &w.letters;
        let rest = |skip_from: usize, skip_to: usize| -> Vec<SparseVec> {
            a.iter()
                .enumerate()
                .filter(|(k, _)| *k < skip_from || *k > skip_to)
                .map(|(_, &x)| alg.basis(x))
                .collect()
        };

        let first = product(alg, w.a0, a[0]);
        if !first.is_empty() {
            let tail = rest(0, 0);
            let mut parts: Vec<&SparseVec> = vec![&first];
            parts.extend(tail.iter());
            out.add_expanded(&(coeff * &field.sign(alg.degree(w.a0))), &parts);
        }

        for i in 1..n {
            let p = product(alg, a[i - 1], a[i]);
            if p.is_empty() {
                continue;
            }
            let a0 = alg.basis(w.a0);
            let before: Vec<SparseVec> = a[..i - 1].iter().map(|&x| alg.basis(x)).collect();
            let after: Vec<SparseVec> = a[i + 1..].iter().map(|&x| alg.basis(x)).collect();
            let mut parts: Vec<&SparseVec> = vec![&a0];
            parts.extend(before.iter());
            parts.push(&p);
            parts.extend(after.iter());
            out.add_expanded(&(coeff * &field.sign(etas[i])), &parts);
        }

        let last = product(alg, a[n - 1], w.a0);
        if !last.is_empty() {
            let middle = rest(n - 1, n - 1);
            let mut parts: Vec<&SparseVec> = vec![&last];
            parts.extend(middle.iter());
            let sign = -field.sign(etas[n - 1] * (alg.degree(a[n - 1]) + 1));
            out.add_expanded(&(coeff * &sign), &parts);
        }
    }
    out
}

/// The Hochschild differential `b = b0 + b1`.
pub fn b(alg: &DgAlgebra, c: &HochschildChain) -> HochschildChain {
    b0(alg, c).add(&b1(alg, c))
}

/// Shuffles of two letter sequences with their Koszul signs computed from
/// suspended degrees.
fn shuffles(alg: &DgAlgebra, xs: &[usize], ys: &[usize]) -> Vec<(bool, Vec<usize>)> {
    fn rec(
        alg: &DgAlgebra,
        xs: &[usize],
        ys: &[usize],
        odd: bool,
        buf: &mut Vec<usize>,
        out: &mut Vec<(bool, Vec<usize>)>,
    ) {
        if xs.is_empty() || ys.is_empty() {
            let mut w = buf.clone();
            w.extend_from_slice(xs);
            w.extend_from_slice(ys);
            out.push((odd, w));
            return;
        }
        buf.push(xs[0]);
        rec(alg, &xs[1..], ys, odd, buf, out);
        buf.pop();
        let sy = alg.degree(ys[0]) - 1;
        let sx: i64 = xs.iter().map(|&x| alg.degree(x) - 1).sum();
        buf.push(ys[0]);
        rec(alg, xs, &ys[1..], odd ^ ((sx * sy).rem_euclid(2) == 1), buf, out);
        buf.pop();
    }
    let mut out = Vec::new();
    rec(alg, xs, ys, false, &mut Vec::new(), &mut out);
    out
}

/// The shuffle product `C(A) (x) C(A) -> C(A)`.
pub fn shuffle(alg: &DgAlgebra, x: &HochschildChain, y: &HochschildChain) -> HochschildChain {
    let field = alg.field();
    let mut out = HochschildChain::zero(field);
    for (u, cu) in x.terms() {
        let su: i64 = u.letters.iter().map(|&a| alg.degree(a) - 1).sum();
        for (v, cv) in y.terms() {
            let head = product(alg, u.a0, v.a0);
            if head.is_empty() {
                continue;
            }
            let base = &(cu * cv) * &field.sign(alg.degree(v.a0) * su);
            for (odd, letters) in shuffles(alg, &u.letters, &v.letters) {
                let c = base.clone().signed(odd);
                for (&k, h) in &head {
                    out.add_term(BarWord::new(k, letters.clone()), &(&c * h));
                }
            }
        }
    }
    out
}

/// Pushes a chain forward along a linear map on basis vectors that is
/// multiplicative and unital, e.g. the inclusions `A -> A (x) B`.
pub fn push_forward(c: &HochschildChain, image: &dyn Fn(usize) -> SparseVec) -> HochschildChain {
    let mut out = HochschildChain::zero(c.field());
    for (w, coeff) in c.terms() {
        let parts: Vec<SparseVec> = std::iter::once(w.a0).chain(w.letters.iter().copied()).map(image).collect();
        out.add_expanded(coeff, &parts.iter().collect::<Vec<_>>());
    }
    out
}

/// The Kunneth map `C(A) (x) C(B) -> C(A (x) B)`: embed both factors and
/// take the shuffle product in `A (x) B`, which must be `a.tensor(b)`.
pub fn kunneth(
    a: &DgAlgebra,
    b_alg: &DgAlgebra,
    ab: &DgAlgebra,
    x: &HochschildChain,
    y: &HochschildChain,
) -> Result<HochschildChain, HochschildError> {
    if a.field() != b_alg.field() {
        return Err(HochschildError::FieldMismatch(a.field(), b_alg.field()));
    }
    let nb = b_alg.dim();
    let ia = |i: usize| -> SparseVec {
        b_alg.unit().iter().map(|(&u, c)| (i * nb + u, c.clone())).collect()
    };
    let ib = |j: usize| -> SparseVec {
        a.unit().iter().map(|(&u, c)| (u * nb + j, c.clone())).collect()
    };
    let x1 = push_forward(x, &ia);
    let y1 = push_forward(y, &ib);
    Ok(shuffle(ab, &x1, &y1))
}

/// The duality map `C(A) -> C(A^op)`,
/// `a0[a1|...|an] -> (-1)^{n + sum_{i<j} |s ai||s aj|} a0[an|...|a1]`.
pub fn vee(alg: &DgAlgebra, c: &HochschildChain) -> HochschildChain {
    let field = alg.field();
    let mut out = HochschildChain::zero(field);
    for (w, coeff) in c.terms() {
        let s: Vec<i64> = w.letters.iter().map(|&a| alg.degree(a) - 1).collect();
        let mut exp = w.len() as i64;
        let mut acc = 0;
        for &x in &s {
            exp += acc * x;
            acc += x;
        }
        let mut letters = w.letters.clone();
        letters.reverse();
        out.add_term(BarWord::new(w.a0, letters), &(coeff * &field.sign(exp)));
    }
    out
}

/// Projection of letters onto `A / k 1`, used by the normalized complex.
struct Normalizer {
    pivot: usize,
    // image of the pivot basis vector in A / k1, written in the other basis vectors
    pivot_image: SparseVec,
}

impl Normalizer {
    fn new(alg: &DgAlgebra) -> Self {
        let (&pivot, up) = alg.unit().iter().next().expect("unit is nonzero");
        let inv = up.inverse().expect("nonzero");
        let pivot_image = alg
            .unit()
            .iter()
            .filter(|(&k, _)| k != pivot)
            .map(|(&k, u)| (k, -(u * &inv)))
            .collect();
        Normalizer { pivot, pivot_image }
    }

    fn letters(&self, alg: &DgAlgebra) -> Vec<usize> {
        (0..alg.dim()).filter(|&k| k != self.pivot).collect()
    }

    fn project(&self, c: &HochschildChain) -> HochschildChain {
        let mut out = HochschildChain::zero(c.field());
        for (w, coeff) in c.terms() {
            if !w.letters.contains(&self.pivot) {
                out.add_term(w.clone(), coeff);
                continue;
            }
            if self.pivot_image.is_empty() {
                continue;
            }
            let field = c.field();
            let parts: Vec<SparseVec> = std::iter::once(w.a0)
                .map(|k| [(k, field.one())].into())
                .chain(w.letters.iter().map(|&k| {
                    if k == self.pivot {
                        self.pivot_image.clone()
                    } else {
                        [(k, field.one())].into()
                    }
                }))
                .collect();
            out.add_expanded(coeff, &parts.iter().collect::<Vec<_>>());
        }
        out
    }
}

/// Result of a truncated Hochschild homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HhDimension {
    pub dimension: usize,
    pub exact: bool,
}

/// Dimension of the homology in the given total degree of the normalized
/// complex truncated to words with at most `bar_cap - 1` letters. Words of
/// bounded length form a subcomplex, and the result is exact whenever every
/// word of degree `n` or `n - 1` already fits under the cap.
pub fn hh_dimensions(alg: &DgAlgebra, total_degree: i64, bar_cap: usize) -> Result<HhDimension, HochschildError> {
    if bar_cap == 0 {
        return Err(HochschildError::BarCap);
    }
    let max_len = bar_cap - 1;
    let norm = Normalizer::new(alg);
    let letters = norm.letters(alg);
    let exact = truncation_is_exact(alg, &letters, total_degree, max_len);

    let words_in = |deg: i64| -> Vec<BarWord> {
        let mut out = Vec::new();
        let mut buf = Vec::new();
        fn rec(
            alg: &DgAlgebra,
            letters: &[usize],
            a0: usize,
            partial: i64,
            target: i64,
            max_len: usize,
            buf: &mut Vec<usize>,
            out: &mut Vec<BarWord>,
        ) {
            if partial == target {
                out.push(BarWord::new(a0, buf.clone()));
            }
            if buf.len() == max_len {
                return;
            }
            for &l in letters {
                buf.push(l);
                rec(alg, letters, a0, partial + alg.degree(l) - 1, target, max_len, buf, out);
                buf.pop();
            }
        }
        for a0 in 0..alg.dim() {
            rec(alg, &letters, a0, alg.degree(a0), deg, max_len, &mut buf, &mut out);
        }
        out
    };

    let source = words_in(total_degree);
    let below = words_in(total_degree - 1);
    let field = alg.field();
    let rank_of = |cols: &[BarWord]| -> usize {
        let mut index: HashMap<BarWord, usize> = HashMap::new();
        let mut columns = Vec::with_capacity(cols.len());
        for w in cols {
            let img = norm.project(&b(alg, &HochschildChain::word(field, w.a0, w.letters.clone())));
            let mut v = SparseVec::new();
            for (u, c) in img.terms() {
                let n = index.len();
                let k = *index.entry(u.clone()).or_insert(n);
                v.insert(k, c.clone());
            }
            columns.push(v);
        }
        RowReduced::new(field, index.len(), columns).rank()
    };
    let rank_out = rank_of(&source);
    let rank_in = rank_of(&below);
    Ok(HhDimension {
        dimension: source.len() - rank_out - rank_in,
        exact,
    })
}

fn truncation_is_exact(alg: &DgAlgebra, letters: &[usize], n: i64, max_len: usize) -> bool {
    if letters.is_empty() {
        return true;
    }
    let amin = *alg.degrees().iter().min().expect("nonempty");
    let amax = *alg.degrees().iter().max().expect("nonempty");
    let s: Vec<i64> = letters.iter().map(|&l| alg.degree(l) - 1).collect();
    let smin = *s.iter().min().expect("nonempty");
    let smax = *s.iter().max().expect("nonempty");
    // longest possible word of total degree m
    let longest = |m: i64| -> i64 {
        if smax < 0 {
            (amax - m).div_euclid(-smax)
        } else {
            (m - amin).div_euclid(smin)
        }
    };
    if smin <= 0 && smax >= 0 {
        return false;
    }
    longest(n).max(longest(n - 1)) <= max_len as i64
}

/// Coordinates of the class of a degree-0 element in `A^0` modulo graded
/// commutators of total degree 0 and `d(A^{-1})`. The quotient basis is the
/// set of non-pivot degree-0 basis vectors of the reduced relation matrix.
pub fn reduce_hh0(alg: &DgAlgebra, x: &SparseVec) -> Result<Vec<FieldElement>, HochschildError> {
    if x.keys().any(|&k| alg.degree(k) != 0) {
        return Err(HochschildError::NotDegreeZero);
    }
    let rr = hh0_relations(alg);
    let r = rr.reduce(x);
    let free = hh0_quotient_basis(alg, &rr);
    Ok(free.iter().map(|k| r.get(k).cloned().unwrap_or_else(|| alg.field().zero())).collect())
}

fn hh0_relations(alg: &DgAlgebra) -> RowReduced {
    let field = alg.field();
    let n = alg.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if alg.degree(i) + alg.degree(j) != 0 {
                continue;
            }
            let mut c = product(alg, i, j);
            let s = -field.sign(alg.degree(i) * alg.degree(j));
            axpy(&mut c, &s, &product(alg, j, i));
            if !c.is_empty() {
                rows.push(c);
            }
        }
    }
    for i in 0..n {
        if alg.degree(i) == -1 && !alg.d_basis(i).is_empty() {
            rows.push(alg.d_basis(i).clone());
        }
    }
    RowReduced::new(field, n, rows)
}

fn hh0_quotient_basis(alg: &DgAlgebra, rr: &RowReduced) -> Vec<usize> {
    rr.free_columns().into_iter().filter(|&k| alg.degree(k) == 0).collect()
}

/// Labels of the quotient basis used by [`reduce_hh0`].
pub fn hh0_basis_labels(alg: &DgAlgebra) -> Vec<String> {
    let rr = hh0_relations(alg);
    hh0_quotient_basis(alg, &rr).into_iter().map(|k| alg.labels()[k].clone()).collect()
}

/// Kernel of `b` restricted to words of the given degree and length at most
/// `max_len`, as chains. Because shorter words are closed under `b`, these
/// are genuine cycles of the full complex.
pub fn cycle_basis(alg: &DgAlgebra, degree: i64, max_len: usize) -> Vec<HochschildChain> {
    let field = alg.field();
    let mut words = Vec::new();
    let mut buf = Vec::new();
    fn rec(alg: &DgAlgebra, a0: usize, partial: i64, target: i64, max_len: usize, buf: &mut Vec<usize>, out: &mut Vec<BarWord>) {
        if partial == target {
            out.push(BarWord::new(a0, buf.clone()));
        }
        if buf.len() == max_len {
            return;
        }
        for l in 0..alg.dim() {
            buf.push(l);
            rec(alg, a0, partial + alg.degree(l) - 1, target, max_len, buf, out);
            buf.pop();
        }
    }
    for a0 in 0..alg.dim() {
        rec(alg, a0, alg.degree(a0), degree, max_len, &mut buf, &mut words);
    }
    let mut index: HashMap<BarWord, usize> = HashMap::new();
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (col, w) in words.iter().enumerate() {
        let img = b(alg, &HochschildChain::word(field, w.a0, w.letters.clone()));
        for (u, c) in img.terms() {
            let n = index.len();
            let r = *index.entry(u.clone()).or_insert(n);
            rows.entry(r).or_default().insert(col, c.clone());
        }
    }
    let m = SparseMatrix::from_rows(field, words.len(), rows.into_values().collect());
    m.kernel_sparse()
        .into_iter()
        .map(|v| {
            let mut c = HochschildChain::zero(field);
            for (k, x) in v {
                c.add_term(words[k].clone(), &x);
            }
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn length_zero_differential() {
        let a = corpus::koszul(q());
        let c = HochschildChain::word(q(), 2, vec![]);
        assert_eq!(b(&a, &c), HochschildChain::word(q(), 1, vec![]));
    }

    #[test]
    fn ungraded_b1_is_commutator() {
        let m = corpus::matrix_algebra(q());
        // e12[e21] -> e12 e21 - e21 e12 = e11 - e22
        let c = HochschildChain::word(q(), 1, vec![2]);
        let expected = HochschildChain::word(q(), 0, vec![]).sub(&HochschildChain::word(q(), 3, vec![]));
        assert_eq!(b1(&m, &c), expected);
    }

    #[test]
    fn shuffle_of_two_letters() {
        let e = corpus::exterior(q(), 2);
        // basis 1, v0, v1, v0^v1; suspended degrees of v0, v1 are 0
        let x = HochschildChain::word(q(), 0, vec![1]);
        let y = HochschildChain::word(q(), 1, vec![2]);
        let s = shuffle(&e, &x, &y);
        let expected = HochschildChain::word(q(), 1, vec![1, 2]).add(&HochschildChain::word(q(), 1, vec![2, 1]));
        assert_eq!(s, expected);
    }

    #[test]
    fn vee_examples() {
        let a = corpus::truncated_poly(q());
        let c = HochschildChain::word(q(), 1, vec![]);
        assert_eq!(vee(&a, &c), c);
        let c = HochschildChain::word(q(), 0, vec![1]);
        assert_eq!(vee(&a, &c), c.scale(&q().from_i64(-1)));
    }

    #[test]
    fn hh_of_truncated_polynomials() {
        let a = corpus::truncated_poly(q());
        assert_eq!(hh_dimensions(&a, 0, 3).unwrap(), HhDimension { dimension: 2, exact: true });
        assert_eq!(hh_dimensions(&a, -1, 3).unwrap(), HhDimension { dimension: 1, exact: true });
        let e = corpus::dual_numbers(q());
        assert!(!hh_dimensions(&e, 0, 3).unwrap().exact);
    }

    #[test]
    fn hh0_reduction() {
        let a = corpus::truncated_poly(q());
        let x = reduce_hh0(&a, &a.basis(1)).unwrap();
        assert!(x.iter().any(|c| !c.is_zero()));
        let m = corpus::matrix_algebra(q());
        assert_eq!(reduce_hh0(&m, &m.basis(0)).unwrap(), reduce_hh0(&m, &m.basis(3)).unwrap());
        let k = corpus::koszul(q());
        assert!(reduce_hh0(&k, &k.d(&k.basis(2))).unwrap().iter().all(FieldElement::is_zero));
        assert_eq!(reduce_hh0(&k, &k.basis(2)), Err(HochschildError::NotDegreeZero));
    }
}
