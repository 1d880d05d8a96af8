//! Seeded generators for randomized checks.
//!
//! Words are uniform: `a0` and each letter are uniform basis indices and the
//! length is uniform in `0..=max_len`. Coefficients are uniform in
//! `{-2, -1, 1, 2}`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::DgAlgebra;
use crate::hochschild::{BarWord, HochschildChain};
use std::sync::Arc;

use crate::complex::ChainComplex;
use crate::linalg::{add_entry, axpy, SparseVec};
use crate::perfect::{HomComplex, MorphismMatrix, TwistedModule};
use crate::scalar::{Field, FieldElement};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(rng: &mut TestRng, field: Field) -> FieldElement {
    let c = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
    field.from_i64(c)
}

/// Coefficient in `{-2..2}`, zero allowed.
pub fn coeff_or_zero(rng: &mut TestRng, field: Field) -> FieldElement {
    field.from_i64(rng.gen_range(-2..=2))
}

pub fn word(rng: &mut TestRng, alg: &DgAlgebra, max_len: usize) -> BarWord {
    let n = alg.dim();
    let len = rng.gen_range(0..=max_len);
    BarWord::new(rng.gen_range(0..n), (0..len).map(|_| rng.gen_range(0..n)).collect())
}

pub fn chain(rng: &mut TestRng, alg: &DgAlgebra, max_len: usize, terms: usize) -> HochschildChain {
    let mut c = HochschildChain::zero(alg.field());
    for _ in 0..terms {
        let w = word(rng, alg, max_len);
        let x = coeff(rng, alg.field());
        c.add_term(w, &x);
    }
    c
}

/// A chain all of whose words have the given total degree; may be zero if
/// no word of that degree was hit.
pub fn homogeneous_chain(rng: &mut TestRng, alg: &DgAlgebra, degree: i64, max_len: usize, terms: usize) -> HochschildChain {
    let mut c = HochschildChain::zero(alg.field());
    let mut tries = 0;
    while c.len() < terms && tries < 200 * terms {
        tries += 1;
        let w = word(rng, alg, max_len);
        if w.degree(alg) == degree {
            let x = coeff(rng, alg.field());
            c.add_term(w, &x);
        }
    }
    c
}

pub fn element(rng: &mut TestRng, alg: &DgAlgebra) -> SparseVec {
    let mut x = SparseVec::new();
    for k in 0..alg.dim() {
        add_entry(&mut x, k, &coeff_or_zero(rng, alg.field()));
    }
    x
}

/// Random element supported on basis vectors of the given degree.
pub fn homogeneous_element(rng: &mut TestRng, alg: &DgAlgebra, degree: i64) -> SparseVec {
    let mut x = SparseVec::new();
    for k in 0..alg.dim() {
        if alg.degree(k) == degree {
            add_entry(&mut x, k, &coeff_or_zero(rng, alg.field()));
        }
    }
    x
}

/// Random combination of the given chains.
pub fn combination(rng: &mut TestRng, field: Field, basis: &[HochschildChain]) -> HochschildChain {
    let mut c = HochschildChain::zero(field);
    for v in basis {
        c.add_scaled(v, &coeff_or_zero(rng, field));
    }
    c
}

/// Random closed element of degree `degree` in a complex, or zero if there is none.
pub fn closed_vector(rng: &mut TestRng, x: &ChainComplex, degree: i64) -> SparseVec {
    let idx = x.space().indices_in(degree);
    if idx.is_empty() {
        return SparseVec::new();
    }
    let out_idx: Vec<usize> = x.space().indices_in(degree + 1);
    let d = x.differential().submatrix(&out_idx, &idx);
    let mut v = SparseVec::new();
    for k in d.kernel_sparse() {
        axpy(&mut v, &coeff_or_zero(rng, x.field()), &k);
    }
    v.into_iter().map(|(k, c)| (idx[k], c)).collect()
}

/// Random closed degree-0 morphism between twisted modules.
pub fn closed_morphism(rng: &mut TestRng, source: &TwistedModule, target: &TwistedModule) -> MorphismMatrix {
    let hom = HomComplex::new(source, target).expect("same algebra");
    hom.unflatten(&closed_vector(rng, &hom.complex, 0))
}

/// Random twisted module built by iterated cones of closed maps out of shifted
/// free rank-one modules, with shifts in `-1..=1`.
pub fn twisted_module(rng: &mut TestRng, alg: &Arc<DgAlgebra>, max_rank: usize) -> TwistedModule {
    let mut m = TwistedModule::free(alg.clone(), vec![rng.gen_range(-1..=1)]);
    while m.rank() < max_rank && rng.gen_bool(0.7) {
        let src = TwistedModule::free(alg.clone(), vec![rng.gen_range(-2..=0)]);
        let f = closed_morphism(rng, &src, &m);
        m = src.cone(&m, &f).expect("closed degree-0 map");
    }
    m
}
