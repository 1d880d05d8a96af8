use std::sync::Arc;

use nchrr_core::algebra::EndAlgebra;
use nchrr_core::euler::{
    euler_chain, fls_integral, hrr_verify, matrix_algebra_over, pair, pair_integral, pair_supertrace, pair_trace, str_chain,
    OperatorChain, PairPath,
};
use nchrr_core::hochschild::{b, cycle_basis, vee, HochschildChain};
use nchrr_core::perfect::{MorphismMatrix, PerfectModule, TwistedModule};
use nchrr_core::{corpus, random, ChainComplex, DgAlgebra, Field, GradedSpace, SparseMatrix};
use rand::Rng;

fn q() -> Field {
    Field::Rational
}

#[test]
fn str_of_single_entries() {
    let a = corpus::truncated_poly(q());
    let mut m = MorphismMatrix::zero(1, 1);
    m.set(0, 0, a.basis(1));
    let mut out = HochschildChain::zero(q());
    nchrr_core::euler::str_word(&a, &[0], &[&m], &q().one(), &mut out);
    assert_eq!(out, HochschildChain::word(q(), 1, vec![]));

    let free = TwistedModule::free(Arc::new(a.clone()), vec![0, 1]);
    let eu = euler_chain(&PerfectModule::whole(free)).unwrap();
    assert!(eu.is_zero());
}

#[test]
fn str_is_a_chain_map() {
    let mut rng = random::rng(21);
    let algebras = [corpus::dual_numbers(q()), corpus::truncated_poly(q()), corpus::koszul(q()), corpus::exterior(q(), 2)];
    for a in &algebras {
        for shifts in [vec![0, 1], vec![0, -1], vec![1, 0, 2]] {
            let big = matrix_algebra_over(a, &shifts);
            for _ in 0..10 {
                let c = random::chain(&mut rng, &big, 3, 4);
                let lhs = b(a, &str_chain(a, &shifts, &c));
                let rhs = str_chain(a, &shifts, &b(&big, &c));
                assert_eq!(lhs, rhs, "shifts {shifts:?} over {:?}", a.labels());
            }
        }
    }
}

fn random_complex(rng: &mut random::TestRng, max_dim: usize) -> ChainComplex {
    // a random complex as a sum of shifted two-term pieces and lone vectors
    let mut degrees = Vec::new();
    let mut entries = Vec::new();
    while degrees.len() < max_dim {
        let deg = rng.gen_range(-2..=2);
        if rng.gen_bool(0.5) && degrees.len() + 2 <= max_dim {
            let k = degrees.len();
            degrees.push(deg);
            degrees.push(deg + 1);
            entries.push((k + 1, k, q().one()));
        } else {
            degrees.push(deg);
        }
        if rng.gen_bool(0.3) {
            break;
        }
    }
    let n = degrees.len();
    let d = SparseMatrix::from_entries(q(), n, n, entries).unwrap();
    // conjugate by a random unitriangular change of basis within degrees
    let mut g = SparseMatrix::identity(q(), n);
    for i in 0..n {
        for j in i + 1..n {
            if degrees[i] == degrees[j] {
                g.set(i, j, random::coeff_or_zero(rng, q()));
            }
        }
    }
    let d = g.mul(&d).mul(&g.invert().unwrap());
    ChainComplex::new(GradedSpace::new(degrees), d).unwrap()
}

/// Sum of words whose letters are dense random elements of one degree each.
fn dense_chain(rng: &mut random::TestRng, a: &DgAlgebra, len: usize) -> HochschildChain {
    let mut degrees: Vec<i64> = a.degrees().to_vec();
    degrees.sort();
    degrees.dedup();
    let mut c = HochschildChain::zero(a.field());
    for _ in 0..3 {
        let parts: Vec<_> = (0..=len)
            .map(|_| {
                let d = degrees[rng.gen_range(0..degrees.len())];
                random::homogeneous_element(rng, a, d)
            })
            .collect();
        c.add_expanded(&a.field().one(), &parts.iter().collect::<Vec<_>>());
    }
    c
}

#[test]
fn integral_is_a_chain_map_and_counts_euler_characteristic() {
    let mut rng = random::rng(22);
    for _ in 0..40 {
        let x = random_complex(&mut rng, 5);
        let end = EndAlgebra::new(&x);
        let r = x.build_retraction();
        let one = HochschildChain::from_element(q(), end.algebra().unit());
        let phi = fls_integral(&r, &OperatorChain::from_end_chain(&end, &one));
        assert_eq!(phi, q().from_i64(x.euler_characteristic()));
        let c = dense_chain(&mut rng, end.algebra(), 3);
        let bc = b(end.algebra(), &c);
        assert!(fls_integral(&r, &OperatorChain::from_end_chain(&end, &bc)).is_zero());
    }
}

#[test]
fn small_pairings() {
    let a = corpus::truncated_poly(q());
    let one = HochschildChain::from_element(q(), &a.basis(0));
    let x = HochschildChain::from_element(q(), &a.basis(1));
    assert_eq!(pair(&a, &one, &one).unwrap(), (q().from_i64(2), PairPath::Trace));
    assert_eq!(pair(&a, &x, &x).unwrap().0, q().zero());
    let e = corpus::dual_numbers(q());
    let one = HochschildChain::from_element(q(), &e.basis(0));
    assert_eq!(pair(&e, &one, &one).unwrap(), (q().zero(), PairPath::Supertrace));
}

fn random_cycles(rng: &mut random::TestRng, a: &DgAlgebra, degree: i64, max_len: usize) -> Vec<HochschildChain> {
    let basis = cycle_basis(a, degree, max_len);
    (0..5).map(|_| random::combination(rng, a.field(), &basis)).collect()
}

#[test]
fn pairing_paths_agree() {
    let mut rng = random::rng(23);
    let algebras = [corpus::truncated_poly(q()), corpus::dual_numbers(q()), corpus::exterior(q(), 2), corpus::matrix_algebra(q())];
    for a in &algebras {
        let op = a.opposite();
        for degree in [0, 1, -1] {
            let xs = random_cycles(&mut rng, a, degree, 2);
            let ys = random_cycles(&mut rng, &op, -degree, 2);
            for x in &xs {
                for y in &ys {
                    let fls = pair_integral(a, x, y).unwrap();
                    if a.is_ungraded() {
                        assert_eq!(fls, pair_trace(a, x, y));
                    }
                    assert_eq!(fls, pair_supertrace(a, x, y), "{:?} degree {degree}", a.labels());
                }
            }
        }
    }
}

#[test]
fn hrr_on_random_modules() {
    let mut rng = random::rng(24);
    let algebras = [corpus::truncated_poly(q()), corpus::dual_numbers(q()), corpus::koszul(q()), corpus::exterior(q(), 2), corpus::matrix_algebra(q())];
    for a in algebras {
        let a = Arc::new(a);
        for _ in 0..6 {
            let m = PerfectModule::whole(random::twisted_module(&mut rng, &a, 3));
            let n = PerfectModule::whole(random::twisted_module(&mut rng, &a, 3));
            let report = hrr_verify(&m, &n).unwrap();
            assert!(report.equal, "{:?}: {report:?}", a.labels());
            let eu = euler_chain(&m).unwrap();
            let dual = euler_chain(&m.dual().unwrap()).unwrap();
            let t = euler_chain(&n).unwrap();
            assert_eq!(pair(&a, &t, &vee(&a, &eu)).unwrap().0, pair(&a, &t, &dual).unwrap().0);
        }
    }
}
