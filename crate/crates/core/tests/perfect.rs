use std::sync::Arc;

use nchrr_core::corpus;
use nchrr_core::perfect::{chi, is_homotopy_idempotent, tensor_euler_characteristic, HomComplex, MorphismMatrix, PerfectModule, TwistedModule};
use nchrr_core::random;
use nchrr_core::{DgAlgebra, Field};

fn algebras() -> Vec<Arc<DgAlgebra>> {
    let f = Field::Rational;
    vec![
        Arc::new(corpus::truncated_poly(f)),
        Arc::new(corpus::dual_numbers(f)),
        Arc::new(corpus::exterior(f, 2)),
        Arc::new(corpus::koszul(f)),
        Arc::new(corpus::matrix_algebra(f)),
    ]
}

#[test]
fn truncated_two_term_module() {
    let a = Arc::new(corpus::truncated_poly(Field::Rational));
    let mut alpha = MorphismMatrix::zero(2, 2);
    alpha.set(0, 1, a.basis(1));
    let m = TwistedModule::new(a.clone(), vec![0, 1], alpha.clone()).unwrap();
    assert!(m.validate().is_ok());
    assert!(TwistedModule::new(a, vec![0, 0], alpha).is_err());
}

#[test]
fn hom_complexes_square_to_zero() {
    let mut rng = random::rng(11);
    for a in algebras() {
        for _ in 0..10 {
            let m = random::twisted_module(&mut rng, &a, 4);
            let n = random::twisted_module(&mut rng, &a, 4);
            assert!(m.validate().is_ok());
            let hom = HomComplex::new(&m, &n).unwrap();
            assert!(hom.complex.validate().is_ok(), "d_Tw^2 != 0 over {:?}", a.labels());
        }
    }
}

#[test]
fn hom_of_free_is_algebra() {
    for a in algebras() {
        let free = TwistedModule::free(a.clone(), vec![0]);
        let hom = HomComplex::new(&free, &free).unwrap();
        assert_eq!(hom.complex.space().degrees(), a.degrees());
        let one = PerfectModule::whole(free.clone());
        assert_eq!(chi(&one, &one).unwrap(), a.as_complex().euler_characteristic());
        let shifted = TwistedModule::free(a.clone(), vec![1]);
        let hom = HomComplex::new(&free, &shifted).unwrap();
        let expected: Vec<i64> = a.degrees().iter().map(|d| d - 1).collect();
        assert_eq!(hom.complex.space().degrees(), &expected[..]);
    }
}

#[test]
fn cone_of_identity_is_acyclic() {
    let mut rng = random::rng(12);
    for a in algebras() {
        for _ in 0..5 {
            let n = random::twisted_module(&mut rng, &a, 3);
            let id = MorphismMatrix::identity(&a, n.rank());
            let c = n.cone(&n, &id).unwrap();
            let x = random::twisted_module(&mut rng, &a, 3);
            let hom = HomComplex::new(&x, &c).unwrap();
            assert_eq!(hom.complex.cohomology().dim(), 0);
            let hom = HomComplex::new(&c, &x).unwrap();
            assert_eq!(hom.complex.cohomology().dim(), 0);
        }
    }
}

#[test]
fn cone_of_zero_is_sum() {
    let a = Arc::new(corpus::truncated_poly(Field::Rational));
    let free = TwistedModule::free(a.clone(), vec![0]);
    let c = free.cone(&free, &MorphismMatrix::zero(1, 1)).unwrap();
    assert_eq!(c, TwistedModule::free(a, vec![0, 1]));
}

#[test]
fn shift_and_dual_are_involutive() {
    let mut rng = random::rng(13);
    for a in algebras() {
        for _ in 0..10 {
            let m = random::twisted_module(&mut rng, &a, 4);
            assert_eq!(m.shift(0), m);
            assert_eq!(m.shift(1).shift(1), m.shift(2));
            assert!(m.shift(1).validate().is_ok());
            let d = m.dual();
            assert!(d.validate().is_ok());
            assert_eq!(d.dual(), m);
        }
    }
}

#[test]
fn chi_shift_and_cone_additivity() {
    let mut rng = random::rng(14);
    for a in algebras() {
        for _ in 0..8 {
            let m = PerfectModule::whole(random::twisted_module(&mut rng, &a, 3));
            let l = random::twisted_module(&mut rng, &a, 3);
            let n = random::twisted_module(&mut rng, &a, 3);
            let f = random::closed_morphism(&mut rng, &l, &n);
            let c = PerfectModule::whole(l.cone(&n, &f).unwrap());
            let (l, n) = (PerfectModule::whole(l), PerfectModule::whole(n));
            let x = chi(&m, &n).unwrap();
            assert_eq!(chi(&m, &n.shift(1)).unwrap(), -x);
            assert_eq!(chi(&m, &c).unwrap(), x - chi(&m, &l).unwrap());
            assert_eq!(chi(&c, &m).unwrap(), chi(&n, &m).unwrap() - chi(&l, &m).unwrap());
        }
    }
}

#[test]
fn chi_agrees_with_tensor_of_dual() {
    let mut rng = random::rng(15);
    for a in algebras() {
        for _ in 0..8 {
            let m = PerfectModule::whole(random::twisted_module(&mut rng, &a, 3));
            let n = PerfectModule::whole(random::twisted_module(&mut rng, &a, 3));
            let dm = m.dual().unwrap();
            assert_eq!(chi(&m, &n).unwrap(), tensor_euler_characteristic(&n, &dm).unwrap());
        }
    }
}

#[test]
fn strict_idempotents_have_zero_witness() {
    let a = Arc::new(corpus::exterior(Field::Rational, 2));
    let m = TwistedModule::free(a.clone(), vec![0, 0]);
    for pi in [
        MorphismMatrix::identity(&a, 2),
        MorphismMatrix::zero(2, 2),
        MorphismMatrix::diagonal(vec![a.unit().clone(), Default::default()]),
    ] {
        let e = is_homotopy_idempotent(&m, &pi).unwrap();
        assert!(e.h.is_zero());
    }
    let twice = MorphismMatrix::identity(&a, 2).scale(&Field::Rational.from_i64(2));
    assert!(is_homotopy_idempotent(&m, &twice).is_none());
}
