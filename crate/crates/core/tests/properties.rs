use std::sync::Arc;

use proptest::prelude::*;

use nchrr_core::constructors::ringel_chi;
use nchrr_core::euler::{euler_chain, pair};
use nchrr_core::hochschild::{b, vee};
use nchrr_core::perfect::{chi, PerfectModule};
use nchrr_core::{corpus, random, DgAlgebra, Field, FieldElement};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7)), Just(Field::Prime(101))]
}

fn element(field: Field) -> impl Strategy<Value = FieldElement> {
    (-50i64..50, 1i64..20).prop_map(move |(n, d)| {
        let d = field.from_i64(d);
        match d.inverse() {
            Some(inv) => &field.from_i64(n) * &inv,
            None => field.from_i64(n),
        }
    })
}

fn corpus_algebra(k: usize) -> DgAlgebra {
    let f = Field::Rational;
    match k {
        0 => corpus::dual_numbers(f),
        1 => corpus::truncated_poly(f),
        2 => corpus::koszul(f),
        3 => corpus::exterior(f, 2),
        _ => corpus::matrix_algebra(f),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, a, b, c) in fields().prop_flat_map(|f| (Just(f), element(f), element(f), element(f)))) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, f.zero());
        if let Some(inv) = a.inverse() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        let parsed = f.parse_element(&a.to_string()).unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn b_squares_to_zero_and_vee_is_an_involution(seed in any::<u64>(), k in 0usize..5) {
        let a = corpus_algebra(k);
        let op = a.opposite();
        let mut rng = random::rng(seed);
        let c = random::chain(&mut rng, &a, 3, 3);
        prop_assert!(b(&a, &b(&a, &c)).is_zero());
        prop_assert_eq!(vee(&op, &vee(&a, &c)), c);
    }

    #[test]
    fn module_operations_respect_chi(seed in any::<u64>(), k in 0usize..5) {
        let a = Arc::new(corpus_algebra(k));
        let mut rng = random::rng(seed);
        let m = PerfectModule::whole(random::twisted_module(&mut rng, &a, 3));
        let n = PerfectModule::whole(random::twisted_module(&mut rng, &a, 3));
        prop_assert!(m.module.validate().is_ok());
        prop_assert_eq!(m.dual().unwrap().dual().unwrap(), m.clone());
        prop_assert_eq!(m.shift(1).shift(-1), m.clone());
        let c = chi(&m, &n).unwrap();
        prop_assert_eq!(chi(&m, &n.shift(1)).unwrap(), -c);
        prop_assert_eq!(chi(&m.shift(1), &n).unwrap(), -c);
        let eu_m = euler_chain(&m).unwrap();
        let eu_n = euler_chain(&n).unwrap();
        prop_assert!(b(&a, &eu_m).is_zero());
        prop_assert_eq!(pair(&a, &eu_n, &vee(&a, &eu_m)).unwrap().0, Field::Rational.from_i64(c));
    }

    #[test]
    fn retractions_hold_on_cohomology(seed in any::<u64>(), k in 0usize..5) {
        let a = corpus_algebra(k);
        let x = a.as_complex();
        let r = x.build_retraction();
        prop_assert!(r.check().is_empty());
        let mut rng = random::rng(seed);
        let m = random::twisted_module(&mut rng, &Arc::new(a), 3);
        let hom = nchrr_core::perfect::HomComplex::new(&m, &m).unwrap();
        prop_assert!(hom.complex.build_retraction().check().is_empty());
    }

    #[test]
    fn ringel_matches_chi_on_a3(seed in any::<u64>()) {
        let a = corpus::a3(Field::Rational);
        let mut rng = random::rng(seed);
        let m = a.random_module(&mut rng).unwrap();
        let n = a.random_module(&mut rng).unwrap();
        let r = ringel_chi(&a.dim_vector(&m), &a.dim_vector(&n), &a.homdim_matrix()).unwrap();
        let c = chi(&a.resolution(&m).unwrap(), &a.resolution(&n).unwrap()).unwrap();
        prop_assert_eq!(r, Field::Rational.from_i64(c));
    }
}
