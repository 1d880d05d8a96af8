use std::sync::Arc;

use nchrr_core::constructors::{
    central_idempotent, frobenius_check, group_algebra, orbifold_gram, orbifold_gram_direct, ringel_chi, DirectedAlgebra, FiniteGroupData,
    FrobeniusData,
};
use nchrr_core::corpus;
use nchrr_core::perfect::chi;
use nchrr_core::random;
use nchrr_core::{Field, SparseMatrix};

fn q() -> Field {
    Field::Rational
}

fn chi_simple(a: &DirectedAlgebra, i: usize, j: usize) -> i64 {
    chi(&a.simple_resolution(i).unwrap(), &a.simple_resolution(j).unwrap()).unwrap()
}

#[test]
fn simple_pairings_on_small_quivers() {
    let gram = |a: &DirectedAlgebra| -> Vec<Vec<i64>> {
        let n = a.objects();
        (0..n).map(|i| (0..n).map(|j| chi_simple(a, i, j)).collect()).collect()
    };
    assert_eq!(gram(&corpus::a2(q())), vec![vec![1, -1], vec![0, 1]]);
    assert_eq!(gram(&corpus::kronecker(q())), vec![vec![1, -2], vec![0, 1]]);
    assert_eq!(gram(&corpus::a3(q())), vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]]);
    // the relation adds Ext^2(S1, S3)
    assert_eq!(gram(&corpus::a3_with_relation(q())), vec![vec![1, -1, 1], vec![0, 1, -1], vec![0, 0, 1]]);
}

#[test]
fn projective_pairings_are_hom_dimensions() {
    for a in [corpus::a2(q()), corpus::a3(q()), corpus::kronecker(q()), corpus::a3_with_relation(q())] {
        let d = a.homdim_matrix();
        for i in 0..a.objects() {
            for j in 0..a.objects() {
                let c = chi(&a.projective_module(i).unwrap(), &a.projective_module(j).unwrap()).unwrap();
                assert_eq!(q().from_i64(c), d.get(j, i), "P{i} P{j}");
            }
        }
    }
}

#[test]
fn ringel_form_matches_ext_oracle() {
    let mut rng = random::rng(11);
    for a in [corpus::a2(q()), corpus::a3(q()), corpus::kronecker(q()), corpus::a3_with_relation(q())] {
        let d = a.homdim_matrix();
        for _ in 0..8 {
            let m = a.random_module(&mut rng).unwrap();
            let n = a.random_module(&mut rng).unwrap();
            let (pm, pn) = (a.resolution(&m).unwrap(), a.resolution(&n).unwrap());
            let (dm, dn) = (a.dim_vector(&m), a.dim_vector(&n));
            assert_eq!(a.dim_vector_via_chi(&pm).unwrap(), dm);
            assert_eq!(a.dim_vector_via_chi(&pn).unwrap(), dn);
            let oracle = chi(&pm, &pn).unwrap();
            assert_eq!(ringel_chi(&dm, &dn, &d).unwrap(), q().from_i64(oracle), "{dm:?} {dn:?}");
        }
    }
}

fn gram_i64(m: &SparseMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().unwrap()).collect()).collect()
}

#[test]
fn orbifold_gram_for_z2_in_sl2() {
    let g = corpus::z2_sl2(q());
    assert_eq!(gram_i64(&orbifold_gram(&g).unwrap()), vec![vec![2, -2], vec![-2, 2]]);
    assert_eq!(gram_i64(&orbifold_gram_direct(&g).unwrap()), vec![vec![2, -2], vec![-2, 2]]);
}

#[test]
fn orbifold_gram_for_trivial_group_vanishes() {
    for n in 1..=4 {
        let g = corpus::trivial_group(q(), n);
        assert_eq!(gram_i64(&orbifold_gram(&g).unwrap()), vec![vec![0]]);
        assert_eq!(gram_i64(&orbifold_gram_direct(&g).unwrap()), vec![vec![0]]);
    }
}

#[test]
fn orbifold_gram_over_a_prime_field() {
    let g = corpus::z3_f7();
    assert_eq!(orbifold_gram(&g).unwrap(), orbifold_gram_direct(&g).unwrap());
}

fn check_idempotents(g: &FiniteGroupData) {
    let alg = group_algebra(g);
    let pis: Vec<_> = (0..g.characters.len()).map(|r| central_idempotent(g, r).unwrap()).collect();
    let mut total = nchrr_core::SparseVec::new();
    for (a, pa) in pis.iter().enumerate() {
        for (b, pb) in pis.iter().enumerate() {
            let p = alg.mul(pa, pb);
            if a == b {
                assert_eq!(&p, pa);
            } else {
                assert!(p.is_empty());
            }
        }
        nchrr_core::linalg::axpy(&mut total, &g.field.one(), pa);
    }
    assert_eq!(&total, alg.unit());
}

#[test]
fn central_idempotents_split_the_group_algebra() {
    check_idempotents(&corpus::z2_sl2(q()));
    check_idempotents(&corpus::s3(q()));
    check_idempotents(&corpus::q8(q()));
    check_idempotents(&corpus::z3_f7());
}

fn frobenius_examples() -> Vec<FrobeniusData> {
    let f = q();
    let mut out = Vec::new();
    for g in [corpus::z2_sl2(f), corpus::s3(f), corpus::q8(f)] {
        let alg = Arc::new(group_algebra(&g));
        let mut trace = vec![f.zero(); alg.dim()];
        trace[0] = f.one();
        out.push(FrobeniusData::new(alg, trace, 0).unwrap());
    }
    let m2 = Arc::new(corpus::matrix_algebra(f));
    out.push(FrobeniusData::new(m2, vec![f.one(), f.zero(), f.zero(), f.one()], 0).unwrap());
    out
}

#[test]
fn frobenius_pairing_is_the_operator_trace() {
    let mut rng = random::rng(5);
    for fd in frobenius_examples() {
        let report = frobenius_check(&fd, 50, &mut rng);
        assert!(report.passed(), "{report:?}");
        assert!(!report.experimental);
    }
}

#[test]
fn copairing_of_the_group_algebra() {
    let g = corpus::s3(q());
    let fd = &frobenius_examples()[1];
    let gamma = fd.gamma();
    assert_eq!(gamma.len(), 6);
    for x in 0..6 {
        assert_eq!(gamma.get(&(x, g.inverse(x))), Some(&q().one()));
    }
}

#[test]
fn degenerate_traces_are_rejected() {
    let f = q();
    let m2 = Arc::new(corpus::matrix_algebra(f));
    assert!(FrobeniusData::new(m2.clone(), vec![f.one(), f.zero(), f.zero(), f.zero()], 0).is_err());
    assert!(FrobeniusData::new(m2, vec![f.zero(); 4], 0).is_err());
}

#[test]
fn directed_algebra_dimensions() {
    let one = nchrr_core::constructors::directed_algebra(
        q(),
        nchrr_core::constructors::DirectedCategoryData {
            objects: vec!["v".into()],
            homdims: vec![vec![1]],
            compositions: vec![],
        },
    )
    .unwrap();
    assert_eq!(one.algebra().dim(), 1);
    assert_eq!(corpus::a2(q()).algebra().dim(), 3);
    assert_eq!(corpus::kronecker(q()).algebra().dim(), 4);
    for a in [corpus::a2(q()), corpus::a3(q()), corpus::kronecker(q())] {
        assert!(a.algebra().validate().is_ok());
        assert!(a.algebra().has_zero_differential() && a.algebra().is_ungraded());
    }
}

#[test]
fn simple_resolutions_have_the_expected_shape() {
    let a2 = corpus::a2(q());
    // S1 is P2 -> P1; the last simple is projective
    assert_eq!(a2.simple_resolution(0).unwrap().module.rank(), 2);
    assert_eq!(a2.simple_resolution(1).unwrap().module.rank(), 1);
    let k = corpus::kronecker(q());
    assert_eq!(k.simple_resolution(0).unwrap().module.rank(), 3);
    let a3 = corpus::a3(q());
    assert_eq!(chi(&a3.simple_resolution(2).unwrap(), &a3.projective_module(2).unwrap()).unwrap(), 1);
}

#[test]
fn cross_products_of_small_groups() {
    use nchrr_core::constructors::lambda_vg;
    let one = lambda_vg(&corpus::trivial_group(q(), 1)).unwrap();
    assert_eq!(one.dim(), 2);
    assert_eq!(one.degrees(), &[0, 1]);
    assert_eq!(lambda_vg(&corpus::trivial_group(q(), 2)).unwrap().dim(), 4);
    let z2 = corpus::z2_sl2(q());
    let l = lambda_vg(&z2).unwrap();
    assert_eq!(l.dim(), 8);
    assert!(l.validate().is_ok());
    // v (x) 1 anticommutes with the generator 1 (x) s
    let v = l.basis(2);
    let s = l.basis(1);
    let vs = l.mul(&v, &s);
    let sv = l.mul(&s, &v);
    let mut sum = vs.clone();
    nchrr_core::linalg::axpy(&mut sum, &q().one(), &sv);
    assert!(!vs.is_empty() && sum.is_empty());
}

#[test]
fn idempotents_of_z2() {
    let z2 = corpus::z2_sl2(q());
    let half = q().parse_element("1/2").unwrap();
    let p0 = central_idempotent(&z2, 0).unwrap();
    let p1 = central_idempotent(&z2, 1).unwrap();
    assert_eq!(p0.get(&0), Some(&half));
    assert_eq!(p0.get(&1), Some(&half));
    assert_eq!(p1.get(&1), Some(&-half));
}

#[test]
fn unimodularity_is_checked() {
    let f = q();
    let flip = SparseMatrix::from_i64(f, &[vec![0, 1], vec![1, 0]]);
    let chars = vec![vec![f.one(), f.one()], vec![f.one(), -f.one()]];
    let table = vec![vec![0, 1], vec![1, 0]];
    let action = Some(vec![SparseMatrix::identity(f, 2), flip]);
    assert!(FiniteGroupData::new(f, table.clone(), chars.clone(), action.clone(), true).is_err());
    assert!(FiniteGroupData::new(f, table, chars, action, false).is_ok());
}

#[test]
fn graded_frobenius_is_flagged_experimental() {
    let f = q();
    let mut rng = random::rng(8);
    for n in 1..=3 {
        let alg = Arc::new(corpus::exterior(f, n));
        let mut trace = vec![f.zero(); alg.dim()];
        trace[alg.dim() - 1] = f.one();
        let fd = FrobeniusData::new(alg, trace, n as i64).unwrap();
        let report = frobenius_check(&fd, 20, &mut rng);
        assert!(report.experimental);
        assert!(report.gamma_copairing);
    }
}
