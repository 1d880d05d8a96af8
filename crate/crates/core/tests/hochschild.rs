use nchrr_core::corpus;
use nchrr_core::hochschild::{b, b0, b1, kunneth, shuffle, vee, HochschildChain};
use nchrr_core::random;
use nchrr_core::{DgAlgebra, Field};

fn q() -> Field {
    Field::Rational
}

fn algebras() -> Vec<(&'static str, DgAlgebra)> {
    vec![
        ("k[eps]", corpus::dual_numbers(q())),
        ("k[x]/x^2", corpus::truncated_poly(q())),
        ("exterior2", corpus::exterior(q(), 2)),
        ("matrices", corpus::matrix_algebra(q())),
        ("koszul", corpus::koszul(q())),
    ]
}

#[test]
fn b_squares_to_zero() {
    let mut rng = random::rng(1);
    for (name, a) in algebras() {
        for _ in 0..100 {
            let c = random::chain(&mut rng, &a, 3, 3);
            assert!(b0(&a, &b0(&a, &c)).is_zero(), "b0^2 on {name}");
            assert!(b1(&a, &b1(&a, &c)).is_zero(), "b1^2 on {name}: {c:?}");
            assert!(b(&a, &b(&a, &c)).is_zero(), "b^2 on {name}");
        }
    }
}

#[test]
fn vee_is_chain_map_and_involution() {
    let mut rng = random::rng(2);
    for (name, a) in algebras() {
        let op = a.opposite();
        for _ in 0..100 {
            let c = random::chain(&mut rng, &a, 3, 3);
            assert_eq!(vee(&op, &vee(&a, &c)), c, "involution on {name}");
            assert_eq!(b(&op, &vee(&a, &c)), vee(&a, &b(&a, &c)), "chain map on {name}");
        }
    }
}

fn graded_leibniz(a: &DgAlgebra, x: &HochschildChain, y: &HochschildChain) -> bool {
    let f = a.field();
    for (dx, xc) in x.homogeneous_components(a) {
        let lhs = b(a, &shuffle(a, &xc, y));
        let rhs = shuffle(a, &b(a, &xc), y).add(&shuffle(a, &xc, &b(a, y)).scale(&f.sign(dx)));
        if lhs != rhs {
            return false;
        }
    }
    true
}

#[test]
fn shuffle_is_chain_map_for_supercommutative() {
    let mut rng = random::rng(3);
    for a in [corpus::dual_numbers(q()), corpus::truncated_poly(q()), corpus::exterior(q(), 2)] {
        for _ in 0..100 {
            let x = random::chain(&mut rng, &a, 2, 2);
            let y = random::chain(&mut rng, &a, 2, 2);
            assert!(graded_leibniz(&a, &x, &y));
        }
    }
}

#[test]
fn kunneth_is_chain_map() {
    let mut rng = random::rng(4);
    let pairs = [
        (corpus::dual_numbers(q()), corpus::truncated_poly(q())),
        (corpus::matrix_algebra(q()), corpus::dual_numbers(q())),
        (corpus::koszul(q()), corpus::exterior(q(), 1)),
    ];
    for (a, bb) in pairs {
        let ab = a.tensor(&bb).unwrap();
        for _ in 0..100 {
            let x = random::chain(&mut rng, &a, 2, 2);
            let y = random::chain(&mut rng, &bb, 2, 2);
            for (dx, xc) in x.homogeneous_components(&a) {
                let lhs = b(&ab, &kunneth(&a, &bb, &ab, &xc, &y).unwrap());
                let rhs = kunneth(&a, &bb, &ab, &b(&a, &xc), &y)
                    .unwrap()
                    .add(&kunneth(&a, &bb, &ab, &xc, &b(&bb, &y)).unwrap().scale(&q().sign(dx)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
