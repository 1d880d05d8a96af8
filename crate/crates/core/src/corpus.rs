//! Small named algebras used throughout the tests and the command line.

use crate::algebra::DgAlgebra;
use crate::constructors::{directed_algebra, DirectedAlgebra, DirectedCategoryData, FiniteGroupData};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalar::{Field, FieldElement};

/// Builds an algebra from integer structure constants with unit `e_0`.
pub fn from_table(
    field: Field,
    labels: &[&str],
    degrees: &[i64],
    mult: &[(usize, usize, usize, i64)],
    diff: &[(usize, usize, i64)],
) -> DgAlgebra {
    let unit: SparseVec = [(0, field.one())].into();
    DgAlgebra::new(
        field,
        labels.iter().map(|s| s.to_string()).collect(),
        degrees.to_vec(),
        unit,
        mult.iter().map(|&(i, j, k, c)| (i, j, k, field.from_i64(c))),
        diff.iter().map(|&(i, k, c)| (i, k, field.from_i64(c))),
    )
    .expect("corpus table is well formed")
}

/// `k[x]/(x^2)` with `|x| = 0`.
pub fn truncated_poly(field: Field) -> DgAlgebra {
    from_table(
        field,
        &["1", "x"],
        &[0, 0],
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        &[],
    )
}

/// `k[eps]` with `|eps| = 1` and `eps^2 = 0`.
pub fn dual_numbers(field: Field) -> DgAlgebra {
    let mut a = exterior(field, 1);
    a = a.relabeled(vec!["1".into(), "eps".into()]);
    a
}

/// Subsets of `{0..n}` as bitmasks, ordered by size and then lexicographically.
pub fn exterior_basis(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| {
        let bits: Vec<u32> = (0..n as u32).filter(|b| m >> b & 1 == 1).collect();
        (bits.len(), bits)
    });
    masks
}

/// Sign of `v_S ^ v_T` relative to `v_{S u T}`, or `None` if `S` and `T` meet.
pub fn wedge_sign(s: u32, t: u32) -> Option<i64> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0;
    let mut rest = s;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inversions += (t & ((1u32 << b) - 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Exterior algebra on `n` generators of degree 1.
pub fn exterior(field: Field, n: usize) -> DgAlgebra {
    let basis = exterior_basis(n);
    let index = |m: u32| basis.iter().position(|&b| b == m).expect("mask in basis");
    let labels: Vec<String> = basis
        .iter()
        .map(|&m| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..n).filter(|b| m >> b & 1 == 1).map(|b| format!("v{b}")).collect::<Vec<_>>().join("^")
            }
        })
        .collect();
    let degrees: Vec<i64> = basis.iter().map(|m| m.count_ones() as i64).collect();
    let mut mult = Vec::new();
    for (i, &s) in basis.iter().enumerate() {
        for (j, &t) in basis.iter().enumerate() {
            if let Some(sign) = wedge_sign(s, t) {
                mult.push((i, j, index(s | t), field.from_i64(sign)));
            }
        }
    }
    DgAlgebra::new(field, labels, degrees, [(0, field.one())].into(), mult, [])
        .expect("exterior algebra table")
}

/// 2x2 matrices with basis `e11, e12, e21, e22`; the unit `e11 + e22` is not
/// a basis vector.
pub fn matrix_algebra(field: Field) -> DgAlgebra {
    let e = |i: usize, j: usize| 2 * i + j;
    let mut mult = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                mult.push((e(i, j), e(j, l), e(i, l), field.one()));
            }
        }
    }
    DgAlgebra::new(
        field,
        vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
        vec![0; 4],
        [(0, field.one()), (3, field.one())].into(),
        mult,
        [],
    )
    .expect("matrix algebra table")
}

/// `k[t]/(t^2) (x) Lambda(e)` with `|e| = -1`, `|t| = 0` and `d e = t`.
pub fn koszul(field: Field) -> DgAlgebra {
    // basis 1, t, e, te
    from_table(
        field,
        &["1", "t", "e", "te"],
        &[0, 0, -1, -1],
        &[
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (0, 3, 3, 1),
            (1, 0, 1, 1),
            (2, 0, 2, 1),
            (3, 0, 3, 1),
            (1, 2, 3, 1),
            (2, 1, 3, 1),
        ],
        &[(2, 1, 1)],
    )
}

/// Directed category with objects `1..=n` listed in order.
fn directed(field: Field, homdims: Vec<Vec<usize>>, compositions: &[(usize, usize, usize, usize, usize, usize, i64)]) -> DirectedAlgebra {
    let n = homdims.len();
    let data = DirectedCategoryData {
        objects: (1..=n).map(|i| i.to_string()).collect(),
        homdims,
        compositions: compositions
            .iter()
            .map(|&(i, j, l, p, q, r, c)| (i, j, l, p, q, r, field.from_i64(c)))
            .collect(),
    };
    directed_algebra(field, data).expect("corpus quiver")
}

/// Path algebra of `1 -> 2`.
pub fn a2(field: Field) -> DirectedAlgebra {
    directed(field, vec![vec![1, 1], vec![0, 1]], &[])
}

/// Path algebra of `1 -> 2 -> 3`.
pub fn a3(field: Field) -> DirectedAlgebra {
    directed(field, vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]], &[(0, 1, 2, 0, 0, 0, 1)])
}

/// Path algebra of `1 -> 2 -> 3` modulo the composite.
pub fn a3_with_relation(field: Field) -> DirectedAlgebra {
    directed(field, vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]], &[])
}

/// Two parallel arrows `1 => 2`.
pub fn kronecker(field: Field) -> DirectedAlgebra {
    directed(field, vec![vec![1, 2], vec![0, 1]], &[])
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn scalars(field: Field, rows: &[Vec<i64>]) -> Vec<Vec<FieldElement>> {
    rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()
}

/// `Z/2 = {1, -1}` acting on `k^2` by `-1`, inside `SL(2)`.
pub fn z2_sl2(field: Field) -> FiniteGroupData {
    let minus = SparseMatrix::identity(field, 2).scale(&field.from_i64(-1));
    FiniteGroupData::new(
        field,
        cyclic_table(2),
        scalars(field, &[vec![1, 1], vec![1, -1]]),
        Some(vec![SparseMatrix::identity(field, 2), minus]),
        true,
    )
    .expect("Z/2 data")
}

/// The trivial group acting on `k^n`.
pub fn trivial_group(field: Field, n: usize) -> FiniteGroupData {
    FiniteGroupData::new(field, vec![vec![0]], scalars(field, &[vec![1]]), Some(vec![SparseMatrix::identity(field, n)]), true)
        .expect("trivial group")
}

/// Permutations of three letters in lexicographic order.
pub fn s3(field: Field) -> FiniteGroupData {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
        .collect();
    let sign: Vec<i64> = perms
        .iter()
        .map(|p| {
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            if inv % 2 == 0 { 1 } else { -1 }
        })
        .collect();
    let standard: Vec<i64> = perms.iter().map(|p| (0..3).filter(|&i| p[i] == i).count() as i64 - 1).collect();
    FiniteGroupData::new(field, table, scalars(field, &[vec![1; 6], sign, standard]), None, false).expect("S3 data")
}

/// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k`.
pub fn q8(field: Field) -> FiniteGroupData {
    // units 0..4 are 1, i, j, k; unit products as (sign, unit)
    let unit = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let split = |g: usize| (g % 2 == 1, g / 2);
    let join = |neg: bool, u: usize| 2 * u + usize::from(neg);
    let table = (0..8)
        .map(|g| {
            (0..8)
                .map(|h| {
                    let (sg, ug) = split(g);
                    let (sh, uh) = split(h);
                    let (s, u) = unit(ug, uh);
                    join(sg ^ sh ^ s, u)
                })
                .collect()
        })
        .collect();
    let chars = [
        vec![1; 8],
        vec![1, 1, 1, 1, -1, -1, -1, -1],
        vec![1, 1, -1, -1, 1, 1, -1, -1],
        vec![1, 1, -1, -1, -1, -1, 1, 1],
        vec![2, -2, 0, 0, 0, 0, 0, 0],
    ];
    FiniteGroupData::new(field, table, scalars(field, &chars), None, false).expect("Q8 data")
}

/// `Z/3` over `F_7`, where `2` is a primitive cube root of unity, acting on
/// `F_7^2` by `diag(w, w^2)` inside `SL(2)`.
pub fn z3_f7() -> FiniteGroupData {
    let f = Field::prime(7).expect("7 is prime");
    let w = 2i64;
    let chars = scalars(f, &[vec![1, 1, 1], vec![1, w, w * w], vec![1, w * w, w]]);
    let action = (0..3u32)
        .map(|k| SparseMatrix::from_i64(f, &[vec![w.pow(k), 0], vec![0, (w * w).pow(k)]]))
        .collect();
    FiniteGroupData::new(f, cyclic_table(3), chars, Some(action), true).expect("Z/3 data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        let f = Field::Rational;
        for a in [truncated_poly(f), dual_numbers(f), exterior(f, 2), exterior(f, 3), matrix_algebra(f), koszul(f)] {
            assert!(a.validate().is_ok(), "{:?} {:?}", a.labels(), a.validate());
        }
        assert_eq!(exterior(f, 2).dim(), 4);
        assert_eq!(exterior(f, 1), dual_numbers(f).relabeled(exterior(f, 1).labels().to_vec()));
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b01), None);
    }
}
