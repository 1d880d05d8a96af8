//! Finite groups given by multiplication and character tables, their group
//! algebras, the cross products `Lambda(V, G)`, and the orbifold pairing.

use thiserror::Error;

use crate::algebra::DgAlgebra;
use crate::corpus::{exterior_basis, wedge_sign};
use crate::euler::pair_supertrace;
use crate::hochschild::HochschildChain;
use crate::linalg::{add_entry, scale_vec, SparseMatrix, SparseVec};
use crate::scalar::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not a group: {0}")]
    Table(String),
    #[error("characters {0} and {1} violate orthogonality")]
    Orthogonality(usize, usize),
    #[error("character {0} has the wrong length")]
    CharacterLength(usize),
    #[error("action matrices do not form a representation: {0}")]
    Action(String),
    #[error("no action on V was supplied")]
    NoAction,
    #[error("characteristic {0} divides the group order or a needed integer")]
    Characteristic(u64),
    #[error("character index {0} out of range")]
    Character(usize),
}

/// A finite group with identity `0`, irreducible characters as value vectors
/// over the group elements, and an optional linear action on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupData {
    pub field: Field,
    pub table: Vec<Vec<usize>>,
    pub characters: Vec<Vec<FieldElement>>,
    /// `action[g]` is the matrix of `g` on `V`, acting on column vectors.
    pub action: Option<Vec<SparseMatrix>>,
    /// Whether the action is claimed to land in `SL(V)`.
    pub unimodular: bool,
}

impl FiniteGroupData {
    pub fn new(
        field: Field,
        table: Vec<Vec<usize>>,
        characters: Vec<Vec<FieldElement>>,
        action: Option<Vec<SparseMatrix>>,
        unimodular: bool,
    ) -> Result<Self, GroupError> {
        let g = FiniteGroupData {
            field,
            table,
            characters,
            action,
            unimodular,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == 0).expect("validated group")
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order();
        if n == 0 || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::Table("table must be square with entries below the order".into()));
        }
        for g in 0..n {
            if self.table[0][g] != g || self.table[g][0] != g {
                return Err(GroupError::Table("element 0 is not the identity".into()));
            }
            if !(0..n).any(|h| self.table[g][h] == 0) {
                return Err(GroupError::Table(format!("element {g} has no inverse")));
            }
            for h in 0..n {
                for k in 0..n {
                    if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]] {
                        return Err(GroupError::Table(format!("({g} {h}) {k} != {g} ({h} {k})")));
                    }
                }
            }
        }
        let order = self.field.from_i64(n as i64);
        if order.is_zero() {
            return Err(GroupError::Characteristic(self.field.characteristic()));
        }
        for (r, chi) in self.characters.iter().enumerate() {
            if chi.len() != n {
                return Err(GroupError::CharacterLength(r));
            }
        }
        for (r, a) in self.characters.iter().enumerate() {
            for (s, b) in self.characters.iter().enumerate() {
                let mut acc = self.field.zero();
                for g in 0..n {
                    acc += &(&a[g] * &b[self.inverse(g)]);
                }
                let expected = if r == s { order.clone() } else { self.field.zero() };
                if acc != expected {
                    return Err(GroupError::Orthogonality(r, s));
                }
            }
        }
        if let Some(action) = &self.action {
            if action.len() != n {
                return Err(GroupError::Action("one matrix per element is required".into()));
            }
            let dim = action[0].rows();
            if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
                return Err(GroupError::Action("matrices must be square of one size".into()));
            }
            for g in 0..n {
                for h in 0..n {
                    if action[g].mul(&action[h]) != action[self.mul(g, h)] {
                        return Err(GroupError::Action(format!("rho({g}) rho({h}) != rho({g}{h})")));
                    }
                }
                if self.unimodular && !action[g].determinant().map(|d| d.is_one()).unwrap_or(false) {
                    return Err(GroupError::Action(format!("det rho({g}) != 1")));
                }
            }
        }
        Ok(())
    }

    /// `dim rho = chi_rho(1)`.
    pub fn dimension(&self, rho: usize) -> FieldElement {
        self.characters[rho][0].clone()
    }

    pub fn v_dim(&self) -> Option<usize> {
        self.action.as_ref().map(|a| a[0].rows())
    }

    /// Character of `V`.
    pub fn v_character(&self) -> Result<Vec<FieldElement>, GroupError> {
        let action = self.action.as_ref().ok_or(GroupError::NoAction)?;
        Ok(action
            .iter()
            .map(|m| {
                let mut t = self.field.zero();
                for i in 0..m.rows() {
                    t += &m.get(i, i);
                }
                t
            })
            .collect())
    }

    /// Characters of `Lambda^n V` for `n = 0..=dim V` by Newton's identities
    /// `n e_n = sum_{k=1}^n (-1)^{k-1} e_{n-k} p_k` with `p_k(g) = chi_V(g^k)`.
    pub fn exterior_power_characters(&self) -> Result<Vec<Vec<FieldElement>>, GroupError> {
        let chi_v = self.v_character()?;
        let dim = self.v_dim().expect("action present");
        let f = self.field;
        let n = self.order();
        let mut e: Vec<Vec<FieldElement>> = vec![vec![f.one(); n]];
        for m in 1..=dim {
            let inv = f.from_i64(m as i64).inverse().ok_or(GroupError::Characteristic(f.characteristic()))?;
            let row = (0..n)
                .map(|g| {
                    let mut acc = f.zero();
                    for k in 1..=m {
                        let term = &e[m - k][g] * &chi_v[self.power(g, k)];
                        acc += &term.signed(k % 2 == 0);
                    }
                    &acc * &inv
                })
                .collect();
            e.push(row);
        }
        Ok(e)
    }

    /// `d^W_{sigma rho}`: multiplicity of `sigma` in `W (x) rho`.
    pub fn multiplicity(&self, w: &[FieldElement], sigma: usize, rho: usize) -> FieldElement {
        let f = self.field;
        let mut acc = f.zero();
        for g in 0..self.order() {
            acc += &(&(&w[g] * &self.characters[rho][g]) * &self.characters[sigma][self.inverse(g)]);
        }
        &acc * &f.from_i64(self.order() as i64).inverse().expect("order invertible")
    }
}

/// `k[G]` with basis the group elements.
pub fn group_algebra(g: &FiniteGroupData) -> DgAlgebra {
    let n = g.order();
    let f = g.field;
    let mut mult = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mult.push((a, b, g.mul(a, b), f.one()));
        }
    }
    let labels = (0..n).map(|a| if a == 0 { "1".to_string() } else { format!("g{a}") }).collect();
    DgAlgebra::new(f, labels, vec![0; n], [(0, f.one())].into(), mult, []).expect("group table")
}

/// Coefficients of `g(v_T)` in the basis `v_U` of `Lambda^{|T|} V`, from the
/// minors of the action matrix.
fn exterior_action(m: &SparseMatrix, t: u32, basis: &[u32]) -> Vec<(u32, FieldElement)> {
    let cols: Vec<usize> = (0..32).filter(|b| t >> b & 1 == 1).collect();
    let mut out = Vec::new();
    for &u in basis {
        if u.count_ones() != t.count_ones() {
            continue;
        }
        let rows: Vec<usize> = (0..32).filter(|b| u >> b & 1 == 1).collect();
        let minor = if rows.is_empty() {
            m.field().one()
        } else {
            m.submatrix(&rows, &cols).determinant().expect("square minor")
        };
        if !minor.is_zero() {
            out.push((u, minor));
        }
    }
    out
}

/// `Lambda(V, G)` with basis `v_S (x) g` at index `s * |G| + g`, where `s` is
/// the position of `S` in [`exterior_basis`], graded by `|S|`, and
/// `(v (x) g)(w (x) h) = (v ^ g(w)) (x) gh`. The group algebra sits in the
/// first `|G|` indices.
pub fn lambda_vg(g: &FiniteGroupData) -> Result<DgAlgebra, GroupError> {
    let action = g.action.as_ref().ok_or(GroupError::NoAction)?;
    let dim_v = action[0].rows();
    let f = g.field;
    let n = g.order();
    let basis = exterior_basis(dim_v);
    let pos = |m: u32| basis.iter().position(|&b| b == m).expect("mask");
    let idx = |m: u32, x: usize| pos(m) * n + x;
    let mut mult = Vec::new();
    for &s in &basis {
        for x in 0..n {
            for &t in &basis {
                let moved = exterior_action(&action[x], t, &basis);
                for y in 0..n {
                    let mut prod = SparseVec::new();
                    for (u, c) in &moved {
                        if let Some(sign) = wedge_sign(s, *u) {
                            add_entry(&mut prod, idx(s | u, g.mul(x, y)), &(c * &f.from_i64(sign)));
                        }
                    }
                    for (k, c) in prod {
                        mult.push((idx(s, x), idx(t, y), k, c));
                    }
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(basis.len() * n);
    let mut degrees = Vec::with_capacity(basis.len() * n);
    for &s in &basis {
        let v = if s == 0 {
            String::new()
        } else {
            (0..dim_v).filter(|b| s >> b & 1 == 1).map(|b| format!("v{b}")).collect::<Vec<_>>().join("^")
        };
        for x in 0..n {
            let gl = if x == 0 { "1".to_string() } else { format!("g{x}") };
            labels.push(if v.is_empty() { gl } else { format!("{v}.{gl}") });
            degrees.push(s.count_ones() as i64);
        }
    }
    Ok(DgAlgebra::new(f, labels, degrees, [(0, f.one())].into(), mult, []).expect("cross product table"))
}

/// `pi_rho = (dim rho / |G|) sum_g chi_rho(g^{-1}) g`, in group algebra
/// coordinates (which are also the degree-0 coordinates of `Lambda(V, G)`).
pub fn central_idempotent(g: &FiniteGroupData, rho: usize) -> Result<SparseVec, GroupError> {
    let chi = g.characters.get(rho).ok_or(GroupError::Character(rho))?;
    let f = g.field;
    let inv = f
        .from_i64(g.order() as i64)
        .inverse()
        .ok_or(GroupError::Characteristic(f.characteristic()))?;
    let scale = &g.dimension(rho) * &inv;
    let mut out = SparseVec::new();
    for x in 0..g.order() {
        add_entry(&mut out, x, &chi[g.inverse(x)]);
    }
    Ok(scale_vec(&out, &scale))
}

/// `dim rho1 dim rho2 sum_n (-1)^n d^{Lambda^n V}_{rho1 rho2}`.
pub fn orbifold_pairing(g: &FiniteGroupData, rho1: usize, rho2: usize) -> Result<FieldElement, GroupError> {
    for r in [rho1, rho2] {
        if r >= g.characters.len() {
            return Err(GroupError::Character(r));
        }
    }
    let powers = g.exterior_power_characters()?;
    let mut acc = g.field.zero();
    for (n, w) in powers.iter().enumerate() {
        acc += &g.multiplicity(w, rho1, rho2).signed(n % 2 == 1);
    }
    Ok(&(&acc * &g.dimension(rho1)) * &g.dimension(rho2))
}

/// Character-theoretic Gram matrix over all irreducibles.
pub fn orbifold_gram(g: &FiniteGroupData) -> Result<SparseMatrix, GroupError> {
    let r = g.characters.len();
    let mut m = SparseMatrix::zero(g.field, r, r);
    for a in 0..r {
        for b in 0..r {
            m.set(a, b, orbifold_pairing(g, a, b)?);
        }
    }
    Ok(m)
}

/// The same Gram matrix computed directly as `str(L(pi_rho1) R(pi_rho2))` on `Lambda(V, G)`.
pub fn orbifold_gram_direct(g: &FiniteGroupData) -> Result<SparseMatrix, GroupError> {
    let alg = lambda_vg(g)?;
    let r = g.characters.len();
    let pis: Vec<HochschildChain> = (0..r)
        .map(|k| central_idempotent(g, k).map(|x| HochschildChain::from_element(g.field, &x)))
        .collect::<Result<_, _>>()?;
    let mut m = SparseMatrix::zero(g.field, r, r);
    for a in 0..r {
        for b in 0..r {
            m.set(a, b, pair_supertrace(&alg, &pis[a], &pis[b]));
        }
    }
    Ok(m)
}
