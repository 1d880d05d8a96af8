//! Directed categories: algebras `A = sum Hom(v_s, v_t)` whose hom spaces
//! are unitriangular in the listed object order, their finite dimensional
//! right modules, and projective resolutions by kernel peeling.
//!
//! Products are composition in diagrammatic order: for `f: v_i -> v_j` and
//! `g: v_j -> v_l` the product `f g` is `g o f`, so `1_i A 1_j = Hom(v_i, v_j)`,
//! `P_i = 1_i A` and `Hom(P_i, P_j) = 1_j A 1_i`. With this order the last
//! projective is simple and Ringel's formula holds as stated.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::algebra::DgAlgebra;
use crate::linalg::{add_entry, RowReduced, SparseMatrix, SparseVec};
use crate::perfect::{ext_dims, ModuleError, MorphismMatrix, PerfectModule, TwistedModule};
use crate::random::{self, TestRng};
use crate::scalar::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectedError {
    #[error("hom dimension matrix is not {0}x{0}")]
    Shape(usize),
    #[error("dim Hom(v{0}, v{0}) must be 1")]
    Diagonal(usize),
    #[error("Hom(v{0}, v{1}) must vanish for a directed order")]
    NotDirected(usize, usize),
    #[error("composition entry {0} is out of range")]
    Composition(usize),
    #[error("composition is not associative: {0}")]
    Associativity(String),
    #[error("object index {0} out of range")]
    Object(usize),
    #[error("module action is inconsistent: {0}")]
    Action(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Objects listed in a directed order with their hom dimensions
/// `homdims[i][j] = dim Hom(v_i, v_j)`. A composition `(i, j, l, p, q, r, c)`
/// says basis map `p` of `Hom(v_i, v_j)` followed by basis map `q` of
/// `Hom(v_j, v_l)` has coefficient `c` on basis map `r` of `Hom(v_i, v_l)`;
/// compositions with identities are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedCategoryData {
    pub objects: Vec<String>,
    pub homdims: Vec<Vec<usize>>,
    pub compositions: Vec<(usize, usize, usize, usize, usize, usize, FieldElement)>,
}

impl DirectedCategoryData {
    pub fn validate_shape(&self) -> Result<(), DirectedError> {
        let n = self.objects.len();
        if self.homdims.len() != n || self.homdims.iter().any(|r| r.len() != n) {
            return Err(DirectedError::Shape(n));
        }
        for i in 0..n {
            if self.homdims[i][i] != 1 {
                return Err(DirectedError::Diagonal(i));
            }
            for j in 0..i {
                if self.homdims[i][j] != 0 {
                    return Err(DirectedError::NotDirected(i, j));
                }
            }
        }
        for (k, &(i, j, l, p, q, r, _)) in self.compositions.iter().enumerate() {
            let ok = i < n
                && j < n
                && l < n
                && p < self.homdims[i][j]
                && q < self.homdims[j][l]
                && r < self.homdims[i][l]
                && i != j
                && j != l;
            if !ok {
                return Err(DirectedError::Composition(k));
            }
        }
        Ok(())
    }
}

/// A directed algebra with its block structure.
#[derive(Clone, Debug)]
pub struct DirectedAlgebra {
    data: DirectedCategoryData,
    algebra: Arc<DgAlgebra>,
    /// `blocks[i][j]` lists the basis indices of `Hom(v_i, v_j)`.
    blocks: Vec<Vec<Vec<usize>>>,
}

pub fn directed_algebra(field: Field, data: DirectedCategoryData) -> Result<DirectedAlgebra, DirectedError> {
    data.validate_shape()?;
    let n = data.objects.len();
    let mut blocks = vec![vec![Vec::new(); n]; n];
    let mut labels = Vec::new();
    for i in 0..n {
        for j in i..n {
            for p in 0..data.homdims[i][j] {
                blocks[i][j].push(labels.len());
                labels.push(if i == j {
                    format!("1_{}", data.objects[i])
                } else if data.homdims[i][j] == 1 {
                    format!("{}->{}", data.objects[i], data.objects[j])
                } else {
                    format!("{}->{}#{}", data.objects[i], data.objects[j], p)
                });
            }
        }
    }
    let dim = labels.len();
    let mut mult = Vec::new();
    for i in 0..n {
        let id_i = blocks[i][i][0];
        for j in i..n {
            for &x in &blocks[i][j] {
                mult.push((id_i, x, x, field.one()));
                let id_j = blocks[j][j][0];
                if i != j {
                    mult.push((x, id_j, x, field.one()));
                }
            }
        }
    }
    for (i, j, l, p, q, r, c) in &data.compositions {
        mult.push((blocks[*i][*j][*p], blocks[*j][*l][*q], blocks[*i][*l][*r], c.clone()));
    }
    let unit: SparseVec = (0..n).map(|i| (blocks[i][i][0], field.one())).collect();
    let algebra = DgAlgebra::new(field, labels, vec![0; dim], unit, mult, [])
        .map_err(|e| DirectedError::Associativity(e.to_string()))?;
    let report = algebra.validate();
    if !report.is_ok() {
        return Err(DirectedError::Associativity(format!("{:?}", report.failures.first())));
    }
    Ok(DirectedAlgebra {
        data,
        algebra: Arc::new(algebra),
        blocks,
    })
}

impl DirectedAlgebra {
    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn data(&self) -> &DirectedCategoryData {
        &self.data
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn objects(&self) -> usize {
        self.data.objects.len()
    }

    /// `d_ij = dim Hom(v_i, v_j)`.
    pub fn homdim_matrix(&self) -> SparseMatrix {
        let f = self.field();
        let n = self.objects();
        let mut d = SparseMatrix::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                d.set(i, j, f.from_i64(self.data.homdims[i][j] as i64));
            }
        }
        d
    }

    pub fn idempotent_index(&self, i: usize) -> usize {
        self.blocks[i][i][0]
    }

    pub fn idempotent(&self, i: usize) -> SparseVec {
        self.algebra.basis(self.idempotent_index(i))
    }

    /// Basis indices of `1_i A`.
    fn projective_basis(&self, i: usize) -> Vec<usize> {
        (i..self.objects()).flat_map(|j| self.blocks[i][j].iter().copied()).collect()
    }

    fn check_object(&self, i: usize) -> Result<(), DirectedError> {
        if i < self.objects() {
            Ok(())
        } else {
            Err(DirectedError::Object(i))
        }
    }

    /// `P_i` as the free module `A` cut down by the strict idempotent `1_i`.
    pub fn projective_module(&self, i: usize) -> Result<PerfectModule, DirectedError> {
        self.check_object(i)?;
        let m = TwistedModule::free(self.algebra.clone(), vec![0]);
        let pi = MorphismMatrix::diagonal(vec![self.idempotent(i)]);
        Ok(PerfectModule::summand(m, &pi)?)
    }

    /// `P_i = 1_i A` as a right module.
    pub fn projective_representation(&self, i: usize) -> Result<RightModule, DirectedError> {
        self.check_object(i)?;
        let basis = self.projective_basis(i);
        let pos = |t: usize| basis.iter().position(|&b| b == t);
        let f = self.field();
        let action = (0..self.algebra.dim())
            .map(|k| {
                let cols: Vec<SparseVec> = basis
                    .iter()
                    .map(|&t| {
                        let mut v = SparseVec::new();
                        if let Some(p) = self.algebra.basis_product(t, k) {
                            for (&u, c) in p {
                                add_entry(&mut v, pos(u).expect("1_i A is a right ideal"), c);
                            }
                        }
                        v
                    })
                    .collect();
                SparseMatrix::from_columns(f, basis.len(), &cols)
            })
            .collect();
        RightModule::new(self.algebra.clone(), basis.len(), action)
    }

    /// The simple module `S_i`: `k` with `1_i` acting by 1 and everything else by 0.
    pub fn simple_representation(&self, i: usize) -> Result<RightModule, DirectedError> {
        self.check_object(i)?;
        let f = self.field();
        let idx = self.idempotent_index(i);
        let action = (0..self.algebra.dim())
            .map(|k| if k == idx { SparseMatrix::identity(f, 1) } else { SparseMatrix::zero(f, 1, 1) })
            .collect();
        RightModule::new(self.algebra.clone(), 1, action)
    }

    /// `(dim M)_j = dim M 1_j = dim Hom(P_j, M)`.
    pub fn dim_vector(&self, m: &RightModule) -> Vec<usize> {
        (0..self.objects()).map(|j| m.action[self.idempotent_index(j)].rank()).collect()
    }

    /// `(dim M)_j` read off the Ext oracle as `dim Hom(P_j, P(M))` in degree 0,
    /// together with a check that higher Ext groups vanish.
    pub fn dim_vector_via_chi(&self, resolution: &PerfectModule) -> Result<Vec<usize>, DirectedError> {
        let mut out = Vec::with_capacity(self.objects());
        for j in 0..self.objects() {
            let dims = ext_dims(&self.projective_module(j)?, resolution)?;
            if dims.keys().any(|&n| n != 0) {
                return Err(DirectedError::Action(format!("Hom(P_{j}, resolution) has cohomology outside degree 0")));
            }
            out.push(dims.get(&0).copied().unwrap_or(0));
        }
        Ok(out)
    }

    /// A projective resolution by kernel peeling: cover `M` by
    /// `sum_j Hom(P_j, M) (x) P_j`, then repeat on the kernel. Level `p` sits
    /// at shift `p`; the idempotent is `diag(1_j)` over all summands.
    pub fn resolution(&self, m: &RightModule) -> Result<PerfectModule, DirectedError> {
        let alg = &self.algebra;
        let mut summands: Vec<(usize, i64)> = Vec::new();
        let mut alpha_entries: Vec<(usize, usize, SparseVec)> = Vec::new();
        // `embed` maps the current module into the previous cover's space.
        let mut current = m.clone();
        let mut embed: Option<(usize, Vec<(usize, usize)>, Vec<SparseVec>)> = None;
        let mut level = 0i64;
        while current.dim > 0 {
            if level as usize > self.objects() + 1 {
                return Err(DirectedError::Action("resolution failed to terminate".into()));
            }
            let mut gens: Vec<(usize, SparseVec)> = Vec::new();
            for j in (0..self.objects()).rev() {
                let act = &current.action[self.idempotent_index(j)];
                let mut rr = RowReduced::new(self.field(), current.dim, Vec::new());
                for c in 0..current.dim {
                    let v = act.column(c);
                    if rr.insert(&v) {
                        gens.push((j, v));
                    }
                }
            }
            let first = summands.len();
            for (j, _) in &gens {
                summands.push((*j, level));
            }
            if let Some((prev_first, cover_basis, kernel_rows)) = &embed {
                for (g, (_, v)) in gens.iter().enumerate() {
                    let mut in_cover = SparseVec::new();
                    for (&r, c) in v {
                        crate::linalg::axpy(&mut in_cover, c, &kernel_rows[r]);
                    }
                    let mut entries: std::collections::BTreeMap<usize, SparseVec> = Default::default();
                    for (&col, c) in &in_cover {
                        let (h, t) = cover_basis[col];
                        add_entry(entries.entry(h).or_default(), t, c);
                    }
                    for (h, a) in entries {
                        alpha_entries.push((prev_first + h, first + g, a));
                    }
                }
            }
            // the cover F = sum_g P_{j_g} and the map p: F -> current
            let mut cover_basis: Vec<(usize, usize)> = Vec::new();
            for (g, (j, _)) in gens.iter().enumerate() {
                for t in self.projective_basis(*j) {
                    cover_basis.push((g, t));
                }
            }
            let cols: Vec<SparseVec> = cover_basis
                .iter()
                .map(|&(g, t)| current.action[t].apply(&gens[g].1))
                .collect();
            let p = SparseMatrix::from_columns(self.field(), current.dim, &cols);
            let kernel = RowReduced::new(self.field(), cover_basis.len(), p.kernel_sparse());
            let kernel_rows: Vec<SparseVec> = kernel.rows().to_vec();
            let pos = |g: usize, t: usize| cover_basis.iter().position(|&x| x == (g, t));
            let cover_action = |v: &SparseVec, k: usize| -> SparseVec {
                let mut out = SparseVec::new();
                for (&col, c) in v {
                    let (g, t) = cover_basis[col];
                    if let Some(prod) = alg.basis_product(t, k) {
                        for (&u, x) in prod {
                            add_entry(&mut out, pos(g, u).expect("right ideal"), &(c * x));
                        }
                    }
                }
                out
            };
            let pivots = kernel.pivots().to_vec();
            let action: Vec<SparseMatrix> = (0..alg.dim())
                .map(|k| {
                    let cols: Vec<SparseVec> = kernel_rows
                        .iter()
                        .map(|row| {
                            let img = cover_action(row, k);
                            pivots
                                .iter()
                                .enumerate()
                                .filter_map(|(r, &pc)| img.get(&pc).map(|c| (r, c.clone())))
                                .collect()
                        })
                        .collect();
                    SparseMatrix::from_columns(self.field(), kernel_rows.len(), &cols)
                })
                .collect();
            current = RightModule {
                algebra: alg.clone(),
                dim: kernel_rows.len(),
                action,
            };
            embed = Some((first, cover_basis, kernel_rows));
            level += 1;
        }
        let shifts: Vec<i64> = summands.iter().map(|&(_, s)| s).collect();
        let mut alpha = MorphismMatrix::zero(shifts.len(), shifts.len());
        for (i, j, a) in alpha_entries {
            alpha.set(i, j, a);
        }
        let module = TwistedModule::new(alg.clone(), shifts, alpha)?;
        let pi = MorphismMatrix::diagonal(summands.iter().map(|&(j, _)| self.idempotent(j)).collect());
        Ok(PerfectModule::summand(module, &pi)?)
    }

    pub fn simple_resolution(&self, i: usize) -> Result<PerfectModule, DirectedError> {
        self.resolution(&self.simple_representation(i)?)
    }

    /// The cokernel of a random map between random sums of projectives.
    pub fn random_module(&self, rng: &mut TestRng) -> Result<RightModule, DirectedError> {
        let n = self.objects();
        let top: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect();
        let rels: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..n)).collect();
        let f = self.field();
        let reps: Vec<RightModule> = top.iter().map(|&j| self.projective_representation(j)).collect::<Result<_, _>>()?;
        let cover = RightModule::direct_sum(self.algebra.clone(), &reps);
        let offsets: Vec<usize> = reps
            .iter()
            .scan(0, |acc, r| {
                let o = *acc;
                *acc += r.dim;
                Some(o)
            })
            .collect();
        let mut relations = Vec::new();
        for &h in &rels {
            // image of the generator of P_h: random elements of 1_j A 1_h in each top summand
            let mut v = SparseVec::new();
            for (g, &j) in top.iter().enumerate() {
                let basis = self.projective_basis(j);
                for &t in &self.blocks[j][h] {
                    let pos = basis.iter().position(|&b| b == t).expect("block in 1_j A");
                    add_entry(&mut v, offsets[g] + pos, &random::coeff_or_zero(rng, f));
                }
            }
            for t in self.projective_basis(h) {
                relations.push(cover.action[t].apply(&v));
            }
        }
        Ok(cover.quotient(&relations))
    }
}

/// A finite dimensional right module: `action[k]` is the matrix of `m -> m e_k`.
#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Arc<DgAlgebra>,
    dim: usize,
    action: Vec<SparseMatrix>,
}

impl RightModule {
    pub fn new(algebra: Arc<DgAlgebra>, dim: usize, action: Vec<SparseMatrix>) -> Result<Self, DirectedError> {
        let m = RightModule { algebra, dim, action };
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, k: usize) -> &SparseMatrix {
        &self.action[k]
    }

    pub fn validate(&self) -> Result<(), DirectedError> {
        let alg = &self.algebra;
        let f = alg.field();
        if self.action.len() != alg.dim() {
            return Err(DirectedError::Action("wrong number of action matrices".into()));
        }
        let op = |x: &SparseVec| {
            let mut m = SparseMatrix::zero(f, self.dim, self.dim);
            for (&k, c) in x {
                m = m.add_scaled(&self.action[k], c);
            }
            m
        };
        if !op(alg.unit()).is_identity() {
            return Err(DirectedError::Action("unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[j].mul(&self.action[i]);
                let rhs = alg.basis_product(i, j).map(op).unwrap_or_else(|| SparseMatrix::zero(f, self.dim, self.dim));
                if lhs != rhs {
                    return Err(DirectedError::Action(format!("(m e{i}) e{j} != m (e{i} e{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(algebra: Arc<DgAlgebra>, parts: &[RightModule]) -> RightModule {
        let f = algebra.field();
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let action = (0..algebra.dim())
            .map(|k| {
                let mut m = SparseMatrix::zero(f, dim, dim);
                let mut o = 0;
                for p in parts {
                    m.add_block(o, o, &p.action[k], &f.one());
                    o += p.dim;
                }
                m
            })
            .collect();
        RightModule { algebra, dim, action }
    }

    /// Quotient by the submodule spanned by `relations`, which must be closed
    /// under the action. Coordinates are the non-pivot columns.
    pub fn quotient(&self, relations: &[SparseVec]) -> RightModule {
        let f = self.algebra.field();
        let rr = RowReduced::new(f, self.dim, relations.to_vec());
        let free = rr.free_columns();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<SparseVec> = free
                    .iter()
                    .map(|&c| {
                        let img = rr.reduce(&a.column(c));
                        free.iter().enumerate().filter_map(|(r, fc)| img.get(fc).map(|x| (r, x.clone()))).collect()
                    })
                    .collect();
                SparseMatrix::from_columns(f, free.len(), &cols)
            })
            .collect();
        RightModule {
            algebra: self.algebra.clone(),
            dim: free.len(),
            action,
        }
    }
}

/// Ringel's form `sum_{ij} (dim M)_i (d^{-1})_ij (dim N)_j`.
pub fn ringel_chi(dim_m: &[usize], dim_n: &[usize], d: &SparseMatrix) -> Result<FieldElement, DirectedError> {
    let f = d.field();
    let inv = d.invert().map_err(|_| DirectedError::Shape(d.rows()))?;
    let mut acc = f.zero();
    for (i, j, c) in inv.entries() {
        acc += &(&(c * &f.from_i64(dim_m[i] as i64)) * &f.from_i64(dim_n[j] as i64));
    }
    Ok(acc)
}
