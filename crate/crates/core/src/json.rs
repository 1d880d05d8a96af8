//! JSON descriptions of algebras, modules, quivers, groups, Frobenius data
//! and Hochschild chains. Scalars may be written as integers or as strings
//! such as `"-3/4"`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, DgAlgebra};
use crate::constructors::{directed_algebra, DirectedAlgebra, DirectedCategoryData, DirectedError, FiniteGroupData, FrobeniusData, FrobeniusError};
use crate::hochschild::{BarWord, HochschildChain};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::perfect::{ModuleError, MorphismMatrix, PerfectModule, TwistedModule};
use crate::scalar::{Field, FieldElement, ScalarError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Directed(#[from] DirectedError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error("{0}")]
    Shape(String),
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn parse(&self, field: Field) -> Result<FieldElement, ScalarError> {
        match self {
            Scalar::Int(n) => Ok(field.from_i64(*n)),
            Scalar::Text(s) => field.parse_element(s),
        }
    }

    pub fn from_element(x: &FieldElement) -> Self {
        Scalar::Text(x.to_string())
    }
}

fn parse_all(field: Field, xs: &[Scalar]) -> Result<Vec<FieldElement>, ScalarError> {
    xs.iter().map(|x| x.parse(field)).collect()
}

fn sparse(field: Field, xs: &[Scalar]) -> Result<SparseVec, ScalarError> {
    let mut v = SparseVec::new();
    for (k, x) in xs.iter().enumerate() {
        let c = x.parse(field)?;
        if !c.is_zero() {
            v.insert(k, c);
        }
    }
    Ok(v)
}

fn dense(field: Field, v: &SparseVec, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|k| Scalar::from_element(v.get(&k).unwrap_or(&field.zero())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub basis: Vec<String>,
    pub degrees: Vec<i64>,
    pub unit: Vec<Scalar>,
    #[serde(default)]
    pub mult: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default)]
    pub diff: Vec<(usize, usize, Scalar)>,
}

impl AlgebraSpec {
    /// Checks shapes only; the axioms are left to [`DgAlgebra::validate`].
    pub fn build(&self, field: Field) -> Result<DgAlgebra, JsonError> {
        if self.unit.len() != self.basis.len() {
            return Err(JsonError::Shape(format!("unit has {} entries for {} basis vectors", self.unit.len(), self.basis.len())));
        }
        let mult = self
            .mult
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, c.parse(field)?)))
            .collect::<Result<Vec<_>, ScalarError>>()?;
        let diff = self
            .diff
            .iter()
            .map(|(i, k, c)| Ok((*i, *k, c.parse(field)?)))
            .collect::<Result<Vec<_>, ScalarError>>()?;
        Ok(DgAlgebra::new(field, self.basis.clone(), self.degrees.clone(), sparse(field, &self.unit)?, mult, diff)?)
    }

    pub fn from_algebra(alg: &DgAlgebra) -> Self {
        let n = alg.dim();
        let mut mult = Vec::new();
        let mut diff = Vec::new();
        for i in 0..n {
            for (j, p) in alg.products_from(i) {
                for (&k, c) in p {
                    mult.push((i, j, k, Scalar::from_element(c)));
                }
            }
            for (&k, c) in alg.d_basis(i) {
                diff.push((i, k, Scalar::from_element(c)));
            }
        }
        AlgebraSpec {
            basis: alg.labels().to_vec(),
            degrees: alg.degrees().to_vec(),
            unit: dense(alg.field(), alg.unit(), n),
            mult,
            diff,
        }
    }
}

/// A dense coefficient vector in the basis of the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementSpec {
    pub coeffs: Vec<Scalar>,
}

pub type MatrixEntries = Vec<(usize, usize, ElementSpec)>;

fn morphism(alg: &DgAlgebra, rows: usize, cols: usize, entries: &MatrixEntries) -> Result<MorphismMatrix, JsonError> {
    let mut m = MorphismMatrix::zero(rows, cols);
    for (i, j, e) in entries {
        if *i >= rows || *j >= cols {
            return Err(JsonError::Shape(format!("matrix entry ({i}, {j}) outside {rows}x{cols}")));
        }
        if e.coeffs.len() != alg.dim() {
            return Err(JsonError::Shape(format!("entry ({i}, {j}) has {} coefficients, algebra has dimension {}", e.coeffs.len(), alg.dim())));
        }
        m.set(*i, *j, sparse(alg.field(), &e.coeffs)?);
    }
    Ok(m)
}

fn entries(alg: &DgAlgebra, m: &MorphismMatrix) -> MatrixEntries {
    m.entries()
        .map(|(i, j, v)| (i, j, ElementSpec { coeffs: dense(alg.field(), v, alg.dim()) }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub shifts: Vec<i64>,
    #[serde(default)]
    pub alpha: MatrixEntries,
    /// A homotopy idempotent cutting out a summand; absent for the whole module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<MatrixEntries>,
}

impl ModuleSpec {
    /// Builds the twisted module without checking the Maurer-Cartan equation.
    pub fn build_unchecked(&self, alg: &Arc<DgAlgebra>) -> Result<TwistedModule, JsonError> {
        let n = self.shifts.len();
        let alpha = morphism(alg, n, n, &self.alpha)?;
        Ok(TwistedModule::new_unchecked(alg.clone(), self.shifts.clone(), alpha))
    }

    pub fn build(&self, alg: &Arc<DgAlgebra>) -> Result<PerfectModule, JsonError> {
        let m = self.build_unchecked(alg)?;
        m.validate()?;
        match &self.idempotent {
            None => Ok(PerfectModule::whole(m)),
            Some(e) => {
                let n = self.shifts.len();
                let pi = morphism(alg, n, n, e)?;
                Ok(PerfectModule::summand(m, &pi)?)
            }
        }
    }

    pub fn from_module(m: &PerfectModule) -> Self {
        let module = &m.module;
        let alg = module.algebra();
        ModuleSpec {
            shifts: module.shifts().to_vec(),
            alpha: entries(alg, module.alpha()),
            idempotent: m.idempotent.as_ref().map(|h| entries(alg, &h.pi)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub degree: i64,
    pub rows: usize,
    pub cols: usize,
    pub entries: MatrixEntries,
}

impl MorphismSpec {
    pub fn build(&self, alg: &DgAlgebra) -> Result<MorphismMatrix, JsonError> {
        morphism(alg, self.rows, self.cols, &self.entries)
    }

    pub fn from_morphism(alg: &DgAlgebra, m: &MorphismMatrix, degree: i64) -> Self {
        MorphismSpec {
            degree,
            rows: m.rows(),
            cols: m.cols(),
            entries: entries(alg, m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub objects: Vec<String>,
    pub homdims: Vec<Vec<usize>>,
    #[serde(default)]
    pub compositions: Vec<(usize, usize, usize, usize, usize, usize, Scalar)>,
}

impl QuiverSpec {
    pub fn data(&self, field: Field) -> Result<DirectedCategoryData, JsonError> {
        let compositions = self
            .compositions
            .iter()
            .map(|(i, j, l, p, q, r, c)| Ok((*i, *j, *l, *p, *q, *r, c.parse(field)?)))
            .collect::<Result<Vec<_>, ScalarError>>()?;
        Ok(DirectedCategoryData {
            objects: self.objects.clone(),
            homdims: self.homdims.clone(),
            compositions,
        })
    }

    pub fn build(&self, field: Field) -> Result<DirectedAlgebra, JsonError> {
        Ok(directed_algebra(field, self.data(field)?)?)
    }

    pub fn from_data(data: &DirectedCategoryData) -> Self {
        QuiverSpec {
            objects: data.objects.clone(),
            homdims: data.homdims.clone(),
            compositions: data
                .compositions
                .iter()
                .map(|(i, j, l, p, q, r, c)| (*i, *j, *l, *p, *q, *r, Scalar::from_element(c)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub characters: Vec<Vec<Scalar>>,
    /// `action[g][r][c]`: the matrix of `g` on `V`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<Scalar>>>>,
    #[serde(default)]
    pub unimodular: bool,
}

impl GroupSpec {
    /// Builds the data without the group and character checks; call
    /// [`FiniteGroupData::validate`] afterwards.
    pub fn build_unchecked(&self, field: Field) -> Result<FiniteGroupData, JsonError> {
        if self.table.len() != self.order || self.table.iter().any(|r| r.len() != self.order) {
            return Err(JsonError::Shape(format!("multiplication table is not {0}x{0}", self.order)));
        }
        let characters = self.characters.iter().map(|c| parse_all(field, c)).collect::<Result<Vec<_>, _>>()?;
        let action = match &self.action {
            None => None,
            Some(ms) => {
                if ms.len() != self.order {
                    return Err(JsonError::Shape(format!("{} action matrices for a group of order {}", ms.len(), self.order)));
                }
                let mut out = Vec::with_capacity(ms.len());
                for m in ms {
                    let rows = m.iter().map(|r| parse_all(field, r)).collect::<Result<Vec<_>, _>>()?;
                    let n = rows.len();
                    if rows.iter().any(|r| r.len() != n) {
                        return Err(JsonError::Shape("action matrices must be square".into()));
                    }
                    let mut s = SparseMatrix::zero(field, n, n);
                    for (i, r) in rows.into_iter().enumerate() {
                        for (j, c) in r.into_iter().enumerate() {
                            s.set(i, j, c);
                        }
                    }
                    out.push(s);
                }
                Some(out)
            }
        };
        Ok(FiniteGroupData {
            field,
            table: self.table.clone(),
            characters,
            action,
            unimodular: self.unimodular,
        })
    }

    pub fn from_group(g: &FiniteGroupData) -> Self {
        GroupSpec {
            order: g.order(),
            table: g.table.clone(),
            characters: g.characters.iter().map(|c| c.iter().map(Scalar::from_element).collect()).collect(),
            action: g.action.as_ref().map(|ms| {
                ms.iter()
                    .map(|m| (0..m.rows()).map(|i| (0..m.cols()).map(|j| Scalar::from_element(&m.get(i, j))).collect()).collect())
                    .collect()
            }),
            unimodular: g.unimodular,
        }
    }
}

/// Either the name of an algebra defined elsewhere or an inline description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(AlgebraSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSpec {
    pub algebra: AlgebraRef,
    pub trace: Vec<Scalar>,
    pub cy_dimension: i64,
}

impl FrobeniusSpec {
    pub fn build(&self, field: Field, resolve: impl Fn(&str) -> Option<Arc<DgAlgebra>>) -> Result<FrobeniusData, JsonError> {
        let alg = match &self.algebra {
            AlgebraRef::Name(n) => resolve(n).ok_or_else(|| JsonError::UnknownAlgebra(n.clone()))?,
            AlgebraRef::Inline(spec) => Arc::new(spec.build(field)?),
        };
        let trace = parse_all(field, &self.trace)?;
        Ok(FrobeniusData::new(alg, trace, self.cy_dimension)?)
    }
}

/// Terms `[c, [a0, a1, ..., an]]` meaning `c a0[a1|...|an]` in basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl ChainSpec {
    pub fn build(&self, alg: &DgAlgebra) -> Result<HochschildChain, JsonError> {
        let field = alg.field();
        let mut c = HochschildChain::zero(field);
        for (x, word) in &self.terms {
            let (&a0, letters) = word.split_first().ok_or_else(|| JsonError::Shape("empty bar word".into()))?;
            if let Some(&k) = word.iter().find(|&&k| k >= alg.dim()) {
                return Err(JsonError::Shape(format!("basis index {k} out of range")));
            }
            c.add_term(BarWord::new(a0, letters.to_vec()), &x.parse(field)?);
        }
        Ok(c)
    }

    pub fn from_chain(c: &HochschildChain) -> Self {
        ChainSpec {
            terms: c
                .terms()
                .iter()
                .map(|(w, x)| {
                    let mut word = vec![w.a0];
                    word.extend(&w.letters);
                    (Scalar::from_element(x), word)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn algebra_round_trip() {
        let f = Field::Rational;
        for alg in [corpus::koszul(f), corpus::matrix_algebra(f), corpus::exterior(f, 2)] {
            let spec = AlgebraSpec::from_algebra(&alg);
            let text = serde_json::to_string(&spec).unwrap();
            let back: AlgebraSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back.build(f).unwrap(), alg);
        }
    }

    #[test]
    fn scalars_accept_integers_and_fractions() {
        let xs: Vec<Scalar> = serde_json::from_str(r#"[3, "-1/2", "0"]"#).unwrap();
        let f = Field::Rational;
        assert_eq!(xs[0].parse(f).unwrap(), f.from_i64(3));
        assert_eq!(xs[1].parse(f).unwrap(), f.parse_element("-1/2").unwrap());
        assert!(xs[2].parse(f).unwrap().is_zero());
    }

    #[test]
    fn group_round_trip() {
        let g = corpus::z2_sl2(Field::Rational);
        let spec = GroupSpec::from_group(&g);
        let back = spec.build_unchecked(Field::Rational).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn module_round_trip() {
        let a = corpus::a2(Field::Rational);
        let s1 = a.simple_resolution(0).unwrap();
        let spec = ModuleSpec::from_module(&s1);
        let back = spec.build(a.algebra()).unwrap();
        assert_eq!(back.module, s1.module);
    }

    #[test]
    fn chain_round_trip() {
        let alg = corpus::truncated_poly(Field::Rational);
        let c = HochschildChain::word(Field::Rational, 1, vec![1, 1]);
        assert_eq!(ChainSpec::from_chain(&c).build(&alg).unwrap(), c);
    }
}
