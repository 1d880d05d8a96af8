//! Exact computations with finite-dimensional DG algebras: Hochschild chains,
//! twisted modules, Euler classes and the Riemann-Roch pairing.

pub mod algebra;
pub mod complex;
pub mod constructors;
pub mod corpus;
pub mod euler;
pub mod hochschild;
pub mod json;
pub mod linalg;
pub mod perfect;
pub mod random;
pub mod scalar;

pub use algebra::{AlgebraElement, DgAlgebra, EndAlgebra};
pub use hochschild::{BarWord, HochschildChain};
pub use complex::{ChainComplex, GradedSpace, Retraction};
pub use linalg::{LinalgError, RowReduced, SparseMatrix, SparseVec};
pub use scalar::{Field, FieldElement, ScalarError};
