//! Builders for the example families: directed algebras, group algebras and
//! their exterior cross products, and Frobenius algebras.

pub mod directed;
pub mod frobenius;
pub mod group;

pub use directed::{directed_algebra, ringel_chi, DirectedAlgebra, DirectedCategoryData, DirectedError, RightModule};
pub use frobenius::{frobenius_check, FrobeniusData, FrobeniusError, FrobeniusReport};
pub use group::{central_idempotent, group_algebra, lambda_vg, orbifold_gram, orbifold_gram_direct, orbifold_pairing, FiniteGroupData, GroupError};
