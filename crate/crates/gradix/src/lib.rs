//! Exact computation with groupoid-graded rings: finite groupoids, graded
//! division rings, graded matrix rings, pseudo-free modules, graded Gaussian
//! elimination, Wedderburn decomposition and classification predicates.

pub mod catalog;
pub mod category;
pub mod division_ring;
pub mod error;
pub mod groupoid;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod par;
pub mod scalar;
pub mod spec_io;
pub mod structure;

pub use division_ring::{GradedDivisionRing, HomogeneousScalar, MatrixForm};
pub use error::{Error, Invariant, Result};
pub use groupoid::{FiniteGroup, FiniteGroupoid, Morphism, ObjectId};
pub use matrix::{GradedMatrixElement, HomSpaceMatrix, HomogeneousMatrix, MatrixRingSignature};
pub use scalar::{Field, Scalar};
