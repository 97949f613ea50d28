//! Relative simplicial complexes and their face numbers, exact homology,
//! σ̃- and μ-numbers, Stanley-Reisner modules, and a harness that checks lower
//! bound inequalities for manifolds with boundary on generated triangulations.

pub mod combinatorics;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod field;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod recognition;
pub mod relative;
pub mod sigma_mu;
pub mod stanley_reisner;
pub mod verify;
pub mod vertex_set;

pub use complex::{build_complex, SimplicialComplex};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use relative::{FaceVector, GVector, HVector, RelativeComplex};
pub use vertex_set::VertexSet;

/// Vertex ids are positive.
pub type Vertex = u32;
/// Exact integers.
pub type Integer = num_bigint::BigInt;
/// Exact rationals, always in lowest terms.
pub type Rational = num_rational::BigRational;
