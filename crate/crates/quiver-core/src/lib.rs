//! Quivers without oriented cycles and the linear algebra around them.
//!
//! Vertices are addressed by their position in the declared vertex list; all
//! vectors ([`DimVector`], [`Weight`]) are indexed the same way.

pub mod decomposition;
pub mod dynkin;
pub mod error;
pub mod matrix;
pub mod quiver;
pub mod rep;

pub use decomposition::{decompose_by_hom, Decomposition};
pub use dynkin::{classify, classify_components, coxeter_number, positive_roots, DynkinType, EuclideanType, QuiverType};
pub use error::QuiverError;
pub use matrix::{IntMatrix, RatMatrix};
pub use quiver::{unit, validate_quiver, Arrow, DimVector, Quiver, Violation, Weight, WeightForms, WeightSpec};
pub use rep::{d_matrix, generic_hom_ext, hom_dim, hom_dim_exact, rng_for, BlockEntry, BlockLayout, Representation};
