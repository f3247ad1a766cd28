//! Canonical decompositions of dimension vectors for Dynkin quivers.
//!
//! [`generic_decomposition`] decomposes a random representation numerically
//! and serves as ground truth. [`dn_canonical`] implements the diagram rule
//! for type D: decompose the A_{n−1} part, attach a simple S_n to rows between
//! two lines and move rows of the second class onto them.

pub mod dn;
pub mod error;
pub mod generic;

pub use dn::{dn_canonical, DiagramRow, DnDiagram, RowClass};
pub use error::DecompError;
pub use generic::{an_decomposition, ext_vanishes, generic_decomposition, has_hom, hom_order};
