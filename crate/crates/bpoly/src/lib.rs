//! Factored b-function arithmetic: linear factors with signed multiplicities,
//! the bracket products `[s]^d_{a,b}`, exact sparse polynomials and
//! reduction traces.

pub mod error;
pub mod factor;
pub mod poly;
pub mod trace;

pub use error::BpolyError;
pub use factor::{bracket, bracket1, bracket_full, FactorProduct, LinearFactor};
pub use poly::{equal_up_to_scalar, Monomial, SparsePoly};
pub use trace::{
    fmt_vec, Block, BlockLink, ReductionTrace, StateSnapshot, StepKind, SymBracket, SymDim, TraceStep,
};
