use bpoly::BpolyError;
use quiver_core::QuiverError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReflectError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Bpoly(#[from] BpolyError),
    #[error("at least one weight is required")]
    NoWeights,
    #[error("exponent tuple {0:?} must be nonnegative with one entry per weight")]
    BadExponents(Vec<i64>),
    #[error("weight {} has σ(β) = {value}, expected 0", index + 1)]
    InvalidWeight { index: usize, value: i64 },
    #[error("vertex {0} is not a sink with positive dimension")]
    NotSink(String),
    #[error("c_x(β)_x < 0 at {0} but some weight is nonzero there; the semi-invariant vanishes")]
    DependsOnDroppedVertex(String),
    #[error("reflection at {vertex} gives negative degree {degree} for weight {}", weight + 1)]
    NegativeDegree { vertex: String, weight: usize, degree: i64 },
    #[error("vertex {0} is isolated with nonzero weight; the semi-invariant vanishes")]
    ZeroSemiInvariant(String),
    #[error("iteration cap of {0} reflections exceeded")]
    Capped(usize),
    #[error("reflections cycle without reaching a constant (state repeats after {0} reflections)")]
    Stuck(usize),
    #[error("terminal b-function {0} is not a polynomial; β likely violates the nonvanishing inequalities")]
    NotPolynomial(String),
}
