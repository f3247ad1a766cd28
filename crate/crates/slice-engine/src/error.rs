use bpoly::BpolyError;
use quiver_core::QuiverError;
use thiserror::Error;

use crate::run::Diagnostic;
use crate::step::Ineligible;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SliceError {
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
    #[error("the semi-invariant vanishes identically (forced by vertex {0})")]
    ZeroSemiInvariant(String),
    #[error("arrow {arrow} cannot be sliced: {reason}")]
    Ineligible { arrow: String, reason: Ineligible },
    #[error("not sliceable: {}", .0.summary)]
    NotSliceable(Box<Diagnostic>),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
