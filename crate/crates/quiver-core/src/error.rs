use thiserror::Error;

use crate::quiver::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("invalid quiver: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("vector has {found} entries, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(String),
    #[error("quiver is not of Dynkin type")]
    NotDynkin,
    #[error("negative entry in a dimension vector")]
    NegativeDimension,
    #[error("representation matrices do not match the dimension vector")]
    RepresentationShape,
    #[error("random samples disagree after retries; the sample is not generic")]
    GenericDisagreement,
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}
