use quiver_core::QuiverError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("quiver is not of Dynkin type")]
    NotDynkin,
    #[error("quiver is not of type A")]
    NotTypeA,
    #[error("quiver is not of type D")]
    NotTypeD,
    #[error("samples disagree: {first} vs {second}")]
    SeedDisagreement { first: String, second: String },
    #[error("the Hom relation among summands has a cycle")]
    HomCycle,
    #[error("diagram rule gives {diagram}, generic decomposition gives {generic}")]
    CrossCheck { diagram: String, generic: String },
}
