use bpoly::BpolyError;
use quiver_core::QuiverError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Bpoly(#[from] BpolyError),
    #[error("block grid is {rows}×{cols}; it is square only when ⟨α,β⟩ = 0")]
    NonSquare { rows: usize, cols: usize },
    #[error("representation shapes do not match the quiver")]
    Shape,
    #[error("{alpha:?} is not a real root: ⟨α,α⟩ = {tits}")]
    NotRealRoot { alpha: Vec<i64>, tits: i64 },
    #[error("no exceptional representation of dimension {alpha:?} found in {attempts} attempts")]
    NotExceptional { alpha: Vec<i64>, attempts: u64 },
    #[error("no polynomials given")]
    NoPolynomials,
    #[error("polynomials do not share one variable set")]
    Arity,
    #[error("exponents {0:?} do not fit the polynomials")]
    BadExponents(Vec<i64>),
    #[error("polynomial {0} vanishes identically")]
    ZeroPolynomial(usize),
    #[error("oracle cost {cost} exceeds the budget {budget} (set BFQ_ORACLE_BUDGET to raise it)")]
    Budget { cost: u128, budget: u128 },
    #[error("f*(∂)f^(N+m) is not divisible by f^N at N={0:?}")]
    InexactDivision(Vec<u32>),
    #[error("polynomial {0} vanishes at the base point")]
    ZeroAtPoint(usize),
    #[error("no usable evaluation point found")]
    NoPoint,
    #[error("point has {found} coordinates, expected {expected}")]
    PointArity { expected: usize, found: usize },
}
