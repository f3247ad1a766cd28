use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BpolyError {
    #[error("linear factor coefficients must be nonnegative and not all zero, got {0:?}")]
    BadCoefficients(Vec<i64>),
    #[error("bracket range requires 0 <= a <= b, got a={a}, b={b}")]
    BadRange { a: i64, b: i64 },
    #[error("variable count mismatch: {left} vs {right}")]
    Arity { left: usize, right: usize },
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("product has negative multiplicities and is not a polynomial")]
    NotPolynomial,
}
