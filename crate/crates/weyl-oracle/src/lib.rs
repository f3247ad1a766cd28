//! Independent brute-force b-functions. Schofield semi-invariants are built as
//! explicit determinants, the dual operator f*(∂) is applied to integer powers
//! f^(N+m), and b is interpolated from the quotients b(N).
//!
//! By default f*(∂)f^(N+m) is evaluated at two random points modulo three
//! 60-bit primes; agreement at both points stands in for exact divisibility.
//! [`OracleMode::Exact`] performs the full symbolic computation.

pub mod afunction;
pub mod error;
pub mod factor;
pub mod modp;
pub mod oracle;
pub mod schofield;
pub mod series;
pub mod verify;

pub use afunction::afunction;
pub use error::OracleError;
pub use factor::{factor_negative, negative_rational_roots, rational_roots, RationalRoots};
pub use oracle::{bfunction_oracle, budget_from_env, run_oracle, OracleConfig, OracleMode, OracleRun, BUDGET_ENV, DEFAULT_BUDGET};
pub use schofield::{build_schofield, primitive, random_exceptional, semi_invariant, BlockMatrix, Entry};
pub use verify::{variable_names, verify, VerifyReport};
