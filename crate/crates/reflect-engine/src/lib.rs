//! b-functions of quiver semi-invariants by reflection functors.
//!
//! At a sink x with r₁ = β_x and r₂ = c_x(β)_x, the castling relation
//! b_f(s)·[s]^d_{r₂} = b_{f'}(s)·[s]^d_{r₁} moves the computation to the
//! reflected quiver. Iterating along admissible orderings reduces every
//! semi-invariant of a Dynkin quiver to a constant.

pub mod coxeter;
pub mod error;
pub mod run;
pub mod state;

pub use coxeter::{is_preinjective, is_preprojective, OrbitCheck};
pub use error::ReflectError;
pub use run::{run_reflect, Direction, ReflectRun, DEFAULT_MAX_REFLECTIONS};
pub use state::{CastleOutcome, ReflectState};
