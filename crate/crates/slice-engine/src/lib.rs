//! b-functions of quiver semi-invariants by slicing.
//!
//! An arrow whose tail (or head) meets no other arrow can be sliced off: the
//! b-function picks up one bracket factor and the quiver shrinks. Together
//! with support pruning and the two vertex-splitting rules this reduces many
//! tree quivers to the empty quiver.

pub mod error;
pub mod lss;
pub mod rules;
pub mod run;
pub mod state;
pub mod step;

pub use error::SliceError;
pub use lss::{input_quiver, locally_semisimple, LocallySemisimple};
pub use rules::prune_and_simplify;
pub use run::{run_slice, run_slice_with, ArrowReport, Diagnostic, SliceRun};
pub use state::{SliceArrow, SliceState, SliceVertex};
pub use step::{eligibility, eligible_arrows, roles, slice_step, ArrowRole, Candidate, Ineligible};
