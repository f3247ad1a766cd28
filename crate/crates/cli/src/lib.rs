//! Front end for the `qbfn` binary: the problem file format and the commands.

pub mod app;
pub mod problem;

pub use app::{run, run_on, Cli, Command, Exit, Format, Method, Outcome};
pub use problem::{ArrowDecl, ParseError, ProblemFile};
