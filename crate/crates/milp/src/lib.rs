//! Embedded linear and mixed-integer linear programming solver.
//!
//! A bounded-variable revised simplex (primal two-phase plus dual
//! re-optimization) drives a best-bound branch-and-bound. The solver is
//! deterministic: identical problems produce identical results, with all
//! pivot and branching ties broken by lowest column index. Duals are exposed
//! on continuous solves and on fixed-integer re-solves.
//!
//! Scale target is desk-size models (a few thousand columns); the basis
//! inverse is kept dense. Larger models go through the text export in [`io`]
//! to an external solver.

mod mip;
mod problem;
mod simplex;

pub mod io;

pub use mip::MipConfig;
pub use problem::{Cmp, ColId, LinearProgram, ObjSense, RowId, SolveStats, SolveResult, Status};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("problem has integer columns; use solve_mip")]
    IntegerColumns,
    #[error("integer column {0} has unbounded domain")]
    UnboundedInteger(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("fixing assignment does not cover integer column {0}")]
    IncompleteFixing(String),
    #[error("duplicate column name {0}")]
    DuplicateName(String),
    #[error("invalid bounds on column {0}: lb > ub")]
    BadBounds(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, SolverError>;
