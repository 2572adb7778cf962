//! Day-ahead scheduling engine for a coupled power-transportation network.
//!
//! The engine assembles a user-equilibrium traffic assignment (linearized via
//! piecewise BPR delays and big-M complementarity) together with per-microgrid
//! dispatch blocks (grid exchange, dispatchable generation, storage, demand
//! response, DC power flow) into one centralized mixed-integer model whose
//! optimum is the equilibrium of the underlying scheduling game. Uncertainty
//! in charging demand and photovoltaic output enters through nested
//! budget-constrained confidence sets; the distributionally robust two-stage
//! model is solved by a dualized per-slot subproblem inside a Benders loop.
//! Robust (column-and-constraint generation) and deterministic baselines share
//! the same compact model.

pub mod baselines;
pub mod config;
pub mod dro;
pub mod grid;
pub mod model;
pub mod report;
pub mod run;
pub mod transport;
pub mod uncertainty;

pub use gridroute_milp as milp;

/// Hours per scheduling day; slot width is one hour.
pub const SLOTS: usize = 24;

/// Vehicles per flow unit ("the basic value is 100 vehicles per hour").
pub const DEFAULT_VEH_PER_PU: f64 = 100.0;
