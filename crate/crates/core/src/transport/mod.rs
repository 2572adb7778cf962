//! Road network, path enumeration, BPR latencies, and the linearized
//! user-equilibrium traffic assignment.

mod bpr;
mod network;
mod paths;
mod ue;

pub use bpr::{bpr_latency, congestion_delay, linearize_bpr, LinkPwl, PwlBpr};
pub use network::{LinkId, NodeId, OdPair, TransportError, TransportNetwork};
pub use paths::{enumerate_paths, Path, PathSet};
pub use ue::{
    emit_ue_block, path_charging_cost, path_cost, solve_ue, wardrop_residual, FlowPattern,
    TransportVars, UePrices,
};
