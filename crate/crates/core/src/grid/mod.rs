//! Distribution grid, microgrid dispatch blocks, and DC power flow.

mod blocks;
mod types;

pub use blocks::{
    dg_block, dr_block, emit_power_side, es_block, flow_block, grid_tie_block, ChargingTerm,
    DeviationTable, GridVars, PENALTY_COST,
};
pub use types::{
    DgSpec, DrSpec, EsSpec, GridError, GridLine, GridTopology, MgSchedule, MicrogridSpec, PvSpec,
    TariffSchedule,
};
