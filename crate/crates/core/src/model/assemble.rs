//! Centralized model assembly: one registry holding the equilibrium-constrained
//! traffic block and every microgrid block, coupled through charging loads in
//! the nodal balance rows. The optimum of the assembled minimization is the
//! scheduling equilibrium; charging payments cancel between travelers and
//! operators, so the objective carries congestion time, generation, storage,
//! demand-response, and main-grid transaction costs.

use std::collections::HashMap;

use crate::grid::{
    emit_power_side, ChargingTerm, DeviationTable, GridTopology, GridVars, MgSchedule,
    MicrogridSpec, TariffSchedule,
};
use crate::transport::{
    add_traffic_time_cost, emit_ue_block, FlowPattern, PathSet, PwlBpr, TransportNetwork,
    TransportVars, UePrices,
};
use crate::model::registry::{ModelBuilder, ModelError};
use crate::transport::OdPair;

pub use crate::transport::ue::add_charging_expense;

/// Everything the engine needs to build models for one scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub slots: usize,
    pub net: TransportNetwork,
    pub ods: Vec<OdPair>,
    pub path_cap: usize,
    pub topo: GridTopology,
    pub mgs: Vec<MicrogridSpec>,
    pub tariff: TariffSchedule,
    pub fcs_prices: UePrices,
    pub bpr_segments: usize,
    pub dg_segments: usize,
    pub bigm_override: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ModelHandles {
    pub transport: Option<TransportVars>,
    pub grid: GridVars,
}

/// Assembled centralized model plus the derived structures needed to decode
/// and audit solutions.
#[derive(Debug, Clone)]
pub struct AssembledModel {
    pub builder: ModelBuilder,
    pub handles: ModelHandles,
    pub paths: Option<PathSet>,
    pub pwl: PwlBpr,
    pub deviations: DeviationTable,
}

/// Builds the full deterministic (sigma = 0) centralized model. When
/// `enforce_equilibrium` is false the complementarity and fill-order rows are
/// left out (system-optimal routing), everything else unchanged.
pub fn assemble_centralized(
    scenario: &Scenario,
    deviations: &DeviationTable,
    enforce_equilibrium: bool,
) -> Result<AssembledModel, ModelError> {
    let slots: Vec<usize> = (0..scenario.slots).collect();
    let mut builder = ModelBuilder::new(scenario.slots);
    let pwl = crate::transport::linearize_bpr(&scenario.net, scenario.bpr_segments);

    let (transport, paths) = if scenario.ods.is_empty() {
        (None, None)
    } else {
        let paths = crate::transport::paths::build_path_set(
            &scenario.net,
            &scenario.ods,
            scenario.path_cap,
        )
        .map_err(|e| ModelError::NonlinearResidue(format!("path enumeration failed: {e}")))?;
        let vars = emit_ue_block(
            &mut builder,
            &scenario.net,
            &scenario.ods,
            &paths,
            &pwl,
            &scenario.fcs_prices,
            scenario.tariff.omega,
            &scenario.tariff.e_t,
            &slots,
            scenario.bigm_override,
        )?;
        add_traffic_time_cost(&mut builder, &vars, &pwl, scenario.tariff.omega, &slots);
        (Some(vars), Some(paths))
    };

    if !enforce_equilibrium {
        strip_equilibrium_rows(&mut builder);
    }

    // charging loads into bus balances: MW per p.u. of charging count
    let mut charging: HashMap<(usize, usize), ChargingTerm> = HashMap::new();
    if let Some(tv) = &transport {
        for (&(bus, t), &var) in &tv.x_bus {
            charging.insert(
                (bus, t),
                ChargingTerm {
                    var,
                    mw_per_unit: scenario.tariff.e_t[t] * scenario.tariff.veh_per_pu,
                },
            );
        }
    }

    let grid = emit_power_side(
        &mut builder,
        &scenario.topo,
        &scenario.mgs,
        &scenario.tariff,
        scenario.dg_segments,
        &charging,
        deviations,
        &slots,
    )?;

    Ok(AssembledModel {
        builder,
        handles: ModelHandles { transport, grid },
        paths,
        pwl,
        deviations: deviations.clone(),
    })
}

/// Removes complementarity and fill-order rows plus their binaries (bounds
/// relaxed to a fixed zero), producing the system-optimal routing variant.
fn strip_equilibrium_rows(builder: &mut ModelBuilder) {
    builder.rows.retain(|r| {
        !(r.name.starts_with("comp_") || r.name.starts_with("fill_"))
    });
    for v in builder.vars.iter_mut() {
        if v.name.starts_with("w_od") || v.name.starts_with("zfill_") {
            v.lb = 0.0;
            v.ub = 0.0;
            v.integer = false;
        }
    }
}

/// A decoded solution of any model built from the same scenario.
#[derive(Debug, Clone)]
pub struct DecodedSolution {
    pub flows: Option<FlowPattern>,
    pub schedules: Vec<MgSchedule>,
    pub angles: HashMap<(usize, usize), f64>,
    pub line_flows: HashMap<(usize, usize, usize), f64>,
    pub shed: HashMap<(usize, usize), f64>,
    pub spill: HashMap<(usize, usize), f64>,
}

impl AssembledModel {
    pub fn decode(&self, scenario: &Scenario, primal: &[f64]) -> DecodedSolution {
        let slots: Vec<usize> = (0..scenario.slots).collect();
        let flows = self
            .handles
            .transport
            .as_ref()
            .map(|tv| FlowPattern::decode(tv, primal, &slots));
        let g = &self.handles.grid;
        let schedules = scenario
            .mgs
            .iter()
            .map(|mg| {
                let j = mg.bus;
                let get = |m: &HashMap<(usize, usize), crate::model::registry::VarId>, t: usize| {
                    m.get(&(j, t)).map(|v| primal[v.0]).unwrap_or(0.0)
                };
                let mut energy = vec![mg.es.as_ref().map(|e| e.e_initial).unwrap_or(0.0)];
                for &t in &slots {
                    energy.push(get(&g.energy, t));
                }
                MgSchedule {
                    bus: j,
                    p_buy: slots.iter().map(|&t| get(&g.p_buy, t)).collect(),
                    p_sell: slots.iter().map(|&t| get(&g.p_sell, t)).collect(),
                    buy_mode: slots.iter().map(|&t| get(&g.buy_mode, t)).collect(),
                    p_dg: slots.iter().map(|&t| get(&g.p_dg, t)).collect(),
                    p_es_charge: slots.iter().map(|&t| get(&g.p_es_c, t)).collect(),
                    p_es_discharge: slots.iter().map(|&t| get(&g.p_es_d, t)).collect(),
                    charge_mode: slots.iter().map(|&t| get(&g.charge_mode, t)).collect(),
                    energy,
                    p_load: slots.iter().map(|&t| get(&g.p_load, t)).collect(),
                    p_load_up: slots.iter().map(|&t| get(&g.p_load_up, t)).collect(),
                    p_load_down: slots.iter().map(|&t| get(&g.p_load_dn, t)).collect(),
                    pv_used: slots.iter().map(|&t| mg.pv.predicted[t]).collect(),
                }
            })
            .collect();
        let angles = g.theta.iter().map(|(&k, v)| (k, primal[v.0])).collect();
        let line_flows = g.line_flow.iter().map(|(&k, v)| (k, primal[v.0])).collect();
        let shed = g.shed.iter().map(|(&k, v)| (k, primal[v.0])).collect();
        let spill = g.spill.iter().map(|(&k, v)| (k, primal[v.0])).collect();
        DecodedSolution { flows, schedules, angles, line_flows, shed, spill }
    }

    /// Max absolute nodal balance residual of a decoded solution, MW.
    pub fn balance_residual(&self, scenario: &Scenario, primal: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for r in &self.builder.rows {
            if !r.name.starts_with("balance_b") {
                continue;
            }
            let lhs: f64 = r.terms.iter().map(|&(v, c)| c * primal[v.0]).sum();
            worst = worst.max((lhs - r.rhs).abs());
        }
        let _ = scenario;
        worst
    }
}
