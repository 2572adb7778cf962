//! Linearized Wardrop user-equilibrium block and its standalone solver.
//!
//! Route cost per vehicle is omega*(t0 + delay)/60 + charging price. Delays
//! come from the shared piecewise linearization; binary fill-order variables
//! force the greedy segment fill so the delay expression equals the
//! interpolant exactly, which makes the big-M complementarity rows enforce a
//! genuine equilibrium of the linearized latencies. Complementarity and
//! fill binaries are first-stage; flows and segment loads are per-slot
//! recourse variables.

use std::collections::HashMap;

use gridroute_milp::{Cmp, MipConfig, Status};

use super::bpr::PwlBpr;
use super::network::{LinkId, OdPair, TransportNetwork};
use super::paths::PathSet;
use crate::model::registry::{ModelBuilder, ModelError, RowScope, Stage, VarId};

/// Posted charging price per bus and slot, $/MWh.
#[derive(Debug, Clone)]
pub struct UePrices {
    pub by_bus: HashMap<usize, Vec<f64>>,
}

impl UePrices {
    pub fn uniform(buses: &[usize], ladder: &[f64]) -> Self {
        let mut by_bus = HashMap::new();
        for &b in buses {
            by_bus.insert(b, ladder.to_vec());
        }
        UePrices { by_bus }
    }

    pub fn price(&self, bus: usize, t: usize) -> f64 {
        self.by_bus.get(&bus).map(|v| v[t]).unwrap_or(0.0)
    }
}

/// Handles to every variable the UE block introduces.
#[derive(Debug, Clone)]
pub struct TransportVars {
    pub f: Vec<Vec<Vec<VarId>>>,
    pub w: Vec<Vec<Vec<VarId>>>,
    pub u_min: Vec<Vec<VarId>>,
    pub x_link: HashMap<(LinkId, usize), VarId>,
    pub dx: HashMap<(LinkId, usize, usize), VarId>,
    pub fill: HashMap<(LinkId, usize, usize), VarId>,
    pub x_bus: HashMap<(usize, usize), VarId>,
    pub active_links: Vec<LinkId>,
    pub buses: Vec<usize>,
    pub binaries: Vec<VarId>,
}

/// Per-vehicle fixed part of a path cost: free-speed time plus charging.
fn path_cost_const(
    net: &TransportNetwork,
    paths: &PathSet,
    prices: &UePrices,
    omega: f64,
    e_t: f64,
    od: usize,
    p: usize,
    t: usize,
) -> f64 {
    let path = &paths.paths[od][p];
    let t0 = path.free_speed_min(net);
    let charge: f64 =
        path.charging_buses(net).iter().map(|&b| prices.price(b, t) * e_t).sum::<f64>();
    omega * t0 / 60.0 + charge
}

/// Total expense of a single vehicle on a path: congestion delay cost plus
/// charging, delays in minutes converted to hours under omega.
pub fn path_cost(
    net: &TransportNetwork,
    paths: &PathSet,
    pwl: &PwlBpr,
    link_flows: &HashMap<(LinkId, usize), f64>,
    prices: &UePrices,
    omega: f64,
    e_t: f64,
    od: usize,
    p: usize,
    t: usize,
) -> f64 {
    let path = &paths.paths[od][p];
    let delay: f64 = path
        .links
        .iter()
        .map(|&l| pwl.by_link(l).delay_at(*link_flows.get(&(l, t)).unwrap_or(&0.0)))
        .sum();
    omega * delay / 60.0 + path_charging_cost(net, paths, prices, e_t, od, p, t)
}

/// Charging component of a path cost (per vehicle).
pub fn path_charging_cost(
    net: &TransportNetwork,
    paths: &PathSet,
    prices: &UePrices,
    e_t: f64,
    od: usize,
    p: usize,
    t: usize,
) -> f64 {
    paths.paths[od][p]
        .charging_buses(net)
        .iter()
        .map(|&b| prices.price(b, t) * e_t)
        .sum()
}

/// Big-M for the complementarity rows of one O-D pair and slot: the widest
/// possible cost gap between that pair's routes, with congested free-speed
/// times included, plus one.
fn cost_gap_big_m(
    net: &TransportNetwork,
    paths: &PathSet,
    prices: &UePrices,
    omega: f64,
    e_t: f64,
    od: usize,
    t: usize,
) -> f64 {
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for (p, path) in paths.paths[od].iter().enumerate() {
        let congested: f64 = path.links.iter().map(|&l| 1.15 * net.link(l).free_speed_min).sum();
        let charge = path_charging_cost(net, paths, prices, e_t, od, p, t);
        hi = hi.max(omega * congested / 60.0 + charge);
        lo = lo.min(omega * path.free_speed_min(net) / 60.0 + charge);
    }
    hi - lo + 1.0
}

/// Emits the full UE block for the given slots: demand balance, link
/// aggregation, charging-count coupling, capacities, segment rows with
/// fill-order binaries, and big-M complementarity. Returns the variable
/// handles; the caller decides the objective terms.
#[allow(clippy::too_many_arguments)]
pub fn emit_ue_block(
    builder: &mut ModelBuilder,
    net: &TransportNetwork,
    ods: &[OdPair],
    paths: &PathSet,
    pwl: &PwlBpr,
    prices: &UePrices,
    omega: f64,
    e_t: &[f64],
    slots: &[usize],
    bigm_override: Option<f64>,
) -> Result<TransportVars, ModelError> {
    if let Some(m) = bigm_override {
        if m <= 0.0 {
            return Err(ModelError::NonlinearResidue(format!("big-M must be positive, got {m}")));
        }
    }
    let active_links = paths.active_links();
    let buses = net.charging_buses();
    let h_count = pwl.segments;

    let mut vars = TransportVars {
        f: vec![Vec::new(); ods.len()],
        w: vec![Vec::new(); ods.len()],
        u_min: vec![Vec::new(); ods.len()],
        x_link: HashMap::new(),
        dx: HashMap::new(),
        fill: HashMap::new(),
        x_bus: HashMap::new(),
        active_links: active_links.clone(),
        buses: buses.clone(),
        binaries: Vec::new(),
    };

    for (r, od) in ods.iter().enumerate() {
        let np = paths.paths[r].len();
        vars.f[r] = vec![Vec::new(); np];
        vars.w[r] = vec![Vec::new(); np];
        for p in 0..np {
            for &t in slots {
                let f = builder.add_var(
                    format!("f_od{r}_p{p}_t{t}"),
                    0.0,
                    od.demand_hi[t],
                    Stage::Second(t),
                )?;
                vars.f[r][p].push(f);
                let w = builder.add_binary(format!("w_od{r}_p{p}_t{t}"), Stage::First, 10)?;
                vars.w[r][p].push(w);
                vars.binaries.push(w);
            }
        }
        for &t in slots {
            let u = builder.add_var(format!("ucost_od{r}_t{t}"), 0.0, f64::INFINITY, Stage::Second(t))?;
            vars.u_min[r].push(u);
        }
    }

    for &l in &active_links {
        let link = net.link(l);
        let lp = pwl.by_link(l);
        for &t in slots {
            let x = builder.add_var(format!("xl_{l}_t{t}"), 0.0, link.capacity, Stage::Second(t))?;
            vars.x_link.insert((l, t), x);
            for h in 0..h_count {
                let dx = builder.add_var(
                    format!("dx_{l}_h{h}_t{t}"),
                    0.0,
                    lp.seg_width,
                    Stage::Second(t),
                )?;
                vars.dx.insert((l, h, t), dx);
            }
            for h in 0..h_count.saturating_sub(1) {
                let z = builder.add_binary(format!("zfill_{l}_h{h}_t{t}"), Stage::First, 5)?;
                vars.fill.insert((l, h, t), z);
                vars.binaries.push(z);
            }
        }
    }

    let total_demand: Vec<f64> =
        (0..builder.slots()).map(|t| ods.iter().map(|od| od.demand_hi[t]).sum()).collect();
    for &b in &buses {
        for &t in slots {
            let xj =
                builder.add_var(format!("xj_b{b}_t{t}"), 0.0, total_demand[t], Stage::Second(t))?;
            vars.x_bus.insert((b, t), xj);
        }
    }

    // rows
    for (r, od) in ods.iter().enumerate() {
        for (ti, &t) in slots.iter().enumerate() {
            let terms: Vec<_> = (0..paths.paths[r].len())
                .map(|p| (vars.f[r][p][ti], 1.0))
                .collect();
            builder.add_row(
                format!("demand_od{r}_t{t}"),
                terms,
                Cmp::Eq,
                od.demand[t],
                RowScope::Slot(t),
            )?;
        }
    }

    for &l in &active_links {
        for (ti, &t) in slots.iter().enumerate() {
            let mut terms = vec![(vars.x_link[&(l, t)], 1.0)];
            for (r, _) in ods.iter().enumerate() {
                for p in 0..paths.paths[r].len() {
                    if paths.paths[r][p].links.contains(&l) {
                        terms.push((vars.f[r][p][ti], -1.0));
                    }
                }
            }
            builder.add_row(format!("linkagg_{l}_t{t}"), terms, Cmp::Eq, 0.0, RowScope::Slot(t))?;

            // segment reconstruction
            let mut seg = vec![(vars.x_link[&(l, t)], 1.0)];
            for h in 0..h_count {
                seg.push((vars.dx[&(l, h, t)], -1.0));
            }
            builder.add_row(format!("pwl_{l}_t{t}"), seg, Cmp::Eq, 0.0, RowScope::Slot(t))?;

            // greedy fill order: dx[h] >= width*z[h], dx[h+1] <= width*z[h]
            let width = pwl.by_link(l).seg_width;
            for h in 0..h_count.saturating_sub(1) {
                let z = vars.fill[&(l, h, t)];
                builder.add_row(
                    format!("fill_lo_{l}_h{h}_t{t}"),
                    vec![(vars.dx[&(l, h, t)], 1.0), (z, -width)],
                    Cmp::Ge,
                    0.0,
                    RowScope::Slot(t),
                )?;
                builder.add_row(
                    format!("fill_hi_{l}_h{h}_t{t}"),
                    vec![(vars.dx[&(l, h + 1, t)], 1.0), (z, -width)],
                    Cmp::Le,
                    0.0,
                    RowScope::Slot(t),
                )?;
            }
        }
    }

    for (ti, &t) in slots.iter().enumerate() {
        // total charging equals total flow
        let mut terms: Vec<_> = buses.iter().map(|&b| (vars.x_bus[&(b, t)], 1.0)).collect();
        for (r, _) in ods.iter().enumerate() {
            for p in 0..paths.paths[r].len() {
                terms.push((vars.f[r][p][ti], -1.0));
            }
        }
        builder.add_row(format!("chgtotal_t{t}"), terms, Cmp::Eq, 0.0, RowScope::Slot(t))?;

        // per-path availability and per-bus limits
        for (r, _) in ods.iter().enumerate() {
            for p in 0..paths.paths[r].len() {
                let pbuses = paths.paths[r][p].charging_buses(net);
                let mut terms = vec![(vars.f[r][p][ti], 1.0)];
                for &b in &pbuses {
                    terms.push((vars.x_bus[&(b, t)], -1.0));
                }
                builder.add_row(
                    format!("chgpath_od{r}_p{p}_t{t}"),
                    terms,
                    Cmp::Le,
                    0.0,
                    RowScope::Slot(t),
                )?;
            }
        }
        for &b in &buses {
            let mut terms = vec![(vars.x_bus[&(b, t)], 1.0)];
            for (r, _) in ods.iter().enumerate() {
                for p in 0..paths.paths[r].len() {
                    if paths.paths[r][p].charging_buses(net).contains(&b) {
                        terms.push((vars.f[r][p][ti], -1.0));
                    }
                }
            }
            builder.add_row(format!("chgbus_b{b}_t{t}"), terms, Cmp::Le, 0.0, RowScope::Slot(t))?;
        }

        // complementarity
        for (r, od) in ods.iter().enumerate() {
            let m_cost = bigm_override
                .unwrap_or_else(|| cost_gap_big_m(net, paths, prices, omega, e_t[t], r, t));
            for p in 0..paths.paths[r].len() {
                let cconst = path_cost_const(net, paths, prices, omega, e_t[t], r, p, t);
                // cost expression terms: omega/60 * sum_h g_lh dx_lh over links of p
                let mut cost_terms: Vec<(VarId, f64)> = Vec::new();
                for &l in &paths.paths[r][p].links {
                    let lp = pwl.by_link(l);
                    for h in 0..h_count {
                        cost_terms.push((vars.dx[&(l, h, t)], omega * lp.delay_slopes[h] / 60.0));
                    }
                }
                // flow shut-off: f <= q_hi * (1 - w)
                builder.add_row(
                    format!("comp_flow_od{r}_p{p}_t{t}"),
                    vec![(vars.f[r][p][ti], 1.0), (vars.w[r][p][ti], od.demand_hi[t])],
                    Cmp::Le,
                    od.demand_hi[t],
                    RowScope::Slot(t),
                )?;
                // cost - u >= 0
                let mut ge = cost_terms.clone();
                ge.push((vars.u_min[r][ti], -1.0));
                builder.add_row(
                    format!("comp_lo_od{r}_p{p}_t{t}"),
                    ge,
                    Cmp::Ge,
                    -cconst,
                    RowScope::Slot(t),
                )?;
                // cost - u <= M w
                let mut le = cost_terms;
                le.push((vars.u_min[r][ti], -1.0));
                le.push((vars.w[r][p][ti], -m_cost));
                builder.add_row(
                    format!("comp_hi_od{r}_p{p}_t{t}"),
                    le,
                    Cmp::Le,
                    -cconst,
                    RowScope::Slot(t),
                )?;
            }
        }
    }

    Ok(vars)
}

/// Adds the flow-weighted congestion time cost (dollars) for the given slots.
pub fn add_traffic_time_cost(
    builder: &mut ModelBuilder,
    vars: &TransportVars,
    pwl: &PwlBpr,
    omega: f64,
    slots: &[usize],
) {
    for &l in &vars.active_links {
        let lp = pwl.by_link(l);
        for &t in slots {
            for h in 0..pwl.segments {
                builder.add_cost(vars.dx[&(l, h, t)], omega * lp.product_slopes[h] / 60.0);
            }
        }
    }
}

/// Adds the charging expense term (per-vehicle price times p.u. flow).
pub fn add_charging_expense(
    builder: &mut ModelBuilder,
    vars: &TransportVars,
    prices: &UePrices,
    e_t: &[f64],
    slots: &[usize],
) {
    for &b in &vars.buses {
        for &t in slots {
            builder.add_cost(vars.x_bus[&(b, t)], prices.price(b, t) * e_t[t]);
        }
    }
}

/// Hourly flow pattern: path, link, and charging-count flows.
#[derive(Debug, Clone, Default)]
pub struct FlowPattern {
    pub slots: usize,
    pub path_flows: Vec<Vec<Vec<f64>>>,
    pub link_flows: HashMap<(LinkId, usize), f64>,
    pub bus_counts: HashMap<(usize, usize), f64>,
}

impl FlowPattern {
    pub fn decode(vars: &TransportVars, primal: &[f64], slots: &[usize]) -> Self {
        let mut fp = FlowPattern {
            slots: slots.len(),
            path_flows: vars
                .f
                .iter()
                .map(|pp| pp.iter().map(|ts| ts.iter().map(|v| primal[v.0]).collect()).collect())
                .collect(),
            ..Default::default()
        };
        for (&(l, t), v) in &vars.x_link {
            fp.link_flows.insert((l, t), primal[v.0]);
        }
        for (&(b, t), v) in &vars.x_bus {
            fp.bus_counts.insert((b, t), primal[v.0]);
        }
        fp
    }

    pub fn link_flow(&self, l: LinkId, t: usize) -> f64 {
        *self.link_flows.get(&(l, t)).unwrap_or(&0.0)
    }

    pub fn bus_count(&self, bus: usize, t: usize) -> f64 {
        *self.bus_counts.get(&(bus, t)).unwrap_or(&0.0)
    }
}

/// Max complementarity residual of a flow pattern: for each O-D, path, slot,
/// min(f, cost - u) with u the cheapest cost of the pair; zero iff the pattern
/// is an equilibrium of the linearized latencies.
pub fn wardrop_residual(
    net: &TransportNetwork,
    paths: &PathSet,
    pwl: &PwlBpr,
    flows: &FlowPattern,
    prices: &UePrices,
    omega: f64,
    e_t: &[f64],
    slots: &[usize],
) -> f64 {
    let mut worst: f64 = 0.0;
    for (ti, &t) in slots.iter().enumerate() {
        for r in 0..paths.paths.len() {
            let costs: Vec<f64> = (0..paths.paths[r].len())
                .map(|p| path_cost(net, paths, pwl, &flows.link_flows, prices, omega, e_t[t], r, p, t))
                .collect();
            let u = costs.iter().cloned().fold(f64::INFINITY, f64::min);
            for (p, &c) in costs.iter().enumerate() {
                let f = flows.path_flows[r][p][ti];
                worst = worst.max(f.min(c - u));
            }
        }
    }
    worst
}

/// Standalone traffic assignment at fixed prices: one MILP per distinct slot
/// signature, minimizing the linearized time-plus-charging objective subject
/// to the UE block.
#[allow(clippy::too_many_arguments)]
pub fn solve_ue(
    net: &TransportNetwork,
    ods: &[OdPair],
    paths: &PathSet,
    pwl: &PwlBpr,
    prices: &UePrices,
    omega: f64,
    e_t: &[f64],
    slots: usize,
    mip: &MipConfig,
) -> Result<FlowPattern, ModelError> {
    // slots with identical demand/price/charging signatures share one solve
    let mut signature_of = Vec::with_capacity(slots);
    let mut unique: Vec<Vec<usize>> = Vec::new();
    let mut sig_index: HashMap<String, usize> = HashMap::new();
    for t in 0..slots {
        let mut sig = format!("e{}", e_t[t]);
        for od in ods {
            sig.push_str(&format!("|q{}", od.demand[t]));
        }
        let mut buses: Vec<_> = prices.by_bus.keys().copied().collect();
        buses.sort_unstable();
        for b in buses {
            sig.push_str(&format!("|p{}", prices.price(b, t)));
        }
        let idx = *sig_index.entry(sig).or_insert_with(|| {
            unique.push(Vec::new());
            unique.len() - 1
        });
        unique[idx].push(t);
        signature_of.push(idx);
    }

    let mut merged = FlowPattern {
        slots,
        path_flows: paths
            .paths
            .iter()
            .map(|pp| pp.iter().map(|_| vec![0.0; slots]).collect())
            .collect(),
        ..Default::default()
    };

    for group in &unique {
        let rep = group[0];
        let mut builder = ModelBuilder::new(slots);
        let vars = emit_ue_block(
            &mut builder, net, ods, paths, pwl, prices, omega, e_t, &[rep], None,
        )?;
        add_traffic_time_cost(&mut builder, &vars, pwl, omega, &[rep]);
        add_charging_expense(&mut builder, &vars, prices, e_t, &[rep]);
        let lp = builder.to_lp(None)?;
        let res = lp.solve_mip(mip)?;
        if res.status != Status::Optimal {
            return Err(ModelError::NonlinearResidue(format!(
                "traffic assignment MILP ended with {:?}",
                res.status
            )));
        }
        let sub = FlowPattern::decode(&vars, &res.primal, &[rep]);
        for &t in group {
            for r in 0..paths.paths.len() {
                for p in 0..paths.paths[r].len() {
                    merged.path_flows[r][p][t] = sub.path_flows[r][p][0];
                }
            }
            for (&(l, _), &v) in &sub.link_flows {
                merged.link_flows.insert((l, t), v);
            }
            for (&(b, _), &v) in &sub.bus_counts {
                merged.bus_counts.insert((b, t), v);
            }
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transport::network::Link;
    use crate::transport::paths::build_path_set;
    use crate::transport::bpr::linearize_bpr;

    fn parallel_net(t0: (f64, f64), cap: (f64, f64)) -> (TransportNetwork, Vec<OdPair>) {
        let net = TransportNetwork::new(
            vec![1, 2],
            vec![
                Link { id: 1, tail: 1, head: 2, free_speed_min: t0.0, capacity: cap.0, charging_bus: Some(0) },
                Link { id: 2, tail: 1, head: 2, free_speed_min: t0.1, capacity: cap.1, charging_bus: Some(1) },
            ],
        )
        .unwrap();
        let od = OdPair::with_constant_demand(1, 2, 6.0, 1);
        (net, vec![od])
    }

    fn flat_prices(buses: &[usize], p: f64) -> UePrices {
        UePrices::uniform(buses, &[p])
    }

    #[test]
    fn row_and_binary_census_single_path() {
        let net = TransportNetwork::new(
            vec![1, 2],
            vec![Link { id: 1, tail: 1, head: 2, free_speed_min: 5.0, capacity: 10.0, charging_bus: Some(0) }],
        )
        .unwrap();
        let ods = vec![OdPair::with_constant_demand(1, 2, 3.0, 1)];
        let paths = build_path_set(&net, &ods, 16).unwrap();
        let pwl = linearize_bpr(&net, 2);
        let mut b = ModelBuilder::new(1);
        let vars = emit_ue_block(
            &mut b, &net, &ods, &paths, &pwl, &flat_prices(&[0], 100.0), 10.0, &[0.015], &[0], None,
        )
        .unwrap();
        let demand_rows =
            b.rows.iter().filter(|r| r.name.starts_with("demand_")).count();
        assert_eq!(demand_rows, 1);
        assert_eq!(vars.w.iter().flatten().flatten().count(), 1);
        // H=2: one fill binary per link-slot
        assert_eq!(vars.fill.len(), 1);
    }

    #[test]
    fn two_parallel_paths_share_one_u() {
        let (net, ods) = parallel_net((5.0, 5.0), (10.0, 10.0));
        let paths = build_path_set(&net, &ods, 16).unwrap();
        let pwl = linearize_bpr(&net, 2);
        let mut b = ModelBuilder::new(1);
        let vars = emit_ue_block(
            &mut b, &net, &ods, &paths, &pwl, &flat_prices(&[0, 1], 100.0), 10.0, &[0.015], &[0],
            None,
        )
        .unwrap();
        assert_eq!(vars.u_min[0].len(), 1);
        let comp_pairs = b.rows.iter().filter(|r| r.name.starts_with("comp_hi_")).count();
        assert_eq!(comp_pairs, 2);
    }

    #[test]
    fn symmetric_parallel_paths_split_evenly() {
        let (net, ods) = parallel_net((5.0, 5.0), (10.0, 10.0));
        let paths = build_path_set(&net, &ods, 16).unwrap();
        let pwl = linearize_bpr(&net, 4);
        let prices = flat_prices(&[0, 1], 100.0);
        let flows = solve_ue(
            &net, &ods, &paths, &pwl, &prices, 10.0, &[0.015], 1, &MipConfig::default(),
        )
        .unwrap();
        assert!((flows.link_flow(1, 0) - 3.0).abs() < 1e-6, "{}", flows.link_flow(1, 0));
        assert!((flows.link_flow(2, 0) - 3.0).abs() < 1e-6);
        let res = wardrop_residual(&net, &paths, &pwl, &flows, &prices, 10.0, &[0.015], &[0]);
        assert!(res <= 1e-6, "residual {res}");
    }

    #[test]
    fn low_demand_prefers_fast_path_while_cheaper() {
        // free-speed 5 vs 10 minutes, equal capacity and price: all demand on
        // the fast path while its congested cost stays below the slow one's
        let (net, ods) = parallel_net((5.0, 10.0), (10.0, 10.0));
        let paths = build_path_set(&net, &ods, 16).unwrap();
        let pwl = linearize_bpr(&net, 4);
        let prices = flat_prices(&[0, 1], 100.0);
        let flows = solve_ue(
            &net, &ods, &paths, &pwl, &prices, 10.0, &[0.015], 1, &MipConfig::default(),
        )
        .unwrap();
        // fast path is link 1 (paths sorted by free speed)
        assert!((flows.link_flow(1, 0) - 6.0).abs() < 1e-6, "{}", flows.link_flow(1, 0));
        assert!(flows.link_flow(2, 0) < 1e-9);
        // its cost at full demand stays below the slow path's empty cost
        let c_fast = path_cost(
            &net, &paths, &pwl, &flows.link_flows, &prices, 10.0, 0.015, 0, 0, 0,
        );
        let c_slow = path_cost(
            &net, &paths, &pwl, &flows.link_flows, &prices, 10.0, 0.015, 0, 1, 0,
        );
        assert!(c_fast < c_slow, "{c_fast} vs {c_slow}");
        let res = wardrop_residual(&net, &paths, &pwl, &flows, &prices, 10.0, &[0.015], &[0]);
        assert!(res <= 1e-6, "residual {res}");
    }

    #[test]
    fn forcing_demand_onto_costlier_path_shows_residual() {
        let (net, ods) = parallel_net((5.0, 10.0), (10.0, 10.0));
        let paths = build_path_set(&net, &ods, 16).unwrap();
        let pwl = linearize_bpr(&net, 4);
        let prices = flat_prices(&[0, 1], 100.0);
        let mut flows = FlowPattern {
            slots: 1,
            path_flows: vec![vec![vec![0.0], vec![6.0]]],
            ..Default::default()
        };
        flows.link_flows.insert((1, 0), 0.0);
        flows.link_flows.insert((2, 0), 6.0);
        let res = wardrop_residual(&net, &paths, &pwl, &flows, &prices, 10.0, &[0.015], &[0]);
        assert!(res > 0.1, "expected positive residual, got {res}");
    }
}
