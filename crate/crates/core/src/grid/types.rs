use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("line ({0},{1}) references an unknown bus")]
    UnknownBus(usize, usize),
    #[error("line ({0},{1}) needs positive susceptance")]
    BadSusceptance(usize, usize),
    #[error("slack bus {0} does not exist")]
    BadSlack(usize),
    #[error("grid graph is not connected")]
    Disconnected,
    #[error("microgrid at bus {0}: {1}")]
    InfeasibleSpec(usize, String),
}

#[derive(Debug, Clone)]
pub struct GridLine {
    pub from: usize,
    pub to: usize,
    /// Power distribution factor b_ji > 0 (MW per radian).
    pub susceptance: f64,
    /// Thermal limit, MW.
    pub f_max: f64,
}

/// DC-flow network: buses, lines, and the angle-reference bus.
#[derive(Debug, Clone)]
pub struct GridTopology {
    pub buses: Vec<usize>,
    pub lines: Vec<GridLine>,
    pub slack_bus: usize,
}

impl GridTopology {
    pub fn validate(&self) -> Result<(), GridError> {
        for l in &self.lines {
            if !self.buses.contains(&l.from) {
                return Err(GridError::UnknownBus(l.from, l.to));
            }
            if !self.buses.contains(&l.to) {
                return Err(GridError::UnknownBus(l.from, l.to));
            }
            if !(l.susceptance > 0.0) {
                return Err(GridError::BadSusceptance(l.from, l.to));
            }
        }
        if !self.buses.contains(&self.slack_bus) {
            return Err(GridError::BadSlack(self.slack_bus));
        }
        // connectivity over the undirected line graph
        if !self.buses.is_empty() {
            let mut seen = vec![self.buses[0]];
            let mut frontier = vec![self.buses[0]];
            while let Some(b) = frontier.pop() {
                for l in &self.lines {
                    for n in [l.from, l.to] {
                        let other = if n == b {
                            if l.from == b {
                                l.to
                            } else {
                                l.from
                            }
                        } else {
                            continue;
                        };
                        if !seen.contains(&other) {
                            seen.push(other);
                            frontier.push(other);
                        }
                    }
                }
            }
            if seen.len() != self.buses.len() {
                return Err(GridError::Disconnected);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct DgSpec {
    pub p_min: f64,
    pub p_max: f64,
    /// Cost a*p^2 + b*p + c, $/h at power p MW.
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone)]
pub struct EsSpec {
    /// Unit charge/discharge cost, $/MW.
    pub unit_cost: f64,
    /// Inverter limit, MW.
    pub p_max: f64,
    /// Energy window SOC_min*E_L .. SOC_max*E_L, MWh.
    pub e_min: f64,
    pub e_max: f64,
    pub eta_c: f64,
    pub eta_d: f64,
    /// Start-of-day energy; the day must end at the same level.
    pub e_initial: f64,
}

#[derive(Debug, Clone)]
pub struct DrSpec {
    /// Unit dispatch (compensation) cost, $/MW.
    pub unit_cost: f64,
    /// Daily energy requirement, MWh.
    pub total_energy: f64,
    pub p_min: Vec<f64>,
    pub p_max: Vec<f64>,
    /// Expected profile, MW per slot.
    pub expected: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PvSpec {
    /// Predicted output per slot, MW.
    pub predicted: Vec<f64>,
    /// Maximum deviation per slot, MW (relative to predicted).
    pub deviation: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct MicrogridSpec {
    pub bus: usize,
    pub dg: Option<DgSpec>,
    pub es: Option<EsSpec>,
    pub dr: Option<DrSpec>,
    pub pv: PvSpec,
    /// Transformer limit on main-grid exchange, MW.
    pub p_grid_max: f64,
}

impl MicrogridSpec {
    pub fn validate(&self, slots: usize) -> Result<(), GridError> {
        let err = |m: String| Err(GridError::InfeasibleSpec(self.bus, m));
        if let Some(dg) = &self.dg {
            if dg.p_min > dg.p_max {
                return err("DG p_min > p_max".into());
            }
        }
        if let Some(es) = &self.es {
            if !(es.eta_c > 0.0 && es.eta_c <= 1.0 && es.eta_d > 0.0 && es.eta_d <= 1.0) {
                return err("ES efficiencies must lie in (0,1]".into());
            }
            if es.e_initial < es.e_min || es.e_initial > es.e_max {
                return err(format!(
                    "initial energy {} outside [{}, {}]",
                    es.e_initial, es.e_min, es.e_max
                ));
            }
        }
        if let Some(dr) = &self.dr {
            if dr.p_min.len() != slots || dr.p_max.len() != slots || dr.expected.len() != slots {
                return err("DR profiles must cover every slot".into());
            }
            let lo: f64 = dr.p_min.iter().sum();
            let hi: f64 = dr.p_max.iter().sum();
            if dr.total_energy < lo - 1e-9 || dr.total_energy > hi + 1e-9 {
                return err(format!(
                    "daily energy {} outside attainable [{lo}, {hi}]",
                    dr.total_energy
                ));
            }
        }
        if self.pv.predicted.len() != slots || self.pv.deviation.len() != slots {
            return err("PV profiles must cover every slot".into());
        }
        if self.pv.deviation.iter().any(|&d| d < 0.0) {
            return err("PV deviations must be nonnegative".into());
        }
        Ok(())
    }
}

/// Day-ahead market data and EV charging constants.
#[derive(Debug, Clone)]
pub struct TariffSchedule {
    /// Day-ahead ladder price, $/MWh per slot.
    pub ladder: Vec<f64>,
    /// Per-EV charging energy, MWh per slot.
    pub e_t: Vec<f64>,
    /// Value of travel time, $/h.
    pub omega: f64,
    /// Vehicles per p.u. of traffic flow.
    pub veh_per_pu: f64,
}

impl TariffSchedule {
    pub fn validate(&self) -> Result<(), GridError> {
        if self.ladder.iter().any(|&p| p < 0.0) {
            return Err(GridError::InfeasibleSpec(0, "negative ladder price".into()));
        }
        if self.e_t.iter().any(|&e| !(e > 0.0)) {
            return Err(GridError::InfeasibleSpec(0, "per-EV charging energy must be positive".into()));
        }
        Ok(())
    }
}

/// Decoded per-microgrid schedule.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MgSchedule {
    pub bus: usize,
    pub p_buy: Vec<f64>,
    pub p_sell: Vec<f64>,
    pub buy_mode: Vec<f64>,
    pub p_dg: Vec<f64>,
    pub p_es_charge: Vec<f64>,
    pub p_es_discharge: Vec<f64>,
    pub charge_mode: Vec<f64>,
    /// Stored energy trajectory, slots+1 entries starting at E_0.
    pub energy: Vec<f64>,
    pub p_load: Vec<f64>,
    pub p_load_up: Vec<f64>,
    pub p_load_down: Vec<f64>,
    pub pv_used: Vec<f64>,
}
