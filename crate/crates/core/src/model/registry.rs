//! Shared variable registry and row store for model assembly.
//!
//! Every constraint emitter (transport, grid) writes typed rows against one
//! registry. Rows are tagged with a scope: first-stage rows may touch only
//! first-stage variables; slot rows may touch first-stage variables plus that
//! slot's second-stage variables, and may carry uncertainty terms that land in
//! the right-hand side as D_t * sigma_t.

use std::collections::HashMap;

use gridroute_milp::{Cmp, LinearProgram, ObjSense};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    First,
    Second(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowScope {
    First,
    Slot(usize),
}

/// Component of the normalized deviation vector sigma_t: one charging-load
/// coordinate and one photovoltaic coordinate per grid bus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigmaKind {
    ChargingLoad,
    Photovoltaic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SigmaId {
    pub bus: usize,
    pub kind: SigmaKind,
}

impl SigmaId {
    /// Column of this component in the 2*N_b sigma vector: charging loads
    /// first, photovoltaic second.
    pub fn index(&self, n_buses: usize) -> usize {
        match self.kind {
            SigmaKind::ChargingLoad => self.bus,
            SigmaKind::Photovoltaic => n_buses + self.bus,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VarDef {
    pub name: String,
    pub lb: f64,
    pub ub: f64,
    pub integer: bool,
    pub stage: Stage,
    pub branch_priority: i32,
}

#[derive(Debug, Clone)]
pub struct RowDef {
    pub name: String,
    pub terms: Vec<(VarId, f64)>,
    pub cmp: Cmp,
    pub rhs: f64,
    pub scope: RowScope,
    /// rhs += sum coef * sigma_component (realized uncertainty).
    pub sigma: Vec<(SigmaId, f64)>,
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("variable {0} registered twice")]
    Duplicate(String),
    #[error("row {row} in scope {scope:?} references variable {var} of stage {stage:?}")]
    DimensionMismatch { row: String, scope: String, var: String, stage: String },
    #[error("unknown variable {0}")]
    Unknown(String),
    #[error("nonlinear residue: {0}")]
    NonlinearResidue(String),
    #[error("solver error: {0}")]
    Solver(#[from] gridroute_milp::SolverError),
}

/// Registry of variables, rows, and the minimization objective (dollars).
#[derive(Debug, Clone, Default)]
pub struct ModelBuilder {
    pub vars: Vec<VarDef>,
    by_name: HashMap<String, VarId>,
    pub rows: Vec<RowDef>,
    pub objective: Vec<(VarId, f64)>,
    /// Constant objective part attributed to the first stage.
    pub obj_constant_first: f64,
    /// Constant objective part attributed to each slot's recourse.
    pub obj_constant_slot: Vec<f64>,
}

impl ModelBuilder {
    pub fn new(slots: usize) -> Self {
        ModelBuilder { obj_constant_slot: vec![0.0; slots], ..Default::default() }
    }

    pub fn slots(&self) -> usize {
        self.obj_constant_slot.len()
    }

    pub fn add_var(
        &mut self,
        name: impl Into<String>,
        lb: f64,
        ub: f64,
        stage: Stage,
    ) -> Result<VarId, ModelError> {
        self.push_var(name.into(), lb, ub, false, stage, 0)
    }

    pub fn add_binary(
        &mut self,
        name: impl Into<String>,
        stage: Stage,
        branch_priority: i32,
    ) -> Result<VarId, ModelError> {
        self.push_var(name.into(), 0.0, 1.0, true, stage, branch_priority)
    }

    fn push_var(
        &mut self,
        name: String,
        lb: f64,
        ub: f64,
        integer: bool,
        stage: Stage,
        branch_priority: i32,
    ) -> Result<VarId, ModelError> {
        if self.by_name.contains_key(&name) {
            return Err(ModelError::Duplicate(name));
        }
        let id = VarId(self.vars.len());
        self.by_name.insert(name.clone(), id);
        self.vars.push(VarDef { name, lb, ub, integer, stage, branch_priority });
        Ok(id)
    }

    pub fn var(&self, name: &str) -> Result<VarId, ModelError> {
        self.by_name.get(name).copied().ok_or_else(|| ModelError::Unknown(name.into()))
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.vars[v.0].name
    }

    pub fn set_bounds(&mut self, v: VarId, lb: f64, ub: f64) {
        self.vars[v.0].lb = lb;
        self.vars[v.0].ub = ub;
    }

    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, f64)>,
        cmp: Cmp,
        rhs: f64,
        scope: RowScope,
    ) -> Result<(), ModelError> {
        self.add_row_sigma(name, terms, cmp, rhs, scope, Vec::new())
    }

    pub fn add_row_sigma(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, f64)>,
        cmp: Cmp,
        rhs: f64,
        scope: RowScope,
        sigma: Vec<(SigmaId, f64)>,
    ) -> Result<(), ModelError> {
        let name = name.into();
        for &(v, _) in &terms {
            let ok = match (scope, self.vars[v.0].stage) {
                (_, Stage::First) => true,
                (RowScope::Slot(t), Stage::Second(s)) => t == s,
                (RowScope::First, Stage::Second(_)) => false,
            };
            if !ok {
                return Err(ModelError::DimensionMismatch {
                    row: name,
                    scope: format!("{scope:?}"),
                    var: self.vars[v.0].name.clone(),
                    stage: format!("{:?}", self.vars[v.0].stage),
                });
            }
        }
        self.rows.push(RowDef { name, terms, cmp, rhs, scope, sigma });
        Ok(())
    }

    /// Accumulates a minimization objective term (dollars).
    pub fn add_cost(&mut self, v: VarId, coef: f64) {
        if coef != 0.0 {
            self.objective.push((v, coef));
        }
    }

    pub fn add_slot_constant(&mut self, t: usize, c: f64) {
        self.obj_constant_slot[t] += c;
    }

    /// Instantiates the full deterministic model at a fixed sigma (all rows,
    /// all variables, objective as stored).
    pub fn to_lp(&self, sigma: Option<&SigmaAssignment>) -> Result<LinearProgram, ModelError> {
        let mut lp = LinearProgram::new();
        lp.set_objective_sense(ObjSense::Minimize);
        let mut cols = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let c = if v.integer {
                lp.add_int_col(v.name.clone(), v.lb, v.ub, 0.0)?
            } else {
                lp.add_col(v.name.clone(), v.lb, v.ub, 0.0)?
            };
            if v.branch_priority != 0 {
                lp.set_branch_priority(c, v.branch_priority);
            }
            cols.push(c);
        }
        for &(v, coef) in &self.objective {
            let cur = lp.obj_coeff(cols[v.0]);
            lp.set_obj_coeff(cols[v.0], cur + coef);
        }
        lp.set_obj_constant(
            self.obj_constant_first + self.obj_constant_slot.iter().sum::<f64>(),
        );
        for r in &self.rows {
            let terms: Vec<_> = r.terms.iter().map(|&(v, c)| (cols[v.0], c)).collect();
            let mut rhs = r.rhs;
            if let Some(s) = sigma {
                for &(sid, coef) in &r.sigma {
                    rhs += coef * s.value(r.scope, sid);
                }
            }
            lp.add_row(r.name.clone(), &terms, r.cmp, rhs);
        }
        Ok(lp)
    }
}

/// A realized sigma assignment per slot (used to instantiate scenarios).
#[derive(Debug, Clone)]
pub struct SigmaAssignment {
    pub n_buses: usize,
    /// values[t] has 2*N_b entries.
    pub values: Vec<Vec<f64>>,
}

impl SigmaAssignment {
    pub fn zero(n_buses: usize, slots: usize) -> Self {
        SigmaAssignment { n_buses, values: vec![vec![0.0; 2 * n_buses]; slots] }
    }

    fn value(&self, scope: RowScope, sid: SigmaId) -> f64 {
        match scope {
            RowScope::First => 0.0,
            RowScope::Slot(t) => self.values[t][sid.index(self.n_buses)],
        }
    }
}
