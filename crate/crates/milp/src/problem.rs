use std::collections::HashMap;

use crate::simplex::Simplex;
use crate::{mip, MipConfig, Result, SolverError};

/// Column handle returned by [`LinearProgram::add_col`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColId(pub usize);

/// Row handle returned by the `add_row_*` methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjSense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
pub(crate) struct Column {
    pub name: String,
    pub lb: f64,
    pub ub: f64,
    pub integer: bool,
    pub obj: f64,
    /// Branch-and-bound picks among fractional columns by (priority desc, index asc).
    pub branch_priority: i32,
}

#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub name: String,
    pub terms: Vec<(usize, f64)>,
    pub cmp: Cmp,
    pub rhs: f64,
}

/// A linear (or mixed-integer linear) program in natural row/column form.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub(crate) cols: Vec<Column>,
    pub(crate) rows: Vec<Row>,
    pub(crate) sense: Option<ObjSense>,
    pub(crate) obj_constant: f64,
    names: HashMap<String, usize>,
}

/// Solver tolerances. `feasibility` bounds scaled primal residuals,
/// `optimality` bounds reduced-cost violations.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub feasibility: f64,
    pub optimality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { feasibility: 1e-7, optimality: 1e-7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NodeLimit,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveStats {
    pub simplex_iterations: u64,
    pub nodes: u64,
    pub wall_time: f64,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: Status,
    /// Primal value per column (column order); meaningful when status is
    /// Optimal, or IterationLimit/NodeLimit with an incumbent.
    pub primal: Vec<f64>,
    pub objective: f64,
    /// Shadow price dObjective/dRhs per row; LP and fixed-integer solves only.
    pub duals: Option<Vec<f64>>,
    /// Reduced cost per column; LP solves only.
    pub reduced_costs: Option<Vec<f64>>,
    pub stats: SolveStats,
    /// Best bound proved (MIP); equals objective on Optimal LPs.
    pub best_bound: f64,
}

impl SolveResult {
    pub fn value(&self, col: ColId) -> f64 {
        self.primal[col.0]
    }
    pub fn dual(&self, row: RowId) -> f64 {
        self.duals.as_ref().expect("duals unavailable")[row.0]
    }
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a continuous column. Bounds may be infinite.
    pub fn add_col(&mut self, name: impl Into<String>, lb: f64, ub: f64, obj: f64) -> Result<ColId> {
        self.push_col(name.into(), lb, ub, obj, false)
    }

    /// Adds an integer column. Bounds must be finite.
    pub fn add_int_col(
        &mut self,
        name: impl Into<String>,
        lb: f64,
        ub: f64,
        obj: f64,
    ) -> Result<ColId> {
        let name = name.into();
        if !lb.is_finite() || !ub.is_finite() {
            return Err(SolverError::UnboundedInteger(name));
        }
        self.push_col(name, lb, ub, obj, true)
    }

    /// Adds a binary column.
    pub fn add_bin_col(&mut self, name: impl Into<String>, obj: f64) -> Result<ColId> {
        self.add_int_col(name, 0.0, 1.0, obj)
    }

    fn push_col(&mut self, name: String, lb: f64, ub: f64, obj: f64, integer: bool) -> Result<ColId> {
        if lb > ub {
            return Err(SolverError::BadBounds(name));
        }
        if self.names.insert(name.clone(), self.cols.len()).is_some() {
            return Err(SolverError::DuplicateName(name));
        }
        self.cols.push(Column { name, lb, ub, integer, obj, branch_priority: 0 });
        Ok(ColId(self.cols.len() - 1))
    }

    pub fn set_branch_priority(&mut self, col: ColId, priority: i32) {
        self.cols[col.0].branch_priority = priority;
    }

    pub fn set_objective_sense(&mut self, sense: ObjSense) {
        self.sense = Some(sense);
    }

    pub fn set_obj_constant(&mut self, c: f64) {
        self.obj_constant = c;
    }

    pub fn set_obj_coeff(&mut self, col: ColId, c: f64) {
        self.cols[col.0].obj = c;
    }

    pub fn set_bounds(&mut self, col: ColId, lb: f64, ub: f64) {
        self.cols[col.0].lb = lb;
        self.cols[col.0].ub = ub;
    }

    pub fn bounds(&self, col: ColId) -> (f64, f64) {
        (self.cols[col.0].lb, self.cols[col.0].ub)
    }

    pub fn col_name(&self, col: ColId) -> &str {
        &self.cols[col.0].name
    }

    pub fn row_name(&self, row: RowId) -> &str {
        &self.rows[row.0].name
    }

    pub fn col_by_name(&self, name: &str) -> Option<ColId> {
        self.names.get(name).map(|&i| ColId(i))
    }

    pub fn is_integer(&self, col: ColId) -> bool {
        self.cols[col.0].integer
    }

    pub fn integer_cols(&self) -> Vec<ColId> {
        (0..self.cols.len()).filter(|&i| self.cols[i].integer).map(ColId).collect()
    }

    /// Adds a row; terms with duplicate column ids are summed.
    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        terms: &[(ColId, f64)],
        cmp: Cmp,
        rhs: f64,
    ) -> RowId {
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
        let mut by_col: HashMap<usize, usize> = HashMap::with_capacity(terms.len());
        for &(c, v) in terms {
            match by_col.get(&c.0) {
                Some(&slot) => merged[slot].1 += v,
                None => {
                    by_col.insert(c.0, merged.len());
                    merged.push((c.0, v));
                }
            }
        }
        merged.retain(|&(_, v)| v != 0.0);
        merged.sort_by_key(|&(c, _)| c);
        self.rows.push(Row { name: name.into(), terms: merged, cmp, rhs });
        RowId(self.rows.len() - 1)
    }

    pub fn row_terms(&self, row: RowId) -> Vec<(ColId, f64)> {
        self.rows[row.0].terms.iter().map(|&(c, v)| (ColId(c), v)).collect()
    }

    pub fn row_cmp_rhs(&self, row: RowId) -> (Cmp, f64) {
        (self.rows[row.0].cmp, self.rows[row.0].rhs)
    }

    pub fn obj_coeff(&self, col: ColId) -> f64 {
        self.cols[col.0].obj
    }

    pub fn obj_constant(&self) -> f64 {
        self.obj_constant
    }

    pub fn objective_sense(&self) -> ObjSense {
        self.sense.unwrap_or(ObjSense::Minimize)
    }

    /// Objective value of an assignment, including the constant term.
    pub fn eval_objective(&self, primal: &[f64]) -> f64 {
        self.obj_constant
            + self.cols.iter().zip(primal).map(|(c, &x)| c.obj * x).sum::<f64>()
    }

    /// Max scaled violation of rows and bounds at an assignment.
    pub fn max_violation(&self, primal: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (c, &x) in self.cols.iter().zip(primal) {
            worst = worst.max(c.lb - x).max(x - c.ub);
        }
        for r in &self.rows {
            let lhs: f64 = r.terms.iter().map(|&(c, v)| v * primal[c]).sum();
            let scale = 1f64.max(r.rhs.abs());
            let v = match r.cmp {
                Cmp::Le => lhs - r.rhs,
                Cmp::Ge => r.rhs - lhs,
                Cmp::Eq => (lhs - r.rhs).abs(),
            };
            worst = worst.max(v / scale);
        }
        worst
    }

    /// Solves as a pure LP. Errors if any column is integer.
    pub fn solve_lp(&self) -> Result<SolveResult> {
        if self.cols.iter().any(|c| c.integer) {
            return Err(SolverError::IntegerColumns);
        }
        self.solve_relaxation()
    }

    /// Solves the LP relaxation (integrality ignored).
    pub fn solve_relaxation(&self) -> Result<SolveResult> {
        let mut sx = Simplex::new(self, Tolerances::default())?;
        sx.solve()
    }

    /// Solves as a MILP with default configuration.
    pub fn solve_mip(&self, config: &MipConfig) -> Result<SolveResult> {
        mip::solve(self, config)
    }

    /// Fixes every integer column to its (rounded) value in `assignment` and
    /// re-solves the continuous LP, exposing duals.
    pub fn fix_and_resolve(&self, assignment: &[f64]) -> Result<SolveResult> {
        if assignment.len() != self.cols.len() {
            return Err(SolverError::IncompleteFixing("assignment length".into()));
        }
        let mut fixed = self.clone();
        for (i, c) in self.cols.iter().enumerate() {
            if c.integer {
                let v = assignment[i].round();
                if (v - assignment[i]).abs() > 1e-4 {
                    return Err(SolverError::IncompleteFixing(c.name.clone()));
                }
                fixed.cols[i].lb = v;
                fixed.cols[i].ub = v;
                fixed.cols[i].integer = false;
            }
        }
        fixed.solve_lp()
    }
}
