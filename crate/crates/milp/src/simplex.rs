//! Bounded-variable revised simplex with a dense basis inverse.
//!
//! Internal form: min c'z  s.t.  Az + s = b,  l <= z <= u, with one slack per
//! row whose bounds encode the row sense. Phase 1 uses explicit artificial
//! columns. Re-optimization after bound changes (branch-and-bound nodes) runs
//! the dual simplex from the incumbent basis.

use std::time::Instant;

use crate::problem::{Cmp, LinearProgram, ObjSense, SolveResult, SolveStats, Status, Tolerances};
use crate::{Result, SolverError};

const REFACTOR_EVERY: u64 = 100;
const PIVOT_TOL: f64 = 1e-9;
const STALL_LIMIT: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VStat {
    Basic(usize),
    Lower,
    Upper,
}

pub(crate) struct Simplex<'a> {
    lp: &'a LinearProgram,
    tol: Tolerances,
    m: usize,
    n_struct: usize,
    n_real: usize, // struct + slacks
    ncols: usize,  // + artificials
    cols: Vec<Vec<(usize, f64)>>,
    lb: Vec<f64>,
    ub: Vec<f64>,
    cost: Vec<f64>, // phase-2 cost, sense-adjusted to minimize
    rhs: Vec<f64>,
    sense_flip: bool,
    basis: Vec<usize>,
    stat: Vec<VStat>,
    binv: Vec<f64>, // m x m row-major
    xb: Vec<f64>,
    iters: u64,
    pivots_since_refactor: u64,
    max_iters: u64,
    bland: bool,
    started: Instant,
}

impl<'a> Simplex<'a> {
    pub fn new(lp: &'a LinearProgram, tol: Tolerances) -> Result<Self> {
        let m = lp.num_rows();
        let n_struct = lp.num_cols();
        let n_real = n_struct + m;
        let sense_flip = lp.objective_sense() == ObjSense::Maximize;

        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_real];
        for (ri, row) in lp.rows.iter().enumerate() {
            for &(c, v) in &row.terms {
                cols[c].push((ri, v));
            }
            cols[n_struct + ri].push((ri, 1.0));
        }

        let mut lb = Vec::with_capacity(n_real);
        let mut ub = Vec::with_capacity(n_real);
        let mut cost = vec![0.0; n_real];
        for (i, c) in lp.cols.iter().enumerate() {
            lb.push(c.lb);
            ub.push(c.ub);
            cost[i] = if sense_flip { -c.obj } else { c.obj };
        }
        let mut rhs = Vec::with_capacity(m);
        for row in &lp.rows {
            rhs.push(row.rhs);
            let (slb, sub) = match row.cmp {
                Cmp::Le => (0.0, f64::INFINITY),
                Cmp::Ge => (f64::NEG_INFINITY, 0.0),
                Cmp::Eq => (0.0, 0.0),
            };
            lb.push(slb);
            ub.push(sub);
        }

        let basis: Vec<usize> = (n_struct..n_real).collect();
        let mut stat = vec![VStat::Lower; n_real];
        for (i, &b) in basis.iter().enumerate() {
            stat[b] = VStat::Basic(i);
        }
        for j in 0..n_struct {
            stat[j] = Self::preferred_bound(lb[j], ub[j]);
        }

        let mut sx = Simplex {
            lp,
            tol,
            m,
            n_struct,
            n_real,
            ncols: n_real,
            cols,
            lb,
            ub,
            cost,
            rhs,
            sense_flip,
            basis,
            stat,
            binv: identity(m),
            xb: vec![0.0; m],
            iters: 0,
            pivots_since_refactor: 0,
            max_iters: (50_000u64).max(400 * (m as u64 + n_struct as u64)),
            bland: false,
            started: Instant::now(),
        };
        sx.recompute_xb();
        Ok(sx)
    }

    /// Fresh solver state with column bounds overridden (branch-and-bound
    /// cold restarts and the rounding heuristic).
    pub fn new_with_bounds(
        lp: &'a LinearProgram,
        tol: Tolerances,
        bounds: &[(f64, f64)],
    ) -> Result<Self> {
        let mut sx = Simplex::new(lp, tol)?;
        for (c, &(lo, hi)) in bounds.iter().enumerate() {
            sx.lb[c] = lo;
            sx.ub[c] = hi;
            if !matches!(sx.stat[c], VStat::Basic(_)) {
                sx.stat[c] = Self::preferred_bound(lo, hi);
            }
        }
        sx.recompute_xb();
        Ok(sx)
    }

    fn preferred_bound(lb: f64, ub: f64) -> VStat {
        if lb.is_finite() {
            if ub.is_finite() && ub.abs() < lb.abs() {
                VStat::Upper
            } else {
                VStat::Lower
            }
        } else if ub.is_finite() {
            VStat::Upper
        } else {
            VStat::Lower // free, rests at 0
        }
    }

    fn nb_value(&self, j: usize) -> f64 {
        match self.stat[j] {
            VStat::Lower => {
                if self.lb[j].is_finite() {
                    self.lb[j]
                } else {
                    0.0
                }
            }
            VStat::Upper => self.ub[j],
            VStat::Basic(i) => self.xb[i],
        }
    }

    fn recompute_xb(&mut self) {
        // xb = binv * (b - N x_N)
        let mut r = self.rhs.clone();
        for j in 0..self.ncols {
            if let VStat::Basic(_) = self.stat[j] {
                continue;
            }
            let v = self.nb_value(j);
            if v != 0.0 {
                for &(ri, a) in &self.cols[j] {
                    r[ri] -= a * v;
                }
            }
        }
        for i in 0..self.m {
            let row = &self.binv[i * self.m..(i + 1) * self.m];
            self.xb[i] = row.iter().zip(&r).map(|(a, b)| a * b).sum();
        }
    }

    fn refactorize(&mut self) -> Result<()> {
        let mut b = vec![0.0; self.m * self.m];
        for (i, &bj) in self.basis.iter().enumerate() {
            for &(ri, v) in &self.cols[bj] {
                b[ri * self.m + i] = v;
            }
        }
        self.binv = invert(&b, self.m).ok_or_else(|| {
            SolverError::NumericalFailure("singular basis during refactorization".into())
        })?;
        self.pivots_since_refactor = 0;
        self.recompute_xb();
        Ok(())
    }

    /// w = binv * A_j
    fn ftran(&self, j: usize) -> Vec<f64> {
        let mut w = vec![0.0; self.m];
        for &(ri, v) in &self.cols[j] {
            for i in 0..self.m {
                w[i] += self.binv[i * self.m + ri] * v;
            }
        }
        w
    }

    /// y = c_B' * binv, for an arbitrary basic cost vector.
    fn btran_costs(&self, cb: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.m];
        for i in 0..self.m {
            let ci = cb[i];
            if ci != 0.0 {
                let row = &self.binv[i * self.m..(i + 1) * self.m];
                for (yk, &bk) in y.iter_mut().zip(row) {
                    *yk += ci * bk;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, y: &[f64], cost: &[f64]) -> f64 {
        let mut d = cost[j];
        for &(ri, v) in &self.cols[j] {
            d -= y[ri] * v;
        }
        d
    }

    fn pivot(&mut self, entering: usize, row: usize, w: &[f64]) {
        let wr = w[row];
        let inv_wr = 1.0 / wr;
        // eta update of binv
        let (head, tail) = self.binv.split_at_mut(row * self.m);
        let (rrow, rest) = tail.split_at_mut(self.m);
        for v in rrow.iter_mut() {
            *v *= inv_wr;
        }
        for (i, chunk) in head.chunks_mut(self.m).enumerate() {
            let wi = w[i];
            if wi != 0.0 {
                for (a, &b) in chunk.iter_mut().zip(rrow.iter()) {
                    *a -= wi * b;
                }
            }
        }
        for (k, chunk) in rest.chunks_mut(self.m).enumerate() {
            let wi = w[row + 1 + k];
            if wi != 0.0 {
                for (a, &b) in chunk.iter_mut().zip(rrow.iter()) {
                    *a -= wi * b;
                }
            }
        }
        self.basis[row] = entering;
        self.stat[entering] = VStat::Basic(row);
        self.pivots_since_refactor += 1;
    }

    fn phase_cost(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.ncols];
        for j in self.n_real..self.ncols {
            c[j] = 1.0;
        }
        c
    }

    fn current_cost(&self, phase1: bool) -> Vec<f64> {
        if phase1 {
            self.phase_cost()
        } else {
            let mut c = self.cost.clone();
            c.resize(self.ncols, 0.0);
            c
        }
    }

    fn basic_cost(&self, cost: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|&b| cost[b]).collect()
    }

    fn objective_internal(&self, cost: &[f64]) -> f64 {
        let mut v = 0.0;
        for j in 0..self.ncols {
            v += cost[j] * self.nb_value_full(j);
        }
        v
    }

    fn nb_value_full(&self, j: usize) -> f64 {
        match self.stat[j] {
            VStat::Basic(i) => self.xb[i],
            _ => self.nb_value(j),
        }
    }

    /// Primal simplex on the current phase costs. Returns true when optimal,
    /// false when unbounded.
    fn primal(&mut self, phase1: bool) -> Result<bool> {
        let cost = self.current_cost(phase1);
        let mut stall = 0u64;
        let mut last_obj = f64::INFINITY;
        loop {
            if self.iters >= self.max_iters {
                return Err(SolverError::NumericalFailure("iteration limit".into()));
            }
            if self.pivots_since_refactor >= REFACTOR_EVERY {
                self.refactorize()?;
            }
            let cb = self.basic_cost(&cost);
            let y = self.btran_costs(&cb);

            // entering
            let mut best: Option<(usize, f64, i8)> = None; // (col, violation, dir)
            for j in 0..self.ncols {
                if self.lb[j] == self.ub[j] {
                    continue; // fixed columns never enter
                }
                let (viol, dir) = match self.stat[j] {
                    VStat::Basic(_) => continue,
                    VStat::Lower => {
                        let d = self.reduced_cost(j, &y, &cost);
                        if self.lb[j].is_finite() {
                            if d < -self.tol.optimality {
                                (-d, 1i8)
                            } else {
                                continue;
                            }
                        } else {
                            // free at 0
                            if d < -self.tol.optimality {
                                (-d, 1)
                            } else if d > self.tol.optimality {
                                (d, -1)
                            } else {
                                continue;
                            }
                        }
                    }
                    VStat::Upper => {
                        let d = self.reduced_cost(j, &y, &cost);
                        if d > self.tol.optimality {
                            (d, -1)
                        } else {
                            continue;
                        }
                    }
                };
                if self.bland {
                    best = Some((j, viol, dir));
                    break;
                }
                match best {
                    Some((_, bv, _)) if bv >= viol => {}
                    _ => best = Some((j, viol, dir)),
                }
            }
            let (q, _, dir) = match best {
                Some(b) => b,
                None => return Ok(true), // optimal for this phase
            };

            let w = self.ftran(q);
            // ratio test: smallest step; ties prefer the largest |pivot|,
            // then the lowest basic column index (deterministic)
            let flip = self.ub[q] - self.lb[q];
            let mut t = if flip.is_finite() { flip } else { f64::INFINITY };
            let mut leave: Option<(usize, f64, bool)> = None; // (row, |w|, hits_upper)
            for i in 0..self.m {
                let wi = w[i];
                if wi.abs() <= PIVOT_TOL {
                    continue;
                }
                let k = self.basis[i];
                let delta = -(dir as f64) * wi; // d xb_i / dt
                let (limit, hits_upper) = if delta > 0.0 {
                    if self.ub[k].is_finite() {
                        (((self.ub[k] - self.xb[i]).max(0.0)) / delta, true)
                    } else {
                        continue;
                    }
                } else if self.lb[k].is_finite() {
                    (((self.xb[i] - self.lb[k]).max(0.0)) / (-delta), false)
                } else {
                    continue;
                };
                let take = match leave {
                    None => limit < t - 1e-12 || (limit <= t + 1e-12 && limit <= t),
                    Some((li, lw, _)) => {
                        limit < t - 1e-12
                            || (limit <= t + 1e-12
                                && (wi.abs() > lw + 1e-12
                                    || (wi.abs() >= lw - 1e-12 && k < self.basis[li])))
                    }
                };
                if take {
                    t = t.min(limit);
                    leave = Some((i, wi.abs(), hits_upper));
                }
            }
            if let Some(_) = leave {
                if flip.is_finite() && flip < t {
                    t = flip;
                    leave = None; // bound flip wins
                }
            }

            match leave {
                None => {
                    if t.is_infinite() {
                        return Ok(false); // unbounded in this direction
                    }
                    // bound flip
                    let step = (dir as f64) * t;
                    for i in 0..self.m {
                        self.xb[i] -= step * w[i];
                    }
                    self.stat[q] = match self.stat[q] {
                        VStat::Lower => VStat::Upper,
                        VStat::Upper => VStat::Lower,
                        b => b,
                    };
                }
                Some((r, _, hits_upper)) => {
                    let step = (dir as f64) * t.max(0.0);
                    let xq_new = self.nb_value(q) + step;
                    let k = self.basis[r];
                    for i in 0..self.m {
                        self.xb[i] -= step * w[i];
                    }
                    self.stat[k] = if hits_upper { VStat::Upper } else { VStat::Lower };
                    self.pivot(q, r, &w);
                    self.xb[r] = xq_new;
                }
            }
            self.iters += 1;

            let obj = self.objective_internal(&cost);
            if obj < last_obj - 1e-10 {
                last_obj = obj;
                stall = 0;
                self.bland = false;
            } else {
                stall += 1;
                if stall > STALL_LIMIT {
                    self.bland = true;
                }
            }
        }
    }

    fn install_artificials(&mut self) -> usize {
        let mut added = 0;
        for i in 0..self.m {
            let k = self.basis[i];
            let v = self.xb[i];
            let (lo, hi) = (self.lb[k], self.ub[k]);
            if v >= lo - self.tol.feasibility && v <= hi + self.tol.feasibility {
                continue;
            }
            // park the current basic at its nearest bound, cover with artificial
            let bound = if v < lo { lo } else { hi };
            self.stat[k] = if v < lo { VStat::Lower } else { VStat::Upper };
            let resid = v - bound;
            let sign = if resid >= 0.0 { 1.0 } else { -1.0 };
            let aj = self.ncols;
            self.cols.push(vec![(i, sign)]);
            self.lb.push(0.0);
            self.ub.push(f64::INFINITY);
            self.basis[i] = aj;
            self.stat.push(VStat::Basic(i));
            self.xb[i] = resid.abs();
            self.ncols += 1;
            added += 1;
        }
        added
    }

    /// After phase 1: pivot zero-valued basic artificials out where possible,
    /// freeze the rest at zero.
    fn retire_artificials(&mut self) -> Result<()> {
        for i in 0..self.m {
            let k = self.basis[i];
            if k < self.n_real {
                continue;
            }
            // bring in the real nonbasic column with the best pivot magnitude
            let rrow: Vec<f64> = self.binv[i * self.m..(i + 1) * self.m].to_vec();
            let mut found: Option<(usize, f64)> = None;
            for j in 0..self.n_real {
                if matches!(self.stat[j], VStat::Basic(_)) {
                    continue;
                }
                let alpha: f64 = self.cols[j].iter().map(|&(ri, v)| rrow[ri] * v).sum();
                if alpha.abs() > 1e-7 && found.map_or(true, |(_, a)| alpha.abs() > a) {
                    found = Some((j, alpha.abs()));
                }
            }
            if let Some((j, _)) = found {
                let w = self.ftran(j);
                let xj = self.nb_value(j);
                self.stat[k] = VStat::Lower;
                self.lb[k] = 0.0;
                self.ub[k] = 0.0;
                self.pivot(j, i, &w);
                self.xb[i] = xj; // degenerate pivot, basic enters at its bound value
            } else {
                // redundant row: freeze the artificial at zero
                self.lb[k] = 0.0;
                self.ub[k] = 0.0;
            }
        }
        // freeze all nonbasic artificials
        for j in self.n_real..self.ncols {
            if !matches!(self.stat[j], VStat::Basic(_)) {
                self.lb[j] = 0.0;
                self.ub[j] = 0.0;
                self.stat[j] = VStat::Lower;
            }
        }
        self.recompute_xb();
        Ok(())
    }

    fn primal_infeasibility(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.m {
            let k = self.basis[i];
            worst = worst.max(self.lb[k] - self.xb[i]).max(self.xb[i] - self.ub[k]);
        }
        worst
    }

    /// Full two-phase solve from the current (fresh) state.
    pub fn solve(&mut self) -> Result<SolveResult> {
        if self.install_artificials() > 0 || self.primal_infeasibility() > self.tol.feasibility {
            self.refactorize()?; // artificial columns may carry -1 coefficients
            let ok = self.primal(true)?;
            debug_assert!(ok, "phase 1 cannot be unbounded");
            let cost = self.current_cost(true);
            let p1 = self.objective_internal(&cost);
            if p1 > 1e-6 {
                return Ok(self.finish(Status::Infeasible));
            }
            self.retire_artificials()?;
        }
        let optimal = self.primal(false)?;
        if !optimal {
            return Ok(self.finish(Status::Unbounded));
        }
        Ok(self.finish(Status::Optimal))
    }

    /// Dual-simplex re-optimization from the current basis after bound edits.
    pub fn dual_solve(&mut self) -> Result<SolveResult> {
        let cost = self.current_cost(false);
        let mut stall = 0u64;
        loop {
            if self.iters >= self.max_iters {
                return Err(SolverError::NumericalFailure("dual iteration limit".into()));
            }
            if self.pivots_since_refactor >= REFACTOR_EVERY {
                self.refactorize()?;
            }
            // leaving: worst bound violation among basics
            let mut leave: Option<(usize, f64, bool)> = None; // (row, viol, below)
            for i in 0..self.m {
                let k = self.basis[i];
                let below = self.lb[k] - self.xb[i];
                let above = self.xb[i] - self.ub[k];
                let (viol, is_below) = if below >= above { (below, true) } else { (above, false) };
                if viol > self.tol.feasibility {
                    match leave {
                        Some((_, bv, _)) if bv >= viol => {}
                        _ => leave = Some((i, viol, is_below)),
                    }
                }
            }
            let (r, _, below) = match leave {
                None => return Ok(self.finish(Status::Optimal)),
                Some(l) => l,
            };

            let cb = self.basic_cost(&cost);
            let y = self.btran_costs(&cb);
            let rrow: Vec<f64> = self.binv[r * self.m..(r + 1) * self.m].to_vec();

            // entering: admissible nonbasic minimizing |d_j| / |alpha_j|
            let mut best: Option<(usize, f64, f64)> = None; // (col, ratio, alpha)
            for j in 0..self.ncols {
                let admissible_dir = match self.stat[j] {
                    VStat::Basic(_) => continue,
                    VStat::Lower => 1.0,
                    VStat::Upper => -1.0,
                };
                if self.lb[j] == self.ub[j] {
                    continue; // fixed column cannot enter
                }
                let alpha: f64 = self.cols[j].iter().map(|&(ri, v)| rrow[ri] * v).sum();
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                // xb_r rate per unit admissible move of x_j is -alpha * dir
                let raises = -(alpha * admissible_dir) > 0.0;
                if below != raises {
                    continue;
                }
                let d = self.reduced_cost(j, &y, &cost);
                let ratio = d.abs() / alpha.abs();
                let better = match best {
                    None => true,
                    Some((bj, br, ba)) => {
                        ratio < br - 1e-12
                            || (ratio < br + 1e-12
                                && (alpha.abs() > ba.abs() + 1e-12
                                    || (alpha.abs() >= ba.abs() - 1e-12 && j < bj)))
                    }
                };
                if better {
                    best = Some((j, ratio, alpha));
                }
            }
            let (q, _, alpha) = match best {
                None => return Ok(self.finish(Status::Infeasible)),
                Some(b) => b,
            };

            let w = self.ftran(q);
            let k = self.basis[r];
            let target = if below { self.lb[k] } else { self.ub[k] };
            let delta = (self.xb[r] - target) / alpha;
            let xq_new = self.nb_value(q) + delta;
            for i in 0..self.m {
                self.xb[i] -= delta * w[i];
            }
            self.stat[k] = if below { VStat::Lower } else { VStat::Upper };
            self.pivot(q, r, &w);
            self.xb[r] = xq_new;
            self.iters += 1;
            stall += 1;
            if stall > 4 * STALL_LIMIT {
                return Err(SolverError::NumericalFailure("dual simplex stall".into()));
            }
        }
    }

    /// Tightens bounds of a structural column in place (branch-and-bound).
    pub fn set_col_bounds(&mut self, col: usize, lb: f64, ub: f64) {
        self.lb[col] = lb;
        self.ub[col] = ub;
        match self.stat[col] {
            VStat::Basic(_) => {}
            VStat::Lower => {
                if !self.lb[col].is_finite() {
                    self.stat[col] = VStat::Upper;
                }
            }
            VStat::Upper => {
                if !self.ub[col].is_finite() {
                    self.stat[col] = VStat::Lower;
                }
            }
        }
        self.recompute_xb();
    }

    pub fn basis_snapshot(&self) -> (Vec<usize>, Vec<u8>) {
        let stats = self
            .stat
            .iter()
            .map(|s| match s {
                VStat::Basic(_) => 2u8,
                VStat::Lower => 0,
                VStat::Upper => 1,
            })
            .collect();
        (self.basis.clone(), stats)
    }

    pub fn load_basis(&mut self, basis: &[usize], stats: &[u8]) -> Result<()> {
        self.basis = basis.to_vec();
        for (j, &s) in stats.iter().enumerate() {
            self.stat[j] = match s {
                0 => VStat::Lower,
                1 => VStat::Upper,
                _ => VStat::Lower, // fixed below by basis sweep
            };
        }
        for (i, &b) in basis.iter().enumerate() {
            self.stat[b] = VStat::Basic(i);
        }
        self.refactorize()
    }

    fn finish(&self, status: Status) -> SolveResult {
        let cost = self.current_cost(false);
        let mut primal = vec![0.0; self.n_struct];
        for (j, p) in primal.iter_mut().enumerate() {
            *p = self.nb_value_full(j);
        }
        let obj_min: f64 =
            (0..self.ncols).map(|j| cost[j] * self.nb_value_full(j)).sum::<f64>();
        let mut objective = obj_min + if self.sense_flip { -self.lp.obj_constant } else { self.lp.obj_constant };
        if self.sense_flip {
            objective = -objective;
        }

        let (duals, reduced) = if status == Status::Optimal {
            let cb = self.basic_cost(&cost);
            let mut y = self.btran_costs(&cb);
            let mut rc: Vec<f64> = (0..self.n_struct)
                .map(|j| self.reduced_cost(j, &y, &cost))
                .collect();
            if self.sense_flip {
                for v in y.iter_mut() {
                    *v = -*v;
                }
                for v in rc.iter_mut() {
                    *v = -*v;
                }
            }
            (Some(y), Some(rc))
        } else {
            (None, None)
        };

        SolveResult {
            status,
            primal,
            objective,
            duals,
            reduced_costs: reduced,
            stats: SolveStats {
                simplex_iterations: self.iters,
                nodes: 0,
                wall_time: self.started.elapsed().as_secs_f64(),
            },
            best_bound: objective,
        }
    }
}

fn identity(m: usize) -> Vec<f64> {
    let mut a = vec![0.0; m * m];
    for i in 0..m {
        a[i * m + i] = 1.0;
    }
    a
}

/// Dense inverse via Gauss-Jordan with partial pivoting; None if singular.
fn invert(a: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut w = a.to_vec();
    let mut inv = identity(m);
    for col in 0..m {
        let mut piv = col;
        let mut best = w[col * m + col].abs();
        for r in (col + 1)..m {
            let v = w[r * m + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best < 1e-11 {
            return None;
        }
        if piv != col {
            for k in 0..m {
                w.swap(col * m + k, piv * m + k);
                inv.swap(col * m + k, piv * m + k);
            }
        }
        let d = w[col * m + col];
        let inv_d = 1.0 / d;
        for k in 0..m {
            w[col * m + k] *= inv_d;
            inv[col * m + k] *= inv_d;
        }
        for r in 0..m {
            if r == col {
                continue;
            }
            let f = w[r * m + col];
            if f != 0.0 {
                for k in 0..m {
                    w[r * m + k] -= f * w[col * m + k];
                    inv[r * m + k] -= f * inv[col * m + k];
                }
            }
        }
    }
    Some(inv)
}
