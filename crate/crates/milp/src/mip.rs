//! Best-bound branch-and-bound with plunging and a fix-and-resolve rounding
//! heuristic. Node relaxations warm-start from the parent basis via the dual
//! simplex; jumps across the tree reload a stored basis snapshot.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::problem::{LinearProgram, ObjSense, SolveResult, SolveStats, Status, Tolerances};
use crate::simplex::Simplex;
use crate::Result;

const INT_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct MipConfig {
    /// Relative optimality gap at which the search stops.
    pub gap: f64,
    pub node_limit: u64,
    pub time_limit: Option<f64>,
    /// Run the rounding heuristic every this many nodes (0 = root only).
    pub heuristic_every: u64,
}

impl Default for MipConfig {
    fn default() -> Self {
        MipConfig { gap: 1e-6, node_limit: 200_000, time_limit: None, heuristic_every: 20 }
    }
}

struct Node {
    id: u64,
    score: f64, // minimization view of the parent relaxation bound
    bounds: Vec<(usize, f64, f64)>,
    basis: Option<(Vec<usize>, Vec<u8>)>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; we want lowest score first, then lowest id.
        other
            .score
            .partial_cmp(&self.score)
            .unwrap_or(Ordering::Equal)
            .then(other.id.cmp(&self.id))
    }
}

pub(crate) fn solve(lp: &LinearProgram, config: &MipConfig) -> Result<SolveResult> {
    let started = Instant::now();
    let minimize = lp.objective_sense() != ObjSense::Maximize;
    let to_score = |obj: f64| if minimize { obj } else { -obj };

    let int_cols: Vec<usize> = (0..lp.num_cols()).filter(|&i| lp.is_integer(crate::ColId(i))).collect();
    let root_bounds: Vec<(f64, f64)> = (0..lp.num_cols())
        .map(|i| lp.bounds(crate::ColId(i)))
        .collect();

    let mut sx = Simplex::new(lp, Tolerances::default())?;
    let mut root = sx.solve()?;
    let mut total_iters = root.stats.simplex_iterations;
    if root.status != Status::Optimal {
        root.stats.wall_time = started.elapsed().as_secs_f64();
        return Ok(root);
    }
    if int_cols.is_empty() {
        return Ok(root);
    }

    let mut incumbent: Option<SolveResult> = None;
    let mut inc_score = f64::INFINITY;
    let mut heap: BinaryHeap<Node> = BinaryHeap::new();
    let mut next_id = 1u64;
    let mut nodes_processed = 0u64;

    // branch on (priority desc, distance-to-half asc, index asc)
    let fractional = |primal: &[f64]| -> Option<usize> {
        let mut best: Option<(i32, f64, usize)> = None;
        for &c in &int_cols {
            let v = primal[c];
            if (v - v.round()).abs() <= INT_TOL {
                continue;
            }
            let pr = lp.cols[c].branch_priority;
            let dist = (v - v.floor() - 0.5).abs();
            let replace = match best {
                None => true,
                Some((bp, bd, _)) => pr > bp || (pr == bp && dist < bd - 1e-12),
            };
            if replace {
                best = Some((pr, dist, c));
            }
        }
        best.map(|(_, _, c)| c)
    };

    heap.push(Node { id: 0, score: to_score(root.objective), bounds: Vec::new(), basis: None });
    let mut current_bounds = root_bounds.clone();
    let mut have_state = false; // whether sx currently matches `current_bounds`

    'outer: while let Some(node) = heap.pop() {
        // global bound check
        if node.score >= inc_score - config.gap * inc_score.abs().max(1.0) {
            continue;
        }
        if nodes_processed >= config.node_limit {
            break;
        }
        if let Some(tl) = config.time_limit {
            if started.elapsed().as_secs_f64() > tl {
                break;
            }
        }

        // activate node: restore bounds and basis
        let mut node_bounds = root_bounds.clone();
        for &(c, lo, hi) in &node.bounds {
            node_bounds[c] = (lo, hi);
        }
        let needs_reload = !have_state || node.basis.is_some();
        for (c, &(lo, hi)) in node_bounds.iter().enumerate() {
            if current_bounds[c] != (lo, hi) {
                sx.set_col_bounds(c, lo, hi);
                current_bounds[c] = (lo, hi);
            }
        }
        let solved = if needs_reload {
            if let Some((b, s)) = &node.basis {
                if sx.load_basis(b, s).is_err() {
                    // fall back to a cold solve
                    sx = Simplex::new_with_bounds(lp, Tolerances::default(), &node_bounds)?;
                    sx.solve()
                } else {
                    sx.dual_solve()
                }
            } else {
                sx.dual_solve()
            }
        } else {
            sx.dual_solve()
        };
        have_state = true;
        let mut res = match solved {
            Ok(r) => r,
            Err(_) => {
                // numerical trouble: cold restart on this node
                sx = Simplex::new_with_bounds(lp, Tolerances::default(), &node_bounds)?;
                sx.solve()?
            }
        };
        total_iters += res.stats.simplex_iterations;
        nodes_processed += 1;

        // dive loop: keep working on this subtree while the basis is hot
        loop {
            if res.status == Status::Infeasible {
                break;
            }
            if res.status != Status::Optimal {
                break;
            }
            let score = to_score(res.objective);
            if score >= inc_score - config.gap * inc_score.abs().max(1.0) {
                break; // bound prune
            }
            match fractional(&res.primal) {
                None => {
                    // integral: new incumbent
                    if score < inc_score {
                        inc_score = score;
                        incumbent = Some(res.clone());
                    }
                    break;
                }
                Some(c) => {
                    // rounding heuristic occasionally
                    if incumbent.is_none()
                        || (config.heuristic_every > 0
                            && nodes_processed % config.heuristic_every == 1)
                    {
                        if let Some(h) =
                            rounding_heuristic(lp, &res.primal, &node_bounds, &int_cols)?
                        {
                            let hs = to_score(h.objective);
                            if hs < inc_score {
                                inc_score = hs;
                                incumbent = Some(h);
                            }
                        }
                    }
                    let v = res.primal[c];
                    let down = v.floor();
                    let (rlo, rhi) = current_bounds[c];
                    let snapshot = sx.basis_snapshot();
                    // push the far child, dive into the near one
                    let frac = v - down;
                    let (near, far) = if frac < 0.5 {
                        ((rlo, down), (down + 1.0, rhi))
                    } else {
                        ((down + 1.0, rhi), (rlo, down))
                    };
                    let mut far_bounds: Vec<(usize, f64, f64)> = Vec::new();
                    for (i, &(lo, hi)) in current_bounds.iter().enumerate() {
                        if (lo, hi) != root_bounds[i] {
                            far_bounds.push((i, lo, hi));
                        }
                    }
                    far_bounds.retain(|&(i, _, _)| i != c);
                    far_bounds.push((c, far.0, far.1));
                    heap.push(Node {
                        id: next_id,
                        score,
                        bounds: far_bounds,
                        basis: Some(snapshot),
                    });
                    next_id += 1;

                    if far.0 > far.1 && near.0 > near.1 {
                        break;
                    }
                    if near.0 > near.1 {
                        break; // near child empty; far child queued
                    }
                    sx.set_col_bounds(c, near.0, near.1);
                    current_bounds[c] = near;
                    nodes_processed += 1;
                    if nodes_processed >= config.node_limit {
                        break 'outer;
                    }
                    res = match sx.dual_solve() {
                        Ok(r) => r,
                        Err(_) => {
                            let mut nb = root_bounds.clone();
                            for (i, b) in current_bounds.iter().enumerate() {
                                nb[i] = *b;
                            }
                            sx = Simplex::new_with_bounds(lp, Tolerances::default(), &nb)?;
                            sx.solve()?
                        }
                    };
                    total_iters += res.stats.simplex_iterations;
                }
            }
        }
    }

    let hit_node_limit = nodes_processed >= config.node_limit;
    let best_bound_score = heap
        .peek()
        .map(|n| n.score)
        .unwrap_or(inc_score)
        .min(inc_score);
    let stats = SolveStats {
        simplex_iterations: total_iters,
        nodes: nodes_processed,
        wall_time: started.elapsed().as_secs_f64(),
    };
    match incumbent {
        Some(mut inc) => {
            inc.status = if hit_node_limit { Status::NodeLimit } else { Status::Optimal };
            inc.stats = stats;
            inc.best_bound = if minimize { best_bound_score } else { -best_bound_score };
            inc.duals = None;
            inc.reduced_costs = None;
            Ok(inc)
        }
        None => Ok(SolveResult {
            status: if hit_node_limit { Status::NodeLimit } else { Status::Infeasible },
            primal: vec![0.0; lp.num_cols()],
            objective: f64::INFINITY,
            duals: None,
            reduced_costs: None,
            stats,
            best_bound: if minimize { best_bound_score } else { -best_bound_score },
        }),
    }
}

/// Round all integers to nearest, fix, re-solve the LP. Returns a feasible
/// incumbent candidate or None.
fn rounding_heuristic(
    lp: &LinearProgram,
    primal: &[f64],
    node_bounds: &[(f64, f64)],
    int_cols: &[usize],
) -> Result<Option<SolveResult>> {
    let mut bounds = node_bounds.to_vec();
    for &c in int_cols {
        let v = primal[c].round().clamp(node_bounds[c].0, node_bounds[c].1);
        bounds[c] = (v, v);
    }
    let mut sx = Simplex::new_with_bounds(lp, Tolerances::default(), &bounds)?;
    let res = sx.solve()?;
    if res.status == Status::Optimal {
        Ok(Some(res))
    } else {
        Ok(None)
    }
}
