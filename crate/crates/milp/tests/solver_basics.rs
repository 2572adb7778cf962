use gridroute_milp::io::{export_lp, import_lp, parse_solution};
use gridroute_milp::{Cmp, LinearProgram, MipConfig, ObjSense, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn one_var_lp_with_dual() {
    // min x s.t. x >= 3
    let mut lp = LinearProgram::new();
    let x = lp.add_col("x", f64::NEG_INFINITY, f64::INFINITY, 1.0).unwrap();
    let r = lp.add_row("lo", &[(x, 1.0)], Cmp::Ge, 3.0);
    let res = lp.solve_lp().unwrap();
    assert_eq!(res.status, Status::Optimal);
    assert!((res.value(x) - 3.0).abs() < 1e-9);
    assert!((res.objective - 3.0).abs() < 1e-9);
    assert!((res.dual(r) - 1.0).abs() < 1e-9, "dual {}", res.dual(r));
}

#[test]
fn maximize_with_bounds() {
    // max x + 2y s.t. x + y <= 4, 2x + y >= 2, x >= 0, 0 <= y <= 3 -> 7 at (1,3)
    let mut lp = LinearProgram::new();
    lp.set_objective_sense(ObjSense::Maximize);
    let x = lp.add_col("x", 0.0, f64::INFINITY, 1.0).unwrap();
    let y = lp.add_col("y", 0.0, 3.0, 2.0).unwrap();
    lp.add_row("c1", &[(x, 1.0), (y, 1.0)], Cmp::Le, 4.0);
    lp.add_row("c2", &[(x, 2.0), (y, 1.0)], Cmp::Ge, 2.0);
    let res = lp.solve_lp().unwrap();
    assert_eq!(res.status, Status::Optimal);
    assert!((res.objective - 7.0).abs() < 1e-9);
    assert!((res.value(x) - 1.0).abs() < 1e-9);
    assert!((res.value(y) - 3.0).abs() < 1e-9);
}

#[test]
fn degenerate_equality_pair_has_consistent_duals() {
    // x + y = 2 stated twice; min x + y. Optimal value 2; y1 + y2 = 1 must hold
    // for dual feasibility of either variable.
    let mut lp = LinearProgram::new();
    let x = lp.add_col("x", 0.0, 10.0, 1.0).unwrap();
    let y = lp.add_col("y", 0.0, 10.0, 1.0).unwrap();
    let r1 = lp.add_row("e1", &[(x, 1.0), (y, 1.0)], Cmp::Eq, 2.0);
    let r2 = lp.add_row("e2", &[(x, 1.0), (y, 1.0)], Cmp::Eq, 2.0);
    let res = lp.solve_lp().unwrap();
    assert_eq!(res.status, Status::Optimal);
    assert!((res.objective - 2.0).abs() < 1e-9);
    let s = res.dual(r1) + res.dual(r2);
    assert!((s - 1.0).abs() < 1e-8, "dual sum {s}");
}

#[test]
fn infeasible_and_unbounded_detection() {
    let mut lp = LinearProgram::new();
    let x = lp.add_col("x", 0.0, 1.0, 1.0).unwrap();
    lp.add_row("hi", &[(x, 1.0)], Cmp::Ge, 2.0);
    assert_eq!(lp.solve_lp().unwrap().status, Status::Infeasible);

    let mut lp2 = LinearProgram::new();
    let z = lp2.add_col("z", f64::NEG_INFINITY, f64::INFINITY, 1.0).unwrap();
    lp2.add_row("lo", &[(z, 1.0)], Cmp::Le, 5.0);
    assert_eq!(lp2.solve_lp().unwrap().status, Status::Unbounded);
}

#[test]
fn weak_duality_and_complementary_slackness_on_random_lps() {
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let n = rng.gen_range(4..12);
        let m = rng.gen_range(2..8);
        let mut lp = LinearProgram::new();
        let mut cols = Vec::new();
        let mut x0 = Vec::new();
        for j in 0..n {
            let ub = rng.gen_range(1..20) as f64;
            cols.push(lp.add_col(format!("x{j}"), 0.0, ub, rng.gen_range(-10..10) as f64).unwrap());
            x0.push(rng.gen_range(0..=(ub as i64)) as f64);
        }
        let mut rows = Vec::new();
        for i in 0..m {
            let mut terms = Vec::new();
            let mut lhs = 0.0;
            for j in 0..n {
                if rng.gen_bool(0.5) {
                    let v = rng.gen_range(-5..=5) as f64;
                    if v != 0.0 {
                        terms.push((cols[j], v));
                        lhs += v * x0[j];
                    }
                }
            }
            if terms.is_empty() {
                continue;
            }
            rows.push(lp.add_row(format!("r{i}"), &terms, Cmp::Le, lhs + rng.gen_range(0..5) as f64));
        }
        let res = lp.solve_lp().unwrap();
        if res.status != Status::Optimal {
            continue;
        }
        // complementary slackness: dual_i * slack_i ~ 0
        for &r in &rows {
            let (_, rhs) = lp.row_cmp_rhs(r);
            let lhs: f64 = lp.row_terms(r).iter().map(|&(c, v)| v * res.value(c)).sum();
            let slack = rhs - lhs;
            assert!(
                (res.dual(r) * slack).abs() < 1e-6,
                "seed {seed}: cs violated dual={} slack={}",
                res.dual(r),
                slack
            );
        }
        // reduced costs at bounds signed correctly (min problem)
        let rc = res.reduced_costs.as_ref().unwrap();
        for (j, &c) in cols.iter().enumerate() {
            let (lo, hi) = lp.bounds(c);
            let v = res.value(c);
            if v > lo + 1e-7 && v < hi - 1e-7 {
                assert!(rc[j].abs() < 1e-6, "seed {seed} col {j}: interior rc {}", rc[j]);
            }
        }
    }
}

#[test]
fn row_scaling_scales_duals_inversely() {
    let mut lp = LinearProgram::new();
    let x = lp.add_col("x", 0.0, 10.0, 2.0).unwrap();
    let y = lp.add_col("y", 0.0, 10.0, 3.0).unwrap();
    let r = lp.add_row("r", &[(x, 1.0), (y, 1.0)], Cmp::Ge, 4.0);
    let base = lp.solve_lp().unwrap();

    let mut scaled = LinearProgram::new();
    let xs = scaled.add_col("x", 0.0, 10.0, 2.0).unwrap();
    let ys = scaled.add_col("y", 0.0, 10.0, 3.0).unwrap();
    let rs = scaled.add_row("r", &[(xs, 1000.0), (ys, 1000.0)], Cmp::Ge, 4000.0);
    let sres = scaled.solve_lp().unwrap();

    assert!((base.objective - sres.objective).abs() < 1e-9);
    assert!((base.value(x) - sres.value(xs)).abs() < 1e-9);
    assert!(
        (base.dual(r) - 1000.0 * sres.dual(rs)).abs() < 1e-9,
        "duals {} vs {}",
        base.dual(r),
        sres.dual(rs)
    );
}

#[test]
fn reproducibility_identical_results() {
    let build = || {
        let mut lp = LinearProgram::new();
        let mut cols = Vec::new();
        for j in 0..8 {
            cols.push(lp.add_bin_col(format!("b{j}"), ((j * 7) % 5) as f64 - 2.0).unwrap());
        }
        lp.add_row(
            "budget",
            &cols.iter().map(|&c| (c, 1.0)).collect::<Vec<_>>(),
            Cmp::Le,
            4.0,
        );
        lp
    };
    let r1 = build().solve_mip(&MipConfig::default()).unwrap();
    let r2 = build().solve_mip(&MipConfig::default()).unwrap();
    assert_eq!(r1.status, r2.status);
    assert_eq!(r1.objective, r2.objective);
    assert_eq!(r1.primal, r2.primal);
    assert_eq!(r1.stats.nodes, r2.stats.nodes);
}

#[test]
fn knapsack_matches_exhaustive_enumeration() {
    // 6-item binary knapsack, exhaustive 2^6 oracle
    let weights = [3.0, 5.0, 7.0, 4.0, 6.0, 2.0];
    let values = [4.0, 6.0, 9.0, 5.0, 8.0, 1.0];
    let cap = 13.0;
    let mut best = 0.0;
    for mask in 0u32..64 {
        let mut w = 0.0;
        let mut v = 0.0;
        for i in 0..6 {
            if mask & (1 << i) != 0 {
                w += weights[i];
                v += values[i];
            }
        }
        if w <= cap && v > best {
            best = v;
        }
    }

    let mut lp = LinearProgram::new();
    lp.set_objective_sense(ObjSense::Maximize);
    let cols: Vec<_> =
        (0..6).map(|i| lp.add_bin_col(format!("x{i}"), values[i]).unwrap()).collect();
    lp.add_row(
        "cap",
        &cols.iter().enumerate().map(|(i, &c)| (c, weights[i])).collect::<Vec<_>>(),
        Cmp::Le,
        cap,
    );
    let res = lp.solve_mip(&MipConfig::default()).unwrap();
    assert_eq!(res.status, Status::Optimal);
    assert!((res.objective - best).abs() < 1e-9, "mip {} vs oracle {best}", res.objective);
}

#[test]
fn random_mips_match_enumeration() {
    // criterion: MIP matches exhaustive enumeration on <=12-binary instances
    for seed in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + seed);
        let nb = rng.gen_range(6..=12usize);
        let nc = rng.gen_range(0..=3usize);
        let mut lp = LinearProgram::new();
        let bins: Vec<_> = (0..nb)
            .map(|i| lp.add_bin_col(format!("b{i}"), rng.gen_range(-10..10) as f64).unwrap())
            .collect();
        let conts: Vec<_> = (0..nc)
            .map(|i| {
                lp.add_col(format!("c{i}"), 0.0, 5.0, rng.gen_range(-4..4) as f64).unwrap()
            })
            .collect();
        for r in 0..rng.gen_range(2..6usize) {
            let mut terms = Vec::new();
            for (i, &b) in bins.iter().enumerate() {
                if (seed + i as u64 + r as u64) % 3 != 0 {
                    terms.push((b, rng.gen_range(-6..=6) as f64));
                }
            }
            for &c in &conts {
                terms.push((c, rng.gen_range(-3..=3) as f64));
            }
            terms.retain(|&(_, v)| v != 0.0);
            if terms.is_empty() {
                continue;
            }
            let sense = if rng.gen_bool(0.5) { Cmp::Le } else { Cmp::Ge };
            let rhs = rng.gen_range(-5..=10) as f64;
            lp.add_row(format!("r{r}"), &terms, sense, rhs);
        }

        let res = lp.solve_mip(&MipConfig::default()).unwrap();

        // enumeration oracle: fix binaries, solve LP over continuous part
        let mut best: Option<f64> = None;
        for mask in 0u64..(1 << nb) {
            let mut fixed = lp.clone();
            for (i, &b) in bins.iter().enumerate() {
                let v = ((mask >> i) & 1) as f64;
                fixed.set_bounds(b, v, v);
            }
            let sub = fixed.solve_relaxation().unwrap();
            if sub.status == Status::Optimal {
                best = Some(best.map_or(sub.objective, |b: f64| b.min(sub.objective)));
            }
        }
        match best {
            None => assert_eq!(res.status, Status::Infeasible, "seed {seed}"),
            Some(v) => {
                assert_eq!(res.status, Status::Optimal, "seed {seed}");
                assert!(
                    (res.objective - v).abs() <= 1e-9 * v.abs().max(1.0),
                    "seed {seed}: mip {} vs enum {v}",
                    res.objective
                );
            }
        }
    }
}

#[test]
fn lp_integral_instance_solves_at_root() {
    // assignment-like totally unimodular system: relaxation is integral
    let mut lp = LinearProgram::new();
    let mut cols = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            cols.push(lp.add_bin_col(format!("a{i}{j}"), ((i * 3 + j * 2) % 7) as f64).unwrap());
        }
    }
    for i in 0..3 {
        let terms: Vec<_> = (0..3).map(|j| (cols[i * 3 + j], 1.0)).collect();
        lp.add_row(format!("row{i}"), &terms, Cmp::Eq, 1.0);
        let terms: Vec<_> = (0..3).map(|j| (cols[j * 3 + i], 1.0)).collect();
        lp.add_row(format!("col{i}"), &terms, Cmp::Eq, 1.0);
    }
    let res = lp.solve_mip(&MipConfig::default()).unwrap();
    assert_eq!(res.status, Status::Optimal);
    assert_eq!(res.stats.nodes, 1, "integral relaxation should close at the root");
}

#[test]
fn parity_contradiction_is_infeasible() {
    // x + y = 1 and x = y over binaries
    let mut lp = LinearProgram::new();
    let x = lp.add_bin_col("x", 0.0).unwrap();
    let y = lp.add_bin_col("y", 0.0).unwrap();
    lp.add_row("sum", &[(x, 1.0), (y, 1.0)], Cmp::Eq, 1.0);
    lp.add_row("eq", &[(x, 1.0), (y, -1.0)], Cmp::Eq, 0.0);
    let res = lp.solve_mip(&MipConfig::default()).unwrap();
    assert_eq!(res.status, Status::Infeasible);
}

#[test]
fn fix_and_resolve_reproduces_mip_objective_and_duals() {
    let mut lp = LinearProgram::new();
    let b = lp.add_bin_col("b", 10.0).unwrap();
    let x = lp.add_col("x", 0.0, 8.0, 1.0).unwrap();
    lp.add_row("link", &[(x, 1.0), (b, -8.0)], Cmp::Ge, -2.0); // x >= 8b - 2
    lp.add_row("need", &[(x, 1.0), (b, 2.0)], Cmp::Ge, 3.0);
    let mip = lp.solve_mip(&MipConfig::default()).unwrap();
    assert_eq!(mip.status, Status::Optimal);
    let fixed = lp.fix_and_resolve(&mip.primal).unwrap();
    assert_eq!(fixed.status, Status::Optimal);
    assert!((fixed.objective - mip.objective).abs() < 1e-8);
    assert!(fixed.duals.is_some());
    assert_eq!(fixed.value(b), mip.value(b));
}

#[test]
fn text_round_trip_is_bit_exact() {
    let mut lp = LinearProgram::new();
    lp.set_objective_sense(ObjSense::Maximize);
    lp.set_obj_constant(0.125 + 1e-17);
    let x = lp.add_col("x", -1.5, f64::INFINITY, 0.1 + 0.2).unwrap();
    let y = lp.add_int_col("y", 0.0, 7.0, -1.0 / 3.0).unwrap();
    lp.add_row("r0", &[(x, 2.0f64.sqrt()), (y, -0.3)], Cmp::Le, 1e-12);
    lp.add_row("r1", &[(y, 1.0)], Cmp::Eq, 3.0);

    let text = export_lp(&lp);
    let back = import_lp(&text).unwrap();
    assert_eq!(export_lp(&back), text);
    assert_eq!(back.obj_coeff(x), lp.obj_coeff(x));
    assert_eq!(back.obj_constant(), lp.obj_constant());
    let (c, rhs) = back.row_cmp_rhs(gridroute_milp::RowId(0));
    assert_eq!(c, Cmp::Le);
    assert_eq!(rhs, 1e-12);

    let sol = parse_solution(&back, "x = 1.25\ny=3\n").unwrap();
    assert_eq!(sol[x.0], 1.25);
    assert_eq!(sol[y.0], 3.0);
}
