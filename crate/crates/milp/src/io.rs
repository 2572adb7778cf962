//! Line-oriented text interchange for problems and solutions.
//!
//! Numbers are written with Rust's shortest round-trip decimal formatting, so
//! export -> import reproduces every coefficient bit-exactly. Solutions are
//! read as `name=value` lines.

use crate::problem::{Cmp, LinearProgram, ObjSense};
use crate::{Result, SolverError};

const HEADER: &str = "gridroute-lp 1";

fn fmt(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

fn parse_num(s: &str) -> Result<f64> {
    match s {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s.parse().map_err(|_| SolverError::Format(format!("bad number `{s}`"))),
    }
}

/// Serializes a problem. Column and row order is preserved.
pub fn export_lp(lp: &LinearProgram) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(match lp.objective_sense() {
        ObjSense::Minimize => "minimize\n",
        ObjSense::Maximize => "maximize\n",
    });
    out.push_str(&format!("constant {}\n", fmt(lp.obj_constant())));
    out.push_str("objective\n");
    for (i, c) in lp.cols.iter().enumerate() {
        if c.obj != 0.0 {
            out.push_str(&format!("  {} {}\n", sanitized(&c.name, i), fmt(c.obj)));
        }
    }
    out.push_str("rows\n");
    for (ri, r) in lp.rows.iter().enumerate() {
        let op = match r.cmp {
            Cmp::Le => "<=",
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
        };
        let mut line = format!("  {} {} {} :", sanitized(&r.name, ri), op, fmt(r.rhs));
        for &(c, v) in &r.terms {
            line.push_str(&format!(" {} {}", sanitized(&lp.cols[c].name, c), fmt(v)));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("bounds\n");
    for (i, c) in lp.cols.iter().enumerate() {
        out.push_str(&format!("  {} {} {}\n", sanitized(&c.name, i), fmt(c.lb), fmt(c.ub)));
    }
    out.push_str("integrality\n");
    for (i, c) in lp.cols.iter().enumerate() {
        if c.integer {
            out.push_str(&format!("  {}\n", sanitized(&c.name, i)));
        }
    }
    out.push_str("end\n");
    out
}

fn sanitized(name: &str, idx: usize) -> String {
    if name.is_empty() || name.contains(char::is_whitespace) {
        format!("c{idx}")
    } else {
        name.to_string()
    }
}

/// Parses a problem previously written by [`export_lp`].
pub fn import_lp(text: &str) -> Result<LinearProgram> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    if lines.next() != Some(HEADER) {
        return Err(SolverError::Format("missing header".into()));
    }
    let sense = match lines.next() {
        Some("minimize") => ObjSense::Minimize,
        Some("maximize") => ObjSense::Maximize,
        other => return Err(SolverError::Format(format!("bad sense line {other:?}"))),
    };
    let constant = match lines.next() {
        Some(l) if l.starts_with("constant ") => parse_num(&l["constant ".len()..])?,
        other => return Err(SolverError::Format(format!("bad constant line {other:?}"))),
    };

    #[derive(PartialEq)]
    enum Sect {
        Obj,
        Rows,
        Bounds,
        Integrality,
        End,
    }
    let mut sect = None;
    let mut obj: Vec<(String, f64)> = Vec::new();
    let mut rows: Vec<(String, Cmp, f64, Vec<(String, f64)>)> = Vec::new();
    let mut bounds: Vec<(String, f64, f64)> = Vec::new();
    let mut ints: Vec<String> = Vec::new();
    for line in lines {
        match line {
            "objective" => {
                sect = Some(Sect::Obj);
                continue;
            }
            "rows" => {
                sect = Some(Sect::Rows);
                continue;
            }
            "bounds" => {
                sect = Some(Sect::Bounds);
                continue;
            }
            "integrality" => {
                sect = Some(Sect::Integrality);
                continue;
            }
            "end" => {
                sect = Some(Sect::End);
                break;
            }
            _ => {}
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match sect {
            Some(Sect::Obj) => {
                if toks.len() != 2 {
                    return Err(SolverError::Format(format!("bad objective line `{line}`")));
                }
                obj.push((toks[0].into(), parse_num(toks[1])?));
            }
            Some(Sect::Rows) => {
                if toks.len() < 4 || toks[3] != ":" {
                    return Err(SolverError::Format(format!("bad row line `{line}`")));
                }
                let cmp = match toks[1] {
                    "<=" => Cmp::Le,
                    "=" => Cmp::Eq,
                    ">=" => Cmp::Ge,
                    other => return Err(SolverError::Format(format!("bad row op `{other}`"))),
                };
                let rhs = parse_num(toks[2])?;
                let mut terms = Vec::new();
                let mut it = toks[4..].iter();
                while let Some(name) = it.next() {
                    let v = it.next().ok_or_else(|| {
                        SolverError::Format(format!("odd term count in row `{line}`"))
                    })?;
                    terms.push((name.to_string(), parse_num(v)?));
                }
                rows.push((toks[0].into(), cmp, rhs, terms));
            }
            Some(Sect::Bounds) => {
                if toks.len() != 3 {
                    return Err(SolverError::Format(format!("bad bounds line `{line}`")));
                }
                bounds.push((toks[0].into(), parse_num(toks[1])?, parse_num(toks[2])?));
            }
            Some(Sect::Integrality) => {
                if toks.len() != 1 {
                    return Err(SolverError::Format(format!("bad integrality line `{line}`")));
                }
                ints.push(toks[0].into());
            }
            _ => return Err(SolverError::Format(format!("line outside section `{line}`"))),
        }
    }
    if sect != Some(Sect::End) {
        return Err(SolverError::Format("missing end".into()));
    }

    let mut lp = LinearProgram::new();
    lp.set_objective_sense(sense);
    lp.set_obj_constant(constant);
    for (name, lo, hi) in &bounds {
        if ints.iter().any(|n| n == name) {
            lp.add_int_col(name.clone(), *lo, *hi, 0.0)?;
        } else {
            lp.add_col(name.clone(), *lo, *hi, 0.0)?;
        }
    }
    for (name, v) in obj {
        let c = lp
            .col_by_name(&name)
            .ok_or_else(|| SolverError::Format(format!("objective names unknown column {name}")))?;
        lp.set_obj_coeff(c, v);
    }
    for (name, cmp, rhs, terms) in rows {
        let mut t = Vec::with_capacity(terms.len());
        for (cn, v) in terms {
            let c = lp
                .col_by_name(&cn)
                .ok_or_else(|| SolverError::Format(format!("row references unknown column {cn}")))?;
            t.push((c, v));
        }
        lp.add_row(name, &t, cmp, rhs);
    }
    Ok(lp)
}

/// Parses `name=value` lines into a primal vector ordered by column index.
/// Unmentioned columns default to their lower bound (or zero when free).
pub fn parse_solution(lp: &LinearProgram, text: &str) -> Result<Vec<f64>> {
    let mut primal: Vec<f64> = (0..lp.num_cols())
        .map(|i| {
            let (lo, _) = lp.bounds(crate::ColId(i));
            if lo.is_finite() {
                lo
            } else {
                0.0
            }
        })
        .collect();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| SolverError::Format(format!("bad solution line `{line}`")))?;
        let col = lp
            .col_by_name(name.trim())
            .ok_or_else(|| SolverError::Format(format!("unknown column `{}`", name.trim())))?;
        primal[col.0] = parse_num(value.trim())?;
    }
    Ok(primal)
}
