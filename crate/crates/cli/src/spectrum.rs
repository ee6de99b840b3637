use anyhow::Result;
use elzaki_qm::oracle::{default_grid, eigensolve_radial};
use elzaki_qm::potentials::{energy, PotentialSpec, QuantumNumbers, UnitSystem};
use elzaki_qm::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{describe, describe_units, SpectrumArgs};
use crate::output::{opt, Report};
use crate::{Status, Usage};

struct Level {
    dim: u32,
    l: u32,
    n: u32,
    closed: std::result::Result<f64, Error>,
    numeric: Option<std::result::Result<f64, Error>>,
}

/// Eigensolver levels for one channel. When fewer states lie below the
/// threshold than requested, the ones that exist are still reported.
fn numeric_levels(args: &SpectrumArgs, pot: &PotentialSpec, units: &UnitSystem, l: u32, dim: u32, count: usize) -> Vec<std::result::Result<f64, Error>> {
    let solve = |count: usize| {
        let grid = match args.grid {
            Some(g) => g,
            None => default_grid(pot, l, dim, units, count)?,
        };
        eigensolve_radial(pot, l, dim, units, &grid, count).map(|r| r.eigenvalues)
    };
    let result = match solve(count) {
        Err(Error::InsufficientBoundStates { found, .. }) if found > 0 => solve(found),
        other => other,
    };
    match result {
        Ok(levels) => (0..count)
            .map(|i| {
                levels.get(i).copied().ok_or(Error::InsufficientBoundStates {
                    requested: count,
                    found: levels.len(),
                    threshold: pot.threshold(),
                })
            })
            .collect(),
        Err(e) => vec![Err(e); count],
    }
}

fn channel(args: &SpectrumArgs, pot: &PotentialSpec, units: &UnitSystem, dim: u32, l: u32) -> Vec<Level> {
    let ns: Vec<u32> = args.n.clone().collect();
    let numeric = args.verify.then(|| numeric_levels(args, pot, units, l, dim, *args.n.end() as usize + 1));
    ns.iter()
        .map(|&n| Level {
            dim,
            l,
            n,
            closed: QuantumNumbers::new(n, l, dim).and_then(|q| energy(pot, &q, units)),
            numeric: numeric.as_ref().map(|v| v[n as usize].clone()),
        })
        .collect()
}

pub fn run(args: &SpectrumArgs) -> Result<Status> {
    if *args.dim.start() < 2 {
        return Err(Usage(format!("--N must be at least 2, got {}", args.dim.start())).into());
    }
    if args.verify && !(args.tolerance > 0.0) {
        return Err(Usage("--tolerance must be positive".into()).into());
    }
    let pot = args.potential.spec()?;
    let units = args.potential.unit_system()?;

    let channels: Vec<(u32, u32)> = args.dim.clone().flat_map(|d| args.l.clone().map(move |l| (d, l))).collect();
    let levels: Vec<Level> = channels
        .par_iter()
        .map(|&(dim, l)| channel(args, &pot, &units, dim, l))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let mut columns = vec!["N", "l", "n", "E_closed"];
    if args.verify {
        columns.extend(["E_numeric", "abs_diff", "pass"]);
    }
    columns.push("error");
    let mut report = Report::new(columns);
    report.meta("command", "spectrum");
    report.meta("potential", describe(args.potential.potential, &pot));
    report.meta("units", describe_units(&units));
    if args.verify {
        report.meta("tolerance", args.tolerance);
        report.meta(
            "grid",
            match args.grid {
                Some(g) => json!({ "r_min": g.r_min, "r_max": g.r_max, "points": g.points }),
                None => json!("default per channel"),
            },
        );
    }

    let mut any_ok = false;
    let mut all_pass = true;
    for lv in &levels {
        let closed = lv.closed.as_ref().ok().copied();
        any_ok |= closed.is_some();
        let mut row = vec![json!(lv.dim), json!(lv.l), json!(lv.n), opt(closed)];
        let mut error = lv.closed.as_ref().err().map(ToString::to_string);
        if let Some(numeric) = &lv.numeric {
            let e_num = numeric.as_ref().ok().copied();
            let diff = closed.zip(e_num).map(|(a, b)| (a - b).abs());
            let pass = diff.map(|d| d <= args.tolerance);
            if closed.is_some() {
                all_pass &= pass == Some(true);
            }
            if error.is_none() {
                error = numeric.as_ref().err().map(|e| format!("eigensolver: {e}"));
            }
            row.extend([opt(e_num), opt(diff), pass.map_or(Value::Null, Value::Bool)]);
        }
        row.push(error.map_or(Value::Null, Value::String));
        report.push(row);
    }
    report.meta("rows_ok", levels.iter().filter(|l| l.closed.is_ok()).count());
    report.emit(&args.output)?;

    if !any_ok || !all_pass {
        Ok(Status::Failed)
    } else {
        Ok(Status::Ok)
    }
}
