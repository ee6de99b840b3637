use anyhow::{Context, Result};
use elzaki_qm::oracle::RadialGrid;
use elzaki_qm::potentials::{radial_wavefunction, ClosedFormRadial, QuantumNumbers};
use serde_json::json;

use crate::args::{describe, describe_units, WavefunctionArgs};
use crate::output::{num, Report};
use crate::{Status, Usage};

const DEFAULT_R_MIN: f64 = 1e-4;
const DEFAULT_POINTS: usize = 1000;
/// |R| at the default outer edge.
const TAIL: f64 = 1e-11;

/// Walks outward from the density cutoff until the normalised tail is below
/// `TAIL`; past the cutoff R decays monotonically.
fn default_r_max(radial: &ClosedFormRadial) -> f64 {
    let mut r = radial.cutoff(radial.qn.dim).max(10.0 * DEFAULT_R_MIN);
    for _ in 0..2000 {
        if radial.eval(r).abs() < TAIL {
            break;
        }
        r *= 1.01;
    }
    r
}

pub fn run(args: &WavefunctionArgs) -> Result<Status> {
    let pot = args.potential.spec()?;
    let units = args.potential.unit_system()?;
    let qn = QuantumNumbers::new(args.n, args.l, args.dim).map_err(|e| Usage(e.to_string()))?;
    let radial = radial_wavefunction(&pot, &qn, &units)
        .and_then(|r| r.normalized())
        .with_context(|| format!("state n = {}, l = {}, N = {}", qn.n, qn.l, qn.dim))?;
    let grid = match args.grid {
        Some(g) => g,
        None => RadialGrid::new(DEFAULT_R_MIN, default_r_max(&radial), DEFAULT_POINTS)?,
    };

    let mut report = Report::new(vec!["r", "R"]);
    report.meta("command", "wavefunction");
    report.meta("potential", describe(args.potential.potential, &pot));
    report.meta("units", describe_units(&units));
    report.meta("quantum_numbers", json!({ "n": qn.n, "l": qn.l, "N": qn.dim }));
    report.meta("energy", num(radial.energy));
    report.meta("normalization", num(radial.normalization.unwrap_or(f64::NAN)));
    report.meta("grid", json!({ "r_min": grid.r_min, "r_max": grid.r_max, "points": grid.points }));
    report.csv_constants = vec!["energy", "normalization"];

    let step = (grid.r_max - grid.r_min) / (grid.points - 1) as f64;
    for i in 0..grid.points {
        let r = if i + 1 == grid.points { grid.r_max } else { grid.r_min + i as f64 * step };
        report.push(vec![num(r), num(radial.eval(r))]);
    }
    report.emit(&args.output)?;
    Ok(Status::Ok)
}
