use anyhow::Result;
use elzaki_qm::elzaki::table::appendix_table;
use elzaki_qm::elzaki::{
    convolve, elzaki_numeric, elzaki_transform, inverse_elzaki, laplace_dual, shifted_transform, Expr, Special, Term,
};
use elzaki_qm::mde::{closed_form_chi, default_step, mde_residual, MdeParams};
use elzaki_qm::oracle::{default_grid, eigensolve_radial, ode_residual_radial, overlap, RadialGrid};
use elzaki_qm::potentials::{energy, radial_wavefunction, PotentialSpec, QuantumNumbers, UnitSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{describe, PotentialKind, Suite, VerifyArgs};
use crate::output::{num, Report};
use crate::{Status, Usage};

const UNITS: UnitSystem = UnitSystem { hbar: 1.0, mass: 1.0 };
const SEED: u64 = 20_240_601;

struct Check {
    suite: &'static str,
    name: String,
    measured: f64,
    tolerance: f64,
    error: Option<String>,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { suite, name: name.into(), measured, tolerance, error: None }
    }

    fn failed(suite: &'static str, name: impl Into<String>, tolerance: f64, error: impl ToString) -> Self {
        Self { suite, name: name.into(), measured: f64::NAN, tolerance, error: Some(error.to_string()) }
    }

    fn pass(&self) -> bool {
        self.error.is_none() && self.measured <= self.tolerance
    }
}

type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Default parameters for each family, all with bound states in every
/// channel the suites visit.
fn family(kind: PotentialKind) -> PotentialSpec {
    let spec = match kind {
        PotentialKind::Coulomb => PotentialSpec::coulomb(1.0, 1.0),
        PotentialKind::Mie => PotentialSpec::mie(0.5, -1.5, 0.25),
        PotentialKind::KratzerFues => PotentialSpec::kratzer_fues(1.0, 1.0),
        // a negative D0 gives the binding well (1 - r0/r)²
        PotentialKind::ModifiedKratzer => PotentialSpec::modified_kratzer(-1.0, 1.0),
        PotentialKind::Harmonic => PotentialSpec::harmonic(1.0),
        PotentialKind::Pseudoharmonic => PotentialSpec::pseudoharmonic_from(1.0, 1.0),
    };
    spec.expect("default family parameters are valid")
}

fn kind_name(kind: PotentialKind) -> String {
    use clap::ValueEnum;
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn random_term(rng: &mut impl Rng) -> Expr {
    let c = rng.gen_range(-2.0..2.0);
    let r: f64 = rng.gen_range(-1.0..1.0);
    let b: f64 = rng.gen_range(0.3..2.0);
    let special = match rng.gen_range(0..6) {
        0 => Special::None,
        1 => Special::Sin(b),
        2 => Special::Cos(b),
        3 => Special::Sinh(b.min(1.5)),
        4 => Special::Cosh(b.min(1.5)),
        _ => return Expr::term(Term::new(c, 1.0, 0.0, Special::Sin(b))),
    };
    Expr::term(Term::new(c, rng.gen_range(0..3) as f64, r, special))
}

fn random_expr(rng: &mut impl Rng) -> Expr {
    let e = random_term(rng);
    if rng.gen_bool(0.4) {
        e + random_term(rng)
    } else {
        e
    }
}

fn transform_jobs() -> Vec<Job> {
    const S: &str = "transforms";
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(|| {
        appendix_table()
            .iter()
            .map(|row| {
                let mut worst = 0.0f64;
                for u in [0.1, 0.3] {
                    match (row.image.eval(u), row.numeric(u)) {
                        (Ok(s), Ok(n)) => worst = worst.max(rel_err(s, n)),
                        (Err(e), _) | (_, Err(e)) => return Check::failed(S, format!("table {}", row.name), 1e-6, e),
                    }
                }
                Check::new(S, format!("table {} vs quadrature", row.name), worst, 1e-6)
            })
            .collect()
    }));
    jobs.push(Box::new(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        appendix_table()
            .iter()
            .filter_map(|row| {
                let l = row.laplace.as_ref()?;
                let top = (0.9 * row.radius()).min(2.0);
                let mut worst = 0.0f64;
                for _ in 0..10 {
                    let u = rng.gen_range(0.02..top);
                    match (row.image.eval(u), laplace_dual(l, u)) {
                        (Ok(t), Ok(d)) => worst = worst.max(rel_err(t, d)),
                        (Err(e), _) | (_, Err(e)) => return Some(Check::failed(S, format!("duality {}", row.name), 1e-10, e)),
                    }
                }
                Some(Check::new(S, format!("duality {}", row.name), worst, 1e-10))
            })
            .collect()
    }));
    jobs.push(Box::new(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
        (0..20)
            .map(|_| {
                let (g, h) = (random_expr(&mut rng), random_expr(&mut rng));
                let us: Vec<f64> = (0..5).map(|_| rng.gen_range(0.05..0.8)).collect();
                let name = format!("convolution ({g}) * ({h})");
                let run = || -> elzaki_qm::Result<f64> {
                    let (tg, th) = (elzaki_transform(&g)?, elzaki_transform(&h)?);
                    let tc = elzaki_transform(&convolve(&g, &h)?)?;
                    let top = tg.radius().min(th.radius()).min(1.0);
                    let mut worst = 0.0f64;
                    for &x in &us {
                        let u = x * top;
                        worst = worst.max(rel_err(tc.eval(u)? * u, tg.eval(u)? * th.eval(u)?));
                    }
                    Ok(worst)
                };
                match run() {
                    Ok(w) => Check::new(S, name, w, 1e-8),
                    Err(e) => Check::failed(S, name, 1e-8, e),
                }
            })
            .collect()
    }));
    jobs.push(Box::new(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
        (0..20)
            .map(|_| {
                let f = random_expr(&mut rng);
                let name = format!("inverse of image of {f}");
                match elzaki_transform(&f).and_then(|t| inverse_elzaki(&t)) {
                    Ok(back) => {
                        let worst = [0.0, 0.3, 1.1, 2.7]
                            .iter()
                            .map(|&t| (back.eval(t) - f.eval(t)).abs() / f.eval(t).abs().max(back.eval(t).abs()).max(1.0))
                            .fold(0.0, f64::max);
                        Check::new(S, name, worst, 1e-9)
                    }
                    Err(e) => Check::failed(S, name, 1e-9, e),
                }
            })
            .collect()
    }));
    jobs.push(Box::new(|| {
        [("t", 1.0), ("t^2*cos(2t)", 0.5), ("sin(3t) + t", 2.0)]
            .iter()
            .map(|&(src, a)| {
                let name = format!("shift e^(-{a}t) {src}");
                let run = || -> elzaki_qm::Result<f64> {
                    let f: Expr = src.parse()?;
                    let img = shifted_transform(&elzaki_transform(&f)?, a)?;
                    let mut worst = 0.0f64;
                    for u in [0.1, 0.3] {
                        let n = elzaki_numeric(|t| (-a * t).exp() * f.eval(t), u, 64)?;
                        worst = worst.max(rel_err(img.eval(u)?, n));
                    }
                    Ok(worst)
                };
                match run() {
                    Ok(w) => Check::new(S, name, w, 1e-6),
                    Err(e) => Check::failed(S, name, 1e-6, e),
                }
            })
            .collect()
    }));
    jobs
}

fn mde_jobs() -> Vec<Job> {
    vec![Box::new(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
        (0..50)
            .map(|_| {
                let n = rng.gen_range(0..=3u32);
                let b = rng.gen_range(0.2..2.0);
                let a = rng.gen_range(-3.0..1.9);
                let c = b * (2.0 - a + 2.0 * n as f64);
                let name = format!("residual A = {a:.4}, B = {b:.4}, C = {c:.4}, n = {n}");
                let chi = MdeParams::new(a, b, c).and_then(|p| closed_form_chi(&p, n).map(|chi| (p, chi)));
                match chi {
                    Ok((params, chi)) => {
                        let worst = [0.5, 1.0, 2.0, 5.0]
                            .iter()
                            .map(|&y| mde_residual(&chi, &params, y, default_step(y)) / chi.eval(y).abs().max(1.0))
                            .fold(0.0, f64::max);
                        Check::new("mde", name, worst, 1e-6)
                    }
                    Err(e) => Check::failed("mde", name, 1e-6, e),
                }
            })
            .collect()
    })]
}

fn qn(n: u32, l: u32, dim: u32) -> QuantumNumbers {
    QuantumNumbers::new(n, l, dim).expect("dimension at least 2")
}

fn spectrum_jobs(kinds: &[PotentialKind], tolerance: f64, grid: Option<RadialGrid>) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &kind in kinds {
        for dim in 2..=5u32 {
            for l in 0..=2u32 {
                jobs.push(Box::new(move || {
                    let pot = family(kind);
                    let name = format!("{} N = {dim} l = {l} n = 0..2", kind_name(kind));
                    let run = || -> elzaki_qm::Result<f64> {
                        let grid = match grid {
                            Some(g) => g,
                            None => default_grid(&pot, l, dim, &UNITS, 3)?,
                        };
                        let res = eigensolve_radial(&pot, l, dim, &UNITS, &grid, 3)?;
                        let mut worst = 0.0f64;
                        for n in 0..3u32 {
                            worst = worst.max((res.eigenvalues[n as usize] - energy(&pot, &qn(n, l, dim), &UNITS)?).abs());
                        }
                        Ok(worst)
                    };
                    vec![match run() {
                        Ok(w) => Check::new("spectrum", name, w, tolerance),
                        Err(e) => Check::failed("spectrum", name, tolerance, e),
                    }]
                }));
            }
        }
    }
    jobs
}

const CHANNELS: [(u32, u32); 3] = [(0, 3), (1, 2), (2, 4)];

fn node_jobs(kinds: &[PotentialKind]) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &kind in kinds {
        for (l, dim) in CHANNELS {
            jobs.push(Box::new(move || {
                let pot = family(kind);
                (0..=4u32)
                    .map(|n| {
                        let name = format!("{} n = {n} l = {l} N = {dim} has n nodes", kind_name(kind));
                        match radial_wavefunction(&pot, &qn(n, l, dim), &UNITS) {
                            Ok(r) => Check::new("nodes", name, (r.node_count() as f64 - n as f64).abs(), 0.0),
                            Err(e) => Check::failed("nodes", name, 0.0, e),
                        }
                    })
                    .collect()
            }));
        }
    }
    jobs
}

fn orthogonality_jobs(kinds: &[PotentialKind]) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &kind in kinds {
        for (l, dim) in CHANNELS {
            jobs.push(Box::new(move || {
                let pot = family(kind);
                let name = format!("{} l = {l} N = {dim} n = 0..4 orthonormal", kind_name(kind));
                let run = || -> elzaki_qm::Result<f64> {
                    let states = (0..=4)
                        .map(|n| radial_wavefunction(&pot, &qn(n, l, dim), &UNITS)?.normalized())
                        .collect::<elzaki_qm::Result<Vec<_>>>()?;
                    let mut worst = 0.0f64;
                    for (i, a) in states.iter().enumerate() {
                        for b in &states[i..] {
                            let target = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                            worst = worst.max((overlap(a, b, dim)? - target).abs());
                        }
                    }
                    Ok(worst)
                };
                vec![match run() {
                    Ok(w) => Check::new("orthogonality", name, w, 1e-8),
                    Err(e) => Check::failed("orthogonality", name, 1e-8, e),
                }]
            }));
        }
    }
    jobs
}

fn residual_jobs(kinds: &[PotentialKind]) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &kind in kinds {
        for (n, l, dim) in [(0, 0, 3), (1, 1, 2), (2, 0, 4), (3, 2, 5)] {
            jobs.push(Box::new(move || {
                let pot = family(kind);
                let q = qn(n, l, dim);
                let name = format!("{} n = {n} l = {l} N = {dim} radial equation", kind_name(kind));
                let run = || -> elzaki_qm::Result<f64> {
                    let r = radial_wavefunction(&pot, &q, &UNITS)?.normalized()?;
                    Ok([0.5, 1.0, 2.0, 5.0]
                        .iter()
                        .map(|&x| {
                            let (v, _, d2) = r.derivatives(x);
                            ode_residual_radial(&r, &pot, &q, &UNITS, x) / v.abs().max(d2.abs()).max(1.0)
                        })
                        .fold(0.0, f64::max))
                };
                vec![match run() {
                    Ok(w) => Check::new("residuals", name, w, 1e-10),
                    Err(e) => Check::failed("residuals", name, 1e-10, e),
                }]
            }));
        }
    }
    jobs
}

fn suite_name(s: Suite) -> String {
    use clap::ValueEnum;
    s.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

pub fn run(args: &VerifyArgs) -> Result<Status> {
    if !(args.tolerance > 0.0) {
        return Err(Usage("--tolerance must be positive".into()).into());
    }
    let mut suites = args.suite.clone();
    if suites.is_empty() {
        suites = vec![Suite::Transforms, Suite::Mde, Suite::Spectrum, Suite::Nodes, Suite::Orthogonality, Suite::Residuals];
    }
    suites.sort();
    suites.dedup();
    let kinds: Vec<PotentialKind> = match args.potential {
        Some(k) => vec![k],
        None => vec![
            PotentialKind::Coulomb,
            PotentialKind::Mie,
            PotentialKind::KratzerFues,
            PotentialKind::ModifiedKratzer,
            PotentialKind::Harmonic,
            PotentialKind::Pseudoharmonic,
        ],
    };

    let mut jobs: Vec<Job> = Vec::new();
    for &suite in &suites {
        jobs.extend(match suite {
            Suite::Transforms => transform_jobs(),
            Suite::Mde => mde_jobs(),
            Suite::Spectrum => spectrum_jobs(&kinds, args.tolerance, args.grid),
            Suite::Nodes => node_jobs(&kinds),
            Suite::Orthogonality => orthogonality_jobs(&kinds),
            Suite::Residuals => residual_jobs(&kinds),
        });
    }
    let checks: Vec<Check> = jobs.par_iter().map(|job| job()).collect::<Vec<_>>().into_iter().flatten().collect();

    let failed = checks.iter().filter(|c| !c.pass()).count();
    let mut report = Report::new(vec!["index", "suite", "check", "measured", "tolerance", "pass", "error"]);
    report.meta("command", "verify");
    report.meta("suites", suites.iter().map(|&s| suite_name(s)).collect::<Vec<_>>());
    report.meta(
        "potentials",
        kinds.iter().map(|&k| describe(k, &family(k))).collect::<Vec<_>>(),
    );
    report.meta("spectrum_tolerance", args.tolerance);
    if let Some(g) = args.grid {
        report.meta("grid", json!({ "r_min": g.r_min, "r_max": g.r_max, "points": g.points }));
    }
    report.meta("seed", SEED);
    report.meta("checks", checks.len());
    report.meta("passed", checks.len() - failed);
    report.meta("failed", failed);
    for (i, c) in checks.iter().enumerate() {
        report.push(vec![
            json!(i),
            json!(c.suite),
            json!(c.name),
            num(c.measured),
            num(c.tolerance),
            json!(c.pass()),
            c.error.clone().map_or(Value::Null, Value::String),
        ]);
    }
    report.emit(&args.output)?;
    Ok(if failed == 0 { Status::Ok } else { Status::Failed })
}
