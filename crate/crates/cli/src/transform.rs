use anyhow::Result;
use elzaki_qm::elzaki::parse::parse_expr;
use elzaki_qm::elzaki::prefix::{write_expr, write_image};
use elzaki_qm::elzaki::{elzaki_adaptive, elzaki_transform, Expr, Shift, TransformExpr};
use elzaki_qm::Error;
use serde_json::Value;

use crate::args::TransformArgs;
use crate::output::{num, Report};
use crate::{Status, Usage};

/// Parse and convergence-region errors are usage errors.
pub fn classify(e: Error) -> anyhow::Error {
    match e {
        Error::Parse { .. } | Error::OutsideConvergence { .. } => Usage(e.to_string()).into(),
        other => other.into(),
    }
}

/// The defining integral u ∫ f(t) e^{-t/u} dt, with impulses sifted exactly
/// and the quadrature split at every step.
pub fn quadrature(f: &Expr, u: f64) -> Result<f64> {
    let mut impulses = 0.0;
    let mut breaks = Vec::new();
    let mut smooth = Vec::new();
    for term in f.terms() {
        match term.shift {
            Shift::Delta(s) => {
                if s >= 0.0 {
                    impulses += term.coeff * u * (-s / u).exp();
                }
            }
            Shift::Heaviside(s) => {
                if s > 0.0 {
                    breaks.push(s);
                }
                smooth.push(*term);
            }
            Shift::None => smooth.push(*term),
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let body = elzaki_adaptive(|t| smooth.iter().map(|term| term.eval(t)).sum(), u, &breaks)?;
    Ok(body + impulses)
}

pub fn sample_rows(report: &mut Report, f: &Expr, image: &TransformExpr, at: &[f64]) -> Result<()> {
    for &u in at {
        if !(u > 0.0) {
            return Err(Usage(format!("u = {u} must be positive")).into());
        }
        let value = image.eval(u).map_err(classify)?;
        let quad = quadrature(f, u)?;
        let delta = (value - quad).abs() / value.abs().max(quad.abs()).max(f64::MIN_POSITIVE);
        report.push(vec![num(u), num(value), num(quad), num(if value == quad { 0.0 } else { delta })]);
    }
    Ok(())
}

pub fn run(args: &TransformArgs) -> Result<Status> {
    let f = parse_expr(&args.expression).map_err(classify)?;
    let image = elzaki_transform(&f).map_err(classify)?;

    let mut report = Report::new(vec!["u", "value", "quadrature", "rel_delta"]);
    report.meta("command", "transform");
    report.meta("input", args.expression.as_str());
    report.meta("expression", f.to_string());
    report.meta("image", image.to_string());
    report.meta("expression_prefix", write_expr(&f));
    report.meta("image_prefix", write_image(&image));
    let radius = image.radius();
    report.meta("radius", if radius.is_finite() { num(radius) } else { Value::String("inf".into()) });
    report.csv_constants = vec!["expression", "image"];

    if let Some(at) = &args.at {
        sample_rows(&mut report, &f, &image, at)?;
    }
    report.emit(&args.output)?;
    Ok(Status::Ok)
}
