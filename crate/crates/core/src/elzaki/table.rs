//! The standard transform table, instantiated with concrete parameters.
//!
//! Each row carries the real-space expression, the tabulated image written
//! out by hand, an independent closure for f(t), and the Laplace pair where
//! one is classical. Two rows differ from the commonly printed table:
//! E[cosh at] = u²/(1 − a²u²) and E[t sin at] = 2a u⁴/(1 + a²u²)², both forced by
//! T(u) = u·F(1/u).

use crate::elzaki::expr::{Expr, Shift, Special, Term};
use crate::elzaki::image::{Factor, ImageTerm, TransformExpr};
use crate::elzaki::{elzaki_adaptive, elzaki_numeric, DEFAULT_NODES};
use crate::error::Result;
use crate::quadrature::{integrate, Tolerance};
use crate::special::gamma;

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// How the defining integral is evaluated numerically for a row.
#[derive(Debug, Clone, PartialEq)]
pub enum Quadrature {
    /// Gauss–Laguerre with the default node count
    Laguerre,
    /// adaptive Gauss–Kronrod split at the listed points
    Adaptive(Vec<f64>),
    /// narrow normalised Gaussian standing in for δ(t − at)
    Impulse { at: f64, width: f64 },
}

pub struct TableRow {
    pub name: &'static str,
    pub f: Expr,
    pub image: TransformExpr,
    pub sample: RealFn,
    pub laplace: Option<RealFn>,
    pub quadrature: Quadrature,
}

impl TableRow {
    /// Supremum of the row's convergence interval.
    pub fn radius(&self) -> f64 {
        self.image.radius()
    }

    /// The defining integral evaluated numerically at u.
    pub fn numeric(&self, u: f64) -> Result<f64> {
        match &self.quadrature {
            Quadrature::Laguerre => elzaki_numeric(&self.sample, u, DEFAULT_NODES),
            Quadrature::Adaptive(breaks) => elzaki_adaptive(&self.sample, u, breaks),
            Quadrature::Impulse { at, width } => {
                let norm = 1.0 / (width * (2.0 * std::f64::consts::PI).sqrt());
                let g = |t: f64| norm * (-0.5 * ((t - at) / width).powi(2)).exp() * (-t / u).exp();
                let span = 12.0 * width;
                Ok(u * integrate(g, at - span, at + span, Tolerance::default())?)
            }
        }
    }
}

fn img(lead: f64, numer: Vec<f64>, factors: Vec<Factor>, delay: f64) -> TransformExpr {
    TransformExpr::term(ImageTerm::new(lead, numer, factors, delay))
}

fn term(coeff: f64, power: f64, rate: f64, special: Special) -> Expr {
    Expr::term(Term::new(coeff, power, rate, special))
}

/// All rows, with parameters chosen so u ∈ {0.1, 0.3} lies inside every
/// convergence region.
pub fn appendix_table() -> Vec<TableRow> {
    let mut rows = Vec::new();

    let n = 3;
    rows.push(TableRow {
        name: "t^n",
        f: Expr::power(n as f64),
        image: img(n as f64 + 2.0, vec![6.0], vec![], 0.0),
        sample: Box::new(move |t| t.powi(n)),
        laplace: Some(Box::new(|s| 6.0 / s.powi(4))),
        quadrature: Quadrature::Laguerre,
    });

    let a = 2.5;
    let ga = gamma(a).expect("gamma(2.5)");
    rows.push(TableRow {
        name: "t^(a-1)/Gamma(a)",
        f: term(1.0 / ga, a - 1.0, 0.0, Special::None),
        image: img(a + 1.0, vec![1.0], vec![], 0.0),
        sample: Box::new(move |t| t.powf(a - 1.0) / ga),
        laplace: Some(Box::new(move |s| s.powf(-a))),
        quadrature: Quadrature::Adaptive(vec![]),
    });

    let a = 1.5;
    rows.push(TableRow {
        name: "exp(at)",
        f: Expr::exp(a),
        image: img(2.0, vec![1.0], vec![Factor::linear(a, 1.0)], 0.0),
        sample: Box::new(move |t| (a * t).exp()),
        laplace: Some(Box::new(move |s| 1.0 / (s - a))),
        quadrature: Quadrature::Laguerre,
    });

    let (n, a) = (3, -0.5);
    rows.push(TableRow {
        name: "t^(n-1) exp(at)/(n-1)!",
        f: term(0.5, 2.0, a, Special::None),
        image: img(n as f64 + 1.0, vec![1.0], vec![Factor::linear(a, n as f64)], 0.0),
        sample: Box::new(move |t| t * t * (a * t).exp() / 2.0),
        laplace: Some(Box::new(move |s| (s - a).powi(-n))),
        quadrature: Quadrature::Laguerre,
    });

    let a = 2.0;
    rows.push(TableRow {
        name: "sin(at)",
        f: Expr::special(Special::Sin(a)),
        image: img(3.0, vec![a], vec![Factor::quadratic(0.0, a, 1.0)], 0.0),
        sample: Box::new(move |t| (a * t).sin()),
        laplace: Some(Box::new(move |s| a / (s * s + a * a))),
        quadrature: Quadrature::Laguerre,
    });
    rows.push(TableRow {
        name: "cos(at)",
        f: Expr::special(Special::Cos(a)),
        image: img(2.0, vec![1.0], vec![Factor::quadratic(0.0, a, 1.0)], 0.0),
        sample: Box::new(move |t| (a * t).cos()),
        laplace: Some(Box::new(move |s| s / (s * s + a * a))),
        quadrature: Quadrature::Laguerre,
    });

    let a = 1.5;
    let hyperbolic = vec![Factor::linear(a, 1.0), Factor::linear(-a, 1.0)];
    rows.push(TableRow {
        name: "sinh(at)",
        f: Expr::special(Special::Sinh(a)),
        image: img(3.0, vec![a], hyperbolic.clone(), 0.0),
        sample: Box::new(move |t| (a * t).sinh()),
        laplace: Some(Box::new(move |s| a / (s * s - a * a))),
        quadrature: Quadrature::Laguerre,
    });
    rows.push(TableRow {
        name: "cosh(at)",
        f: Expr::special(Special::Cosh(a)),
        image: img(2.0, vec![1.0], hyperbolic, 0.0),
        sample: Box::new(move |t| (a * t).cosh()),
        laplace: Some(Box::new(move |s| s / (s * s - a * a))),
        quadrature: Quadrature::Laguerre,
    });

    let (a, b) = (0.5, 2.0);
    rows.push(TableRow {
        name: "exp(at) sin(bt)",
        f: term(1.0, 0.0, a, Special::Sin(b)),
        image: img(3.0, vec![b], vec![Factor::quadratic(a, b, 1.0)], 0.0),
        sample: Box::new(move |t| (a * t).exp() * (b * t).sin()),
        laplace: Some(Box::new(move |s| b / ((s - a).powi(2) + b * b))),
        quadrature: Quadrature::Laguerre,
    });
    rows.push(TableRow {
        name: "exp(at) cos(bt)",
        f: term(1.0, 0.0, a, Special::Cos(b)),
        image: img(2.0, vec![1.0, -a], vec![Factor::quadratic(a, b, 1.0)], 0.0),
        sample: Box::new(move |t| (a * t).exp() * (b * t).cos()),
        laplace: Some(Box::new(move |s| (s - a) / ((s - a).powi(2) + b * b))),
        quadrature: Quadrature::Laguerre,
    });

    let a = 2.0;
    rows.push(TableRow {
        name: "t sin(at)",
        f: term(1.0, 1.0, 0.0, Special::Sin(a)),
        image: img(4.0, vec![2.0 * a], vec![Factor::quadratic(0.0, a, 2.0)], 0.0),
        sample: Box::new(move |t| t * (a * t).sin()),
        laplace: Some(Box::new(move |s| 2.0 * a * s / (s * s + a * a).powi(2))),
        quadrature: Quadrature::Laguerre,
    });

    let a = 1.0;
    rows.push(TableRow {
        name: "H(t-a)",
        f: Expr::heaviside(a),
        image: img(2.0, vec![1.0], vec![], a),
        sample: Box::new(move |t| if t >= a { 1.0 } else { 0.0 }),
        laplace: Some(Box::new(move |s| (-a * s).exp() / s)),
        quadrature: Quadrature::Adaptive(vec![a]),
    });
    rows.push(TableRow {
        name: "delta(t-a)",
        f: Expr::delta(a),
        image: img(1.0, vec![1.0], vec![], a),
        sample: Box::new(|_| 0.0),
        laplace: Some(Box::new(move |s| (-a * s).exp())),
        quadrature: Quadrature::Impulse { at: a, width: 1e-5 },
    });

    let a = 2.0;
    rows.push(TableRow {
        name: "J0(at)",
        f: Expr::special(Special::J0(a)),
        image: img(2.0, vec![1.0], vec![Factor::quadratic(0.0, a, 0.5)], 0.0),
        sample: Box::new(move |t| crate::special::bessel_j0(a * t)),
        laplace: Some(Box::new(move |s| 1.0 / (s * s + a * a).sqrt())),
        quadrature: Quadrature::Laguerre,
    });

    let (n, a) = (3, 1.0);
    rows.push(TableRow {
        name: "(t-a)^(n-1) H(t-a)/Gamma(n)",
        f: Expr::term(Term::new(0.5, 2.0, 0.0, Special::None).with_shift(Shift::Heaviside(a))),
        image: img(n as f64 + 1.0, vec![1.0], vec![], a),
        sample: Box::new(move |t| if t >= a { (t - a).powi(n - 1) / 2.0 } else { 0.0 }),
        laplace: Some(Box::new(move |s| (-a * s).exp() / s.powi(n))),
        quadrature: Quadrature::Adaptive(vec![a]),
    });

    rows
}
