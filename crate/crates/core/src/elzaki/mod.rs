//! The Elzaki transform T(u) = u ∫₀^∞ f(t) e^{-t/u} dt on a closed grammar of
//! real-space expressions, with its operational rules.

pub mod appendix;
pub mod convolve;
pub mod expr;
pub mod image;
pub mod inverse;
pub mod parse;
pub mod prefix;
pub mod table;

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breaks, integrate_to_infinity, GaussLaguerre, Tolerance};
use crate::special::{binomial, factorial, gamma};

pub use convolve::convolve;
pub use expr::{Expr, Shift, Special, Term};
pub use image::{Factor, ImageTerm, TransformExpr};
pub use inverse::inverse_elzaki;

pub const DEFAULT_NODES: usize = 64;

/// Image of a single unshifted term.
fn transform_body(term: &Term) -> Result<TransformExpr> {
    let Term { coeff, power, rate, special, .. } = *term;
    match special {
        Special::None => {
            if power <= -1.0 {
                return Err(Error::Divergent(format!("t^{power} is not integrable at the origin")));
            }
            let g = gamma(power + 1.0)?;
            Ok(TransformExpr::term(ImageTerm::new(
                power + 2.0,
                vec![coeff * g],
                vec![Factor::linear(rate, power + 1.0)],
                0.0,
            )))
        }
        Special::Sin(b) | Special::Cos(b) => {
            let k = term
                .integer_power()
                .ok_or_else(|| Error::Unsupported(format!("t^{power} times an oscillating factor")))?;
            // k! u^{k+2} (1 - μ̄u)^{k+1} / |1 - μu|^{2(k+1)},  μ = rate + ib
            let w = Complex64::new(-rate, b);
            let take_im = matches!(special, Special::Sin(_));
            let scale = coeff * factorial(k);
            let numer: Vec<f64> = (0..=k + 1)
                .map(|j| {
                    let c = w.powu(j) * binomial((k + 1) as f64, j);
                    scale * if take_im { c.im } else { c.re }
                })
                .collect();
            Ok(TransformExpr::term(ImageTerm::new(
                k as f64 + 2.0,
                numer,
                vec![Factor::quadratic(rate, b, k as f64 + 1.0)],
                0.0,
            )))
        }
        Special::Sinh(b) | Special::Cosh(b) => {
            let sign = if matches!(special, Special::Sinh(_)) { -1.0 } else { 1.0 };
            let up = Term::new(0.5 * coeff, power, rate + b, Special::None);
            let down = Term::new(sign * 0.5 * coeff, power, rate - b, Special::None);
            Ok(transform_body(&up)?.add(&transform_body(&down)?))
        }
        Special::J0(a) => {
            let k = term
                .integer_power()
                .ok_or_else(|| Error::Unsupported(format!("t^{power} times J0")))?;
            let mut image = TransformExpr::term(ImageTerm::new(
                2.0,
                vec![coeff],
                vec![Factor::quadratic(rate, a, 0.5)],
                0.0,
            ));
            for _ in 0..k {
                image = t_multiplied_image(&image, 1)?;
            }
            Ok(image)
        }
        Special::Hyp1F1 { a, b, scale } => {
            if (power - (b - 1.0)).abs() <= 1e-12 * (1.0 + b.abs()) && b > 0.0 {
                // Γ(b) u^{b+1} (1 - r u)^{a-b} (1 - (r+κ)u)^{-a}
                let g = gamma(b)?;
                Ok(TransformExpr::term(ImageTerm::new(
                    b + 1.0,
                    vec![coeff * g],
                    vec![Factor::linear(rate, b - a), Factor::linear(rate + scale, a)],
                    0.0,
                )))
            } else if a <= 0.0 && a == a.round() {
                elzaki_transform(&Expr::term(*term).expand_terminating()?)
            } else {
                Err(Error::Unsupported(format!(
                    "t^{power} times 1F1({a}; {b}; {scale}t) needs power b - 1"
                )))
            }
        }
    }
}

/// Symbolic image, linear over terms.
pub fn elzaki_transform(f: &Expr) -> Result<TransformExpr> {
    let mut out = TransformExpr::zero();
    for term in f.terms() {
        let image = match term.shift {
            Shift::None => transform_body(term)?,
            Shift::Heaviside(s) if s >= 0.0 => {
                let body = transform_body(&term.unshifted())?;
                TransformExpr::new(body.terms().iter().map(|t| ImageTerm { delay: t.delay + s, ..t.clone() }))
            }
            Shift::Heaviside(s) => {
                // the step lies left of the origin, so only the re-expanded body remains
                let pieces = expr::shift_argument(&term.unshifted(), -s)?;
                elzaki_transform(&Expr::new(pieces))?
            }
            Shift::Delta(s) if s >= 0.0 => TransformExpr::term(ImageTerm::new(1.0, vec![term.coeff], vec![], s)),
            Shift::Delta(_) => TransformExpr::zero(),
        };
        out = out.add(&image);
    }
    Ok(out)
}

fn default_rule() -> &'static GaussLaguerre {
    static RULE: OnceLock<GaussLaguerre> = OnceLock::new();
    RULE.get_or_init(|| GaussLaguerre::new(DEFAULT_NODES).expect("64-point rule"))
}

/// u² ∫₀^∞ f(us) e^{-s} ds by an n-point Gauss–Laguerre rule.
pub fn elzaki_numeric(f: impl Fn(f64) -> f64, u: f64, nodes: usize) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("u = {u} must be positive")));
    }
    let owned;
    let rule = if nodes == DEFAULT_NODES {
        default_rule()
    } else {
        owned = GaussLaguerre::new(nodes)?;
        &owned
    };
    let v = u * u * rule.integrate(|s| f(u * s));
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("Elzaki integral at u = {u}")))
    }
}

/// u ∫₀^∞ f(t) e^{-t/u} dt by adaptive quadrature, split at the given
/// points; suited to integrands with kinks, steps or endpoint singularities.
pub fn elzaki_adaptive(f: impl Fn(f64) -> f64, u: f64, breaks: &[f64]) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("u = {u} must be positive")));
    }
    let g = |t: f64| {
        let v = f(t) * (-t / u).exp();
        if v.is_finite() { v } else { 0.0 }
    };
    let tol = Tolerance { abs: 1e-15, rel: 1e-12, max_intervals: 4000 };
    let edge = breaks.iter().copied().fold(0.0_f64, f64::max) + u;
    let head = integrate_with_breaks(g, 0.0, edge, breaks, tol)?;
    let tail = integrate_to_infinity(g, edge, tol)?;
    let v = u * (head + tail);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("Elzaki integral at u = {u}")))
    }
}

/// u·F(1/u) for a Laplace image F.
pub fn laplace_dual(f: impl Fn(f64) -> f64, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("u = {u} must be positive")));
    }
    let v = u * f(1.0 / u);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("s = {} lies outside the Laplace domain", 1.0 / u)))
    }
}

/// Image of f⁽ⁿ⁾ from the image of f and f(0), …, f⁽ⁿ⁻¹⁾(0):
/// T/uⁿ − Σ u^{2−n+k} f⁽ᵏ⁾(0).
pub fn derivative_image(tf: &TransformExpr, n: u32, initial_values: &[f64]) -> Result<TransformExpr> {
    if n == 0 {
        return Err(Error::Domain("derivative order must be at least 1".into()));
    }
    if initial_values.len() != n as usize {
        return Err(Error::LengthMismatch { expected: n as usize, got: initial_values.len() });
    }
    let mut out = tf.mul_power(-(n as f64));
    for (k, &v) in initial_values.iter().enumerate() {
        out = out.sub(&TransformExpr::monomial(v, 2.0 - n as f64 + k as f64));
    }
    Ok(out)
}

/// Image of tᵖ·g from the image of g, for p ∈ {1, 2, 3}.
pub fn t_multiplied_image(tg: &TransformExpr, power: u32) -> Result<TransformExpr> {
    let d1 = || tg.derivative();
    match power {
        1 => Ok(d1().mul_power(2.0).sub(&tg.mul_power(1.0))),
        2 => Ok(d1().derivative().mul_power(4.0)),
        3 => {
            let d2 = d1().derivative();
            Ok(d2.derivative().mul_power(6.0).add(&d2.mul_power(5.0).scale(3.0)))
        }
        _ => Err(Error::Unsupported(format!("t-multiplication rule for power {power}"))),
    }
}

/// Image of e^{-at} f(t): (1 + a·u) T(u / (1 + a·u)).
pub fn shifted_transform(tf: &TransformExpr, a: f64) -> Result<TransformExpr> {
    if !a.is_finite() {
        return Err(Error::Domain(format!("shift a = {a}")));
    }
    if a == 0.0 {
        return Ok(tf.clone());
    }
    let mut out = Vec::new();
    for term in tf.terms() {
        let mut carried = 0.0; // net power of (1 + a u) from the rewritten factors
        let factors: Vec<Factor> = term
            .factors
            .iter()
            .map(|f| {
                let degree = if f.is_linear() { 1.0 } else { 2.0 };
                carried += f.power * degree;
                Factor { re: f.re - a, ..*f }
            })
            .collect();
        let weight = (-a * term.delay).exp();
        for (i, c) in term.numer.iter().enumerate() {
            let m = term.lead + i as f64;
            let mut fs = factors.clone();
            // (1 + a u)^{1 - m + carried}
            fs.push(Factor::linear(-a, m - 1.0 - carried));
            out.push(ImageTerm::new(m, vec![c * weight], fs, term.delay));
        }
    }
    Ok(TransformExpr::new(out))
}
