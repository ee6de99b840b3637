//! Inversion of images back into the expression grammar.
//!
//! Rational images go through the Laplace side F(s) = s·T(1/s) and complex
//! partial fractions. Images with fractional exponents are matched against
//! the monomial, Kummer and Bessel rows.

use num_complex::Complex64;

use crate::elzaki::expr::{Expr, Shift, Special, Term};
use crate::elzaki::image::{Factor, ImageTerm, TransformExpr};
use crate::error::{Error, Result};
use crate::special::{binomial, factorial, gamma};

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-10 * (1.0 + x.abs())
}

/// f with E[f] = T, or an error when T has no preimage in the grammar.
pub fn inverse_elzaki(tf: &TransformExpr) -> Result<Expr> {
    let mut out = Expr::zero();
    for term in tf.terms() {
        out = out + invert_term(term)?;
    }
    Ok(out)
}

fn invert_term(term: &ImageTerm) -> Result<Expr> {
    if term.delay != 0.0 {
        if term.delay < 0.0 {
            return Err(Error::NotInvertible(format!("growing factor exp({}/u)", -term.delay)));
        }
        let body = invert_term(&ImageTerm { delay: 0.0, ..term.clone() })?;
        let s = term.delay;
        return Ok(Expr::new(body.terms().iter().map(|t| match t.shift {
            Shift::Delta(p) => Term::delta(t.coeff, p + s),
            _ => t.with_shift(Shift::Heaviside(s)),
        })));
    }
    if is_integer(term.lead) && term.factors.iter().all(|f| is_integer(f.power)) {
        return invert_rational(term);
    }
    let mut out = Expr::zero();
    for (i, &c) in term.numer.iter().enumerate() {
        if c != 0.0 {
            out = out + invert_fractional(c, term.lead + i as f64, &term.factors)?;
        }
    }
    Ok(out)
}

/// c t^k e^{λt} with complex λ, summed then projected on the real axis.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ExpMono {
    pub coeff: Complex64,
    pub k: u32,
    pub lambda: Complex64,
}

pub(crate) fn real_part(monos: &[ExpMono]) -> Expr {
    let mut terms = Vec::new();
    for m in monos {
        let (a, w) = (m.lambda.re, m.lambda.im);
        if w == 0.0 {
            terms.push(Term::new(m.coeff.re, m.k as f64, a, Special::None));
        } else {
            // Re(c e^{iwt}) = Re c cos wt - Im c sin wt
            terms.push(Term::new(m.coeff.re, m.k as f64, a, Special::Cos(w)));
            terms.push(Term::new(-m.coeff.im, m.k as f64, a, Special::Sin(w)));
        }
    }
    Expr::new(terms)
}

/// Taylor coefficients of (π - q + ε)^α in ε, up to order m - 1.
fn shifted_power_series(base: Complex64, alpha: i64, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| base.powi((alpha - k as i64) as i32) * binomial(alpha as f64, k as u32))
        .collect()
}

fn series_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let m = a.len().min(b.len());
    (0..m).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect()
}

fn invert_rational(term: &ImageTerm) -> Result<Expr> {
    // poles of F(s) from the factors, conjugate pairs split
    let mut poles: Vec<(Complex64, i64)> = Vec::new();
    for f in &term.factors {
        let m = f.power.round() as i64;
        if f.is_linear() {
            poles.push((Complex64::new(f.re, 0.0), m));
        } else {
            poles.push((Complex64::new(f.re, f.im), m));
            poles.push((Complex64::new(f.re, -f.im), m));
        }
    }
    let total: i64 = poles.iter().map(|p| p.1).sum();
    let lead = term.lead.round() as i64;
    let mut monos = Vec::new();
    let mut delta = 0.0;
    for (i, &c) in term.numer.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        // c s^e Π (s - λ)^{-m}
        let e = 1 - lead - i as i64 + total;
        match e - total {
            d if d > 0 => {
                return Err(Error::NotInvertible(format!(
                    "u^{} term needs derivatives of the delta function",
                    lead + i as i64
                )))
            }
            0 => delta += c,
            _ => {}
        }
        let mut all = poles.clone();
        if e < 0 {
            all.push((Complex64::new(0.0, 0.0), -e));
        }
        for &(pole, m) in &all {
            let m = m as usize;
            let mut g = vec![Complex64::new(0.0, 0.0); m];
            g[0] = Complex64::new(c, 0.0);
            let at_origin = pole.norm() == 0.0;
            if !at_origin && e != 0 {
                g = series_mul(&g, &shifted_power_series(pole, e, m));
            }
            for &(other, mo) in &poles {
                if other != pole {
                    g = series_mul(&g, &shifted_power_series(pole - other, -mo, m));
                }
            }
            for (k, gk) in g.iter().enumerate() {
                // gk / (s - π)^{m-k}  ->  gk t^{m-k-1} e^{πt} / (m-k-1)!
                let order = (m - k - 1) as u32;
                monos.push(ExpMono { coeff: gk / factorial(order), k: order, lambda: pole });
            }
        }
    }
    let mut out = real_part(&monos);
    if delta != 0.0 {
        out = out + Expr::term(Term::delta(delta, 0.0));
    }
    Ok(out)
}

fn terminates(a: f64) -> bool {
    a <= 1e-12 && is_integer(a)
}

/// c u^m Π factors for a single monomial of the numerator.
fn invert_fractional(c: f64, m: f64, factors: &[Factor]) -> Result<Expr> {
    let fail = || {
        Err(Error::NotInvertible(format!(
            "u^{m} with {} factor(s) matches no table row",
            factors.len()
        )))
    };
    let kummer = |r: f64, a: f64, b: f64, kappa: f64| -> Result<Expr> {
        let g = gamma(b)?;
        let a = if is_integer(a) { a.round() } else { a };
        let special = if a == 0.0 { Special::None } else { Special::Hyp1F1 { a, b, scale: kappa } };
        Expr::term(Term::new(c / g, b - 1.0, r, special)).expand_terminating()
    };
    match factors {
        [] => {
            if (m - 1.0).abs() <= 1e-12 {
                Ok(Expr::term(Term::delta(c, 0.0)))
            } else if m > 1.0 {
                Ok(Expr::term(Term::new(c / gamma(m - 1.0)?, m - 2.0, 0.0, Special::None)))
            } else {
                fail()
            }
        }
        [f] if f.is_linear() => {
            // s^{1-m+α} (s-λ)^{-α}
            let b = m - 1.0;
            if b <= 0.0 {
                return fail();
            }
            let (lambda, alpha) = (f.re, f.power);
            if terminates(b - alpha) {
                kummer(lambda, b - alpha, b, -lambda)
            } else {
                kummer(0.0, alpha, b, lambda)
            }
        }
        [f, g] if f.is_linear() && g.is_linear() => {
            // s^{1-m+α+β} (s-λA)^{-α} (s-λB)^{-β}; two singular points only
            let b = f.power + g.power;
            if (m - 1.0 - b).abs() > 1e-10 * (1.0 + m.abs()) || b <= 0.0 {
                return fail();
            }
            if terminates(f.power) && !terminates(g.power) {
                kummer(g.re, f.power, b, f.re - g.re)
            } else {
                kummer(f.re, g.power, b, g.re - f.re)
            }
        }
        [f] if !f.is_linear() && (f.power - 0.5).abs() <= 1e-12 && (m - 2.0).abs() <= 1e-12 => {
            Ok(Expr::term(Term::new(c, 0.0, f.re, Special::J0(f.im))))
        }
        _ => fail(),
    }
}
