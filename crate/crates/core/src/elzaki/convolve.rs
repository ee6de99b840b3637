use num_complex::Complex64;

use crate::elzaki::expr::{Expr, Shift, Special, Term};
use crate::elzaki::inverse::{real_part, ExpMono};
use crate::error::{Error, Result};
use crate::special::{beta, binomial, factorial};

/// (G * H)(t) = ∫₀ᵗ G(t − τ) H(τ) dτ in closed form.
///
/// Elementary terms with integer powers are split into complex exponential
/// monomials whose convolutions are known exactly; pure fractional powers
/// use the beta integral, which leaves a ₁F₁ factor.
pub fn convolve(g: &Expr, h: &Expr) -> Result<Expr> {
    let g = g.expand_terminating()?;
    let h = h.expand_terminating()?;
    let mut out = Expr::zero();
    for a in g.terms() {
        for b in h.terms() {
            out = out + convolve_terms(a, b)?;
        }
    }
    Ok(out)
}

fn convolve_terms(a: &Term, b: &Term) -> Result<Expr> {
    if a.shift != Shift::None || b.shift != Shift::None {
        return Err(Error::Unsupported("convolution of shifted or delta terms".into()));
    }
    let elementary = |t: &Term| t.special.is_elementary() && t.integer_power().is_some();
    if elementary(a) && elementary(b) {
        let mut monos = Vec::new();
        for x in split(a) {
            for y in split(b) {
                monos.extend(convolve_monos(x, y));
            }
        }
        return Ok(real_part(&monos));
    }
    if a.special == Special::None && b.special == Special::None && a.power > -1.0 && b.power > -1.0 {
        // t^{σ-1} e^{λt} * t^{ρ-1} e^{μt} = B(σ,ρ) t^{σ+ρ-1} e^{λt} 1F1(ρ; σ+ρ; (μ-λ)t)
        let (sigma, rho) = (a.power + 1.0, b.power + 1.0);
        let c = a.coeff * b.coeff * beta(sigma, rho)?;
        let special = Special::Hyp1F1 { a: rho, b: sigma + rho, scale: b.rate - a.rate };
        return Ok(Expr::term(Term::new(c, sigma + rho - 1.0, a.rate, special)));
    }
    Err(Error::Unsupported(format!("convolution of {a} with {b}")))
}

/// Complex exponential monomials summing to an elementary term.
fn split(t: &Term) -> Vec<ExpMono> {
    let k = t.integer_power().expect("integer power");
    let c = Complex64::new(t.coeff, 0.0);
    let mono = |coeff: Complex64, im: f64, shift: f64| ExpMono {
        coeff,
        k,
        lambda: Complex64::new(t.rate + shift, im),
    };
    let half = Complex64::new(0.5, 0.0);
    match t.special {
        Special::None => vec![mono(c, 0.0, 0.0)],
        Special::Cos(w) => vec![mono(c * half, w, 0.0), mono(c * half, -w, 0.0)],
        // sin wt = (e^{iwt} - e^{-iwt}) / 2i
        Special::Sin(w) => {
            let q = Complex64::new(0.0, -0.5) * c;
            vec![mono(q, w, 0.0), mono(-q, -w, 0.0)]
        }
        Special::Cosh(w) => vec![mono(c * half, 0.0, w), mono(c * half, 0.0, -w)],
        Special::Sinh(w) => vec![mono(c * half, 0.0, w), mono(-c * half, 0.0, -w)],
        _ => unreachable!("non-elementary factor"),
    }
}

/// t^j e^{λt} * t^k e^{μt} through partial fractions of
/// j! k! / ((s-λ)^{j+1} (s-μ)^{k+1}).
fn convolve_monos(x: ExpMono, y: ExpMono) -> Vec<ExpMono> {
    let (j, k) = (x.k, y.k);
    let c = x.coeff * y.coeff;
    let jk = factorial(j) * factorial(k);
    let d = x.lambda - y.lambda;
    if d.norm() <= 1e-13 * (1.0 + x.lambda.norm()) {
        return vec![ExpMono { coeff: c * (jk / factorial(j + k + 1)), k: j + k + 1, lambda: x.lambda }];
    }
    let (jj, kk) = ((j + 1) as i32, (k + 1) as i32);
    let mut out = Vec::new();
    for i in 1..=jj {
        // A_i / (s-λ)^i
        let n = (kk + jj - i - 1) as f64;
        let a = binomial(n, (jj - i) as u32) * if (jj - i) % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = c * jk * a / d.powi(kk + jj - i) / factorial((i - 1) as u32);
        out.push(ExpMono { coeff, k: (i - 1) as u32, lambda: x.lambda });
    }
    for i in 1..=kk {
        let n = (kk + jj - i - 1) as f64;
        let b = binomial(n, (kk - i) as u32) * if (kk - i) % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = c * jk * b / (-d).powi(kk + jj - i) / factorial((i - 1) as u32);
        out.push(ExpMono { coeff, k: (i - 1) as u32, lambda: y.lambda });
    }
    out
}

/// t^{a-1}/Γ(a) convolved with t^{b-1}/Γ(b) is t^{a+b-1}/Γ(a+b); used in tests
/// as an independent reference.
#[cfg(test)]
fn power_reference(a: f64, b: f64, t: f64) -> f64 {
    t.powf(a + b - 1.0) / crate::special::gamma(a + b).unwrap()
}
