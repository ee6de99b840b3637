//! Worked problems solved in transform space: the zeroth-order Bessel
//! equation, the harmonic oscillator and the infinite square well.

use num_complex::Complex64;

use crate::elzaki::expr::Expr;
use crate::elzaki::image::{poly, Factor, ImageTerm, TransformExpr};
use crate::elzaki::inverse::inverse_elzaki;
use crate::error::{Error, Result};
use crate::potentials::UnitSystem;

fn cpoly(a: &[f64], z: Complex64) -> Complex64 {
    a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Integrates dT/T = N(u) / (u^z · Π baseⱼ(u)) for simple, distinct roots,
/// returning T up to a constant: u^{r₀} Π baseⱼ^{-rⱼ} with rⱼ the residues.
///
/// Only `z ∈ {0, 1}` is accepted; a polynomial part or complex residues on a
/// conjugate pair would integrate to exponentials or arctangents outside the
/// image grammar.
pub fn integrate_log_derivative(numer: &[f64], zero_order: u32, bases: &[Factor]) -> Result<TransformExpr> {
    if zero_order > 1 {
        return Err(Error::NotInvertible("pole of order > 1 at u = 0".into()));
    }
    let mut denom = if zero_order == 1 { vec![0.0, 1.0] } else { vec![1.0] };
    for f in bases {
        denom = poly::mul(&denom, &f.base());
    }
    if numer.len() >= denom.len() {
        return Err(Error::NotInvertible("log-derivative has a polynomial part".into()));
    }
    let ddenom = poly::derivative(&denom);
    let residue = |z: Complex64| cpoly(numer, z) / cpoly(&ddenom, z);
    let lead = if zero_order == 1 { residue(Complex64::new(0.0, 0.0)).re } else { 0.0 };
    let mut factors = Vec::new();
    for f in bases {
        // root of 1 - λu at u = 1/λ
        let lambda = Complex64::new(f.re, f.im);
        let r = residue(lambda.inv());
        if r.im.abs() > 1e-12 * (1.0 + r.norm()) {
            return Err(Error::NotInvertible(format!("complex exponent {r} on a conjugate pair")));
        }
        factors.push(Factor { power: snap(-r.re), ..*f });
    }
    Ok(TransformExpr::term(ImageTerm::new(snap(lead), vec![1.0], factors, 0.0)))
}

/// Rounds residues within rounding distance of a half-integer.
fn snap(x: f64) -> f64 {
    let h = (2.0 * x).round() / 2.0;
    if (x - h).abs() <= 1e-12 * (1.0 + x.abs()) { h } else { x }
}

/// y with x y″ + y′ + a² x y = 0, y(0) = 1.
///
/// With E[y] = T the equation becomes T′ − 3T/u + u y(0) + T/u − u y(0)
/// + a²(u²T′ − uT) = 0, i.e. dT/T = (2/u + a²u)/(1 + a²u²) du.
pub fn solve_bessel_zeroth(a: f64) -> Result<Expr> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!("Bessel parameter a = {a}")));
    }
    let t = integrate_log_derivative(&[2.0, 0.0, a * a], 1, &[Factor::quadratic(0.0, a, 1.0)])?;
    let y = inverse_elzaki(&t)?;
    let y0 = y.eval(0.0);
    Ok(y.scale(1.0 / y0))
}

/// The image of y″ + ω²y = 0 with y(0), y′(0) given:
/// T/u² − y(0) − u y′(0) + ω²T = 0.
pub fn shm_image(omega: f64, y0: f64, yp0: f64) -> Result<TransformExpr> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega = {omega} must be positive")));
    }
    Ok(TransformExpr::term(ImageTerm::new(
        2.0,
        vec![y0, yp0],
        vec![Factor::quadratic(0.0, omega, 1.0)],
        0.0,
    )))
}

/// y0 cos ωx + (y′0/ω) sin ωx, by inverting the image.
pub fn solve_shm(omega: f64, y0: f64, yp0: f64) -> Result<Expr> {
    inverse_elzaki(&shm_image(omega, y0, yp0)?)
}

/// A level of the infinite square well on [0, width].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellLevel {
    pub m: u32,
    pub k: f64,
    pub energy: f64,
}

/// ψ″ + k²ψ = 0 with ψ(0) = 0 gives ψ ∝ sin kx; ψ(width) = 0 then fixes
/// k = mπ/width and E = ħ²k²/(2M).
pub fn square_well_levels(width: f64, count: u32, units: &UnitSystem) -> Result<Vec<WellLevel>> {
    if !(width > 0.0) {
        return Err(Error::Domain(format!("well width {width} must be positive")));
    }
    (1..=count)
        .map(|m| {
            let k = m as f64 * std::f64::consts::PI / width;
            let psi = solve_shm(k, 0.0, 1.0)?;
            let edge = psi.eval(width);
            if edge.abs() > 1e-10 / k {
                return Err(Error::NonFinite(format!("boundary value {edge} at the wall")));
            }
            Ok(WellLevel { m, k, energy: units.hbar * units.hbar * k * k / (2.0 * units.mass) })
        })
        .collect()
}
