//! The model equation y χ″ + A χ′ + (C − B² y) χ = 0.
//!
//! In transform space the equation separates to
//! dT/T = [(3 − A)/u − C − B²u] / (1 − B²u²) du, whose solution factors as
//! T = K (1/u) g(u) h(u) with
//! g = u^{p+C/B+1} / (1 + Bu)^{p+C/B} and h = u^{p+1} / (1 − Bu)^p,
//! p = −(A − 2 + C/B)/2. Single-valuedness of h forces p = −n, and the
//! inverse image is χ = K e^{−By} y^{b−1} ₁F₁(p; b; 2By)/Γ(b), b = 2p + C/B.

use crate::elzaki::appendix::integrate_log_derivative;
use crate::elzaki::{Expr, Factor, ImageTerm, Special, Term, TransformExpr};
use crate::error::{Error, Result};
use crate::special::{kummer_1f1, recip_gamma};

/// Tolerance on |p + n| for a parameter set to count as quantized.
pub const QUANTIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MdeParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl MdeParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() || !a.is_finite() || !c.is_finite() {
            return Err(Error::Domain(format!("MDE needs finite A, C and B > 0, got B = {b}")));
        }
        Ok(Self { a, b, c })
    }

    /// p = −(A − 2 + C/B)/2
    pub fn p(&self) -> f64 {
        -(self.a - 2.0 + self.c / self.b) / 2.0
    }
}

/// The exponents of T = K (1/u) g(u) h(u).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformFactors {
    pub p: f64,
    pub b: f64,
    pub g_num_power: f64,
    pub g_den_power: f64,
    pub h_num_power: f64,
    pub h_den_power: f64,
}

impl TransformFactors {
    /// g(u) = u^{p+C/B+1} (1 + Bu)^{-(p+C/B)}
    pub fn g(&self) -> TransformExpr {
        TransformExpr::term(ImageTerm::new(
            self.g_num_power,
            vec![1.0],
            vec![Factor::linear(-self.b, self.g_den_power)],
            0.0,
        ))
    }

    /// h(u) = u^{p+1} (1 − Bu)^{-p}
    pub fn h(&self) -> TransformExpr {
        TransformExpr::term(ImageTerm::new(
            self.h_num_power,
            vec![1.0],
            vec![Factor::linear(self.b, self.h_den_power)],
            0.0,
        ))
    }

    /// K (1/u) g h
    pub fn image(&self, k: f64) -> TransformExpr {
        self.g().mul(&self.h()).mul_power(-1.0).scale(k)
    }
}

fn check(params: &MdeParams) -> Result<()> {
    MdeParams::new(params.a, params.b, params.c).map(|_| ())
}

pub fn transform_space_solution(params: &MdeParams) -> Result<TransformFactors> {
    check(params)?;
    let p = params.p();
    let cb = params.c / params.b;
    Ok(TransformFactors {
        p,
        b: params.b,
        g_num_power: p + cb + 1.0,
        g_den_power: p + cb,
        h_num_power: p + 1.0,
        h_den_power: p,
    })
}

/// T up to its constant, integrated directly from the separated equation.
///
/// With E[χ] = T the rules give E[yχ″] = T′ − 3T/u + u χ(0),
/// E[χ′] = T/u − u χ(0) and E[yχ] = u²T′ − uT. For A = 1 the χ(0) terms cancel;
/// otherwise χ(0) = 0 for the regular solution when b > 1, and the separated
/// form holds in either case for the homogeneous part.
pub fn transform_space_ode_solution(params: &MdeParams) -> Result<TransformExpr> {
    check(params)?;
    let MdeParams { a, b, c } = *params;
    integrate_log_derivative(
        &[3.0 - a, -c, -b * b],
        1,
        &[Factor::linear(b, 1.0), Factor::linear(-b, 1.0)],
    )
}

/// p(params) + n; zero exactly when the parameters are quantized at n.
pub fn quantization_condition(params: &MdeParams, n: u32) -> f64 {
    params.p() + n as f64
}

/// χ(y) = K e^{−By} y^{b−1} ₁F₁(p; b; 2By) / Γ(b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormChi {
    pub n: u32,
    pub decay: f64,
    pub power_exponent: f64,
    pub f11_a: f64,
    pub f11_b: f64,
    pub f11_scale: f64,
    pub recip_gamma_b: f64,
    /// K, once fixed by a downstream normalisation
    pub normalization: Option<f64>,
}

impl ClosedFormChi {
    fn k(&self) -> f64 {
        self.normalization.unwrap_or(1.0) * self.recip_gamma_b
    }

    /// (χ, χ′, χ″) at y > 0.
    pub fn derivatives(&self, y: f64) -> (f64, f64, f64) {
        let x = self.f11_scale * y;
        let (a, b, s) = (self.f11_a, self.f11_b, self.f11_scale);
        let f0 = kummer_1f1(a, b, x).unwrap_or(f64::NAN);
        let f1 = s * a / b * kummer_1f1(a + 1.0, b + 1.0, x).unwrap_or(f64::NAN);
        let f2 = s * s * a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, x).unwrap_or(f64::NAN);
        let m = self.power_exponent;
        let w = self.k() * y.powf(m) * (-self.decay * y).exp();
        let l1 = m / y - self.decay;
        let w1 = w * l1;
        let w2 = w * (l1 * l1 - m / (y * y));
        (w * f0, w1 * f0 + w * f1, w2 * f0 + 2.0 * w1 * f1 + w * f2)
    }

    pub fn eval(&self, y: f64) -> f64 {
        let x = self.f11_scale * y;
        let f0 = kummer_1f1(self.f11_a, self.f11_b, x).unwrap_or(f64::NAN);
        self.k() * y.powf(self.power_exponent) * (-self.decay * y).exp() * f0
    }

    /// χ as an expression in the transform grammar (with y as the variable).
    pub fn to_expr(&self) -> Result<Expr> {
        let special = if self.f11_a == 0.0 {
            Special::None
        } else {
            Special::Hyp1F1 { a: self.f11_a, b: self.f11_b, scale: self.f11_scale }
        };
        Expr::term(Term::new(self.k(), self.power_exponent, -self.decay, special)).expand_terminating()
    }
}

pub fn closed_form_chi(params: &MdeParams, n: u32) -> Result<ClosedFormChi> {
    let f = transform_space_solution(params)?;
    if quantization_condition(params, n).abs() >= QUANTIZATION_TOLERANCE {
        return Err(Error::NotQuantized { p: f.p, n });
    }
    let p = -(n as f64);
    let b = 2.0 * p + params.c / params.b;
    let nearest = b.round();
    if (b - nearest).abs() < 1e-12 && nearest <= 0.0 {
        return Err(Error::GammaPole(b));
    }
    if b <= 0.0 {
        return Err(Error::NonNormalizable { n, b });
    }
    Ok(ClosedFormChi {
        n,
        decay: params.b,
        power_exponent: b - 1.0,
        f11_a: p,
        f11_b: b,
        f11_scale: 2.0 * params.b,
        recip_gamma_b: recip_gamma(b)?,
        normalization: None,
    })
}

/// Step used for the finite-difference residual at y.
pub fn default_step(y: f64) -> f64 {
    1e-4 * y.max(1.0)
}

/// Acceptance threshold for [`mde_residual`] at y.
pub fn residual_tolerance(chi: &ClosedFormChi, y: f64) -> f64 {
    1e-6 * chi.eval(y).abs().max(1.0)
}

/// |y χ″ + A χ′ + (C − B² y) χ| with five-point central differences.
pub fn mde_residual(chi: &ClosedFormChi, params: &MdeParams, y: f64, h: f64) -> f64 {
    let f = |x: f64| chi.eval(x);
    let (fm2, fm1, f0, fp1, fp2) = (f(y - 2.0 * h), f(y - h), f(y), f(y + h), f(y + 2.0 * h));
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    (y * d2 + params.a * d1 + (params.c - params.b * params.b * y) * f0).abs()
}

/// The same residual with exact derivatives.
pub fn mde_residual_exact(chi: &ClosedFormChi, params: &MdeParams, y: f64) -> f64 {
    let (f0, d1, d2) = chi.derivatives(y);
    (y * d2 + params.a * d1 + (params.c - params.b * params.b * y) * f0).abs()
}
