//! Gamma, Beta, Kummer's confluent hypergeometric function and J0.
//!
//! Everything here is a stateless pure function on `f64`. Gamma uses the
//! Lanczos approximation (g = 7, nine coefficients) with the reflection
//! formula below 1/2; positive integers up to 170 are returned as exact
//! factorial products.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ(x) is finite in double precision.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Relative tolerance of the non-terminating ₁F₁ series.
pub const KUMMER_TOLERANCE: f64 = 1e-12;
/// Maximum number of ₁F₁ series terms.
pub const KUMMER_MAX_TERMS: usize = 500;

/// Distance from an integer below which an argument counts as that integer.
const INTEGER_SNAP: f64 = 1e-9;

fn nearest_integer(x: f64) -> Option<f64> {
    let r = x.round();
    ((x - r).abs() < INTEGER_SNAP).then_some(r)
}

/// Lanczos sum A_g(z) for z = x - 1.
fn lanczos_sum(z: f64) -> f64 {
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// n! for n <= 170, as an exact-as-possible product.
pub fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Generalised binomial coefficient C(m, k) for real m.
pub fn binomial(m: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (m - j as f64) / (j + 1) as f64)
}

/// Γ(x).
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::GammaPole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Domain(format!("gamma({x}) overflows")));
    }
    if x >= 1.0 && x <= 171.0 && x == x.round() {
        return Ok(factorial(x as u32 - 1));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        if s == 0.0 {
            return Err(Error::GammaPole(x));
        }
        return Ok(PI / (s * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // Split the power so that large arguments do not overflow before exp(-t).
    let half = t.powf((z + 0.5) / 2.0);
    Ok((2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // Γ(x) = π / (sin(πx) Γ(1-x)), sin(πx) > 0 on (0, 1/2).
        return Ok(PI.ln() - (PI * x).sin().ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// 1/Γ(x), which is zero (not an error) at the poles.
pub fn recip_gamma(x: f64) -> Result<f64> {
    match gamma(x) {
        Ok(g) => Ok(1.0 / g),
        Err(Error::GammaPole(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Euler Beta function B(σ, ρ) = Γ(σ)Γ(ρ)/Γ(σ+ρ).
pub fn beta(sigma: f64, rho: f64) -> Result<f64> {
    if !(sigma > 0.0) || !(rho > 0.0) {
        return Err(Error::Domain(format!(
            "beta requires positive arguments, got ({sigma}, {rho})"
        )));
    }
    if sigma + rho < 150.0 {
        Ok(gamma(sigma)? * gamma(rho)? / gamma(sigma + rho)?)
    } else {
        Ok((ln_gamma(sigma)? + ln_gamma(rho)? - ln_gamma(sigma + rho)?).exp())
    }
}

/// Coefficients c_k of the terminating series ₁F₁(-n; b; x) = Σ c_k x^k.
pub fn kummer_polynomial(n: u32, b: f64) -> Result<Vec<f64>> {
    let a = -(n as f64);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut c = 1.0;
    coeffs.push(c);
    for k in 1..=n {
        let denom = (b + (k - 1) as f64) * k as f64;
        if denom == 0.0 {
            return Err(Error::Domain(format!(
                "1F1(-{n}; {b}; x): b + {} = 0 before the series terminates",
                k - 1
            )));
        }
        c *= (a + (k - 1) as f64) / denom;
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// Plain ₁F₁ series without any transformation; used directly by tests.
pub fn kummer_series(a: f64, b: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..KUMMER_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if !sum.is_finite() {
            break;
        }
        if term.abs() <= KUMMER_TOLERANCE * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { a, b, x, terms: KUMMER_MAX_TERMS })
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; x).
///
/// Non-positive integer `a = -n` evaluates the degree-n polynomial by
/// Horner's rule. Otherwise the series is summed directly for x >= 0 and
/// through Kummer's transformation e^x ₁F₁(b-a; b; -x) for x < 0, which keeps
/// the summed terms of one sign when b > a.
pub fn kummer_1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    if let Some(ar) = nearest_integer(a).filter(|r| *r <= 0.0) {
        let n = (-ar) as u32;
        let coeffs = kummer_polynomial(n, b)?;
        return Ok(coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c));
    }
    if let Some(br) = nearest_integer(b).filter(|r| *r <= 0.0) {
        return Err(Error::Domain(format!("1F1 pole: b = {br} with non-terminating a = {a}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x < 0.0 {
        // the transformed series may itself terminate
        return Ok(x.exp() * kummer_1f1(b - a, b, -x)?);
    }
    kummer_series(a, b, x)
}

/// d/dx ₁F₁(a; b; x) = (a/b) ₁F₁(a+1; b+1; x).
pub fn kummer_1f1_derivative(a: f64, b: f64, x: f64) -> Result<f64> {
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(a / b * kummer_1f1(a + 1.0, b + 1.0, x)?)
}

/// Bessel function of the first kind of order zero.
///
/// Power series up to |x| = 8; beyond that the trapezoidal rule on
/// J0(x) = (1/π)∫₀^π cos(x sin θ) dθ, which converges geometrically for this
/// periodic integrand.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 8.0 {
        let q = -0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= q / (kf * kf);
            sum += term;
            if term.abs() < 1e-17 {
                break;
            }
        }
        sum
    } else {
        let m = (ax as usize) + 64;
        let h = PI / m as f64;
        let mut acc = 0.5 * (1.0 + 1.0);
        for j in 1..m {
            acc += (x * (j as f64 * h).sin()).cos();
        }
        acc / m as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert_relative_eq!(gamma(0.5).unwrap(), 1.772_453_850_905_516, max_relative = 1e-14);
        assert_relative_eq!(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma(2.5).unwrap(), 0.75 * PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma(x), Err(Error::GammaPole(_))));
        }
        assert_eq!(recip_gamma(-3.0).unwrap(), 0.0);
    }

    #[test]
    fn gamma_factorials_up_to_twenty() {
        let mut fact = 1.0_f64;
        for n in 1..=20u32 {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            assert_relative_eq!(gamma(n as f64).unwrap(), fact, max_relative = 1e-13);
        }
    }

    #[test]
    fn gamma_lanczos_matches_factorial_near_integers() {
        // off the integer fast path, the Lanczos branch must agree
        let x = 10.0 + 1e-12;
        assert_relative_eq!(gamma(x).unwrap(), 362_880.0, max_relative = 1e-10);
    }

    #[test]
    fn ln_gamma_consistent() {
        for x in [0.1, 0.7, 3.3, 25.0, 80.5] {
            assert_relative_eq!(
                ln_gamma(x).unwrap(),
                gamma(x).unwrap().ln(),
                max_relative = 1e-12,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn beta_values() {
        assert_relative_eq!(beta(1.0, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(beta(2.0, 3.0).unwrap(), 1.0 / 12.0, max_relative = 1e-14);
        assert_relative_eq!(beta(0.5, 0.5).unwrap(), PI, max_relative = 1e-13);
        assert!(beta(0.0, 1.0).is_err());
        assert!(beta(1.0, -2.0).is_err());
        assert_relative_eq!(beta(90.0, 80.0).unwrap(), beta(80.0, 90.0).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_1f1(0.0, 3.0, 7.2).unwrap(), 1.0);
        assert_relative_eq!(kummer_1f1(1.0, 1.0, 1.0).unwrap(), std::f64::consts::E, max_relative = 1e-12);
        assert_relative_eq!(kummer_1f1(-1.0, 2.0, 4.0).unwrap(), -1.0, max_relative = 1e-15);
    }

    #[test]
    fn kummer_polynomial_matches_brute_force_series() {
        // 1F1(-2; 3; 1.5) = 1 + (-2)(1.5)/3 + (-2)(-1)(1.5)^2/(3*4*2)
        let direct = 1.0 - 2.0 * 1.5 / 3.0 + 2.0 * 1.5 * 1.5 / 24.0;
        let mut series = 0.0;
        let mut term = 1.0;
        for k in 0..40 {
            series += term;
            let kf = k as f64;
            term *= (-2.0 + kf) / (3.0 + kf) * 1.5 / (kf + 1.0);
        }
        assert_relative_eq!(direct, series, max_relative = 1e-15);
        assert_relative_eq!(kummer_1f1(-2.0, 3.0, 1.5).unwrap(), direct, max_relative = 1e-15);
    }

    #[test]
    fn kummer_poles_and_termination() {
        assert!(matches!(kummer_1f1(0.5, -2.0, 1.0), Err(Error::Domain(_))));
        // terminates before the pole of b = -3: (-2)_k/(-3)_k finite for k <= 2
        let v = kummer_1f1(-2.0, -3.0, 1.0).unwrap();
        assert_relative_eq!(v, 1.0 + (-2.0 / -3.0) + (-2.0 * -1.0) / (-3.0 * -2.0 * 2.0), max_relative = 1e-15);
        assert!(kummer_1f1(-3.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn kummer_non_convergence_reported() {
        assert!(matches!(
            kummer_series(0.5, 1.5, 2000.0),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn kummer_negative_argument_is_stable() {
        // 1F1(1; 2; x) = (e^x - 1)/x
        let x = -30.0;
        assert_relative_eq!(kummer_1f1(1.0, 2.0, x).unwrap(), (x.exp() - 1.0) / x, max_relative = 1e-12);
    }

    #[test]
    fn kummer_derivative_matches_finite_difference() {
        let (a, b, x) = (0.3, 1.7, 0.9);
        let h = 1e-5;
        let fd = (kummer_1f1(a, b, x + h).unwrap() - kummer_1f1(a, b, x - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(kummer_1f1_derivative(a, b, x).unwrap(), fd, max_relative = 1e-8);
    }

    #[test]
    fn bessel_j0_values() {
        assert_eq!(bessel_j0(0.0), 1.0);
        assert!(bessel_j0(2.404_825_557_695_773).abs() < 1e-12);
        // both branches agree at the switch point
        let m = 8.0;
        let h = PI / 200.0;
        let trap: f64 = (0..200).map(|j| (m * (j as f64 * h).sin()).cos()).sum::<f64>() / 200.0;
        assert!((bessel_j0(m) - trap).abs() < 1e-12);
        // J0(20) = 0.16702466434058316
        assert_relative_eq!(bessel_j0(20.0), 0.167_024_664_340_583_16, max_relative = 1e-12);
        assert_relative_eq!(bessel_j0(-5.0), bessel_j0(5.0));
    }

    #[test]
    fn binomial_generalised() {
        assert_eq!(binomial(5.0, 2), 10.0);
        assert_eq!(binomial(-2.0, 3), -4.0);
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(6), 720.0);
    }
}
