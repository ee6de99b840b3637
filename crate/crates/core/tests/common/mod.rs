#![allow(dead_code)]

use elzaki_qm::elzaki::{Expr, Special, Term};
use rand::Rng;

/// A random elementary term: polynomial-exponential, damped trig, hyperbolic
/// or t·sin. Rates stay in [−1, 1] and frequencies in [0.3, 2] so every image
/// converges on (0, 0.5).
pub fn random_term(rng: &mut impl Rng) -> Expr {
    let c = rng.gen_range(-2.0..2.0);
    let r: f64 = rng.gen_range(-1.0..1.0);
    let b: f64 = rng.gen_range(0.3..2.0);
    let special = match rng.gen_range(0..6) {
        0 => Special::None,
        1 => Special::Sin(b),
        2 => Special::Cos(b),
        3 => Special::Sinh(b.min(1.5)),
        4 => Special::Cosh(b.min(1.5)),
        _ => {
            return Expr::term(Term::new(c, 1.0, 0.0, Special::Sin(b)));
        }
    };
    let k = rng.gen_range(0..3) as f64;
    Expr::term(Term::new(c, k, r, special))
}

/// One or two random terms.
pub fn random_expr(rng: &mut impl Rng) -> Expr {
    let e = random_term(rng);
    if rng.gen_bool(0.4) {
        e + random_term(rng)
    } else {
        e
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs())
}
