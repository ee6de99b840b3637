//! Real-space expressions f(t): finite sums of
//! `coeff · t^power · e^{rate·t} · special(t)`, optionally delayed by a
//! Heaviside step or replaced by a Dirac delta.
//!
//! A Heaviside term stores its body in the shifted variable: the term means
//! `g(t - s) H(t - s)` where `g` is the unshifted body. Delta terms carry only
//! a coefficient and a position.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::special::{bessel_j0, binomial, kummer_1f1, kummer_polynomial};

/// Non-polynomial factor of a term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Special {
    None,
    Sin(f64),
    Cos(f64),
    Sinh(f64),
    Cosh(f64),
    /// J0(a·t)
    J0(f64),
    /// ₁F₁(a; b; scale·t)
    Hyp1F1 { a: f64, b: f64, scale: f64 },
}

impl Special {
    fn tag(&self) -> u8 {
        match self {
            Special::None => 0,
            Special::Sin(_) => 1,
            Special::Cos(_) => 2,
            Special::Sinh(_) => 3,
            Special::Cosh(_) => 4,
            Special::J0(_) => 5,
            Special::Hyp1F1 { .. } => 6,
        }
    }

    fn params(&self) -> [f64; 3] {
        match *self {
            Special::None => [0.0; 3],
            Special::Sin(b) | Special::Cos(b) | Special::Sinh(b) | Special::Cosh(b) | Special::J0(b) => {
                [b, 0.0, 0.0]
            }
            Special::Hyp1F1 { a, b, scale } => [a, b, scale],
        }
    }

    /// True for the factors that are finite sums of complex exponentials.
    pub fn is_elementary(&self) -> bool {
        matches!(
            self,
            Special::None | Special::Sin(_) | Special::Cos(_) | Special::Sinh(_) | Special::Cosh(_)
        )
    }

    fn eval(&self, t: f64) -> f64 {
        match *self {
            Special::None => 1.0,
            Special::Sin(b) => (b * t).sin(),
            Special::Cos(b) => (b * t).cos(),
            Special::Sinh(b) => (b * t).sinh(),
            Special::Cosh(b) => (b * t).cosh(),
            Special::J0(a) => bessel_j0(a * t),
            Special::Hyp1F1 { a, b, scale } => kummer_1f1(a, b, scale * t).unwrap_or(f64::NAN),
        }
    }

    /// Folds signs and zero frequencies: returns the multiplier to apply to
    /// the coefficient and the reduced factor.
    fn reduce(self) -> (f64, Special) {
        match self {
            Special::Sin(b) if b == 0.0 => (0.0, Special::None),
            Special::Sin(b) if b < 0.0 => (-1.0, Special::Sin(-b)),
            Special::Sinh(b) if b == 0.0 => (0.0, Special::None),
            Special::Sinh(b) if b < 0.0 => (-1.0, Special::Sinh(-b)),
            Special::Cos(b) | Special::Cosh(b) | Special::J0(b) if b == 0.0 => (1.0, Special::None),
            Special::Cos(b) => (1.0, Special::Cos(b.abs())),
            Special::Cosh(b) => (1.0, Special::Cosh(b.abs())),
            Special::J0(b) => (1.0, Special::J0(b.abs())),
            Special::Hyp1F1 { scale, .. } if scale == 0.0 => (1.0, Special::None),
            Special::Hyp1F1 { a, .. } if a == 0.0 => (1.0, Special::None),
            other => (1.0, other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shift {
    None,
    /// body evaluated at t - s, times H(t - s)
    Heaviside(f64),
    /// coeff · δ(t - s)
    Delta(f64),
}

impl Shift {
    fn key(&self) -> (u8, f64) {
        match *self {
            Shift::None => (0, 0.0),
            Shift::Heaviside(s) => (1, s),
            Shift::Delta(s) => (2, s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub power: f64,
    pub rate: f64,
    pub special: Special,
    pub shift: Shift,
}

impl Term {
    pub fn new(coeff: f64, power: f64, rate: f64, special: Special) -> Self {
        Self { coeff, power, rate, special, shift: Shift::None }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0, Special::None)
    }

    pub fn delta(coeff: f64, at: f64) -> Self {
        Self { coeff, power: 0.0, rate: 0.0, special: Special::None, shift: Shift::Delta(at) }
    }

    pub fn with_shift(mut self, shift: Shift) -> Self {
        self.shift = shift;
        self
    }

    pub fn unshifted(mut self) -> Self {
        self.shift = Shift::None;
        self
    }

    /// Integer power, if the power is a non-negative integer.
    pub fn integer_power(&self) -> Option<u32> {
        (self.power >= 0.0 && self.power == self.power.round() && self.power < 1e6).then(|| self.power as u32)
    }

    /// Body value ignoring the shift.
    pub fn eval_body(&self, t: f64) -> f64 {
        let p = if self.power == 0.0 { 1.0 } else { t.powf(self.power) };
        let e = if self.rate == 0.0 { 1.0 } else { (self.rate * t).exp() };
        self.coeff * p * e * self.special.eval(t)
    }

    /// Pointwise value; delta terms contribute zero.
    pub fn eval(&self, t: f64) -> f64 {
        match self.shift {
            Shift::None => self.eval_body(t),
            Shift::Heaviside(s) => {
                if t < s {
                    0.0
                } else {
                    self.eval_body(t - s)
                }
            }
            Shift::Delta(_) => 0.0,
        }
    }

    fn order(&self, other: &Self) -> Ordering {
        let (sa, pa) = self.shift.key();
        let (sb, pb) = other.shift.key();
        sa.cmp(&sb)
            .then(pa.total_cmp(&pb))
            .then(self.power.total_cmp(&other.power))
            .then(self.rate.total_cmp(&other.rate))
            .then(self.special.tag().cmp(&other.special.tag()))
            .then_with(|| {
                let (x, y) = (self.special.params(), other.special.params());
                x[0].total_cmp(&y[0]).then(x[1].total_cmp(&y[1])).then(x[2].total_cmp(&y[2]))
            })
    }

    fn alike(&self, other: &Self) -> bool {
        fn close(a: f64, b: f64) -> bool {
            (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
        }
        let (sa, pa) = self.shift.key();
        let (sb, pb) = other.shift.key();
        let (x, y) = (self.special.params(), other.special.params());
        sa == sb
            && close(pa, pb)
            && close(self.power, other.power)
            && close(self.rate, other.rate)
            && self.special.tag() == other.special.tag()
            && x.iter().zip(y.iter()).all(|(a, b)| close(*a, *b))
    }
}

/// A canonical sum of terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Expr {
    terms: Vec<Term>,
}

impl Expr {
    /// Builds and canonicalises: signs folded, like terms merged, sorted by
    /// (shift, power, rate, special).
    pub fn new(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut list: Vec<Term> = Vec::new();
        for term in terms {
            let mut term = term;
            let (sign, special) = term.special.reduce();
            term.coeff *= sign;
            term.special = special;
            // ₁F₁(a; a; x) = e^x
            if let Special::Hyp1F1 { a, b, scale } = term.special {
                if a == b {
                    term.rate += scale;
                    term.special = Special::None;
                }
            }
            if let Shift::Delta(_) = term.shift {
                term.power = 0.0;
                term.rate = 0.0;
                term.special = Special::None;
            }
            if let Shift::Heaviside(s) = term.shift {
                if s == 0.0 {
                    term.shift = Shift::None;
                }
            }
            if term.coeff != 0.0 && term.coeff.is_finite() || term.coeff.is_nan() {
                list.push(term);
            }
        }
        list.sort_by(Term::order);
        let mut merged: Vec<Term> = Vec::with_capacity(list.len());
        for term in list {
            match merged.last_mut() {
                Some(last) if last.alike(&term) => last.coeff += term.coeff,
                _ => merged.push(term),
            }
        }
        let scale = merged.iter().map(|t| t.coeff.abs()).fold(0.0, f64::max);
        merged.retain(|t| t.coeff.abs() > 1e-13 * scale);
        Self { terms: merged }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(term: Term) -> Self {
        Self::new([term])
    }

    pub fn constant(c: f64) -> Self {
        Self::term(Term::constant(c))
    }

    /// t^power
    pub fn power(power: f64) -> Self {
        Self::term(Term::new(1.0, power, 0.0, Special::None))
    }

    /// t^{a-1}/Γ(a)
    pub fn normalized_power(a: f64) -> Result<Self> {
        let g = crate::special::gamma(a)?;
        Ok(Self::term(Term::new(1.0 / g, a - 1.0, 0.0, Special::None)))
    }

    pub fn exp(rate: f64) -> Self {
        Self::term(Term::new(1.0, 0.0, rate, Special::None))
    }

    pub fn special(special: Special) -> Self {
        Self::term(Term::new(1.0, 0.0, 0.0, special))
    }

    pub fn heaviside(at: f64) -> Self {
        Self::term(Term::constant(1.0).with_shift(Shift::Heaviside(at)))
    }

    pub fn delta(at: f64) -> Self {
        Self::term(Term::delta(1.0, at))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pointwise value (delta terms contribute zero; a ₁F₁ that fails to
    /// converge yields NaN).
    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.terms.iter().map(|t| Term { coeff: t.coeff * c, ..*t }))
    }

    /// Product within the grammar. Trigonometric pairs use product-to-sum,
    /// hyperbolic factors are split into exponentials, and Heaviside bodies
    /// are re-expanded about the later step.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::new();
        for x in &self.terms {
            for y in &other.terms {
                out.extend(term_product(x, y)?);
            }
        }
        Ok(Self::new(out))
    }

    pub fn try_pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(1.0);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Every Hyp1F1 factor with a = -n replaced by its polynomial.
    pub fn expand_terminating(&self) -> Result<Self> {
        let mut out = Vec::new();
        for term in &self.terms {
            match term.special {
                Special::Hyp1F1 { a, b, scale } if a <= 0.0 && a == a.round() => {
                    let coeffs = kummer_polynomial((-a) as u32, b)?;
                    let mut sk = 1.0;
                    for (k, c) in coeffs.iter().enumerate() {
                        out.push(Term {
                            coeff: term.coeff * c * sk,
                            power: term.power + k as f64,
                            special: Special::None,
                            ..*term
                        });
                        sk *= scale;
                    }
                }
                _ => out.push(*term),
            }
        }
        Ok(Self::new(out))
    }

    /// Numerical equality at a set of sample points.
    pub fn approx_eq_at(&self, other: &Self, samples: &[f64], rel: f64) -> bool {
        samples.iter().all(|&t| {
            let (a, b) = (self.eval(t), other.eval(t));
            (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
        })
    }
}

fn expand_hyperbolic(term: &Term) -> Vec<Term> {
    match term.special {
        Special::Sinh(b) | Special::Cosh(b) => {
            let sign = if matches!(term.special, Special::Sinh(_)) { -1.0 } else { 1.0 };
            vec![
                Term { coeff: 0.5 * term.coeff, rate: term.rate + b, special: Special::None, ..*term },
                Term { coeff: sign * 0.5 * term.coeff, rate: term.rate - b, special: Special::None, ..*term },
            ]
        }
        _ => vec![*term],
    }
}

/// Product of two unshifted terms.
fn plain_product(x: &Term, y: &Term) -> Result<Vec<Term>> {
    let coeff = x.coeff * y.coeff;
    let power = x.power + y.power;
    let rate = x.rate + y.rate;
    let base = |c: f64, special| Term::new(c, power, rate, special);
    Ok(match (x.special, y.special) {
        (Special::None, s) | (s, Special::None) => vec![base(coeff, s)],
        (Special::Sinh(_) | Special::Cosh(_), _) | (_, Special::Sinh(_) | Special::Cosh(_)) => {
            let mut out = Vec::new();
            for xi in expand_hyperbolic(x) {
                for yi in expand_hyperbolic(y) {
                    out.extend(plain_product(&xi, &yi)?);
                }
            }
            out
        }
        (Special::Sin(a), Special::Sin(b)) => vec![
            base(0.5 * coeff, Special::Cos(a - b)),
            base(-0.5 * coeff, Special::Cos(a + b)),
        ],
        (Special::Cos(a), Special::Cos(b)) => vec![
            base(0.5 * coeff, Special::Cos(a - b)),
            base(0.5 * coeff, Special::Cos(a + b)),
        ],
        (Special::Sin(a), Special::Cos(b)) | (Special::Cos(b), Special::Sin(a)) => vec![
            base(0.5 * coeff, Special::Sin(a + b)),
            base(0.5 * coeff, Special::Sin(a - b)),
        ],
        (p, q) => {
            return Err(Error::Unsupported(format!("product of {p:?} and {q:?}")));
        }
    })
}

/// Rewrites an unshifted term g as a sum h with h(τ) = g(τ + d).
pub fn shift_argument(term: &Term, d: f64) -> Result<Vec<Term>> {
    if d == 0.0 {
        return Ok(vec![term.unshifted()]);
    }
    let k = term
        .integer_power()
        .ok_or_else(|| Error::Unsupported(format!("shifting fractional power t^{}", term.power)))?;
    let coeff = term.coeff * (term.rate * d).exp();
    let pieces: Vec<(f64, Special)> = match term.special {
        Special::None => vec![(1.0, Special::None)],
        Special::Sin(b) => vec![((b * d).cos(), Special::Sin(b)), ((b * d).sin(), Special::Cos(b))],
        Special::Cos(b) => vec![((b * d).cos(), Special::Cos(b)), (-(b * d).sin(), Special::Sin(b))],
        Special::Sinh(b) => vec![((b * d).cosh(), Special::Sinh(b)), ((b * d).sinh(), Special::Cosh(b))],
        Special::Cosh(b) => vec![((b * d).cosh(), Special::Cosh(b)), ((b * d).sinh(), Special::Sinh(b))],
        s => return Err(Error::Unsupported(format!("shifting the argument of {s:?}"))),
    };
    let mut out = Vec::new();
    for j in 0..=k {
        let c = binomial(k as f64, j) * d.powi((k - j) as i32);
        for (w, special) in &pieces {
            out.push(Term::new(coeff * c * w, j as f64, term.rate, *special));
        }
    }
    Ok(out)
}

fn term_product(x: &Term, y: &Term) -> Result<Vec<Term>> {
    match (x.shift, y.shift) {
        (Shift::Delta(_), Shift::Delta(_)) => Err(Error::Unsupported("product of two deltas".into())),
        (Shift::Delta(s), _) => Ok(vec![Term::delta(x.coeff * y.eval(s), s)]),
        (_, Shift::Delta(s)) => Ok(vec![Term::delta(y.coeff * x.eval(s), s)]),
        (Shift::None, Shift::None) => plain_product(x, y),
        (sx, sy) => {
            let pos = |s: Shift| match s {
                Shift::Heaviside(p) => Some(p),
                _ => None,
            };
            let at = pos(sx).into_iter().chain(pos(sy)).fold(f64::NEG_INFINITY, f64::max);
            let rebase = |t: &Term| -> Result<Vec<Term>> {
                let origin = pos(t.shift).unwrap_or(0.0);
                shift_argument(&t.unshifted(), at - origin)
            };
            let (xs, ys) = (rebase(x)?, rebase(y)?);
            let mut out = Vec::new();
            for a in &xs {
                for b in &ys {
                    out.extend(plain_product(a, b)?.into_iter().map(|t| t.with_shift(Shift::Heaviside(at))));
                }
            }
            Ok(out)
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::new(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + rhs.scale(-1.0)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Expr {
    type Output = Expr;
    fn mul(self, rhs: f64) -> Expr {
        self.scale(rhs)
    }
}

/// Compact decimal form: integers print without a fractional part and
/// everything else with at most 12 significant digits.
pub(crate) fn fmt_real(x: f64) -> String {
    if x == x.round() && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let s = format!("{:.11e}", x);
    let (mantissa, exponent) = s.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("exponent");
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    if (-5..15).contains(&exponent) {
        let v: f64 = format!("{mantissa}e{exponent}").parse().expect("reparse");
        let mut out = format!("{v}");
        if out.len() > 20 {
            out = format!("{mantissa}e{exponent}");
        }
        out
    } else {
        format!("{mantissa}e{exponent}")
    }
}

fn fmt_arg(scale: f64, var: &str) -> String {
    if scale == 1.0 {
        var.to_string()
    } else if scale == -1.0 {
        format!("-{var}")
    } else {
        format!("{}*{}", fmt_real(scale), var)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.shift {
            Shift::Heaviside(s) if s > 0.0 => format!("(t-{})", fmt_real(s)),
            Shift::Heaviside(s) => format!("(t+{})", fmt_real(-s)),
            _ => "t".to_string(),
        };
        if let Shift::Delta(s) = self.shift {
            let pos = if s >= 0.0 { format!("t-{}", fmt_real(s)) } else { format!("t+{}", fmt_real(-s)) };
            return write!(f, "{}*delta({})", fmt_real(self.coeff), pos);
        }
        let mut parts = vec![fmt_real(self.coeff)];
        if self.power != 0.0 {
            if self.power == 1.0 {
                parts.push(var.clone());
            } else {
                parts.push(format!("{}^{}", var, fmt_real(self.power)));
            }
        }
        if self.rate != 0.0 {
            parts.push(format!("exp({})", fmt_arg(self.rate, &var)));
        }
        match self.special {
            Special::None => {}
            Special::Sin(b) => parts.push(format!("sin({})", fmt_arg(b, &var))),
            Special::Cos(b) => parts.push(format!("cos({})", fmt_arg(b, &var))),
            Special::Sinh(b) => parts.push(format!("sinh({})", fmt_arg(b, &var))),
            Special::Cosh(b) => parts.push(format!("cosh({})", fmt_arg(b, &var))),
            Special::J0(a) => parts.push(format!("J0({})", fmt_arg(a, &var))),
            Special::Hyp1F1 { a, b, scale } => parts.push(format!(
                "hyp1f1({}, {}, {})",
                fmt_real(a),
                fmt_real(b),
                fmt_arg(scale, &var)
            )),
        }
        if let Shift::Heaviside(s) = self.shift {
            let pos = if s >= 0.0 { format!("t-{}", fmt_real(s)) } else { format!("t+{}", fmt_real(-s)) };
            parts.push(format!("H({pos})"));
        }
        if parts.len() > 1 && parts[0] == "1" {
            parts.remove(0);
        } else if parts.len() > 1 && parts[0] == "-1" {
            parts.remove(0);
            return write!(f, "-{}", parts.join("*"));
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let s = term.to_string();
            if i == 0 {
                write!(f, "{s}")?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn canonical_merge_and_sort() {
        let e = Expr::new([
            Term::new(2.0, 1.0, 0.0, Special::None),
            Term::new(1.0, 0.0, 0.0, Special::None),
            Term::new(3.0, 1.0, 0.0, Special::None),
        ]);
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.terms()[0].power, 0.0);
        assert_eq!(e.terms()[1].coeff, 5.0);
        assert_eq!(Expr::new([Term::new(1.0, 0.0, 0.0, Special::Sin(0.0))]), Expr::zero());
    }

    #[test]
    fn sign_folding() {
        let e = Expr::special(Special::Sin(-2.0));
        assert_eq!(e.terms()[0].coeff, -1.0);
        assert_eq!(e.terms()[0].special, Special::Sin(2.0));
        assert_eq!(Expr::special(Special::Cos(0.0)), Expr::constant(1.0));
    }

    #[test]
    fn trig_products_match_pointwise() {
        let s = Expr::special(Special::Sin(2.0));
        let c = Expr::special(Special::Cos(3.0));
        let sh = Expr::special(Special::Sinh(0.5));
        for (a, b) in [(&s, &c), (&s, &s), (&c, &c), (&sh, &s), (&sh, &sh)] {
            let p = a.try_mul(b).unwrap();
            for t in [0.1, 0.7, 2.3] {
                assert_relative_eq!(p.eval(t), a.eval(t) * b.eval(t), max_relative = 1e-12, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn heaviside_product_rebases() {
        // H(t-1) * t e^{t} sin(2t)
        let h = Expr::heaviside(1.0);
        let f = Expr::power(1.0)
            .try_mul(&Expr::exp(1.0))
            .unwrap()
            .try_mul(&Expr::special(Special::Sin(2.0)))
            .unwrap();
        let p = h.try_mul(&f).unwrap();
        for t in [0.5, 1.2, 2.9] {
            let expect = if t >= 1.0 { f.eval(t) } else { 0.0 };
            assert_relative_eq!(p.eval(t), expect, max_relative = 1e-12, epsilon = 1e-14);
        }
        assert!(p.terms().iter().all(|t| t.shift == Shift::Heaviside(1.0)));
    }

    #[test]
    fn delta_sifts() {
        let d = Expr::delta(2.0);
        let p = d.try_mul(&Expr::power(2.0)).unwrap();
        assert_eq!(p.terms()[0].coeff, 4.0);
        assert_eq!(p.terms()[0].shift, Shift::Delta(2.0));
        assert!(d.try_mul(&d).is_err());
    }

    #[test]
    fn unsupported_products() {
        let j = Expr::special(Special::J0(1.0));
        assert!(j.try_mul(&Expr::special(Special::Sin(1.0))).is_err());
        assert!(j.try_mul(&Expr::exp(2.0)).is_ok());
    }

    #[test]
    fn terminating_hypergeometric_expands() {
        let e = Expr::term(Term::new(1.0, 1.0, -0.5, Special::Hyp1F1 { a: -2.0, b: 3.0, scale: 1.0 }));
        let p = e.expand_terminating().unwrap();
        assert!(p.terms().iter().all(|t| t.special == Special::None));
        for t in [0.3, 1.7] {
            assert_relative_eq!(p.eval(t), e.eval(t), max_relative = 1e-13);
        }
    }

    #[test]
    fn equal_parameters_fold_to_exponential() {
        let e = Expr::term(Term::new(2.0, 1.0, -0.5, Special::Hyp1F1 { a: 1.5, b: 1.5, scale: 2.0 }));
        assert_eq!(e, Expr::exp(1.5).try_mul(&Expr::power(1.0)).unwrap().scale(2.0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Expr::power(2.0).to_string(), "t^2");
        assert_eq!(Expr::special(Special::Cos(3.0)).to_string(), "cos(3*t)");
        assert_eq!(Expr::exp(2.0).try_mul(&Expr::power(1.0)).unwrap().to_string(), "t*exp(2*t)");
        assert_eq!(Expr::heaviside(2.0).to_string(), "H(t-2)");
        assert_eq!((Expr::constant(1.0) - Expr::power(1.0)).to_string(), "1 - t");
        assert_eq!(fmt_real(0.1 + 0.2), "0.3");
        assert_eq!(fmt_real(-2.5e-20), "-2.5e-20");
    }
}
