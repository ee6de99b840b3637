//! Images T(u): sums of
//! `u^lead · P(u) · Π base_j(u)^{-power_j} · e^{-delay/u}`
//! where P is a polynomial and each base is `1 - a·u` (real pole a) or
//! `1 - 2a·u + (a² + b²)u²` (the conjugate pair a ± ib, b > 0).

use std::fmt;

use crate::elzaki::expr::fmt_real;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    /// real part of the pole in the Laplace variable
    pub re: f64,
    /// imaginary part, zero for a linear base
    pub im: f64,
    pub power: f64,
}

impl Factor {
    pub fn linear(a: f64, power: f64) -> Self {
        Self { re: a, im: 0.0, power }
    }

    pub fn quadratic(a: f64, b: f64, power: f64) -> Self {
        Self { re: a, im: b.abs(), power }
    }

    pub fn is_linear(&self) -> bool {
        self.im == 0.0
    }

    /// Coefficients of the base polynomial in ascending powers of u.
    pub fn base(&self) -> Vec<f64> {
        if self.is_linear() {
            vec![1.0, -self.re]
        } else {
            vec![1.0, -2.0 * self.re, self.re * self.re + self.im * self.im]
        }
    }

    fn base_at(&self, u: f64) -> f64 {
        if self.is_linear() {
            1.0 - self.re * u
        } else {
            1.0 - 2.0 * self.re * u + (self.re * self.re + self.im * self.im) * u * u
        }
    }

    fn base_derivative(&self) -> Vec<f64> {
        if self.is_linear() {
            vec![-self.re]
        } else {
            vec![-2.0 * self.re, 2.0 * (self.re * self.re + self.im * self.im)]
        }
    }

    fn same_pole(&self, other: &Factor) -> bool {
        close(self.re, other.re) && close(self.im, other.im)
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-10 * (1.0 + x.abs())
}

pub(crate) mod poly {
    pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] += x;
        }
        out
    }

    pub fn pow(a: &[f64], k: u32) -> Vec<f64> {
        let mut out = vec![1.0];
        for _ in 0..k {
            out = mul(&out, a);
        }
        out
    }

    pub fn derivative(a: &[f64]) -> Vec<f64> {
        a.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect()
    }

    pub fn eval(a: &[f64], x: f64) -> f64 {
        a.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Exact division by a base with constant term 1, if the remainder is
    /// negligible relative to the dividend.
    pub fn divide_exact(a: &[f64], base: &[f64]) -> Option<Vec<f64>> {
        let d = base.len() - 1;
        if a.len() <= d {
            return None;
        }
        // divide from the high-order end so the remainder sits in low powers
        let lead = base[d];
        let mut rem = a.to_vec();
        let mut q = vec![0.0; a.len() - d];
        for i in (0..q.len()).rev() {
            let c = rem[i + d] / lead;
            q[i] = c;
            for (j, b) in base.iter().enumerate() {
                rem[i + j] -= c * b;
            }
        }
        let scale = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let residual = rem[..d].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        (residual <= 1e-11 * scale).then_some(q)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageTerm {
    pub lead: f64,
    /// coefficients of u^{lead + i}
    pub numer: Vec<f64>,
    pub factors: Vec<Factor>,
    pub delay: f64,
}

impl ImageTerm {
    pub fn monomial(coeff: f64, power: f64) -> Self {
        Self { lead: power, numer: vec![coeff], factors: Vec::new(), delay: 0.0 }
    }

    pub fn new(lead: f64, numer: Vec<f64>, factors: Vec<Factor>, delay: f64) -> Self {
        Self { lead, numer, factors, delay }
    }

    pub fn eval(&self, u: f64) -> f64 {
        let mut v = u.powf(self.lead) * poly::eval(&self.numer, u);
        for f in &self.factors {
            v *= f.base_at(u).powf(-f.power);
        }
        if self.delay != 0.0 {
            v *= (-self.delay / u).exp();
        }
        v
    }

    /// Brings the term to normal form; `None` if it vanishes.
    fn normalize(mut self) -> Option<Self> {
        // merge repeated poles
        let mut merged: Vec<Factor> = Vec::new();
        for f in self.factors.drain(..) {
            if f.is_linear() && f.re == 0.0 {
                continue;
            }
            match merged.iter_mut().find(|g| g.same_pole(&f)) {
                Some(g) => g.power += f.power,
                None => merged.push(f),
            }
        }
        let mut kept = Vec::new();
        for f in merged {
            if f.power.abs() <= 1e-12 {
                continue;
            }
            if f.power < 0.0 && is_integer(f.power) {
                let k = (-f.power).round() as u32;
                self.numer = poly::mul(&self.numer, &poly::pow(&f.base(), k));
            } else {
                kept.push(f);
            }
        }
        self.factors = kept;
        self.trim();
        if self.numer.is_empty() {
            return None;
        }
        // cancel common factors with the numerator
        for f in self.factors.iter_mut() {
            while f.power >= 1.0 - 1e-12 {
                match poly::divide_exact(&self.numer, &f.base()) {
                    Some(q) => {
                        self.numer = q;
                        f.power -= 1.0;
                    }
                    None => break,
                }
            }
        }
        self.factors.retain(|f| f.power.abs() > 1e-12);
        self.factors.sort_by(|a, b| a.im.total_cmp(&b.im).then(b.re.total_cmp(&a.re)));
        self.trim();
        (!self.numer.is_empty()).then_some(self)
    }

    fn trim(&mut self) {
        let scale = self.numer.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if scale == 0.0 || !scale.is_finite() {
            if scale == 0.0 {
                self.numer.clear();
            }
            return;
        }
        let tiny = |x: &f64| x.abs() <= 1e-14 * scale;
        while self.numer.last().is_some_and(tiny) {
            self.numer.pop();
        }
        let skip = self.numer.iter().take_while(|x| tiny(x)).count();
        if skip > 0 {
            self.numer.drain(..skip);
            self.lead += skip as f64;
        }
    }

    fn power_of(&self, pole: &Factor) -> f64 {
        self.factors.iter().find(|f| f.same_pole(pole)).map_or(0.0, |f| f.power)
    }

    /// Sum of two terms over a common denominator, when the powers allow it.
    fn try_merge(&self, other: &Self) -> Option<Self> {
        if !close(self.delay, other.delay) || !is_integer(self.lead - other.lead) {
            return None;
        }
        let mut poles: Vec<Factor> = self.factors.clone();
        for f in &other.factors {
            if !poles.iter().any(|g| g.same_pole(f)) {
                poles.push(*f);
            }
        }
        let mut target = Vec::new();
        for pole in &poles {
            let (a, b) = (self.power_of(pole), other.power_of(pole));
            if !is_integer(a - b) {
                return None;
            }
            target.push(Factor { power: a.max(b), ..*pole });
        }
        let lead = self.lead.min(other.lead);
        let lift = |t: &Self| -> Vec<f64> {
            let shift = (t.lead - lead).round() as usize;
            let mut n = vec![0.0; shift];
            n.extend_from_slice(&t.numer);
            for g in &target {
                let k = (g.power - t.power_of(g)).round() as u32;
                if k > 0 {
                    n = poly::mul(&n, &poly::pow(&g.base(), k));
                }
            }
            n
        };
        let numer = poly::add(&lift(self), &lift(other));
        Some(Self { lead, numer, factors: target, delay: self.delay })
    }

    fn product(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Self {
            lead: self.lead + other.lead,
            numer: poly::mul(&self.numer, &other.numer),
            factors,
            delay: self.delay + other.delay,
        }
    }

    /// d/du as a list of (unnormalised) terms.
    fn derivative(&self) -> Vec<Self> {
        let mut out = Vec::new();
        // u^lead P
        let mut head = poly::derivative(&self.numer);
        head.insert(0, 0.0);
        let head = poly::add(&head, &self.numer.iter().map(|c| c * self.lead).collect::<Vec<_>>());
        out.push(Self { lead: self.lead - 1.0, numer: head, ..self.clone() });
        for (j, f) in self.factors.iter().enumerate() {
            let mut factors = self.factors.clone();
            factors[j].power += 1.0;
            let numer: Vec<f64> = poly::mul(&self.numer, &f.base_derivative()).iter().map(|c| -f.power * c).collect();
            out.push(Self { lead: self.lead, numer, factors, delay: self.delay });
        }
        if self.delay != 0.0 {
            let numer = self.numer.iter().map(|c| c * self.delay).collect();
            out.push(Self { lead: self.lead - 2.0, numer, ..self.clone() });
        }
        out
    }

    /// Smallest u at which a singular factor meets the positive axis.
    pub fn radius(&self) -> f64 {
        self.factors
            .iter()
            .filter(|f| f.re > 0.0)
            .map(|f| 1.0 / f.re)
            .fold(f64::INFINITY, f64::min)
    }
}

/// A normalised sum of image terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TransformExpr {
    terms: Vec<ImageTerm>,
}

impl TransformExpr {
    /// Normalises every term and combines compatible terms over common
    /// denominators, cancelling what divides out.
    pub fn new(terms: impl IntoIterator<Item = ImageTerm>) -> Self {
        let mut groups: Vec<ImageTerm> = Vec::new();
        for term in terms.into_iter().filter_map(ImageTerm::normalize) {
            let mut pending = Some(term);
            for g in groups.iter_mut() {
                if let Some(m) = g.try_merge(pending.as_ref().expect("pending")) {
                    *g = m;
                    pending = None;
                    break;
                }
            }
            if let Some(t) = pending {
                groups.push(t);
            }
        }
        let mut terms: Vec<ImageTerm> = groups.into_iter().filter_map(ImageTerm::normalize).collect();
        terms.sort_by(|a, b| {
            a.delay
                .total_cmp(&b.delay)
                .then(a.factors.len().cmp(&b.factors.len()))
                .then(a.lead.total_cmp(&b.lead))
        });
        Self { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(term: ImageTerm) -> Self {
        Self::new([term])
    }

    /// c·u^power
    pub fn monomial(coeff: f64, power: f64) -> Self {
        Self::term(ImageTerm::monomial(coeff, power))
    }

    pub fn terms(&self) -> &[ImageTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Supremum of the convergence interval (0, radius).
    pub fn radius(&self) -> f64 {
        self.terms.iter().map(ImageTerm::radius).fold(f64::INFINITY, f64::min)
    }

    /// Value at u, refused outside the convergence region of the defining
    /// integral.
    pub fn eval(&self, u: f64) -> Result<f64> {
        let radius = self.radius();
        if !(u > 0.0 && u < radius) {
            return Err(Error::OutsideConvergence { u, radius });
        }
        Ok(self.eval_unchecked(u))
    }

    /// Value of the closed form without the convergence check.
    pub fn eval_unchecked(&self, u: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(u)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.terms.iter().map(|t| ImageTerm {
            numer: t.numer.iter().map(|x| x * c).collect(),
            ..t.clone()
        }))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                out.push(a.product(b));
            }
        }
        Self::new(out)
    }

    /// Multiplies by u^m.
    pub fn mul_power(&self, m: f64) -> Self {
        Self::new(self.terms.iter().map(|t| ImageTerm { lead: t.lead + m, ..t.clone() }))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.terms.iter().flat_map(ImageTerm::derivative))
    }

    /// Relative agreement of two images at sample points (both evaluated
    /// without the convergence check).
    pub fn approx_eq_at(&self, other: &Self, samples: &[f64], rel: f64) -> bool {
        samples.iter().all(|&u| {
            let (a, b) = (self.eval_unchecked(u), other.eval_unchecked(u));
            (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
        })
    }
}

fn fmt_upow(power: f64) -> String {
    if power == 0.0 {
        "1".into()
    } else if power == 1.0 {
        "u".into()
    } else {
        format!("u^{}", fmt_real(power))
    }
}

fn fmt_poly(lead: f64, numer: &[f64]) -> (String, usize) {
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in numer.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let p = lead + i as f64;
        let mono = if p == 0.0 {
            fmt_real(c.abs())
        } else if c.abs() == 1.0 {
            fmt_upow(p)
        } else {
            format!("{}*{}", fmt_real(c.abs()), fmt_upow(p))
        };
        if parts.is_empty() {
            parts.push(if c < 0.0 { format!("-{mono}") } else { mono });
        } else {
            parts.push(format!("{} {mono}", if c < 0.0 { "-" } else { "+" }));
        }
    }
    let n = parts.len();
    (parts.join(" "), n)
}

fn fmt_base(f: &Factor) -> String {
    let base = f.base();
    let (s, _) = fmt_poly(0.0, &base);
    format!("({s})")
}

impl fmt::Display for ImageTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, count) = fmt_poly(self.lead, &self.numer);
        let num = if count > 1 && (!self.factors.is_empty() || self.delay != 0.0) {
            format!("({num})")
        } else {
            num
        };
        write!(f, "{num}")?;
        let mut den = Vec::new();
        let mut up = Vec::new();
        for fac in &self.factors {
            let base = fmt_base(fac);
            if fac.power == 0.5 {
                den.push(format!("sqrt{base}"));
            } else if fac.power == 1.0 {
                den.push(base);
            } else if fac.power > 0.0 {
                den.push(format!("{base}^{}", fmt_real(fac.power)));
            } else {
                up.push(format!("{base}^{}", fmt_real(-fac.power)));
            }
        }
        for u in up {
            write!(f, "*{u}")?;
        }
        if self.delay != 0.0 {
            write!(f, "*exp(-{}/u)", fmt_real(self.delay))?;
        }
        match den.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", den[0]),
            _ => write!(f, "/({})", den.join("*")),
        }
    }
}

impl fmt::Display for TransformExpr {
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
