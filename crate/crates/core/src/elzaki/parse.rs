//! Infix syntax for real-space expressions.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' signed-number)?
//! atom    := number | 't' | 'pi' | '(' expr ')' | name '(' args ')'
//! ```
//!
//! Functions: `exp`, `sin`, `cos`, `sinh`, `cosh`, `J0` take an argument
//! linear in t; `H(t-a)` and `delta(t-a)` place a step or impulse at a;
//! `hyp1f1(a, b, k*t)` is Kummer's function; `gamma(x)` is a constant.
//! Juxtaposition multiplies, so `2t` and `exp(2t)*t` both parse.

use crate::elzaki::expr::{Expr, Shift, Special};
use crate::error::{Error, Result};
use crate::special::gamma;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent only if followed by digits, so "2e" stays 2 * e-identifier
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let v: f64 = text
                .parse()
                .map_err(|_| Error::Parse { pos: start, msg: format!("bad number '{text}'") })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn at_pos<T>(&self, pos: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse { pos, msg: other.to_string() },
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = acc + self.product()?;
            } else if self.eat('-') {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') || self.starts_atom() {
                let rhs = self.unary()?;
                acc = self.at_pos(pos, acc.try_mul(&rhs))?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let c = constant_value(&rhs).ok_or(Error::Parse { pos, msg: "division by a non-constant".into() })?;
                if c == 0.0 {
                    return Err(Error::Parse { pos, msg: "division by zero".into() });
                }
                acc = acc.scale(1.0 / c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn signed_number(&mut self) -> Result<f64> {
        let neg = self.eat('-');
        let paren = !neg && self.eat('(');
        let neg = neg || (paren && self.eat('-'));
        let v = match self.peek() {
            Some(Tok::Num(v)) => *v,
            _ => return self.err("expected a number"),
        };
        self.at += 1;
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        let p = self.signed_number()?;
        if base == Expr::power(1.0) {
            return Ok(Expr::power(p));
        }
        if p >= 0.0 && p == p.round() {
            return self.at_pos(pos, base.try_pow(p as u32));
        }
        Err(Error::Parse { pos, msg: format!("exponent {p} is allowed only on t") })
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while self.eat(',') {
            out.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                Ok(Expr::constant(v))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "t" => return Ok(Expr::power(1.0)),
                    "pi" => return Ok(Expr::constant(std::f64::consts::PI)),
                    _ => {}
                }
                let args = self.args()?;
                self.at_pos(pos, apply(&name, &args)).map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::Parse { pos, msg },
                    other => other,
                })
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant_value(e: &Expr) -> Option<f64> {
    match e.terms() {
        [] => Some(0.0),
        [t] if t.power == 0.0 && t.rate == 0.0 && t.special == Special::None && t.shift == Shift::None => Some(t.coeff),
        _ => None,
    }
}

/// (α, β) with e = α t + β.
fn linear(e: &Expr) -> Option<(f64, f64)> {
    let (mut alpha, mut beta) = (0.0, 0.0);
    for t in e.terms() {
        if t.rate != 0.0 || t.special != Special::None || t.shift != Shift::None {
            return None;
        }
        match t.power {
            p if p == 0.0 => beta += t.coeff,
            p if p == 1.0 => alpha += t.coeff,
            _ => return None,
        }
    }
    Some((alpha, beta))
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos: 0, msg: msg.into() })
}

fn apply(name: &str, args: &[Expr]) -> Result<Expr> {
    let one = |args: &[Expr]| -> Result<(f64, f64)> {
        match args {
            [a] => linear(a).map_or_else(|| parse_err(format!("{name} needs an argument linear in t")), Ok),
            _ => parse_err(format!("{name} takes one argument")),
        }
    };
    let sp = |s: Special, c: f64| Expr::special(s).scale(c);
    match name {
        "exp" => {
            let (a, b) = one(args)?;
            Ok(Expr::exp(a).scale(b.exp()))
        }
        // addition formulas for f(αt + β)
        "sin" => {
            let (a, b) = one(args)?;
            Ok(sp(Special::Sin(a), b.cos()) + sp(Special::Cos(a), b.sin()))
        }
        "cos" => {
            let (a, b) = one(args)?;
            Ok(sp(Special::Cos(a), b.cos()) - sp(Special::Sin(a), b.sin()))
        }
        "sinh" => {
            let (a, b) = one(args)?;
            Ok(sp(Special::Sinh(a), b.cosh()) + sp(Special::Cosh(a), b.sinh()))
        }
        "cosh" => {
            let (a, b) = one(args)?;
            Ok(sp(Special::Cosh(a), b.cosh()) + sp(Special::Sinh(a), b.sinh()))
        }
        "J0" | "j0" => match one(args)? {
            (a, b) if b == 0.0 => Ok(Expr::special(Special::J0(a))),
            _ => parse_err("J0 argument must be a multiple of t"),
        },
        "H" | "heaviside" => match one(args)? {
            (a, b) if a == 1.0 => Ok(Expr::heaviside(-b)),
            _ => parse_err("H expects t - a"),
        },
        "delta" => match one(args)? {
            (a, b) if a == 1.0 => Ok(Expr::delta(-b)),
            _ => parse_err("delta expects t - a"),
        },
        "hyp1f1" => match args {
            [a, b, x] => {
                let a = constant_value(a).map_or_else(|| parse_err("hyp1f1: a must be constant"), Ok)?;
                let b = constant_value(b).map_or_else(|| parse_err("hyp1f1: b must be constant"), Ok)?;
                match linear(x) {
                    Some((k, 0.0)) => Ok(Expr::special(Special::Hyp1F1 { a, b, scale: k })),
                    _ => parse_err("hyp1f1: third argument must be a multiple of t"),
                }
            }
            _ => parse_err("hyp1f1 takes three arguments"),
        },
        "gamma" => match args {
            [x] => {
                let x = constant_value(x).map_or_else(|| parse_err("gamma takes a constant"), Ok)?;
                Ok(Expr::constant(gamma(x)?))
            }
            _ => parse_err("gamma takes one argument"),
        },
        _ => parse_err(format!("unknown function '{name}'")),
    }
}

/// Parses the infix syntax into a canonical expression.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elzaki::expr::Term;

    fn close(a: &Expr, b: &Expr) -> bool {
        a.approx_eq_at(b, &[0.0, 0.4, 1.3, 2.9], 1e-12)
    }

    #[test]
    fn basic_forms() {
        assert_eq!(parse_expr("t^2").unwrap(), Expr::power(2.0));
        assert_eq!(parse_expr("exp(2t)*t").unwrap(), Expr::exp(2.0).try_mul(&Expr::power(1.0)).unwrap());
        assert_eq!(parse_expr("cos(3t)").unwrap(), Expr::special(Special::Cos(3.0)));
        assert_eq!(parse_expr("cos(3*t)").unwrap(), Expr::special(Special::Cos(3.0)));
        assert_eq!(parse_expr("t^1.5/gamma(2.5)").unwrap(), Expr::normalized_power(2.5).unwrap());
        assert_eq!(parse_expr("H(t-1)").unwrap(), Expr::heaviside(1.0));
        assert_eq!(parse_expr("delta(t - 2)").unwrap(), Expr::delta(2.0));
        assert_eq!(parse_expr("J0(2t)").unwrap(), Expr::special(Special::J0(2.0)));
        assert_eq!(parse_expr("-t").unwrap(), Expr::power(1.0).scale(-1.0));
        assert_eq!(parse_expr("1e-3*t").unwrap(), Expr::power(1.0).scale(1e-3));
        assert_eq!(parse_expr("t^(-0.5)").unwrap(), Expr::power(-0.5));
    }

    #[test]
    fn phase_shifts_expand() {
        let e = parse_expr("sin(2t + 1)").unwrap();
        let f = |t: f64| (2.0 * t + 1.0).sin();
        for t in [0.1, 0.9, 2.2] {
            assert!((e.eval(t) - f(t)).abs() < 1e-14);
        }
        let e = parse_expr("cos(t - 0.5) + cosh(0.5t + 1) + sinh(t-2) + exp(t+1)").unwrap();
        let f = |t: f64| (t - 0.5).cos() + (0.5 * t + 1.0).cosh() + (t - 2.0).sinh() + (t + 1.0).exp();
        for t in [0.1, 0.9, 2.2] {
            assert!((e.eval(t) - f(t)).abs() < 1e-12 * f(t).abs().max(1.0));
        }
    }

    #[test]
    fn shifted_polynomials() {
        let e = parse_expr("(t-1)^2*H(t-1)").unwrap();
        assert!(e.terms().iter().all(|t| t.shift == Shift::Heaviside(1.0)));
        assert!(close(&e, &Expr::term(Term::new(1.0, 2.0, 0.0, Special::None).with_shift(Shift::Heaviside(1.0)))));
    }

    #[test]
    fn display_round_trip() {
        for src in [
            "3*t^2*exp(-t)*sin(2t) - 0.5*cosh(1.5t)",
            "t*exp(2t)",
            "(t-1)^2*exp(t-1)*H(t-1)",
            "2*delta(t-3) + J0(2t)",
            "hyp1f1(0.3, 1.5, 2t)*t^0.5",
        ] {
            let e = parse_expr(src).unwrap();
            let again = parse_expr(&e.to_string()).unwrap();
            assert!(close(&e, &again), "{src}: {e} vs {again}");
            assert_eq!(e.terms().len(), again.terms().len());
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("t + foo(t)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_expr("t + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("").is_err());
        assert!(parse_expr("sin(t^2)").is_err());
        assert!(parse_expr("t/t").is_err());
        assert!(parse_expr("(t").is_err());
        assert!(parse_expr("J0(t)*sin(t)").is_err());
    }
}
