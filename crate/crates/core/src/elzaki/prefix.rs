//! Deterministic prefix serialisation. Numbers are written in Rust's
//! shortest round-trip form, so `parse(write(x)) == x` exactly.
//!
//! ```text
//! expr    := (sum term*)
//! term    := (term coeff power rate special shift)
//! special := none | (sin b) | (cos b) | (sinh b) | (cosh b) | (j0 a) | (hyp1f1 a b k)
//! shift   := none | (heaviside s) | (delta s)
//!
//! image   := (sum iterm*)
//! iterm   := (iterm lead (numer c*) (factors factor*) delay)
//! factor  := (factor re im power)
//! ```

use std::fmt::Write as _;

use crate::elzaki::expr::{Expr, Shift, Special, Term};
use crate::elzaki::image::{Factor, ImageTerm, TransformExpr};
use crate::error::{Error, Result};

fn num(out: &mut String, x: f64) {
    let _ = write!(out, " {x:?}");
}

pub fn write_expr(e: &Expr) -> String {
    let mut out = String::from("(sum");
    for t in e.terms() {
        out.push_str(" (term");
        num(&mut out, t.coeff);
        num(&mut out, t.power);
        num(&mut out, t.rate);
        match t.special {
            Special::None => out.push_str(" none"),
            Special::Sin(b) => write_tagged(&mut out, "sin", &[b]),
            Special::Cos(b) => write_tagged(&mut out, "cos", &[b]),
            Special::Sinh(b) => write_tagged(&mut out, "sinh", &[b]),
            Special::Cosh(b) => write_tagged(&mut out, "cosh", &[b]),
            Special::J0(a) => write_tagged(&mut out, "j0", &[a]),
            Special::Hyp1F1 { a, b, scale } => write_tagged(&mut out, "hyp1f1", &[a, b, scale]),
        }
        match t.shift {
            Shift::None => out.push_str(" none"),
            Shift::Heaviside(s) => write_tagged(&mut out, "heaviside", &[s]),
            Shift::Delta(s) => write_tagged(&mut out, "delta", &[s]),
        }
        out.push(')');
    }
    out.push(')');
    out
}

fn write_tagged(out: &mut String, tag: &str, xs: &[f64]) {
    out.push_str(" (");
    out.push_str(tag);
    for &x in xs {
        num(out, x);
    }
    out.push(')');
}

pub fn write_image(t: &TransformExpr) -> String {
    let mut out = String::from("(sum");
    for term in t.terms() {
        out.push_str(" (iterm");
        num(&mut out, term.lead);
        out.push_str(" (numer");
        for &c in &term.numer {
            num(&mut out, c);
        }
        out.push_str(") (factors");
        for f in &term.factors {
            write_tagged(&mut out, "factor", &[f.re, f.im, f.power]);
        }
        out.push(')');
        num(&mut out, term.delay);
        out.push(')');
    }
    out.push(')');
    out
}

#[derive(Debug, Clone)]
enum Sexp {
    Atom(usize, String),
    List(usize, Vec<Sexp>),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(p, _) | Sexp::List(p, _) => *p,
        }
    }
}

fn read(src: &str) -> Result<Sexp> {
    let bytes = src.as_bytes();
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut result = None;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'(' => {
                stack.push((i, Vec::new()));
                i += 1;
            }
            b')' => {
                let (p, items) = stack.pop().ok_or(Error::Parse { pos: i, msg: "unbalanced ')'".into() })?;
                let node = Sexp::List(p, items);
                match stack.last_mut() {
                    Some(top) => top.1.push(node),
                    None if result.is_none() => result = Some(node),
                    None => return Err(Error::Parse { pos: p, msg: "trailing input".into() }),
                }
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                    i += 1;
                }
                let atom = Sexp::Atom(start, src[start..i].to_string());
                match stack.last_mut() {
                    Some(top) => top.1.push(atom),
                    None => return Err(Error::Parse { pos: start, msg: "expected '('".into() }),
                }
            }
        }
    }
    if let Some((p, _)) = stack.last() {
        return Err(Error::Parse { pos: *p, msg: "unclosed '('".into() });
    }
    result.ok_or(Error::Parse { pos: 0, msg: "empty input".into() })
}

fn bad<T>(at: &Sexp, msg: &str) -> Result<T> {
    Err(Error::Parse { pos: at.pos(), msg: msg.into() })
}

fn number(s: &Sexp) -> Result<f64> {
    match s {
        Sexp::Atom(p, text) => text
            .parse()
            .map_err(|_| Error::Parse { pos: *p, msg: format!("bad number '{text}'") }),
        _ => bad(s, "expected a number"),
    }
}

/// (head args...) with the expected head.
fn tagged<'a>(s: &'a Sexp, head: &str) -> Result<&'a [Sexp]> {
    match s {
        Sexp::List(_, items) => match items.first() {
            Some(Sexp::Atom(_, h)) if h == head => Ok(&items[1..]),
            _ => bad(s, &format!("expected ({head} ...)")),
        },
        _ => bad(s, &format!("expected ({head} ...)")),
    }
}

fn numbers(items: &[Sexp], n: usize, at: &Sexp) -> Result<Vec<f64>> {
    if items.len() != n {
        return bad(at, &format!("expected {n} numbers"));
    }
    items.iter().map(number).collect()
}

fn read_special(s: &Sexp) -> Result<Special> {
    if let Sexp::Atom(_, a) = s {
        return if a == "none" { Ok(Special::None) } else { bad(s, "unknown special factor") };
    }
    let Sexp::List(_, items) = s else { unreachable!() };
    let head = match items.first() {
        Some(Sexp::Atom(_, h)) => h.as_str(),
        _ => return bad(s, "expected a tag"),
    };
    let args = &items[1..];
    Ok(match head {
        "sin" => Special::Sin(numbers(args, 1, s)?[0]),
        "cos" => Special::Cos(numbers(args, 1, s)?[0]),
        "sinh" => Special::Sinh(numbers(args, 1, s)?[0]),
        "cosh" => Special::Cosh(numbers(args, 1, s)?[0]),
        "j0" => Special::J0(numbers(args, 1, s)?[0]),
        "hyp1f1" => {
            let v = numbers(args, 3, s)?;
            Special::Hyp1F1 { a: v[0], b: v[1], scale: v[2] }
        }
        _ => return bad(s, "unknown special factor"),
    })
}

fn read_shift(s: &Sexp) -> Result<Shift> {
    if let Sexp::Atom(_, a) = s {
        return if a == "none" { Ok(Shift::None) } else { bad(s, "unknown shift") };
    }
    if let Ok(args) = tagged(s, "heaviside") {
        return Ok(Shift::Heaviside(numbers(args, 1, s)?[0]));
    }
    if let Ok(args) = tagged(s, "delta") {
        return Ok(Shift::Delta(numbers(args, 1, s)?[0]));
    }
    bad(s, "unknown shift")
}

pub fn read_expr(src: &str) -> Result<Expr> {
    let root = read(src)?;
    let mut terms = Vec::new();
    for item in tagged(&root, "sum")? {
        let f = tagged(item, "term")?;
        if f.len() != 5 {
            return bad(item, "term needs coeff, power, rate, special, shift");
        }
        terms.push(Term {
            coeff: number(&f[0])?,
            power: number(&f[1])?,
            rate: number(&f[2])?,
            special: read_special(&f[3])?,
            shift: read_shift(&f[4])?,
        });
    }
    Ok(Expr::new(terms))
}

pub fn read_image(src: &str) -> Result<TransformExpr> {
    let root = read(src)?;
    let mut terms = Vec::new();
    for item in tagged(&root, "sum")? {
        let f = tagged(item, "iterm")?;
        if f.len() != 4 {
            return bad(item, "iterm needs lead, numer, factors, delay");
        }
        let numer = tagged(&f[1], "numer")?.iter().map(number).collect::<Result<Vec<_>>>()?;
        let factors = tagged(&f[2], "factors")?
            .iter()
            .map(|x| {
                let v = numbers(tagged(x, "factor")?, 3, x)?;
                Ok(Factor { re: v[0], im: v[1], power: v[2] })
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push(ImageTerm::new(number(&f[0])?, numer, factors, number(&f[3])?));
    }
    Ok(TransformExpr::new(terms))
}
