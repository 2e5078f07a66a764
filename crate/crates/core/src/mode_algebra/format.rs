//! Line-oriented text format for mode algebras.
//!
//! ```text
//! # comment
//! name virasoro
//! param c = 7/3
//! generator L even
//! bracket L L = (n - m) L + c/12 * (m - m^3) CENTRAL
//! ```
//!
//! Right-hand sides are sums of terms, each a polynomial in `m`, `n`, `i`
//! and declared parameters multiplying one generator or `CENTRAL`.
//! Juxtaposition multiplies. Pairs without a `bracket` line are zero.

use super::poly::Poly;
use super::spec::{BracketValue, ModeAlgebraSpec, Target};
use crate::error::{Error, Result};
use crate::graded_symbolic::Parity;
use crate::scalar::{Gq, Rat};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Op(char),
}

fn lex(line: usize, offset: usize, s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = offset + k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            let v = text.parse().map_err(|_| Error::parse(line, col, "integer too large"))?;
            out.push((col, Tok::Num(v)));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || "_'".contains(chars[k])) {
                k += 1;
            }
            out.push((col, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Op(c)));
            k += 1;
        } else {
            return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

enum Val {
    S(Poly),
    V(BracketValue),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    line: usize,
    end_col: usize,
    spec: &'a ModeAlgebraSpec,
    params: &'a BTreeMap<String, Gq>,
}

fn scale_vec(v: &BracketValue, p: &Poly) -> BracketValue {
    v.iter().map(|(t, q)| (*t, q * p)).filter(|(_, q)| !q.is_zero()).collect()
}

fn add_vec(mut a: BracketValue, b: BracketValue, sign: Gq) -> BracketValue {
    for (t, q) in b {
        let e = a.entry(t).or_default();
        *e = &*e + &q.scale(sign);
        if e.is_zero() {
            a.remove(&t);
        }
    }
    a
}

impl Parser<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Op(o))) if *o == c)
    }

    fn sum(&mut self) -> Result<Val> {
        let mut acc = self.product()?;
        while self.peek_op('+') || self.peek_op('-') {
            let sign = if self.peek_op('+') { Gq::ONE } else { -Gq::ONE };
            self.pos += 1;
            let rhs = self.product()?;
            acc = match (acc, rhs) {
                (Val::S(a), Val::S(b)) => Val::S(&a + &b.scale(sign)),
                (Val::V(a), Val::V(b)) => Val::V(add_vec(a, b, sign)),
                _ => return Err(self.err("cannot add a polynomial to a generator term")),
            };
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))))
    }

    fn product(&mut self) -> Result<Val> {
        let mut acc = self.unary()?;
        loop {
            let divide = self.peek_op('/');
            if self.peek_op('*') || divide {
                self.pos += 1;
            } else if !self.starts_atom() {
                break;
            }
            let col = self.col();
            let rhs = self.unary()?;
            acc = match (acc, rhs, divide) {
                (Val::S(a), Val::S(b), false) => Val::S(&a * &b),
                (Val::S(a), Val::V(b), false) | (Val::V(b), Val::S(a), false) => Val::V(scale_vec(&b, &a)),
                (a, Val::S(b), true) => {
                    let c = b
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| Error::parse(self.line, col, "divisor must be a nonzero constant"))?;
                    let r = Poly::constant(c.recip());
                    match a {
                        Val::S(a) => Val::S(&a * &r),
                        Val::V(a) => Val::V(scale_vec(&a, &r)),
                    }
                }
                _ => return Err(Error::parse(self.line, col, "product of two generator terms")),
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let Some((_, Tok::Num(e))) = self.toks.get(self.pos).cloned() else {
            return Err(self.err("expected a nonnegative integer exponent"));
        };
        self.pos += 1;
        match base {
            Val::S(p) => Ok(Val::S(p.pow(u32::try_from(e).map_err(|_| self.err("exponent too large"))?))),
            Val::V(_) => Err(self.err("cannot raise a generator term to a power")),
        }
    }

    fn unary(&mut self) -> Result<Val> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(match self.unary()? {
                Val::S(p) => Val::S(-p),
                Val::V(v) => Val::V(scale_vec(&v, &Poly::int(-1))),
            });
        }
        self.power()
    }

    fn atom(&mut self) -> Result<Val> {
        let Some((col, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err("unexpected end of expression"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(k) => Ok(Val::S(Poly::int(k))),
            Tok::Op('(') => {
                let v = self.sum()?;
                if !self.peek_op(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(Error::parse(self.line, col, format!("unexpected `{c}`"))),
            Tok::Ident(name) => {
                let target = match name.as_str() {
                    "m" => return Ok(Val::S(Poly::m())),
                    "n" => return Ok(Val::S(Poly::n())),
                    "i" => return Ok(Val::S(Poly::constant(Gq::I))),
                    "CENTRAL" => Target::Central,
                    _ => {
                        if let Some(v) = self.params.get(&name) {
                            return Ok(Val::S(Poly::constant(*v)));
                        }
                        match self.spec.index(&name) {
                            Some(a) => Target::Gen(a),
                            None => return Err(Error::parse(self.line, col, format!("unknown symbol `{name}`"))),
                        }
                    }
                };
                Ok(Val::V(BTreeMap::from([(target, Poly::int(1))])))
            }
        }
    }
}

fn parse_expr(
    line: usize,
    offset: usize,
    text: &str,
    spec: &ModeAlgebraSpec,
    params: &BTreeMap<String, Gq>,
) -> Result<Val> {
    let toks = lex(line, offset, text)?;
    let end_col = offset + text.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, line, end_col, spec, params };
    let v = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses a mode-algebra file; errors carry 1-based line and column.
pub fn parse_spec(text: &str) -> Result<ModeAlgebraSpec> {
    let mut spec = ModeAlgebraSpec::new("unnamed");
    let mut params = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let indent = body.len() - trimmed.len();
        let Some((keyword, rest)) = trimmed.trim_end().split_once(char::is_whitespace).or_else(|| {
            let t = trimmed.trim_end();
            (!t.is_empty()).then_some((t, ""))
        }) else {
            continue;
        };
        let rest_offset = indent + keyword.len() + 1 + (rest.len() - rest.trim_start().len());
        let rest = rest.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "name" => spec.name = rest.to_string(),
            "generator" => {
                let [name, parity] = words[..] else {
                    return Err(Error::parse(line, indent + 1, "expected `generator <name> even|odd`"));
                };
                let parity = match parity {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    _ => return Err(Error::parse(line, indent + 1, format!("unknown parity `{parity}`"))),
                };
                spec.add_generator(name, parity).map_err(|e| Error::parse(line, rest_offset + 1, e.to_string()))?;
            }
            "param" | "bracket" => {
                let Some((lhs, rhs)) = rest.split_once('=') else {
                    return Err(Error::parse(line, rest_offset + 1, "expected `=`"));
                };
                let rhs_offset = rest_offset + lhs.len() + 1;
                let lhs: Vec<&str> = lhs.split_whitespace().collect();
                let value = parse_expr(line, rhs_offset, rhs, &spec, &params)?;
                if keyword == "param" {
                    let [name] = lhs[..] else {
                        return Err(Error::parse(line, rest_offset + 1, "expected `param <name> = <value>`"));
                    };
                    let c = match value {
                        Val::S(p) => p.as_constant(),
                        Val::V(_) => None,
                    }
                    .ok_or_else(|| Error::parse(line, rhs_offset + 1, "parameter must be a constant"))?;
                    params.insert(name.to_string(), c);
                } else {
                    let [a, b] = lhs[..] else {
                        return Err(Error::parse(line, rest_offset + 1, "expected `bracket <A> <B> = ...`"));
                    };
                    let (a, b) = (spec.require(a)?, spec.require(b)?);
                    let v = match value {
                        Val::V(v) => v,
                        Val::S(p) if p.is_zero() => BracketValue::new(),
                        Val::S(_) => return Err(Error::parse(line, rhs_offset + 1, "term lacks a generator")),
                    };
                    spec.set_bracket(a, b, v);
                }
            }
            _ => return Err(Error::parse(line, indent + 1, format!("unknown keyword `{keyword}`"))),
        }
    }
    Ok(spec)
}

fn gq_literal(c: Gq) -> String {
    let rat = |r: Rat| r.to_string();
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => rat(c.re),
        _ => format!("({} + {}*i)", rat(c.re), rat(c.im)),
    }
}

/// Canonical text form; `parse_spec(print_spec(s))` reproduces `s`.
pub fn print_spec(spec: &ModeAlgebraSpec) -> String {
    let mut out = format!("name {}\n", spec.name);
    for g in spec.generators() {
        let p = if g.parity.is_odd() { "odd" } else { "even" };
        writeln!(out, "generator {} {p}", g.name).unwrap();
    }
    for (&(a, b), v) in spec.stored_pairs() {
        let terms: Vec<String> = v
            .iter()
            .map(|(t, p)| {
                let poly: Vec<String> = p
                    .terms()
                    .map(|(e, c)| {
                        let mut s = gq_literal(*c);
                        for (k, var) in ["m", "n", "p"].iter().enumerate() {
                            if e[k] > 0 {
                                write!(s, "*{var}^{}", e[k]).unwrap();
                            }
                        }
                        s
                    })
                    .collect();
                format!("({}) {}", poly.join(" + "), spec.target_name(*t))
            })
            .collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let names = (&spec.generators()[a].name, &spec.generators()[b].name);
        writeln!(out, "bracket {} {} = {rhs}", names.0, names.1).unwrap();
    }
    out
}
