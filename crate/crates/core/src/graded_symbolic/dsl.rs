//! Text form of super functions and vector fields.
//!
//! ```text
//! odd psi = (1/2)*exp(i*2*t)*x1^2*th1 - i*vth1
//! even xi = x1*d0 + th1*dth1
//! ```
//!
//! Generators: `t` (= `x0`), `x<k>`, `th<k>`, `v<k>`, `vth<k>`, `a<k>`,
//! `ath<k>`; derivations `d<k>` (`d0` is time) and `dth<k>`; constants `i`
//! and `tau = 2*pi`; Fourier factors `exp(i*<m>*t)`.

use super::dimension::{Parity, SuperDimension, Var};
use super::field::SuperVectorField;
use super::function::SuperFunction;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Gq};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Sym(char),
    End,
}

fn lex(src: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            let n = s.parse().map_err(|_| Error::parse(line, col, format!("number `{s}` too large")))?;
            out.push((Tok::Num(n), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), col));
        } else if "+-*/^()=".contains(c) {
            out.push((Tok::Sym(c), col));
            k += 1;
        } else {
            return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    F(SuperFunction),
    V(SuperVectorField),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    dim: SuperDimension,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col(), msg))
    }

    fn err_at<T>(&self, col: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, col, msg))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Value> {
        let neg = self.eat('-');
        let mut acc = self.product()?;
        if neg {
            acc = negate(acc);
        }
        loop {
            let col = self.col();
            let sub = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Ok(acc);
            };
            let mut rhs = self.product()?;
            if sub {
                rhs = negate(rhs);
            }
            acc = self.add(acc, rhs, col)?;
        }
    }

    fn add(&self, a: Value, b: Value, col: usize) -> Result<Value> {
        match (a, b) {
            (Value::F(x), Value::F(y)) => Ok(Value::F(x + y)),
            (Value::V(x), Value::V(y)) => Ok(Value::V(&x + &y)),
            (Value::F(x), Value::V(y)) | (Value::V(y), Value::F(x)) if x.is_zero() => Ok(Value::V(y)),
            _ => self.err_at(col, "cannot add a function and a vector field"),
        }
    }

    fn product(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        loop {
            let col = self.col();
            if self.eat('*') {
                let rhs = self.power()?;
                acc = match (acc, rhs) {
                    (Value::F(a), Value::F(b)) => Value::F(a * b),
                    (Value::F(a), Value::V(b)) => Value::V(b.mul_left(&a)),
                    _ => return self.err_at(col, "a derivation must be the rightmost factor"),
                };
            } else if self.eat('/') {
                let rhs_col = self.col();
                let rhs = self.power()?;
                let inv = match &rhs {
                    Value::F(f) => f.as_constant().and_then(|c| c.as_monomial()),
                    Value::V(_) => None,
                };
                let Some((k, c)) = inv.filter(|(_, c)| !c.is_zero()) else {
                    return self.err_at(rhs_col, "can only divide by a nonzero constant");
                };
                let r = Coeff::monomial(c.recip(), -k);
                acc = match acc {
                    Value::F(a) => Value::F(a.scale_coeff(&r)),
                    Value::V(a) => Value::V(a.map(|f| f.scale_coeff(&r))),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Value> {
        let base_col = self.col();
        let is_tau = matches!(self.peek(), Tok::Ident(s) if s == "tau");
        let base = self.unary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let Tok::Num(e) = self.peek().clone() else {
            return self.err("expected an integer exponent");
        };
        self.bump();
        let e = i32::try_from(e).map_err(|_| Error::parse(self.line, base_col, "exponent too large"))?;
        if is_tau {
            return Ok(Value::F(SuperFunction::constant(self.dim, Coeff::monomial(Gq::ONE, if neg { -e } else { e }))));
        }
        if neg {
            return self.err_at(base_col, "negative powers are only allowed for tau");
        }
        match base {
            Value::F(f) => {
                let mut out = SuperFunction::one(self.dim);
                for _ in 0..e {
                    out = &out * &f;
                }
                Ok(Value::F(out))
            }
            Value::V(_) => self.err_at(base_col, "cannot raise a derivation to a power"),
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(negate(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Value> {
        let col = self.col();
        match self.bump() {
            Tok::Num(n) => Ok(Value::F(SuperFunction::constant(self.dim, Gq::int(n)))),
            Tok::Sym('(') => {
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Ident(name) => self.ident(&name, col),
            Tok::End => self.err_at(col, "unexpected end of input"),
            Tok::Sym(c) => self.err_at(col, format!("unexpected `{c}`")),
        }
    }

    fn ident(&mut self, name: &str, col: usize) -> Result<Value> {
        let d = self.dim;
        let n = d.n_bosonic_spatial;
        let m = d.m_fermionic;
        let f = |v| Ok(Value::F(SuperFunction::var(d, v)));
        match name {
            "i" => return Ok(Value::F(SuperFunction::constant(d, Gq::I))),
            "tau" => return Ok(Value::F(SuperFunction::constant(d, Coeff::tau()))),
            "t" => return f(Var::Coord(0)),
            "exp" => return self.exponential(col),
            _ => {}
        }
        let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
        let (head, digits) = name.split_at(split);
        let Ok(k) = digits.parse::<usize>() else {
            return self.err_at(col, format!("unknown symbol `{name}`"));
        };
        let bad = |what: &str| Error::parse(self.line, col, format!("{what} index {k} out of range in {d}"));
        match head {
            "x" if k <= n => f(Var::Coord(k)),
            "v" if k >= 1 && k <= n => f(Var::Vel(k)),
            "a" if k >= 1 && k <= n => f(Var::Acc(k)),
            "th" if k >= 1 && k <= m => f(Var::Coord(n + k)),
            "vth" if k >= 1 && k <= m => f(Var::Vel(n + k)),
            "ath" if k >= 1 && k <= m => f(Var::Acc(n + k)),
            "d" if k <= n => Ok(Value::V(SuperVectorField::basis(d, k))),
            "dth" if k >= 1 && k <= m => Ok(Value::V(SuperVectorField::basis(d, n + k))),
            "x" | "v" | "a" | "d" => Err(bad("bosonic")),
            "th" | "vth" | "ath" | "dth" => Err(bad("fermionic")),
            _ => self.err_at(col, format!("unknown symbol `{name}`")),
        }
    }

    /// `exp(arg)` where `arg` evaluates to `i*m*t` for an integer `m`.
    fn exponential(&mut self, col: usize) -> Result<Value> {
        self.expect('(')?;
        let arg = self.sum()?;
        self.expect(')')?;
        let bad = || Error::parse(self.line, col, "exp expects an argument of the form i*m*t");
        let Value::F(arg) = arg else { return Err(bad()) };
        let t = SuperFunction::coord(self.dim, 0);
        let mut terms = arg.terms();
        let (mono, c) = terms.next().ok_or_else(bad)?;
        if terms.next().is_some() {
            return Err(bad());
        }
        let tm = t.terms().next().unwrap().0;
        let c = c.as_scalar().ok_or_else(bad)?;
        if mono != tm || !c.re.is_zero() || !c.im.is_integer() {
            return Err(bad());
        }
        let k = i64::try_from(c.im.numer()).map_err(|_| bad())?;
        Ok(Value::F(SuperFunction::fourier(self.dim, k)))
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::F(f) => Value::F(-f),
        Value::V(x) => Value::V(-&x),
    }
}

/// A parsed line: optional `even|odd name =` declaration plus the value.
struct Parsed {
    name: Option<String>,
    declared: Option<(Parity, usize)>,
    value: Value,
}

fn parse_line(src: &str, dim: SuperDimension, line: usize) -> Result<Parsed> {
    let toks = lex(src, line)?;
    let mut p = Parser { toks, pos: 0, line, dim };
    let mut name = None;
    let mut declared = None;
    let head: Vec<Tok> = p.toks.iter().take(3).map(|t| t.0.clone()).collect();
    if let [Tok::Ident(kw), Tok::Ident(id), Tok::Sym('=')] = head.as_slice() {
        let parity = match kw.as_str() {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            _ => return p.err(format!("unknown declaration keyword `{kw}`")),
        };
        declared = Some((parity, p.col()));
        name = Some(id.clone());
        p.pos = 3;
    }
    let value = p.sum()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(Parsed { name, declared, value })
}

fn check_parity(actual: Option<Parity>, declared: Option<(Parity, usize)>, line: usize) -> Result<()> {
    match (declared, actual) {
        (Some((want, col)), Some(got)) if want != got => {
            Err(Error::parse(line, col, format!("declared {want} but the value is {got}")))
        }
        (Some((_, col)), None) => Err(Error::parse(line, col, "value has mixed parity")),
        _ => Ok(()),
    }
}

/// Parses a function, with an optional `even|odd name =` prefix.
pub fn parse_named_function(src: &str, dim: SuperDimension) -> Result<(Option<String>, SuperFunction)> {
    let p = parse_line(src, dim, 1)?;
    let Value::F(f) = p.value else {
        return Err(Error::parse(1, 1, "expected a function, found a vector field"));
    };
    let actual = if f.is_zero() { p.declared.map(|d| d.0) } else { f.parity() };
    check_parity(actual, p.declared, 1)?;
    Ok((p.name, f))
}

pub fn parse_function(src: &str, dim: SuperDimension) -> Result<SuperFunction> {
    parse_named_function(src, dim).map(|r| r.1)
}

/// Parses a vector field `f*d<k> + ...`, with an optional declaration prefix.
pub fn parse_named_field(src: &str, dim: SuperDimension) -> Result<(Option<String>, SuperVectorField)> {
    let p = parse_line(src, dim, 1)?;
    let v = match p.value {
        Value::V(v) => v,
        Value::F(f) if f.is_zero() => SuperVectorField::zero(dim),
        Value::F(_) => return Err(Error::parse(1, 1, "expected a vector field, found a function")),
    };
    let actual = if v.is_zero() { p.declared.map(|d| d.0) } else { v.parity() };
    check_parity(actual, p.declared, 1)?;
    Ok((p.name, v))
}

pub fn parse_field(src: &str, dim: SuperDimension) -> Result<SuperVectorField> {
    parse_named_field(src, dim).map(|r| r.1)
}

fn var_name(dim: &SuperDimension, v: Var) -> String {
    let n = dim.n_bosonic_spatial;
    match v {
        Var::Coord(0) => "t".into(),
        Var::Coord(k) if k <= n => format!("x{k}"),
        Var::Coord(k) => format!("th{}", k - n),
        Var::Vel(k) if k <= n => format!("v{k}"),
        Var::Vel(k) => format!("vth{}", k - n),
        Var::Acc(k) if k <= n => format!("a{k}"),
        Var::Acc(k) => format!("ath{}", k - n),
    }
}

fn coeff_text(c: &Coeff) -> String {
    match c.as_monomial() {
        Some((0, g)) => format!("({g})"),
        _ => format!("({c})"),
    }
}

impl fmt::Display for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let dim = self.dim();
        for (k, (mono, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if *c != Coeff::one() {
                parts.push(coeff_text(c));
            }
            if mono.fourier != 0 {
                parts.push(format!("exp(i*{}*t)", mono.fourier));
            }
            let mut factors = mono.factors(&dim);
            factors.dedup();
            for v in factors {
                let e = mono.power(&dim, v);
                let name = var_name(&dim, v);
                parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for SuperVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim();
        let n = dim.n_bosonic_spatial;
        let mut first = true;
        for mu in dim.indices() {
            let c = self.component(mu);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = if mu <= n { format!("d{mu}") } else { format!("dth{}", mu - n) };
            write!(f, "({c})*{d}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
