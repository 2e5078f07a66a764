//! Graded current algebras `[X_m, Y_n} = sum_Z f(m, n) Z_{m+n} + c(m, n) delta_{m+n}`.

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::graded_symbolic::Parity;
use crate::scalar::Gq;
use std::collections::BTreeMap;
use std::fmt;

/// Right-hand side slot of a bracket: a generator or the central element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Gen(usize),
    Central,
}

/// `target -> structure polynomial`, in the indeterminates of the caller.
pub type BracketValue = BTreeMap<Target, Poly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeAlgebraSpec {
    pub name: String,
    generators: Vec<Generator>,
    brackets: BTreeMap<(usize, usize), BracketValue>,
}

fn add_into(acc: &mut BracketValue, t: Target, p: Poly) {
    if p.is_zero() {
        return;
    }
    let merged = acc.get(&t).map(|q| q + &p).unwrap_or(p);
    if merged.is_zero() {
        acc.remove(&t);
    } else {
        acc.insert(t, merged);
    }
}

/// Central coefficients only matter where the indices sum to zero; the last
/// indeterminate present (`k`) is eliminated.
fn reduce_central(p: &Poly, k: usize) -> Poly {
    let mut images = [Poly::m(), Poly::n(), Poly::p()];
    images[k] = match k {
        0 => Poly::zero(),
        1 => -Poly::m(),
        _ => -(Poly::m() + Poly::n()),
    };
    p.subst(&images)
}

fn normalize(mut v: BracketValue, last_var: usize) -> BracketValue {
    if let Some(c) = v.remove(&Target::Central) {
        add_into(&mut v, Target::Central, reduce_central(&c, last_var));
    }
    v
}

impl ModeAlgebraSpec {
    pub fn new(name: impl Into<String>) -> ModeAlgebraSpec {
        ModeAlgebraSpec { name: name.into(), generators: Vec::new(), brackets: BTreeMap::new() }
    }

    pub fn add_generator(&mut self, name: impl Into<String>, parity: Parity) -> Result<usize> {
        let name = name.into();
        if name == "CENTRAL" || self.index(&name).is_some() {
            return Err(Error::Invalid(format!("duplicate generator `{name}`")));
        }
        self.generators.push(Generator { name, parity });
        Ok(self.generators.len() - 1)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::MissingGenerator(name.to_string()))
    }

    pub fn parity(&self, t: Target) -> Parity {
        match t {
            Target::Gen(a) => self.generators[a].parity,
            Target::Central => Parity::Even,
        }
    }

    pub fn target_name(&self, t: Target) -> &str {
        match t {
            Target::Gen(a) => &self.generators[a].name,
            Target::Central => "CENTRAL",
        }
    }

    /// Stores `[a_m, b_n} = value(m, n)`; zero polynomials are dropped.
    pub fn set_bracket(&mut self, a: usize, b: usize, value: BracketValue) {
        let v: BracketValue = value.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        self.brackets.insert((a, b), v);
    }

    /// Adds `coeff * target` to the stored `[a, b}`.
    pub fn add_bracket_term(&mut self, a: usize, b: usize, target: Target, coeff: Poly) {
        let entry = self.brackets.entry((a, b)).or_default();
        add_into(entry, target, coeff);
    }

    pub fn stored_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &BracketValue)> {
        self.brackets.iter()
    }

    /// `[a_m, b_n}` with reversed pairs derived by graded skewness.
    pub fn bracket(&self, a: usize, b: usize) -> BracketValue {
        if let Some(v) = self.brackets.get(&(a, b)) {
            return v.clone();
        }
        let Some(v) = self.brackets.get(&(b, a)) else {
            return BracketValue::new();
        };
        let s = -Gq::sign(self.generators[a].parity.is_odd() && self.generators[b].parity.is_odd());
        v.iter().map(|(t, p)| (*t, p.swap_mn().scale(s))).collect()
    }

    /// `[a_x, b_y}` for index polynomials `x, y`.
    pub fn bracket_at(&self, a: usize, x: &Poly, b: usize, y: &Poly) -> BracketValue {
        let images = [x.clone(), y.clone(), Poly::zero()];
        self.bracket(a, b).into_iter().map(|(t, p)| (t, p.subst(&images))).collect()
    }

    fn sign_between(&self, a: usize, b: usize) -> Gq {
        Gq::sign(self.generators[a].parity.is_odd() && self.generators[b].parity.is_odd())
    }

    /// Symmetry type of the bracket of a pair.
    pub fn is_anticommutator(&self, a: usize, b: usize) -> bool {
        self.generators[a].parity.is_odd() && self.generators[b].parity.is_odd()
    }

    /// `[a_x, [b_y, c_z}}`, dropping brackets with the central element.
    fn nested(&self, a: usize, x: &Poly, b: usize, y: &Poly, c: usize, z: &Poly) -> BracketValue {
        let mut out = BracketValue::new();
        let yz = y + z;
        for (t, f) in self.bracket_at(b, y, c, z) {
            let Target::Gen(d) = t else { continue };
            for (t2, g) in self.bracket_at(a, x, d, &yz) {
                add_into(&mut out, t2, &g * &f);
            }
        }
        out
    }

    fn jacobi_triple(&self, a: usize, b: usize, c: usize) -> BracketValue {
        let (m, n, p) = (Poly::m(), Poly::n(), Poly::p());
        let mut acc = BracketValue::new();
        let terms = [
            (self.sign_between(a, c), self.nested(a, &m, b, &n, c, &p)),
            (self.sign_between(b, a), self.nested(b, &n, c, &p, a, &m)),
            (self.sign_between(c, b), self.nested(c, &p, a, &m, b, &n)),
        ];
        for (s, v) in terms {
            for (t, q) in v {
                add_into(&mut acc, t, q.scale(s));
            }
        }
        normalize(acc, 2)
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        let g = self.generators.len();
        let mut out = Vec::with_capacity(g * g * g);
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    out.push((a, b, c));
                }
            }
        }
        out
    }
}

/// One failing location together with its residual polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub location: String,
    pub residuals: Vec<(String, Poly)>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.location)?;
        for (t, p) in &self.residuals {
            write!(f, " [{t}: {p}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn failure(spec: &ModeAlgebraSpec, location: String, v: BracketValue) -> Option<Failure> {
    if v.is_empty() {
        return None;
    }
    let residuals = v.into_iter().map(|(t, p)| (spec.target_name(t).to_string(), p)).collect();
    Some(Failure { location, residuals })
}

/// Graded skewness of every pair stored in both orders, plus the parity
/// selection rule of every stored term.
pub fn verify_graded_skewness(spec: &ModeAlgebraSpec) -> IdentityReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (&(a, b), v) in &spec.brackets {
        let want = spec.generators[a].parity + spec.generators[b].parity;
        let wrong: BracketValue = v.iter().filter(|(t, _)| spec.parity(**t) != want).map(|(t, p)| (*t, p.clone())).collect();
        checked += 1;
        if let Some(f) = failure(spec, format!("parity [{}, {}]", spec.generators[a].name, spec.generators[b].name), wrong) {
            failures.push(f);
        }
        if a > b || !spec.brackets.contains_key(&(b, a)) {
            continue;
        }
        let rev = &spec.brackets[&(b, a)];
        let s = spec.sign_between(a, b);
        let mut res = v.clone();
        for (t, p) in rev {
            add_into(&mut res, *t, p.swap_mn().scale(s));
        }
        let res = normalize(res, 1);
        checked += 1;
        if let Some(f) = failure(spec, format!("[{}, {}]", spec.generators[a].name, spec.generators[b].name), res) {
            failures.push(f);
        }
    }
    IdentityReport { identity: "graded skewness".into(), checked, failures }
}

/// Super-Jacobi identity as a polynomial identity in `m, n, p` for every
/// ordered generator triple.
pub fn verify_super_jacobi(spec: &ModeAlgebraSpec) -> IdentityReport {
    let triples = spec.triples();
    let check = |&(a, b, c): &(usize, usize, usize)| {
        let names = [a, b, c].map(|k| spec.generators[k].name.as_str());
        failure(spec, format!("({}, {}, {})", names[0], names[1], names[2]), spec.jacobi_triple(a, b, c))
    };
    #[cfg(feature = "parallel")]
    let failures: Vec<Failure> = {
        use rayon::prelude::*;
        triples.par_iter().filter_map(check).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let failures: Vec<Failure> = triples.iter().filter_map(check).collect();
    IdentityReport { identity: "super-Jacobi".into(), checked: triples.len(), failures }
}
