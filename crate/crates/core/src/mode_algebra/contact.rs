//! Mode tables of contact brackets computed from Fourier bases of functions.
//!
//! Each basis element is `f_a(m) = u_a * exp(i m t)` for a fixed function
//! `u_a` of the odd coordinates. The contact bracket is first order in each
//! argument, and `d/dt` contributes one power of the mode, so every structure
//! function has degree at most one in `m` and in `n`. Evaluating on the four
//! corners of `{0, 1}^2` fixes it; the rest of the grid confirms the fit.

use super::poly::Poly;
use super::spec::{BracketValue, ModeAlgebraSpec, Target};
use crate::error::{Error, Result};
use crate::graded_symbolic::{contact_bracket, Monomial, Parity, SuperDimension, SuperFunction, SymplecticData};
use crate::scalar::Gq;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
    /// Mode-zero representative `u_a`.
    pub profile: SuperFunction,
}

#[derive(Clone, Debug)]
pub struct ContactBasis {
    pub name: String,
    pub data: SymplecticData,
    pub elements: Vec<BasisElement>,
}

fn single_term(f: &SuperFunction) -> Result<(Monomial, Gq)> {
    let mut it = f.terms();
    match (it.next(), it.next()) {
        (Some((m, c)), None) => {
            let c = c.as_scalar().ok_or_else(|| Error::Invalid(format!("profile {f} carries tau")))?;
            Ok((m.clone(), c))
        }
        _ => Err(Error::Invalid(format!("profile {f} must be a single term"))),
    }
}

impl ContactBasis {
    pub fn new(name: &str, data: SymplecticData, elements: &[(&str, SuperFunction)]) -> Result<ContactBasis> {
        let elements = elements
            .iter()
            .map(|(n, f)| {
                let (m, _) = single_term(f)?;
                Ok(BasisElement { name: n.to_string(), parity: m.parity(), profile: f.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ContactBasis { name: name.into(), data, elements })
    }

    pub fn element(&self, a: usize, m: i64) -> SuperFunction {
        self.elements[a].profile.shift_fourier(m)
    }

    /// Coordinates of `f` in the basis, as `(element, mode) -> coefficient`.
    pub fn decompose(&self, f: &SuperFunction) -> Result<BTreeMap<(usize, i64), Gq>> {
        let keys = self
            .elements
            .iter()
            .map(|e| single_term(&e.profile))
            .collect::<Result<Vec<_>>>()?;
        let mut out = BTreeMap::new();
        for (mono, c) in f.terms() {
            let c = c.as_scalar().ok_or_else(|| Error::NonClosure(format!("{f} carries tau")))?;
            let mut base = mono.clone();
            base.fourier = 0;
            let a = keys
                .iter()
                .position(|(m, _)| *m == base)
                .ok_or_else(|| Error::NonClosure(format!("{f} leaves the span of {}", self.name)))?;
            out.insert((a, mono.fourier), c / keys[a].1);
        }
        Ok(out)
    }
}

/// `l_m = exp(imt)/2i`, `g_m = theta exp(imt)` with `omega^{11} = i`.
pub fn k11_basis() -> ContactBasis {
    let w = SymplecticData::k11();
    let d = w.dim;
    let th = SuperFunction::coord(d, 1);
    let l = SuperFunction::constant(d, Gq::I.recip() / Gq::int(2));
    ContactBasis::new("K(1|1)", w, &[("l", l), ("g", th)]).unwrap()
}

/// `l_m`, `t_m = i theta thetabar exp(imt)`, `g_m`, `gb_m` on `(1|2)`.
pub fn k12_basis() -> ContactBasis {
    let w = SymplecticData::k12();
    let d: SuperDimension = w.dim;
    let (th, tb) = (SuperFunction::coord(d, 1), SuperFunction::coord(d, 2));
    let l = SuperFunction::constant(d, Gq::I.recip() / Gq::int(2));
    let t = (&th * &tb).scale(Gq::I);
    ContactBasis::new("K(1|2)", w, &[("l", l), ("t", t), ("g", th), ("gb", tb)]).unwrap()
}

/// Grid of `(m, n)` used to confirm the fitted structure functions.
pub const CONFIRM_GRID: std::ops::RangeInclusive<i64> = -3..=3;

/// Structure table of the basis under the contact bracket. Fails with
/// `NonClosure` if a bracket leaves the span, lands on a mode other than
/// `m + n`, or disagrees with the degree-one fit anywhere on the grid.
pub fn contact_table(basis: &ContactBasis) -> Result<ModeAlgebraSpec> {
    let mut spec = ModeAlgebraSpec::new(format!("{} contact", basis.name));
    for e in &basis.elements {
        spec.add_generator(e.name.clone(), e.parity)?;
    }
    let k = basis.elements.len();
    let sample = |a: usize, b: usize, m: i64, n: i64| -> Result<BTreeMap<usize, Gq>> {
        let f = contact_bracket(&basis.element(a, m), &basis.element(b, n), &basis.data);
        let mut out = BTreeMap::new();
        for ((c, mode), v) in basis.decompose(&f)? {
            if mode != m + n {
                return Err(Error::NonClosure(format!(
                    "{{{}_{m}, {}_{n}}} has a component on mode {mode}",
                    basis.elements[a].name, basis.elements[b].name
                )));
            }
            out.insert(c, v);
        }
        Ok(out)
    };
    for a in 0..k {
        for b in 0..k {
            let corner = |m, n| sample(a, b, m, n);
            let (c00, c10, c01, c11) = (corner(0, 0)?, corner(1, 0)?, corner(0, 1)?, corner(1, 1)?);
            let at = |s: &BTreeMap<usize, Gq>, c: usize| s.get(&c).copied().unwrap_or(Gq::ZERO);
            let mut value = BracketValue::new();
            for c in 0..k {
                let (p00, p10, p01, p11) = (at(&c00, c), at(&c10, c), at(&c01, c), at(&c11, c));
                let fit = Poly::constant(p00)
                    + Poly::m().scale(p10 - p00)
                    + Poly::n().scale(p01 - p00)
                    + (Poly::m() * Poly::n()).scale(p11 - p10 - p01 + p00);
                if !fit.is_zero() {
                    value.insert(Target::Gen(c), fit);
                }
            }
            for m in CONFIRM_GRID {
                for n in CONFIRM_GRID {
                    let got = sample(a, b, m, n)?;
                    for c in 0..k {
                        let want = value.get(&Target::Gen(c)).map(|p| p.eval([m, n, 0])).unwrap_or(Gq::ZERO);
                        if at(&got, c) != want {
                            return Err(Error::NonClosure(format!(
                                "{{{}_{m}, {}_{n}}} breaks the degree-one fit",
                                basis.elements[a].name, basis.elements[b].name
                            )));
                        }
                    }
                }
            }
            spec.set_bracket(a, b, value);
        }
    }
    Ok(spec)
}

/// Pairs on which two tables differ, including derived reverse orders.
pub fn table_differences(x: &ModeAlgebraSpec, y: &ModeAlgebraSpec) -> Vec<String> {
    let names = |s: &ModeAlgebraSpec| s.generators().iter().map(|g| (g.name.clone(), g.parity)).collect::<Vec<_>>();
    if names(x) != names(y) {
        return vec![format!("generator lists differ: {:?} vs {:?}", names(x), names(y))];
    }
    let k = x.generators().len();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let (u, v) = (x.bracket(a, b), y.bracket(a, b));
            if u != v {
                out.push(format!(
                    "[{}, {}]: {:?} vs {:?}",
                    x.generators()[a].name,
                    x.generators()[b].name,
                    u,
                    v
                ));
            }
        }
    }
    out
}
