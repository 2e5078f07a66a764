//! Extended superconformal algebra on `L, G, theta, U, V, W`, its
//! parameter table and the redefinition leaving only the central charge.

use super::builtins::scalg;
use super::poly::Poly;
use super::spec::{BracketValue, ModeAlgebraSpec, Target};
use crate::error::{Error, Result};
use crate::graded_symbolic::Parity;
use crate::scalar::Gq;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XscParameters {
    pub a: Gq,
    pub a_prime: Gq,
    pub alpha: Gq,
    pub beta: Gq,
    pub gamma: Gq,
    pub gamma_prime: Gq,
    pub e: Gq,
    pub b: Gq,
}

impl XscParameters {
    /// `2 alpha - beta - 2a + b/2`, zero exactly when Jacobi holds.
    pub fn constraint_defect(&self) -> Gq {
        Gq::int(2) * self.alpha - self.beta - Gq::int(2) * self.a + self.b / Gq::int(2)
    }

    pub fn named(&self) -> [(&'static str, Gq); 8] {
        [
            ("a", self.a),
            ("a'", self.a_prime),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("gamma'", self.gamma_prime),
            ("e", self.e),
            ("b", self.b),
        ]
    }
}

/// Parameters realized by the trajectory construction on `(1|1)` for aux
/// constants `c, k1, k2`.
pub fn xsc_parameters(c: Gq, k1: Gq, k2: Gq) -> XscParameters {
    let q = |n, d| Gq::frac(n, d);
    let s = (c - Gq::int(2)) / Gq::int(12);
    XscParameters {
        a: q(-3, 4) + q(3, 4) * k1 + q(1, 4) * k2 + s,
        a_prime: s,
        alpha: q(-5, 4) + s,
        beta: -k1 / Gq::int(2) - k2 / Gq::int(2) - Gq::ONE,
        gamma: q(-1, 2),
        gamma_prime: (c - Gq::int(2)) / Gq::int(24),
        e: Gq::int(-2) + s,
        b: Gq::int(2) * k1,
    }
}

pub const XSC_GENERATORS: [(&str, Parity); 6] = [
    ("L", Parity::Even),
    ("G", Parity::Odd),
    ("theta", Parity::Odd),
    ("U", Parity::Even),
    ("V", Parity::Even),
    ("W", Parity::Odd),
];

pub fn xsc(p: &XscParameters) -> ModeAlgebraSpec {
    let mut s = ModeAlgebraSpec::new("xsc");
    for (name, parity) in XSC_GENERATORS {
        s.add_generator(name, parity).unwrap();
    }
    let [l, g, th, u, v, w] = [0, 1, 2, 3, 4, 5];
    let (m, n) = (Poly::m(), Poly::n());
    let k = |x: Gq| Poly::constant(x);
    let h = |x: i128, y: i128| Gq::frac(x, y);
    let two = Gq::int(2);
    let mut put = |a: usize, b: usize, terms: Vec<(Target, Poly)>| {
        s.set_bracket(a, b, BracketValue::new());
        for (t, q) in terms {
            s.add_bracket_term(a, b, t, q);
        }
    };
    use Target::{Central as C, Gen};
    put(l, l, vec![(Gen(l), &n - &m), (C, m.pow(3).scale(-p.a) + m.scale(p.a_prime))]);
    let lg_theta = m.pow(3).scale(p.alpha) + (&m.pow(2) * &n).scale(p.beta)
        - (&m * &n + m.pow(2).scale(h(1, 2))).scale(p.gamma)
        - m.scale(two * p.gamma_prime);
    put(l, g, vec![(Gen(g), &n - &m.scale(h(1, 2))), (Gen(th), lg_theta)]);
    let gg_u = (m.pow(2) + n.pow(2)).scale(two * p.alpha - p.e) + (&m * &n).scale(two * p.beta - p.e)
        - (&m + &n).scale(p.gamma)
        - k(two * p.gamma_prime);
    put(
        g,
        g,
        vec![
            (Gen(l), Poly::int(2)),
            (C, m.pow(2).scale(p.b) + k(two * p.gamma_prime - p.a_prime)),
            (Gen(u), gg_u),
            (Gen(v), k(p.e)),
        ],
    );
    put(l, th, vec![(Gen(th), &n + &m.scale(h(3, 2)))]);
    put(l, u, vec![(Gen(u), &n + &m)]);
    put(l, v, vec![(Gen(v), &n - &m), (Gen(u), m.pow(3) + (&m.pow(2) * &n).scale(h(1, 2)))]);
    put(l, w, vec![(Gen(w), &n - &m.scale(h(1, 2)))]);
    put(g, th, vec![(C, Poly::int(-1)), (Gen(u), Poly::int(1))]);
    put(g, u, vec![(Gen(th), m.scale(two) + n.clone())]);
    let gv_theta = m.pow(3).scale(two) + (&m.pow(2) * &n).scale(Gq::int(3)) + &m * &n.pow(2);
    put(g, v, vec![(Gen(w), &n - &m.scale(two)), (Gen(th), gv_theta)]);
    put(g, w, vec![(Gen(v), Poly::int(1)), (Gen(u), -(m.pow(2).scale(two) + &m * &n))]);
    for (a, b) in [(th, th), (th, u), (th, v), (th, w), (u, u), (u, v), (u, w), (v, v), (v, w), (w, w)] {
        put(a, b, vec![]);
    }
    s
}

/// `X_m -> X_m + sum_T P_T(m) T_m` for selected generators; `T` may be
/// `CENTRAL`, read as `delta_m`. Shift targets must not be shifted themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Redefinition {
    pub shifts: BTreeMap<usize, BracketValue>,
}

/// The shifts that remove every parameter but `a`.
pub fn xsc_redefinition(spec: &ModeAlgebraSpec, p: &XscParameters) -> Result<Redefinition> {
    let [l, g, th, u, w] = ["L", "G", "theta", "U", "W"].map(|n| spec.require(n));
    let (l, g, th, u, w) = (l?, g?, th?, u?, w?);
    let m = Poly::m();
    let mut r = Redefinition::default();
    r.shifts.insert(
        l,
        BTreeMap::from([
            (Target::Central, Poly::constant(-p.a_prime / Gq::int(2))),
            (Target::Gen(u), m.pow(2).scale(p.beta / Gq::int(2))),
        ]),
    );
    let th_shift = m.pow(2).scale(p.beta - Gq::int(2) * p.alpha) + m.scale(p.gamma) + Poly::constant(p.gamma_prime);
    r.shifts.insert(
        g,
        BTreeMap::from([(Target::Gen(w), Poly::constant(-p.e / Gq::int(2))), (Target::Gen(th), th_shift)]),
    );
    Ok(r)
}

fn accumulate(acc: &mut BracketValue, t: Target, p: Poly) {
    let e = acc.entry(t).or_default();
    *e = &*e + &p;
    if e.is_zero() {
        acc.remove(&t);
    }
}

/// Bracket table of the shifted generators, re-expressed in the shifted basis.
pub fn apply_redefinition(spec: &ModeAlgebraSpec, r: &Redefinition) -> Result<ModeAlgebraSpec> {
    for (x, shift) in &r.shifts {
        for t in shift.keys() {
            if let Target::Gen(y) = t {
                if r.shifts.contains_key(y) {
                    return Err(Error::Invalid(format!(
                        "shift of {} refers to shifted generator {}",
                        spec.generators()[*x].name,
                        spec.generators()[*y].name
                    )));
                }
            }
        }
    }
    // expand(a) = [(generator, coefficient in its own index)], central parts dropped
    // because they bracket to zero.
    let expand = |a: usize| -> Vec<(usize, Poly)> {
        let mut out = vec![(a, Poly::int(1))];
        if let Some(sh) = r.shifts.get(&a) {
            out.extend(sh.iter().filter_map(|(t, p)| match t {
                Target::Gen(y) => Some((*y, p.clone())),
                Target::Central => None,
            }));
        }
        out
    };
    let (m, n) = (Poly::m(), Poly::n());
    let mn = &m + &n;
    let mut out = ModeAlgebraSpec::new(format!("{}'", spec.name));
    for gen in spec.generators() {
        out.add_generator(gen.name.clone(), gen.parity)?;
    }
    let count = spec.generators().len();
    for a in 0..count {
        for b in 0..count {
            let mut val = BracketValue::new();
            for (x, px) in expand(a) {
                for (y, py) in expand(b) {
                    let w = &px * &py.subst(&[n.clone(), Poly::zero(), Poly::zero()]);
                    for (t, q) in spec.bracket(x, y) {
                        accumulate(&mut val, t, &w * &q);
                    }
                }
            }
            // Old shifted generators in terms of new ones: X = X' - shift(X).
            let shifted: Vec<(usize, Poly)> = val
                .iter()
                .filter_map(|(t, q)| match t {
                    Target::Gen(x) if r.shifts.contains_key(x) => Some((*x, q.clone())),
                    _ => None,
                })
                .collect();
            for (x, q) in shifted {
                for (t, s) in &r.shifts[&x] {
                    let at_sum = s.subst(&[mn.clone(), Poly::zero(), Poly::zero()]);
                    accumulate(&mut val, *t, -(&q * &at_sum));
                }
            }
            if let Some(cq) = val.remove(&Target::Central) {
                let reduced = cq.subst(&[Poly::m(), -Poly::m(), Poly::zero()]);
                accumulate(&mut val, Target::Central, reduced);
            }
            out.set_bracket(a, b, val);
        }
    }
    Ok(out)
}

/// Sets `theta = 0` and `U = delta` (central); both generators are removed.
pub fn project_theta_u(spec: &ModeAlgebraSpec) -> Result<ModeAlgebraSpec> {
    let th = spec.require("theta")?;
    let u = spec.require("U")?;
    let mut out = ModeAlgebraSpec::new(format!("{}/(theta,U)", spec.name));
    let mut map = BTreeMap::new();
    for (k, gen) in spec.generators().iter().enumerate() {
        if k != th && k != u {
            map.insert(k, out.add_generator(gen.name.clone(), gen.parity)?);
        }
    }
    for (&(a, b), val) in spec.stored_pairs() {
        let (Some(&na), Some(&nb)) = (map.get(&a), map.get(&b)) else { continue };
        let mut v = BracketValue::new();
        for (t, q) in val {
            match t {
                Target::Gen(x) if *x == th => {}
                Target::Gen(x) if *x == u => {
                    accumulate(&mut v, Target::Central, q.subst(&[Poly::m(), -Poly::m(), Poly::zero()]))
                }
                Target::Gen(x) => accumulate(&mut v, Target::Gen(map[x]), q.clone()),
                Target::Central => accumulate(&mut v, Target::Central, q.clone()),
            }
        }
        out.set_bracket(na, nb, v);
    }
    Ok(out)
}

/// Reads `(a, a')` off `[L, L]` and checks that the `L, G` brackets equal
/// `scalg(a, a')` exactly. Returns the parameters and the first mismatch.
pub fn extract_scalg(spec: &ModeAlgebraSpec) -> Result<(Gq, Gq, Vec<String>)> {
    let l = spec.require("L")?;
    let g = spec.require("G")?;
    let ll = spec.bracket(l, l);
    let central = ll.get(&Target::Central).cloned().unwrap_or_default();
    let coeff = |e: [u32; 3]| central.terms().find(|(k, _)| **k == e).map(|(_, c)| *c).unwrap_or(Gq::ZERO);
    let a = -coeff([3, 0, 0]);
    let a_prime = coeff([1, 0, 0]);
    let reference = scalg(a, a_prime);
    let rename = |t: Target| match t {
        Target::Gen(x) if x == l => Ok(Target::Gen(0)),
        Target::Gen(x) if x == g => Ok(Target::Gen(1)),
        Target::Central => Ok(Target::Central),
        Target::Gen(x) => Err(spec.generators()[x].name.clone()),
    };
    let mut mismatches = Vec::new();
    for (x, y, rx, ry) in [(l, l, 0, 0), (l, g, 0, 1), (g, g, 1, 1)] {
        let mut got = BracketValue::new();
        for (t, q) in spec.bracket(x, y) {
            match rename(t) {
                Ok(t) => accumulate(&mut got, t, q),
                Err(name) => mismatches.push(format!(
                    "[{}, {}] contains {name}: {q}",
                    spec.generators()[x].name,
                    spec.generators()[y].name
                )),
            }
        }
        if got != reference.bracket(rx, ry) {
            mismatches.push(format!(
                "[{}, {}] differs from scalg: {:?}",
                spec.generators()[x].name,
                spec.generators()[y].name,
                got
            ));
        }
    }
    Ok((a, a_prime, mismatches))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode_algebra::spec::{verify_graded_skewness, verify_super_jacobi};

    fn q(n: i128, d: i128) -> Gq {
        Gq::frac(n, d)
    }

    #[test]
    fn parameter_table_at_origin() {
        let p = xsc_parameters(Gq::ZERO, Gq::ZERO, Gq::ZERO);
        assert_eq!(
            p.named().map(|x| x.1),
            [q(-11, 12), q(-1, 6), q(-17, 12), q(-1, 1), q(-1, 2), q(-1, 12), q(-13, 6), Gq::ZERO]
        );
        assert!(p.constraint_defect().is_zero());
        assert!(xsc_parameters(Gq::int(2), Gq::ZERO, Gq::ZERO).a_prime.is_zero());
    }

    #[test]
    fn xsc_jacobi_tracks_constraint() {
        let p = xsc_parameters(q(3, 7), q(-2, 5), q(1, 3));
        let s = xsc(&p);
        assert!(verify_graded_skewness(&s).holds());
        let j = verify_super_jacobi(&s);
        assert!(j.holds(), "{:?}", j.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>());
        let mut bad = p;
        bad.alpha += Gq::ONE;
        assert!(!verify_super_jacobi(&xsc(&bad)).holds());
    }

    #[test]
    fn redefinition_reaches_scalg() {
        for (c, k1, k2) in [(Gq::ZERO, Gq::ZERO, Gq::ZERO), (Gq::int(2), Gq::ZERO, Gq::ZERO), (q(5, 3), q(-1, 2), q(7, 4))] {
            let p = xsc_parameters(c, k1, k2);
            let s = xsc(&p);
            let r = apply_redefinition(&s, &xsc_redefinition(&s, &p).unwrap()).unwrap();
            let (a, _, bad) = extract_scalg(&r).unwrap();
            assert!(bad.is_empty(), "{bad:?}");
            assert_eq!(Gq::int(12) * a, Gq::int(-11) + Gq::int(9) * k1 + Gq::int(3) * k2 + c);
        }
    }
}
