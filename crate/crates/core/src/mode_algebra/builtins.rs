//! Named mode algebras.

use super::poly::Poly;
use super::spec::{ModeAlgebraSpec, Target};
use super::xsc::{xsc, XscParameters};
use crate::error::{Error, Result};
use crate::gauge::FiniteSuperalgebra;
use crate::graded_symbolic::Parity;
use crate::scalar::Gq;
use std::collections::BTreeMap;

fn c(x: Gq) -> Poly {
    Poly::constant(x)
}

/// `[L_m, L_n] = (n - m) L_{m+n} - (c/12)(m^3 - m) delta_{m+n}`.
pub fn virasoro(central: Gq) -> ModeAlgebraSpec {
    let mut s = ModeAlgebraSpec::new("virasoro");
    let l = s.add_generator("L", Parity::Even).unwrap();
    let m = Poly::m();
    s.add_bracket_term(l, l, Target::Gen(l), Poly::n() - m.clone());
    s.add_bracket_term(l, l, Target::Central, (m.pow(3) - m).scale(-central / Gq::int(12)));
    s
}

/// Mode form of the affine superalgebra of `g` at level `k`:
/// `[J^a_m, J^b_n} = i f^{ab}_c J^c_{m+n} - k m delta^{ab} delta_{m+n}`.
pub fn km(g: &FiniteSuperalgebra, k: Gq) -> ModeAlgebraSpec {
    let mut s = ModeAlgebraSpec::new(format!("km({})", g.name));
    for (name, p) in g.names.iter().zip(&g.parities) {
        s.add_generator(format!("J{name}"), *p).unwrap();
    }
    for (&(a, b, cc), f) in &g.structure {
        s.add_bracket_term(a, b, Target::Gen(cc), c(Gq::I * *f));
    }
    for (&(a, b), d) in &g.metric {
        s.add_bracket_term(a, b, Target::Central, Poly::m().scale(-k * *d));
    }
    s
}

/// Generator name of `T^mu_nu`.
pub fn t_name(mu: usize, nu: usize) -> String {
    format!("T{mu}_{nu}")
}

/// How `[L_m, T_n]` is set up in [`kmgl_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtCoupling {
    /// Weight-one currents, `[L_m, T_n] = n T_{m+n}`.
    WeightOne,
    /// `[L(s), T(t)] = T(t) d/ds delta(s-t)` read literally, i.e. `-m T_{m+n}`.
    Literal,
    /// No `L` generator.
    Absent,
}

/// Affine `gl(N+1|M)` with levels `k1`, `k2`, together with a Virasoro `L`
/// of central charge `c` acting on the currents.
pub fn kmgl_with(n: usize, m: usize, k1: Gq, k2: Gq, central: Gq, coupling: LtCoupling) -> ModeAlgebraSpec {
    let size = n + m + 1;
    let odd = |mu: usize| mu > n;
    let sg = |b: bool| Gq::sign(b);
    let mut s = ModeAlgebraSpec::new(format!("kmgl({n},{m})"));
    let mut idx = Vec::with_capacity(size);
    for mu in 0..size {
        let row: Vec<usize> = (0..size)
            .map(|nu| s.add_generator(t_name(mu, nu), Parity::from_bool(odd(mu) ^ odd(nu))).unwrap())
            .collect();
        idx.push(row);
    }
    for mu in 0..size {
        for nu in 0..size {
            for sig in 0..size {
                for tau in 0..size {
                    let (a, b) = (idx[mu][nu], idx[sig][tau]);
                    if sig == nu {
                        s.add_bracket_term(a, b, Target::Gen(idx[mu][tau]), Poly::int(1));
                    }
                    if mu == tau {
                        let e = (odd(mu) ^ odd(nu)) && (odd(sig) ^ odd(tau));
                        s.add_bracket_term(a, b, Target::Gen(idx[sig][nu]), c(-sg(e)));
                    }
                    let mut central_coeff = Gq::ZERO;
                    if mu == tau && sig == nu {
                        central_coeff += k1 * sg(odd(mu));
                    }
                    if mu == nu && sig == tau {
                        central_coeff += k2 * sg(odd(mu) ^ odd(sig));
                    }
                    s.add_bracket_term(a, b, Target::Central, Poly::m().scale(central_coeff));
                }
            }
        }
    }
    if coupling != LtCoupling::Absent {
        let l = s.add_generator("L", Parity::Even).unwrap();
        let vir = virasoro(central);
        for (t, p) in vir.bracket(0, 0) {
            let t = if let Target::Gen(_) = t { Target::Gen(l) } else { t };
            s.add_bracket_term(l, l, t, p);
        }
        let lt = match coupling {
            LtCoupling::WeightOne => Poly::n(),
            _ => -Poly::m(),
        };
        for row in &idx {
            for &a in row {
                s.add_bracket_term(l, a, Target::Gen(a), lt.clone());
            }
        }
    }
    s
}

pub fn kmgl(n: usize, m: usize, k1: Gq, k2: Gq) -> ModeAlgebraSpec {
    kmgl_with(n, m, k1, k2, Gq::ZERO, LtCoupling::WeightOne)
}

/// Central coefficients of `[I_m, T^sigma_tau_n]` for the identity element
/// `I = sum_mu T^mu_mu` of `kmgl(N, M, k1, k2)`; all vanish iff `I`
/// decouples, leaving the supertraceless currents.
pub fn kmgl_identity_residuals(n: usize, m: usize, k1: Gq, k2: Gq) -> Vec<(String, Poly)> {
    let s = kmgl_with(n, m, k1, k2, Gq::ZERO, LtCoupling::Absent);
    let size = n + m + 1;
    let mut out = Vec::new();
    for b in 0..s.generators().len() {
        let mut acc: BTreeMap<Target, Poly> = BTreeMap::new();
        for mu in 0..size {
            let a = s.index(&t_name(mu, mu)).unwrap();
            for (t, p) in s.bracket(a, b) {
                let e = acc.entry(t).or_default();
                *e = &*e + &p;
            }
        }
        for (t, p) in acc {
            if !p.is_zero() {
                out.push((format!("[I, {}] -> {}", s.generators()[b].name, s.target_name(t)), p));
            }
        }
    }
    out
}

/// `[L, L] = (n-m) L + (-a m^3 + a' m) delta`, `[L, G] = (n - m/2) G`,
/// `[G, G]_+ = 2 L + (4 a m^2 - a') delta`.
pub fn scalg(a: Gq, a_prime: Gq) -> ModeAlgebraSpec {
    let mut s = ModeAlgebraSpec::new("scalg");
    let l = s.add_generator("L", Parity::Even).unwrap();
    let g = s.add_generator("G", Parity::Odd).unwrap();
    let (m, n) = (Poly::m(), Poly::n());
    s.add_bracket_term(l, l, Target::Gen(l), &n - &m);
    s.add_bracket_term(l, l, Target::Central, m.pow(3).scale(-a) + m.scale(a_prime));
    s.add_bracket_term(l, g, Target::Gen(g), &n - &m.scale(Gq::frac(1, 2)));
    s.add_bracket_term(g, g, Target::Gen(l), Poly::int(2));
    s.add_bracket_term(g, g, Target::Central, m.pow(2).scale(Gq::int(4) * a) - c(a_prime));
    s
}

/// Contact bracket table on `(1|1)`: generators `l` (even) and `g` (odd).
pub fn k11_contact() -> ModeAlgebraSpec {
    let mut s = ModeAlgebraSpec::new("k11_contact");
    let l = s.add_generator("l", Parity::Even).unwrap();
    let g = s.add_generator("g", Parity::Odd).unwrap();
    let (m, n) = (Poly::m(), Poly::n());
    s.add_bracket_term(l, l, Target::Gen(l), &n - &m);
    s.add_bracket_term(l, g, Target::Gen(g), &n - &m.scale(Gq::frac(1, 2)));
    s.add_bracket_term(g, g, Target::Gen(l), Poly::int(2));
    s
}

/// Contact bracket table on `(1|2)`: `l`, `t` even, `g`, `gb` odd. The
/// `{t_m, g_n}` entries carry mode `m + n`, as mode conservation requires.
pub fn k12_contact() -> ModeAlgebraSpec {
    let mut s = ModeAlgebraSpec::new("k12_contact");
    let l = s.add_generator("l", Parity::Even).unwrap();
    let t = s.add_generator("t", Parity::Even).unwrap();
    let g = s.add_generator("g", Parity::Odd).unwrap();
    let gb = s.add_generator("gb", Parity::Odd).unwrap();
    let (m, n) = (Poly::m(), Poly::n());
    let half = &n - &m.scale(Gq::frac(1, 2));
    s.add_bracket_term(l, l, Target::Gen(l), &n - &m);
    s.add_bracket_term(l, t, Target::Gen(t), n.clone());
    s.add_bracket_term(l, g, Target::Gen(g), half.clone());
    s.add_bracket_term(l, gb, Target::Gen(gb), half);
    s.add_bracket_term(t, g, Target::Gen(g), Poly::int(1));
    s.add_bracket_term(t, gb, Target::Gen(gb), Poly::int(-1));
    s.add_bracket_term(g, gb, Target::Gen(l), Poly::int(2));
    s.add_bracket_term(g, gb, Target::Gen(t), &n - &m);
    for (a, b) in [(g, g), (gb, gb), (t, t)] {
        s.set_bracket(a, b, BTreeMap::new());
    }
    s
}

/// Named parameters for [`builtin_spec`], as exact numbers.
pub type Params = BTreeMap<String, Gq>;

fn param(p: &Params, key: &str) -> Gq {
    p.get(key).copied().unwrap_or(Gq::ZERO)
}

fn int_param(p: &Params, key: &str) -> Result<usize> {
    let v = param(p, key);
    if !v.is_real() || !v.re.is_integer() || v.re.numer() < 0 {
        return Err(Error::Invalid(format!("parameter {key} must be a non-negative integer")));
    }
    Ok(v.re.numer() as usize)
}

/// Finite superalgebras available to `km`.
pub fn finite_algebra(name: &str) -> Result<FiniteSuperalgebra> {
    match name {
        "u1" => Ok(FiniteSuperalgebra::u1()),
        "gl11" | "gl(1|1)" => Ok(FiniteSuperalgebra::gl(1, 1)),
        "gl21" | "gl(2|1)" => Ok(FiniteSuperalgebra::gl(2, 1)),
        _ => Err(Error::UnknownSpec(format!("finite algebra `{name}`"))),
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["virasoro", "km", "kmgl", "xsc", "scalg", "k11_contact", "k12_contact"];

/// Builtin by name. `km` takes its finite algebra through `algebra`;
/// missing numeric parameters default to zero (`N` to 1 for `kmgl`).
pub fn builtin_spec(name: &str, params: &Params, algebra: Option<&str>) -> Result<ModeAlgebraSpec> {
    Ok(match name {
        "virasoro" => virasoro(param(params, "c")),
        "km" => km(&finite_algebra(algebra.unwrap_or("gl11"))?, param(params, "k")),
        "kmgl" => {
            let n = if params.contains_key("N") { int_param(params, "N")? } else { 1 };
            kmgl(n, int_param(params, "M")?, param(params, "k1"), param(params, "k2"))
        }
        "xsc" => xsc(&XscParameters {
            a: param(params, "a"),
            a_prime: param(params, "a'"),
            alpha: param(params, "alpha"),
            beta: param(params, "beta"),
            gamma: param(params, "gamma"),
            gamma_prime: param(params, "gamma'"),
            e: param(params, "e"),
            b: param(params, "b"),
        }),
        "scalg" => scalg(param(params, "a"), param(params, "a'")),
        "k11_contact" => k11_contact(),
        "k12_contact" => k12_contact(),
        _ => return Err(Error::UnknownSpec(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode_algebra::spec::{verify_graded_skewness, verify_super_jacobi};

    fn passes(s: &ModeAlgebraSpec) {
        let sk = verify_graded_skewness(s);
        assert!(sk.holds(), "{}: {:?}", s.name, sk.failures);
        let j = verify_super_jacobi(s);
        assert!(j.holds(), "{}: {}", s.name, j.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "));
    }

    #[test]
    fn virasoro_and_contact_tables() {
        passes(&virasoro(Gq::frac(7, 3)));
        passes(&k11_contact());
        passes(&k12_contact());
    }

    #[test]
    fn affine_algebras() {
        passes(&km(&FiniteSuperalgebra::u1(), Gq::int(3)));
        passes(&km(&FiniteSuperalgebra::gl(1, 1), Gq::frac(5, 2)));
        passes(&kmgl(1, 1, Gq::int(2), Gq::frac(-1, 3)));
    }

    #[test]
    fn literal_lt_coupling_breaks_jacobi() {
        let s = kmgl_with(1, 0, Gq::ZERO, Gq::ZERO, Gq::ZERO, LtCoupling::Literal);
        assert!(!verify_super_jacobi(&s).holds());
    }

    #[test]
    fn identity_decoupling_level() {
        // k1 = -(N+1-M) k2 decouples the identity; k1 = (N+1-M) k2 does not.
        let k2 = Gq::int(1);
        assert!(kmgl_identity_residuals(2, 1, Gq::int(-2), k2).is_empty());
        assert!(!kmgl_identity_residuals(2, 1, Gq::int(2), k2).is_empty());
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin_spec("nope", &Params::new(), None), Err(Error::UnknownSpec(_))));
    }
}
