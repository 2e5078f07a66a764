//! Trajectory-level expressions: `xi~^i = xi^i(q) - xi^0(q) v^i` and the two
//! identities they satisfy under the total time derivative.

use super::dimension::SuperDimension;
use super::field::{divergence, SuperVectorField};
use super::function::SuperFunction;
use crate::error::{Error, Result};
use crate::scalar::Gq;

/// `xi~^i` for every spatial index `i` (entry `0` is identically zero).
pub fn tilde_components(xi: &SuperVectorField) -> Vec<SuperFunction> {
    let d = xi.dim();
    let mut out = vec![SuperFunction::zero(d)];
    for i in d.spatial() {
        out.push(xi.component(i) - &(xi.component(0) * &SuperFunction::velocity(d, i)));
    }
    out
}

/// Residuals of both identities; each must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma34Report {
    pub divergence_residual: SuperFunction,
    pub transport_residual: SuperFunction,
}

impl Lemma34Report {
    pub fn holds(&self) -> bool {
        self.divergence_residual.is_zero() && self.transport_residual.is_zero()
    }

    /// Monomials left over, printed in the DSL.
    pub fn residual_terms(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in [&self.divergence_residual, &self.transport_residual] {
            for (m, c) in f.terms() {
                out.push(SuperFunction::from_term(f.dim(), m.clone(), c.clone()).to_string());
            }
        }
        out
    }
}

fn sign(odd: u32) -> Gq {
    Gq::sign(odd % 2 == 1)
}

fn no_jets(xi: &SuperVectorField) -> Result<()> {
    if xi.components().iter().any(|c| c.jet_order() > 0) {
        return Err(Error::JetOrder("field components must not depend on jets".into()));
    }
    Ok(())
}

/// `(-)^{xi i + i} d_i xi~^i - div xi + d/dt xi^0`.
fn divergence_identity(xi: &SuperVectorField) -> Result<SuperFunction> {
    let d = xi.dim();
    let p = xi.checked_parity()?.bit() as u32;
    let tilde = tilde_components(xi);
    let mut lhs = SuperFunction::zero(d);
    for i in d.spatial() {
        let di = d.deg(i).bit() as u32;
        lhs += &tilde[i].derive(i).scale(sign(p * di + di));
    }
    Ok(lhs - divergence(xi) + xi.component(0).total_dt()?)
}

fn transport_identity(xi: &SuperVectorField, eta: &SuperVectorField) -> Result<SuperFunction> {
    let d = xi.dim();
    let pe = (xi.checked_parity()?.bit() + eta.checked_parity()?.bit()) as u32;
    let deg = |i: usize| d.deg(i).bit() as u32;
    let dots = |f: &SuperVectorField| -> Result<Vec<SuperFunction>> {
        f.components().iter().map(SuperFunction::total_dt).collect()
    };
    let xi_dot = dots(xi)?;
    let eta_dot = dots(eta)?;
    let xt = tilde_components(xi);
    let et = tilde_components(eta);

    let mut lhs = SuperFunction::zero(d);
    for i in d.spatial() {
        let xt_dot = xt[i].total_dt()?;
        for j in d.spatial() {
            let s = sign((pe + deg(j)) * deg(j));
            lhs += &(&xt_dot.derive(j) * &et[j].derive(i)).scale(s);
        }
    }

    let mut rhs = SuperFunction::zero(d);
    let mut boundary = &xi_dot[0] * &eta_dot[0];
    for nu in d.indices() {
        let s = sign((pe + deg(nu)) * deg(nu));
        for mu in d.indices() {
            rhs += &(&xi_dot[mu].derive(nu) * &eta.component(nu).derive(mu)).scale(s);
        }
        rhs += &(&xi.component(0).derive(nu) * &eta_dot[nu].v_grad()).scale(s);
        boundary -= &(&xi.component(0).derive(nu) * &eta_dot[nu]).scale(s);
    }
    for mu in d.indices() {
        rhs -= &(&xi_dot[mu].v_grad() * &eta.component(0).derive(mu));
    }
    rhs -= &(&xi.component(0).total_dt()?.total_dt()? * &eta_dot[0]);
    rhs -= &(&xi_dot[0] * &eta_dot[0].v_grad());
    rhs += &(&xi_dot[0].v_grad() * &eta_dot[0]);
    rhs += &boundary.total_dt()?;
    Ok(lhs - rhs)
}

/// Evaluates both identities, splitting `xi` and `eta` into parity parts.
pub fn verify_lemma34(xi: &SuperVectorField, eta: &SuperVectorField) -> Result<Lemma34Report> {
    let d: SuperDimension = xi.dim();
    if eta.dim() != d {
        return Err(Error::DimensionMismatch(d.to_string(), eta.dim().to_string()));
    }
    no_jets(xi)?;
    no_jets(eta)?;
    let parts = |f: &SuperVectorField| {
        let (e, o) = f.split_parity();
        [e, o]
    };
    let mut div = SuperFunction::zero(d);
    let mut transport = SuperFunction::zero(d);
    for a in parts(xi) {
        if a.is_zero() {
            continue;
        }
        div += &divergence_identity(&a)?;
        for b in parts(eta) {
            if !b.is_zero() {
                transport += &transport_identity(&a, &b)?;
            }
        }
    }
    Ok(Lemma34Report { divergence_residual: div, transport_residual: transport })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_symbolic::dsl::parse_field;

    #[test]
    fn time_dependent_boost() {
        let d = SuperDimension::new(1, 0);
        let xi = parse_field("x1*d0", d).unwrap();
        let tilde = tilde_components(&xi);
        let lhs = tilde[1].derive(1);
        assert_eq!(lhs, -SuperFunction::velocity(d, 1));
        let rhs = divergence(&xi) - xi.component(0).total_dt().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_translation() {
        let d = SuperDimension::new(1, 1);
        let xi = parse_field("d1", d).unwrap();
        let r = verify_lemma34(&xi, &xi).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn fermionic_pairs() {
        let d = SuperDimension::new(1, 2);
        let xi = parse_field("th1*x1*d0 + exp(i*t)*dth2 + x1*th2*d1", d).unwrap();
        let eta = parse_field("th1*th2*d0 + th1*dth1 - exp(i*-2*t)*x1^2*d1", d).unwrap();
        let r = verify_lemma34(&xi, &eta).unwrap();
        assert!(r.holds(), "{:?}", r.residual_terms());
    }
}
