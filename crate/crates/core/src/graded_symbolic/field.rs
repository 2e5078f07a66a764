use super::dimension::{Parity, SuperDimension};
use super::function::SuperFunction;
use crate::error::{Error, Result};
use crate::scalar::Gq;
use std::ops::{Add, Neg, Sub};

/// `xi = xi^mu d_mu` with one component per index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperVectorField {
    dim: SuperDimension,
    components: Vec<SuperFunction>,
}

impl SuperVectorField {
    pub fn zero(dim: SuperDimension) -> SuperVectorField {
        SuperVectorField { dim, components: vec![SuperFunction::zero(dim); dim.len()] }
    }

    /// Field from components; they must share the field dimension.
    pub fn new(dim: SuperDimension, components: Vec<SuperFunction>) -> Result<SuperVectorField> {
        if components.len() != dim.len() {
            return Err(Error::RankMismatch(format!(
                "{} components for dimension {dim}",
                components.len()
            )));
        }
        if let Some(c) = components.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch(dim.to_string(), c.dim().to_string()));
        }
        Ok(SuperVectorField { dim, components })
    }

    /// `f d_mu`.
    pub fn single(mu: usize, f: SuperFunction) -> SuperVectorField {
        let mut out = SuperVectorField::zero(f.dim());
        assert!(f.dim().is_valid(mu), "index {mu} out of range");
        out.components[mu] = f;
        out
    }

    /// Basis field `d_mu`.
    pub fn basis(dim: SuperDimension, mu: usize) -> SuperVectorField {
        SuperVectorField::single(mu, SuperFunction::one(dim))
    }

    pub fn dim(&self) -> SuperDimension {
        self.dim
    }

    pub fn component(&self, mu: usize) -> &SuperFunction {
        &self.components[mu]
    }

    pub fn components(&self) -> &[SuperFunction] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SuperFunction::is_zero)
    }

    /// `deg xi`, from `parity(xi^mu) = deg xi + deg mu`. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (mu, c) in self.components.iter().enumerate() {
            let (even, odd) = c.split_parity();
            for (part, p) in [(even, Parity::Even), (odd, Parity::Odd)] {
                if part.is_zero() {
                    continue;
                }
                let deg = p + self.dim.deg(mu);
                match found {
                    None => found = Some(deg),
                    Some(q) if q != deg => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn checked_parity(&self) -> Result<Parity> {
        self.parity().ok_or_else(|| Error::Parity("vector field of mixed parity".into()))
    }

    /// The even and odd parts of the field.
    pub fn split_parity(&self) -> (SuperVectorField, SuperVectorField) {
        let mut even = SuperVectorField::zero(self.dim);
        let mut odd = SuperVectorField::zero(self.dim);
        for (mu, c) in self.components.iter().enumerate() {
            let (ce, co) = c.split_parity();
            let (to_even, to_odd) = if self.dim.deg(mu).is_odd() { (co, ce) } else { (ce, co) };
            even.components[mu] = to_even;
            odd.components[mu] = to_odd;
        }
        (even, odd)
    }

    /// `xi(f) = xi^mu d_mu f`.
    pub fn apply(&self, f: &SuperFunction) -> SuperFunction {
        let mut out = SuperFunction::zero(self.dim);
        for (mu, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out += &(c * &f.derive(mu));
            }
        }
        out
    }

    /// Left multiplication of every component by `f`.
    pub fn mul_left(&self, f: &SuperFunction) -> SuperVectorField {
        SuperVectorField {
            dim: self.dim,
            components: self.components.iter().map(|c| f * c).collect(),
        }
    }

    pub fn scale(&self, c: Gq) -> SuperVectorField {
        SuperVectorField {
            dim: self.dim,
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Component-wise map.
    pub fn map(&self, f: impl Fn(&SuperFunction) -> SuperFunction) -> SuperVectorField {
        SuperVectorField { dim: self.dim, components: self.components.iter().map(f).collect() }
    }

    /// Largest Fourier bandwidth among components.
    pub fn bandwidth(&self) -> u64 {
        self.components.iter().map(SuperFunction::bandwidth).max().unwrap_or(0)
    }

    /// Largest spatial degree among components.
    pub fn spatial_degree(&self) -> u32 {
        self.components.iter().map(SuperFunction::spatial_degree).max().unwrap_or(0)
    }
}

fn bracket_homogeneous(xi: &SuperVectorField, eta: &SuperVectorField) -> SuperVectorField {
    let sign = Gq::sign(xi.parity().unwrap().is_odd() && eta.parity().unwrap().is_odd());
    let comps = (0..xi.dim.len())
        .map(|nu| xi.apply(&eta.components[nu]) - eta.apply(&xi.components[nu]).scale(sign))
        .collect();
    SuperVectorField { dim: xi.dim, components: comps }
}

/// Graded Lie bracket, extended bilinearly over the parity parts.
pub fn lie_bracket(xi: &SuperVectorField, eta: &SuperVectorField) -> Result<SuperVectorField> {
    if xi.dim != eta.dim {
        return Err(Error::DimensionMismatch(xi.dim.to_string(), eta.dim.to_string()));
    }
    let (xe, xo) = xi.split_parity();
    let (ee, eo) = eta.split_parity();
    let mut out = SuperVectorField::zero(xi.dim);
    for a in [&xe, &xo] {
        for b in [&ee, &eo] {
            if !a.is_zero() && !b.is_zero() {
                out = &out + &bracket_homogeneous(a, b);
            }
        }
    }
    Ok(out)
}

/// `div xi = (-)^(xi mu + mu) d_mu xi^mu`, per parity part.
pub fn divergence(xi: &SuperVectorField) -> SuperFunction {
    let mut out = SuperFunction::zero(xi.dim);
    let (even, odd) = xi.split_parity();
    for (part, p) in [(even, Parity::Even), (odd, Parity::Odd)] {
        for mu in xi.dim.indices() {
            let c = &part.components[mu];
            if c.is_zero() {
                continue;
            }
            let deg = xi.dim.deg(mu);
            let neg = (p.is_odd() && deg.is_odd()) ^ deg.is_odd();
            out += &c.derive(mu).scale(Gq::sign(neg));
        }
    }
    out
}

impl Add for &SuperVectorField {
    type Output = SuperVectorField;
    fn add(self, rhs: &SuperVectorField) -> SuperVectorField {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        SuperVectorField {
            dim: self.dim,
            components: self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SuperVectorField {
    type Output = SuperVectorField;
    fn sub(self, rhs: &SuperVectorField) -> SuperVectorField {
        self + &(-rhs)
    }
}

impl Neg for &SuperVectorField {
    type Output = SuperVectorField;
    fn neg(self) -> SuperVectorField {
        self.scale(-Gq::ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boost_bracket() {
        let d = SuperDimension::new(1, 0);
        let x0 = SuperFunction::coord(d, 0);
        let x1 = SuperFunction::coord(d, 1);
        let xi = SuperVectorField::single(0, x1.clone());
        let eta = SuperVectorField::single(1, x0.clone());
        let expect = &SuperVectorField::single(1, x1) - &SuperVectorField::single(0, x0);
        assert_eq!(lie_bracket(&xi, &eta).unwrap(), expect);
    }

    #[test]
    fn fermionic_bracket() {
        let d = SuperDimension::new(0, 1);
        let th = SuperFunction::coord(d, 1);
        let xi = SuperVectorField::single(1, th);
        let eta = SuperVectorField::basis(d, 1);
        assert_eq!(xi.parity(), Some(Parity::Even));
        assert_eq!(eta.parity(), Some(Parity::Odd));
        assert_eq!(lie_bracket(&xi, &eta).unwrap(), -&eta);
    }

    #[test]
    fn divergences() {
        let d = SuperDimension::new(0, 1);
        let t = SuperFunction::coord(d, 0);
        assert_eq!(divergence(&SuperVectorField::single(0, t)), SuperFunction::one(d));
        let th = SuperFunction::coord(d, 1);
        assert_eq!(divergence(&SuperVectorField::single(1, th)), -SuperFunction::one(d));
    }

    #[test]
    fn mixed_parity_detected() {
        let d = SuperDimension::new(0, 1);
        let f = SuperFunction::one(d) + SuperFunction::coord(d, 1);
        assert_eq!(SuperVectorField::single(0, f).parity(), None);
    }
}
