//! Functions on jet superspace.
//!
//! A term is `coeff * exp(i m t) * (even monomial) * (odd monomial)`. Even
//! generators are `x^0..x^N`, the bosonic velocities and the bosonic
//! accelerations, stored as an exponent vector. Odd generators are the
//! fermionic coordinates, velocities and accelerations, stored as a bitmask
//! whose ascending bit order is the canonical product order.

use super::dimension::{Parity, Slot, SuperDimension, Var};
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Gq};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub fourier: i64,
    pub even: Vec<u32>,
    pub odd: u64,
}

impl Monomial {
    pub fn one(dim: &SuperDimension) -> Monomial {
        Monomial { fourier: 0, even: vec![0; dim.n_even_slots()], odd: 0 }
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bool(self.odd.count_ones() % 2 == 1)
    }

    /// Product with Koszul sign; `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let mut flips = 0u32;
        let mut b = other.odd;
        while b != 0 {
            let j = b.trailing_zeros();
            flips += (self.odd >> j).count_ones();
            b &= b - 1;
        }
        let even = self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect();
        Some((
            flips % 2 == 1,
            Monomial { fourier: self.fourier + other.fourier, even, odd: self.odd | other.odd },
        ))
    }

    /// Exponent of the generator `v`.
    pub fn power(&self, dim: &SuperDimension, v: Var) -> u32 {
        match dim.slot(v) {
            Slot::Even(s) => self.even[s],
            Slot::Odd(b) => ((self.odd >> b) & 1) as u32,
        }
    }

    /// Generators in canonical product order, with multiplicity.
    pub fn factors(&self, dim: &SuperDimension) -> Vec<Var> {
        let mut out = Vec::new();
        for (s, &e) in self.even.iter().enumerate() {
            for _ in 0..e {
                out.push(dim.var_of_even(s));
            }
        }
        let mut b = self.odd;
        while b != 0 {
            out.push(dim.var_of_odd(b.trailing_zeros()));
            b &= b - 1;
        }
        out
    }

    fn jet_order(&self, dim: &SuperDimension) -> u8 {
        let n = dim.n_bosonic_spatial;
        let m = dim.m_fermionic as u32;
        let acc_even = self.even[2 * n + 1..].iter().any(|&e| e > 0);
        let acc_odd = m > 0 && (self.odd >> (2 * m)) != 0;
        if acc_even || acc_odd {
            return 2;
        }
        let vel_even = self.even[n + 1..2 * n + 1].iter().any(|&e| e > 0);
        let vel_odd = m > 0 && (self.odd >> m) != 0;
        u8::from(vel_even || vel_odd)
    }

    /// Number of coordinate factors `x^i`, `theta^a` (time excluded).
    pub fn spatial_degree(&self, dim: &SuperDimension) -> u32 {
        let n = dim.n_bosonic_spatial;
        let m = dim.m_fermionic as u32;
        let even: u32 = self.even[1..=n].iter().sum();
        let mask = if m == 0 { 0 } else { (1u64 << m) - 1 };
        even + (self.odd & mask).count_ones()
    }
}

/// Finite sum of terms on `(N+1|M)` jet superspace with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperFunction {
    dim: SuperDimension,
    terms: BTreeMap<Monomial, Coeff>,
}

impl SuperFunction {
    pub fn zero(dim: SuperDimension) -> SuperFunction {
        SuperFunction { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: SuperDimension, c: impl Into<Coeff>) -> SuperFunction {
        SuperFunction::from_term(dim, Monomial::one(&dim), c.into())
    }

    pub fn one(dim: SuperDimension) -> SuperFunction {
        SuperFunction::constant(dim, Gq::ONE)
    }

    pub fn from_term(dim: SuperDimension, m: Monomial, c: Coeff) -> SuperFunction {
        let mut f = SuperFunction::zero(dim);
        f.add_term(m, &c);
        f
    }

    /// A single generator: coordinate, velocity or acceleration.
    pub fn var(dim: SuperDimension, v: Var) -> SuperFunction {
        let mut m = Monomial::one(&dim);
        match dim.slot(v) {
            Slot::Even(s) => m.even[s] = 1,
            Slot::Odd(b) => m.odd = 1 << b,
        }
        SuperFunction::from_term(dim, m, Coeff::one())
    }

    /// Coordinate `x^mu`.
    pub fn coord(dim: SuperDimension, mu: usize) -> SuperFunction {
        SuperFunction::var(dim, Var::Coord(mu))
    }

    /// `v^mu`, with `v^0 = 1`.
    pub fn velocity(dim: SuperDimension, mu: usize) -> SuperFunction {
        if mu == 0 {
            SuperFunction::one(dim)
        } else {
            SuperFunction::var(dim, Var::Vel(mu))
        }
    }

    /// `a^mu`, with `a^0 = 0`.
    pub fn acceleration(dim: SuperDimension, mu: usize) -> SuperFunction {
        if mu == 0 {
            SuperFunction::zero(dim)
        } else {
            SuperFunction::var(dim, Var::Acc(mu))
        }
    }

    /// `exp(i m t)`.
    pub fn fourier(dim: SuperDimension, m: i64) -> SuperFunction {
        let mut mono = Monomial::one(&dim);
        mono.fourier = m;
        SuperFunction::from_term(dim, mono, Coeff::one())
    }

    pub fn dim(&self) -> SuperDimension {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Parity of a homogeneous function; `None` for zero or mixed parity.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Like [`parity`](Self::parity) but zero counts as even.
    pub fn parity_or_even(&self) -> Result<Parity> {
        if self.is_zero() {
            return Ok(Parity::Even);
        }
        self.parity().ok_or_else(|| Error::Parity(format!("mixed parity in {self}")))
    }

    /// The even and odd parts.
    pub fn split_parity(&self) -> (SuperFunction, SuperFunction) {
        let mut even = SuperFunction::zero(self.dim);
        let mut odd = SuperFunction::zero(self.dim);
        for (m, c) in &self.terms {
            let part = if m.parity().is_odd() { &mut odd } else { &mut even };
            part.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    pub fn scale(&self, c: Gq) -> SuperFunction {
        self.scale_coeff(&Coeff::from(c))
    }

    pub fn scale_coeff(&self, c: &Coeff) -> SuperFunction {
        let mut out = SuperFunction::zero(self.dim);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), &(k * c));
        }
        out
    }

    fn check_dim(&self, other: &SuperFunction) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim.to_string(), other.dim.to_string()));
        }
        Ok(())
    }

    /// Graded product.
    pub fn checked_mul(&self, other: &SuperFunction) -> Result<SuperFunction> {
        self.check_dim(other)?;
        let mut out = SuperFunction::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, &if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &SuperFunction) -> Result<SuperFunction> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Left derivative by a generator.
    pub fn derive_var(&self, v: Var) -> SuperFunction {
        let slot = self.dim.slot(v);
        let mut out = SuperFunction::zero(self.dim);
        for (m, c) in &self.terms {
            match slot {
                Slot::Even(s) => {
                    let e = m.even[s];
                    if e > 0 {
                        let mut m2 = m.clone();
                        m2.even[s] -= 1;
                        out.add_term(m2, &c.scale(Gq::int(e as i128)));
                    }
                }
                Slot::Odd(b) => {
                    if (m.odd >> b) & 1 == 1 {
                        let below = (m.odd & ((1u64 << b) - 1)).count_ones();
                        let mut m2 = m.clone();
                        m2.odd &= !(1u64 << b);
                        let c2 = if below % 2 == 1 { -c.clone() } else { c.clone() };
                        out.add_term(m2, &c2);
                    }
                }
            }
        }
        out
    }

    /// `d_mu` on coordinates; `d_0` also differentiates `exp(i m t)`.
    pub fn checked_derive(&self, mu: usize) -> Result<SuperFunction> {
        if !self.dim.is_valid(mu) {
            return Err(Error::InvalidIndex { index: mu, dim: self.dim.to_string() });
        }
        let mut out = self.derive_var(Var::Coord(mu));
        if mu == 0 {
            for (m, c) in &self.terms {
                if m.fourier != 0 {
                    out.add_term(m.clone(), &c.scale(Gq::i_pow_times(m.fourier, 1)));
                }
            }
        }
        Ok(out)
    }

    /// Panicking form of [`checked_derive`](Self::checked_derive).
    pub fn derive(&self, mu: usize) -> SuperFunction {
        self.checked_derive(mu).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `v^rho d_rho f` with `v^0 = 1`; jets in `f` are held constant.
    pub fn v_grad(&self) -> SuperFunction {
        let mut out = self.derive(0);
        for i in self.dim.spatial() {
            let term = SuperFunction::var(self.dim, Var::Vel(i)) * self.derive(i);
            out += &term;
        }
        out
    }

    /// Total time derivative along a trajectory, `v^0 = 1`, `a^0 = 0`.
    /// Accelerations cannot be differentiated further.
    pub fn total_dt(&self) -> Result<SuperFunction> {
        if self.jet_order() >= 2 {
            return Err(Error::JetOrder(format!("cannot differentiate accelerations in {self}")));
        }
        let mut out = self.v_grad();
        for i in self.dim.spatial() {
            let term = SuperFunction::var(self.dim, Var::Acc(i)) * self.derive_var(Var::Vel(i));
            out += &term;
        }
        Ok(out)
    }

    /// 0 without jets, 1 with velocities, 2 with accelerations.
    pub fn jet_order(&self) -> u8 {
        self.terms.keys().map(|m| m.jet_order(&self.dim)).max().unwrap_or(0)
    }

    /// True when some term carries a positive power of `x^0 = t`.
    pub fn has_time_polynomial(&self) -> bool {
        self.terms.keys().any(|m| m.even[0] > 0)
    }

    pub fn fourier_support(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|m| m.fourier).collect()
    }

    /// `max |m|` over the Fourier support.
    pub fn bandwidth(&self) -> u64 {
        self.terms.keys().map(|m| m.fourier.unsigned_abs()).max().unwrap_or(0)
    }

    /// Highest number of spatial coordinate factors in a term.
    pub fn spatial_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.spatial_degree(&self.dim)).max().unwrap_or(0)
    }

    /// `int dt` over one period: keeps the `exp(0)` part times `tau`.
    pub fn integrate_period(&self) -> Result<SuperFunction> {
        if self.has_time_polynomial() {
            return Err(Error::NonPeriodic(self.to_string()));
        }
        let mut out = SuperFunction::zero(self.dim);
        for (m, c) in &self.terms {
            if m.fourier == 0 {
                out.add_term(m.clone(), &c.shift_tau(1));
            }
        }
        Ok(out)
    }

    /// The function with the exponent of `exp(i m t)` shifted by `k`.
    pub fn shift_fourier(&self, k: i64) -> SuperFunction {
        let mut out = SuperFunction::zero(self.dim);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.fourier += k;
            out.add_term(m2, c);
        }
        out
    }

    /// Scalar value of a constant function.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (*m == Monomial::one(&self.dim)).then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl AddAssign<&SuperFunction> for SuperFunction {
    fn add_assign(&mut self, rhs: &SuperFunction) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&SuperFunction> for SuperFunction {
    fn sub_assign(&mut self, rhs: &SuperFunction) {
        *self += &(-rhs);
    }
}

impl Add for &SuperFunction {
    type Output = SuperFunction;
    fn add(self, rhs: &SuperFunction) -> SuperFunction {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SuperFunction {
    type Output = SuperFunction;
    fn add(mut self, rhs: SuperFunction) -> SuperFunction {
        self += &rhs;
        self
    }
}

impl Neg for &SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        self.scale(-Gq::ONE)
    }
}

impl Neg for SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        -&self
    }
}

impl Sub for &SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: &SuperFunction) -> SuperFunction {
        self + &(-rhs)
    }
}

impl Sub for SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: SuperFunction) -> SuperFunction {
        &self - &rhs
    }
}

impl Mul for &SuperFunction {
    type Output = SuperFunction;
    fn mul(self, rhs: &SuperFunction) -> SuperFunction {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for SuperFunction {
    type Output = SuperFunction;
    fn mul(self, rhs: SuperFunction) -> SuperFunction {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d11() -> SuperDimension {
        SuperDimension::new(1, 1)
    }

    #[test]
    fn odd_square_vanishes() {
        let th = SuperFunction::coord(d11(), 2);
        assert!((&th * &th).is_zero());
    }

    #[test]
    fn fourier_factors_cancel() {
        let d = d11();
        let a = SuperFunction::coord(d, 1) * SuperFunction::fourier(d, 1);
        let b = SuperFunction::coord(d, 1) * SuperFunction::fourier(d, -1);
        let x = SuperFunction::coord(d, 1);
        assert_eq!(a * b, &x * &x);
    }

    #[test]
    fn transposition_sign() {
        let d = SuperDimension::new(0, 2);
        let t1 = SuperFunction::coord(d, 1);
        let t2 = SuperFunction::coord(d, 2);
        assert_eq!(&t2 * &t1, -(&t1 * &t2));
    }

    #[test]
    fn left_derivatives() {
        let d = SuperDimension::new(0, 2);
        let t1 = SuperFunction::coord(d, 1);
        let t2 = SuperFunction::coord(d, 2);
        assert_eq!((&t1 * &t2).derive(2), -t1.clone());
        assert_eq!((&t1 * &t2).derive(1), t2);
        let e = SuperFunction::fourier(d, 3);
        assert_eq!(e.derive(0), e.scale(Gq::int(3) * Gq::I));
    }

    #[test]
    fn invalid_index_is_reported() {
        let f = SuperFunction::one(d11());
        assert!(matches!(f.checked_derive(3), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn total_derivative_of_coordinate_is_velocity() {
        let d = d11();
        let th = SuperFunction::coord(d, 2);
        assert_eq!(th.total_dt().unwrap(), SuperFunction::velocity(d, 2));
        let v = SuperFunction::velocity(d, 1);
        assert_eq!(v.total_dt().unwrap(), SuperFunction::acceleration(d, 1));
        assert!(SuperFunction::acceleration(d, 1).total_dt().is_err());
    }

    #[test]
    fn period_integral_keeps_zero_mode() {
        let d = d11();
        let f = SuperFunction::fourier(d, 1) + SuperFunction::coord(d, 1);
        let g = f.integrate_period().unwrap();
        assert_eq!(g, SuperFunction::coord(d, 1).scale_coeff(&Coeff::tau()));
    }
}
