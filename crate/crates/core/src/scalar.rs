//! Exact coefficient rings.
//!
//! [`Rat`] is a checked 128-bit rational, [`Gq`] a Gaussian rational
//! `re + i*im`, and [`Coeff`] a Laurent polynomial in the symbol `tau = 2*pi`
//! over [`Gq`]. Arithmetic never rounds; an overflow of the underlying
//! integers panics instead of wrapping.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Checked rational number with `i128` numerator and denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(Ratio<i128>);

const OVERFLOW: &str = "exact coefficient overflowed i128";

impl Rat {
    pub const ZERO: Rat = Rat(Ratio::new_raw(0, 1));
    pub const ONE: Rat = Rat(Ratio::new_raw(1, 1));

    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(Ratio::new(num, den))
    }

    pub fn int(n: i128) -> Rat {
        Rat(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::ONE;
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n as i128)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        Rat(self.0.checked_add(&o.0).expect(OVERFLOW))
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, o: Rat) -> Rat {
        Rat(self.0.checked_sub(&o.0).expect(OVERFLOW))
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, o: Rat) -> Rat {
        Rat(self.0.checked_mul(&o.0).expect(OVERFLOW))
    }
}

impl Div for Rat {
    type Output = Rat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Rat) -> Rat {
        self * o.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid number `{0}`")]
pub struct ParseNumberError(pub String);

impl FromStr for Rat {
    type Err = ParseNumberError;
    fn from_str(s: &str) -> Result<Rat, ParseNumberError> {
        let err = || ParseNumberError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| err())?;
                let d: i128 = d.trim().parse().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                Ok(Rat::new(n, d))
            }
            None => s.parse::<i128>().map(Rat::int).map_err(|_| err()),
        }
    }
}

/// Gaussian rational `re + i*im`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gq {
    pub re: Rat,
    pub im: Rat,
}

impl Gq {
    pub const ZERO: Gq = Gq { re: Rat::ZERO, im: Rat::ZERO };
    pub const ONE: Gq = Gq { re: Rat::ONE, im: Rat::ZERO };
    pub const I: Gq = Gq { re: Rat::ZERO, im: Rat::ONE };

    pub fn new(re: Rat, im: Rat) -> Gq {
        Gq { re, im }
    }

    pub fn real(re: Rat) -> Gq {
        Gq { re, im: Rat::ZERO }
    }

    pub fn int(n: i128) -> Gq {
        Gq::real(Rat::int(n))
    }

    pub fn frac(n: i128, d: i128) -> Gq {
        Gq::real(Rat::new(n, d))
    }

    pub fn imag(im: Rat) -> Gq {
        Gq { re: Rat::ZERO, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Gq {
        Gq { re: self.re, im: -self.im }
    }

    pub fn norm_sqr(&self) -> Rat {
        self.re * self.re + self.im * self.im
    }

    pub fn recip(&self) -> Gq {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        Gq { re: self.re / n, im: -self.im / n }
    }

    pub fn pow(&self, e: u32) -> Gq {
        let mut acc = Gq::ONE;
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }

    /// `(i * n)^e`, the factor picked up by `e` time derivatives of `exp(i n t)`.
    pub fn i_pow_times(n: i64, e: u32) -> Gq {
        (Gq::I * Gq::int(n as i128)).pow(e)
    }

    /// `(-1)^k`
    pub fn sign(odd: bool) -> Gq {
        if odd {
            -Gq::ONE
        } else {
            Gq::ONE
        }
    }
}

impl From<Rat> for Gq {
    fn from(r: Rat) -> Gq {
        Gq::real(r)
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Gq {
        Gq::int(n as i128)
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, o: Gq) -> Gq {
        Gq { re: self.re + o.re, im: self.im + o.im }
    }
}

impl AddAssign for Gq {
    fn add_assign(&mut self, o: Gq) {
        *self = *self + o;
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, o: Gq) -> Gq {
        Gq { re: self.re - o.re, im: self.im - o.im }
    }
}

impl SubAssign for Gq {
    fn sub_assign(&mut self, o: Gq) {
        *self = *self - o;
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, o: Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq::real(self.re * o.re);
        }
        Gq {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for Gq {
    type Output = Gq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Gq) -> Gq {
        self * o.recip()
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re, im: -self.im }
    }
}

impl Zero for Gq {
    fn zero() -> Gq {
        Gq::ZERO
    }
    fn is_zero(&self) -> bool {
        Gq::is_zero(self)
    }
}

impl One for Gq {
    fn one() -> Gq {
        Gq::ONE
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im == Rat::ONE {
                    write!(f, "i")
                } else if self.im == -Rat::ONE {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", self.im)
                }
            }
            (false, false) => {
                if self.im.numer() < 0 {
                    write!(f, "{}-{}*i", self.re, -self.im)
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of `Q(i)[tau, 1/tau]`, `tau = 2*pi` kept symbolic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coeff {
    powers: BTreeMap<i32, Gq>,
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::default()
    }

    pub fn one() -> Coeff {
        Coeff::from(Gq::ONE)
    }

    pub fn monomial(c: Gq, tau_power: i32) -> Coeff {
        let mut powers = BTreeMap::new();
        if !c.is_zero() {
            powers.insert(tau_power, c);
        }
        Coeff { powers }
    }

    pub fn tau() -> Coeff {
        Coeff::monomial(Gq::ONE, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, Gq)> + '_ {
        self.powers.iter().map(|(k, v)| (*k, *v))
    }

    /// The coefficient when it has no `tau` dependence.
    pub fn as_scalar(&self) -> Option<Gq> {
        match self.powers.len() {
            0 => Some(Gq::ZERO),
            1 => self.powers.get(&0).copied(),
            _ => None,
        }
    }

    /// `(tau_power, c)` when the coefficient is a single `c * tau^k`.
    pub fn as_monomial(&self) -> Option<(i32, Gq)> {
        if self.powers.len() == 1 {
            self.powers.iter().next().map(|(k, v)| (*k, *v))
        } else {
            None
        }
    }

    pub fn scale(&self, c: Gq) -> Coeff {
        if c.is_zero() {
            return Coeff::zero();
        }
        Coeff { powers: self.powers.iter().map(|(k, v)| (*k, *v * c)).collect() }
    }

    pub fn shift_tau(&self, by: i32) -> Coeff {
        Coeff { powers: self.powers.iter().map(|(k, v)| (*k + by, *v)).collect() }
    }

    fn add_term(&mut self, k: i32, c: Gq) {
        if c.is_zero() {
            return;
        }
        let e = self.powers.entry(k).or_insert(Gq::ZERO);
        *e += c;
        if e.is_zero() {
            self.powers.remove(&k);
        }
    }
}

impl From<Gq> for Coeff {
    fn from(c: Gq) -> Coeff {
        Coeff::monomial(c, 0)
    }
}

impl From<Rat> for Coeff {
    fn from(c: Rat) -> Coeff {
        Coeff::monomial(Gq::real(c), 0)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        let mut r = self.clone();
        for (k, v) in &o.powers {
            r.add_term(*k, *v);
        }
        r
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, o: Coeff) -> Coeff {
        &self + &o
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        for (k, v) in &o.powers {
            self.add_term(*k, *v);
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(-Gq::ONE)
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o.clone())
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let mut r = Coeff::zero();
        for (k1, v1) in &self.powers {
            for (k2, v2) in &o.powers {
                r.add_term(k1 + k2, *v1 * *v2);
            }
        }
        r
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        &self * &o
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.powers {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({v})")?,
                1 => write!(f, "({v})*tau")?,
                _ => write!(f, "({v})*tau^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Binomial coefficient as a rational, used by mode-sum combinatorics.
pub fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i128 / (j + 1) as i128;
    }
    acc
}
