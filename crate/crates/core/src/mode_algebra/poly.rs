//! Polynomials in the mode indices `m, n, p` with Gaussian-rational coefficients.

use crate::scalar::{Gq, Rat};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const VARS: [&str; 3] = ["m", "n", "p"];

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<[u32; 3], Gq>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Gq) -> Poly {
        let mut p = Poly::zero();
        p.add_term([0; 3], c);
        p
    }

    pub fn int(n: i128) -> Poly {
        Poly::constant(Gq::int(n))
    }

    pub fn frac(n: i128, d: i128) -> Poly {
        Poly::constant(Gq::frac(n, d))
    }

    /// The indeterminate with index `k` (0 = m, 1 = n, 2 = p).
    pub fn var(k: usize) -> Poly {
        let mut e = [0; 3];
        e[k] = 1;
        let mut p = Poly::zero();
        p.add_term(e, Gq::ONE);
        p
    }

    pub fn m() -> Poly {
        Poly::var(0)
    }

    pub fn n() -> Poly {
        Poly::var(1)
    }

    pub fn p() -> Poly {
        Poly::var(2)
    }

    fn add_term(&mut self, e: [u32; 3], c: Gq) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(Gq::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Gq)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Gq> {
        match self.terms.len() {
            0 => Some(Gq::ZERO),
            1 => self.terms.get(&[0; 3]).copied(),
            _ => None,
        }
    }

    pub fn scale(&self, c: Gq) -> Poly {
        let mut out = Poly::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, *v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::int(1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Simultaneous substitution of the three indeterminates.
    pub fn subst(&self, images: &[Poly; 3]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(*c);
            for k in 0..3 {
                if e[k] > 0 {
                    t = &t * &images[k].pow(e[k]);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// `m <-> n`.
    pub fn swap_mn(&self) -> Poly {
        self.subst(&[Poly::n(), Poly::m(), Poly::p()])
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    pub fn eval(&self, at: [i64; 3]) -> Gq {
        let mut acc = Gq::ZERO;
        for (e, c) in &self.terms {
            let mut t = *c;
            for k in 0..3 {
                t = t * Gq::real(Rat::int(at[k] as i128).pow(e[k]));
            }
            acc += t;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-Gq::ONE)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], *x * *y);
            }
        }
        out
    }
}

macro_rules! by_value {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
by_value!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first reads naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse((e[0] + e[1] + e[2], **e)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = (0..3)
                .filter(|&v| e[v] > 0)
                .map(|v| if e[v] == 1 { VARS[v].to_string() } else { format!("{}^{}", VARS[v], e[v]) })
                .collect();
            let neg_real = c.im.is_zero() && c.re.numer() < 0;
            let mag = if neg_real { -*c } else { *c };
            if k > 0 {
                write!(f, "{}", if neg_real { " - " } else { " + " })?;
            } else if neg_real {
                write!(f, "-")?;
            }
            let coeff = if mag.is_real() { mag.to_string() } else { format!("({mag})") };
            match (mono.is_empty(), mag == Gq::ONE) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
