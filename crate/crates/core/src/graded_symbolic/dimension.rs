use std::fmt;
use std::ops::{Add, AddAssign};

/// Z2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bool(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// The bit `deg` as an integer 0/1.
    pub fn bit(self) -> u8 {
        self as u8
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bool(self != o)
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, o: Parity) {
        *self = *self + o;
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `(-1)^(a*b)` for gradings `a`, `b`.
pub fn koszul(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

/// `(N+1|M)`-dimensional super space-time. Index 0 is time, `1..=N` are the
/// bosonic spatial directions and `N+1..=N+M` the fermionic ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperDimension {
    pub n_bosonic_spatial: usize,
    pub m_fermionic: usize,
}

/// A generator of the jet function algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Coordinate `x^mu`, `mu = 0` being time.
    Coord(usize),
    /// Velocity `v^i = dq^i/dt`, `i >= 1`.
    Vel(usize),
    /// Acceleration `a^i`, `i >= 1`.
    Acc(usize),
}

/// Storage slot of a generator: an exponent slot (even) or a bit (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Slot {
    Even(usize),
    Odd(u32),
}

impl SuperDimension {
    pub fn new(n_bosonic_spatial: usize, m_fermionic: usize) -> SuperDimension {
        assert!(3 * m_fermionic <= 64, "at most 21 fermionic directions are supported");
        SuperDimension { n_bosonic_spatial, m_fermionic }
    }

    /// Total number of indices `N + M + 1`.
    pub fn len(&self) -> usize {
        self.n_bosonic_spatial + self.m_fermionic + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spatial(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n_bosonic_spatial + self.m_fermionic
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn is_valid(&self, mu: usize) -> bool {
        mu < self.len()
    }

    /// `deg mu`: 0 for `mu <= N`, 1 above.
    pub fn deg(&self, mu: usize) -> Parity {
        debug_assert!(self.is_valid(mu));
        Parity::from_bool(mu > self.n_bosonic_spatial)
    }

    /// `(-)^mu` as a sign flag.
    pub fn is_fermionic(&self, mu: usize) -> bool {
        self.deg(mu).is_odd()
    }

    /// `sum_i (-)^i delta^i_i = N - M`.
    pub fn super_dimension_spatial(&self) -> i64 {
        self.n_bosonic_spatial as i64 - self.m_fermionic as i64
    }

    pub(crate) fn n_even_slots(&self) -> usize {
        3 * self.n_bosonic_spatial + 1
    }

    pub(crate) fn slot(&self, v: Var) -> Slot {
        let n = self.n_bosonic_spatial;
        let m = self.m_fermionic;
        match v {
            Var::Coord(mu) => {
                assert!(mu <= n + m, "coordinate index {mu} out of range");
                if mu <= n {
                    Slot::Even(mu)
                } else {
                    Slot::Odd((mu - n - 1) as u32)
                }
            }
            Var::Vel(i) => {
                assert!(i >= 1 && i <= n + m, "velocity index {i} out of range");
                if i <= n {
                    Slot::Even(n + i)
                } else {
                    Slot::Odd((m + i - n - 1) as u32)
                }
            }
            Var::Acc(i) => {
                assert!(i >= 1 && i <= n + m, "acceleration index {i} out of range");
                if i <= n {
                    Slot::Even(2 * n + i)
                } else {
                    Slot::Odd((2 * m + i - n - 1) as u32)
                }
            }
        }
    }

    pub(crate) fn var_of_even(&self, slot: usize) -> Var {
        let n = self.n_bosonic_spatial;
        if slot <= n {
            Var::Coord(slot)
        } else if slot <= 2 * n {
            Var::Vel(slot - n)
        } else {
            Var::Acc(slot - 2 * n)
        }
    }

    pub(crate) fn var_of_odd(&self, bit: u32) -> Var {
        let n = self.n_bosonic_spatial;
        let m = self.m_fermionic as u32;
        let (kind, k) = (bit / m, (bit % m) as usize);
        let idx = n + 1 + k;
        match kind {
            0 => Var::Coord(idx),
            1 => Var::Vel(idx),
            _ => Var::Acc(idx),
        }
    }
}

impl fmt::Display for SuperDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.n_bosonic_spatial + 1, self.m_fermionic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_table() {
        let d = SuperDimension::new(2, 2);
        let degs: Vec<_> = d.indices().map(|mu| d.deg(mu).bit()).collect();
        assert_eq!(degs, vec![0, 0, 0, 1, 1]);
        assert_eq!(d.super_dimension_spatial(), 0);
    }

    #[test]
    fn slots_roundtrip() {
        let d = SuperDimension::new(2, 3);
        for v in [Var::Coord(0), Var::Coord(2), Var::Vel(1), Var::Acc(2)] {
            match d.slot(v) {
                Slot::Even(s) => assert_eq!(d.var_of_even(s), v),
                Slot::Odd(_) => panic!("expected even slot"),
            }
        }
        for v in [Var::Coord(3), Var::Coord(5), Var::Vel(4), Var::Acc(5)] {
            match d.slot(v) {
                Slot::Odd(b) => assert_eq!(d.var_of_odd(b), v),
                Slot::Even(_) => panic!("expected odd slot"),
            }
        }
    }
}
