//! Oscillator labels and occupation-number states.
//!
//! Slots `1..=N+M` are the trajectory directions; higher slots belong to
//! auxiliary oscillator families. Creators are `q^s_m` for `m >= 0` and
//! `p_{s,m}` for `m > 0`; the state is the creator monomial in canonical
//! label order acting on the vacuum.

use crate::graded_symbolic::{Parity, SuperDimension};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Q,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub kind: Kind,
    pub slot: usize,
    pub mode: i64,
}

impl Label {
    pub fn q(slot: usize, mode: i64) -> Label {
        Label { kind: Kind::Q, slot, mode }
    }

    pub fn p(slot: usize, mode: i64) -> Label {
        Label { kind: Kind::P, slot, mode }
    }

    pub fn is_creator(&self) -> bool {
        match self.kind {
            Kind::Q => self.mode >= 0,
            Kind::P => self.mode > 0,
        }
    }

    /// The creator that this annihilator differentiates by.
    pub fn conjugate(&self) -> Label {
        let kind = match self.kind {
            Kind::Q => Kind::P,
            Kind::P => Kind::Q,
        };
        Label { kind, slot: self.slot, mode: -self.mode }
    }
}

/// Parities of all oscillator slots: trajectory directions then auxiliaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModeSpace {
    pub dim: SuperDimension,
    pub aux: Vec<Parity>,
}

impl ModeSpace {
    pub fn new(dim: SuperDimension) -> ModeSpace {
        ModeSpace { dim, aux: Vec::new() }
    }

    /// Appends an auxiliary slot and returns its number.
    pub fn push_aux(&mut self, p: Parity) -> usize {
        self.aux.push(p);
        self.dim.len() - 1 + self.aux.len()
    }

    pub fn slots(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.dim.len() - 1 + self.aux.len()
    }

    pub fn parity(&self, slot: usize) -> Parity {
        let traj = self.dim.len() - 1;
        if slot <= traj {
            self.dim.deg(slot)
        } else {
            self.aux[slot - traj - 1]
        }
    }

    pub fn is_odd(&self, slot: usize) -> bool {
        self.parity(slot).is_odd()
    }
}

/// Creator monomial, sorted by label, fermionic occupations at most one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    occ: Vec<(Label, u32)>,
}

impl FockState {
    pub fn vacuum() -> FockState {
        FockState::default()
    }

    pub fn occupations(&self) -> &[(Label, u32)] {
        &self.occ
    }

    pub fn occupation(&self, l: &Label) -> u32 {
        self.occ.binary_search_by(|(k, _)| k.cmp(l)).map(|k| self.occ[k].1).unwrap_or(0)
    }

    pub fn energy(&self) -> i64 {
        self.occ.iter().map(|(l, n)| l.mode * *n as i64).sum()
    }

    /// Number of zero-mode `q` quanta.
    pub fn degree(&self) -> u32 {
        self.occ.iter().filter(|(l, _)| l.kind == Kind::Q && l.mode == 0).map(|(_, n)| *n).sum()
    }

    pub fn parity(&self, space: &ModeSpace) -> Parity {
        let odd: u32 = self.occ.iter().filter(|(l, _)| space.is_odd(l.slot)).map(|(_, n)| *n).sum();
        Parity::from_bool(odd % 2 == 1)
    }

    fn odd_before(&self, space: &ModeSpace, pos: usize) -> u32 {
        self.occ[..pos].iter().filter(|(l, _)| space.is_odd(l.slot)).map(|(_, n)| *n).sum()
    }

    /// `c * self`; the flag is true when the sign is negative.
    pub fn create(&self, space: &ModeSpace, c: Label) -> Option<(bool, FockState)> {
        debug_assert!(c.is_creator());
        let odd = space.is_odd(c.slot);
        let mut out = self.clone();
        match self.occ.binary_search_by(|(k, _)| k.cmp(&c)) {
            Ok(pos) => {
                if odd {
                    return None;
                }
                out.occ[pos].1 += 1;
                Some((false, out))
            }
            Err(pos) => {
                let neg = odd && self.odd_before(space, pos) % 2 == 1;
                out.occ.insert(pos, (c, 1));
                Some((neg, out))
            }
        }
    }

    /// Left derivative by the creator `c`: multiplicity, sign flag and the
    /// reduced state.
    pub fn derive(&self, space: &ModeSpace, c: Label) -> Option<(u32, bool, FockState)> {
        let pos = self.occ.binary_search_by(|(k, _)| k.cmp(&c)).ok()?;
        let n = self.occ[pos].1;
        let neg = space.is_odd(c.slot) && self.odd_before(space, pos) % 2 == 1;
        let mut out = self.clone();
        if n == 1 {
            out.occ.remove(pos);
        } else {
            out.occ[pos].1 -= 1;
        }
        Some((n, neg, out))
    }

    pub(crate) fn from_sorted(occ: Vec<(Label, u32)>) -> FockState {
        debug_assert!(occ.windows(2).all(|w| w[0].0 < w[1].0));
        FockState { occ }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::Q => "q",
            Kind::P => "p",
        };
        write!(f, "{k}{}_{}", self.slot, self.mode)
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, n) in &self.occ {
            if *n == 1 {
                write!(f, "{l} ")?;
            } else {
                write!(f, "{l}^{n} ")?;
            }
        }
        write!(f, "|0>")
    }
}
