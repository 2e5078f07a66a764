//! Integrated products of oscillator fields, `int dt exp(ikt) f_1(t)..f_r(t)`.
//!
//! Fields expand as `q(t) = sum_m q_m exp(-imt)` and
//! `p(t) = (1/tau) sum_m p_m exp(-imt)`, so `exp(ikt)` raises the energy by
//! `k`. Only normally ordered words are accepted: no factor may contract
//! with a factor to its right. Every quantum created inside a word then
//! survives, which bounds the creator modes by the target window and makes
//! each matrix element a finite sum.

use super::basis::Basis;
use super::matrix::{map_columns, Column, Exec, WindowMatrix};
use super::state::{FockState, Kind, Label, ModeSpace};
use crate::error::{Error, Result};
use crate::graded_symbolic::{Parity, SuperFunction, Var};
use crate::scalar::Gq;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A mode-expanded field at time `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// `q^s(t)`.
    Q(usize),
    /// `dq^s/dt`.
    Qd(usize),
    /// `d^2q^s/dt^2`.
    Qdd(usize),
    /// `p_s(t)`, all modes.
    P(usize),
    /// Modes `m <= 0` of `p_s(t)` (annihilators).
    PLess(usize),
    /// Modes `m > 0` of `p_s(t)` (creators).
    PGreater(usize),
}

impl Field {
    pub fn slot(&self) -> usize {
        match *self {
            Field::Q(s) | Field::Qd(s) | Field::Qdd(s) | Field::P(s) | Field::PLess(s) | Field::PGreater(s) => s,
        }
    }

    fn is_q(&self) -> bool {
        matches!(self, Field::Q(_) | Field::Qd(_) | Field::Qdd(_))
    }

    fn can_create(&self) -> bool {
        !matches!(self, Field::PLess(_))
    }

    fn can_annihilate(&self) -> bool {
        !matches!(self, Field::PGreater(_))
    }

    /// Mode factor `c(m)` in `f(t) = sum_m c(m) f_m exp(-imt)`.
    fn weight(&self, m: i64) -> Gq {
        match self {
            Field::Qd(_) => Gq::imag(crate::scalar::Rat::int(-m as i128)),
            Field::Qdd(_) => Gq::int(-(m as i128) * m as i128),
            _ => Gq::ONE,
        }
    }

    fn label(&self, m: i64) -> Label {
        if self.is_q() {
            Label::q(self.slot(), m)
        } else {
            Label::p(self.slot(), m)
        }
    }

    fn admits(&self, l: &Label) -> bool {
        match self {
            Field::PLess(_) => l.mode <= 0,
            Field::PGreater(_) => l.mode > 0,
            _ => true,
        }
    }
}

/// `coeff * tau^tau * int dt exp(i fourier t) factors...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub coeff: Gq,
    pub tau: i32,
    pub fourier: i64,
    pub factors: Vec<Field>,
}

impl Word {
    /// Overall power of `tau` in the matrix elements.
    pub fn total_tau(&self) -> i32 {
        let p = self.factors.iter().filter(|f| !f.is_q()).count() as i32;
        self.tau + 1 - p
    }

    fn check_ordering(&self) -> Result<()> {
        for (j, left) in self.factors.iter().enumerate() {
            for right in &self.factors[j + 1..] {
                if left.slot() != right.slot() || left.is_q() == right.is_q() {
                    continue;
                }
                if left.can_annihilate() && right.can_create() {
                    return Err(Error::Invalid(format!("word is not normally ordered: {left:?} before {right:?}")));
                }
            }
        }
        Ok(())
    }
}

/// Sum of words with a common total power of `tau`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldOperator {
    pub words: Vec<Word>,
    pub parity: Option<Parity>,
}

impl FieldOperator {
    pub fn zero() -> FieldOperator {
        FieldOperator::default()
    }

    pub fn push(&mut self, w: Word) -> Result<()> {
        w.check_ordering()?;
        if !w.coeff.is_zero() {
            self.words.push(w);
        }
        Ok(())
    }

    pub fn extend(&mut self, other: FieldOperator) {
        self.words.extend(other.words);
        self.parity = self.parity.or(other.parity);
    }

    pub fn scale(mut self, c: Gq) -> FieldOperator {
        for w in &mut self.words {
            w.coeff = w.coeff * c;
        }
        self.words.retain(|w| !w.coeff.is_zero());
        self
    }

    pub fn tau_power(&self) -> Result<i32> {
        let mut it = self.words.iter().map(Word::total_tau);
        let first = it.next().unwrap_or(0);
        if it.any(|t| t != first) {
            return Err(Error::Invalid("operator mixes powers of tau".into()));
        }
        Ok(first)
    }

    /// Maximal `|fourier|` over the words.
    pub fn bandwidth(&self) -> u64 {
        self.words.iter().map(|w| w.fourier.unsigned_abs()).max().unwrap_or(0)
    }

    /// Words `int dt F(q, dq, d2q) * left * F * right` for every term of a
    /// jet function, with `left` fields in front and `right` fields behind.
    pub fn from_function(
        f: &SuperFunction,
        coeff: Gq,
        tau: i32,
        left: &[Field],
        right: &[Field],
    ) -> Result<FieldOperator> {
        let d = f.dim();
        let mut out = FieldOperator::zero();
        for (mono, c) in f.terms() {
            let (k, v) = c
                .as_monomial()
                .ok_or_else(|| Error::Invalid(format!("coefficient {c} is not a single power of tau")))?;
            let mut factors = left.to_vec();
            for var in mono.factors(&d) {
                factors.push(match var {
                    Var::Coord(0) => return Err(Error::NonPeriodic(f.to_string())),
                    Var::Coord(i) => Field::Q(i),
                    Var::Vel(i) => Field::Qd(i),
                    Var::Acc(i) => Field::Qdd(i),
                });
            }
            factors.extend_from_slice(right);
            out.push(Word { coeff: coeff * v, tau: tau + k, fourier: mono.fourier, factors })?;
        }
        Ok(out)
    }

    /// `self |s>` with components outside `target` dropped.
    pub fn apply(&self, space: &ModeSpace, s: &FockState, target: &Basis) -> BTreeMap<usize, Gq> {
        let mut out = BTreeMap::new();
        for w in &self.words {
            let e_final = s.energy() + w.fourier;
            if e_final < 0 || e_final > target.window.e_max {
                continue;
            }
            let mut ctx = Ctx { space, word: w, target, e_final, out: &mut out };
            ctx.step(w.factors.len(), s.clone(), w.coeff, 0, 0, 0);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Matrix on `basis`, assembled column by column.
    pub fn matrix_with(&self, basis: &Arc<Basis>, exec: Exec) -> Result<WindowMatrix> {
        let tau = self.tau_power()?;
        let space = &basis.space;
        let columns: Vec<Column> =
            map_columns(exec, basis.len(), |c| self.apply(space, &basis.states()[c], basis).into_iter().collect());
        Ok(WindowMatrix::from_columns(basis.clone(), tau, self.parity.unwrap_or(Parity::Even), columns))
    }

    pub fn matrix(&self, basis: &Arc<Basis>) -> Result<WindowMatrix> {
        self.matrix_with(basis, Exec::default())
    }
}

struct Ctx<'a> {
    space: &'a ModeSpace,
    word: &'a Word,
    target: &'a Basis,
    e_final: i64,
    out: &'a mut BTreeMap<usize, Gq>,
}

impl Ctx<'_> {
    /// Applies factors `..k` (right to left) to `s`. `mode_sum` is the sum of
    /// modes used so far; `created_e`, `created_d` the energy and zero-mode
    /// count of created quanta.
    fn step(&mut self, k: usize, s: FockState, coeff: Gq, mode_sum: i64, created_e: i64, created_d: u32) {
        if k == 0 {
            if mode_sum == self.word.fourier {
                if let Some(r) = self.target.index_of(&s) {
                    let e = self.out.entry(r).or_insert(Gq::ZERO);
                    *e += coeff;
                }
            }
            return;
        }
        let f = self.word.factors[k - 1];
        let last = k == 1;
        let need = self.word.fourier - mode_sum;
        // Annihilation of a quantum present in `s`.
        if f.can_annihilate() {
            for &(l, _) in s.occupations() {
                if l.slot != f.slot() || (l.kind == Kind::Q) == f.is_q() {
                    continue;
                }
                let m = -l.mode;
                let op = f.label(m);
                if op.is_creator() || !f.admits(&op) || (last && m != need) {
                    continue;
                }
                let (n, neg, rest) = s.derive(self.space, l).unwrap();
                let mut c = coeff * f.weight(m) * Gq::int(n as i128);
                // q_m = -(-)^s d/dP_{-m}; p_m = d/dQ_{-m}.
                if f.is_q() && !self.space.is_odd(f.slot()) {
                    c = -c;
                }
                if neg {
                    c = -c;
                }
                if c.is_zero() {
                    continue;
                }
                self.step(k - 1, rest, c, mode_sum + m, created_e, created_d);
            }
        }
        if f.can_create() {
            let room = self.e_final - created_e;
            let lo = if f.is_q() { 0 } else { 1 };
            let (lo, hi) = if last { (need, need) } else { (lo, room) };
            for m in lo..=hi {
                let op = f.label(m);
                if !op.is_creator() || !f.admits(&op) || m > room {
                    continue;
                }
                let d = created_d + u32::from(op.kind == Kind::Q && m == 0);
                if d > self.target.window.d_max {
                    continue;
                }
                let c = coeff * f.weight(m);
                if c.is_zero() {
                    continue;
                }
                if let Some((neg, next)) = s.create(self.space, op) {
                    let c = if neg { -c } else { c };
                    self.step(k - 1, next, c, mode_sum + m, created_e + m, d);
                }
            }
        }
    }
}

/// Matrix of a single mode operator `q^s_m` or `p_{s,m}` (without `1/tau`).
pub fn mode_matrix(basis: &Arc<Basis>, kind: Kind, slot: usize, m: i64) -> WindowMatrix {
    let field = match kind {
        Kind::Q => Field::Q(slot),
        Kind::P => Field::P(slot),
    };
    let word = Word { coeff: Gq::ONE, tau: if kind == Kind::P { 0 } else { -1 }, fourier: m, factors: vec![field] };
    let op = FieldOperator { words: vec![word], parity: Some(basis.space.parity(slot)) };
    op.matrix(basis).expect("single mode operator")
}
