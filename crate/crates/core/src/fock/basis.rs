//! Truncated Fock bases.

use super::state::{FockState, Label, ModeSpace};
use std::collections::HashMap;
use std::fmt;

/// Energy and zero-mode degree cutoffs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    pub e_max: i64,
    pub d_max: u32,
}

impl Window {
    pub fn new(e_max: i64, d_max: u32) -> Window {
        assert!(e_max >= 0, "negative energy cutoff");
        Window { e_max, d_max }
    }

    pub fn contains(&self, s: &FockState) -> bool {
        s.energy() <= self.e_max && s.degree() <= self.d_max
    }

    pub fn widen(&self, by: Window) -> Window {
        Window { e_max: self.e_max + by.e_max, d_max: self.d_max + by.d_max }
    }

    pub fn covers(&self, other: Window) -> bool {
        self.e_max >= other.e_max && self.d_max >= other.d_max
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.e_max, self.d_max)
    }
}

/// States of a window in a fixed order, with reverse lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub space: ModeSpace,
    pub window: Window,
    states: Vec<FockState>,
    index: HashMap<FockState, usize>,
}

impl Basis {
    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &FockState) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// The basis of a smaller window, as a sub-list of this one.
    pub fn restrict(&self, w: Window) -> Basis {
        let states: Vec<_> = self.states.iter().filter(|s| w.contains(s)).cloned().collect();
        Basis::from_states(self.space.clone(), w, states)
    }

    fn from_states(space: ModeSpace, window: Window, states: Vec<FockState>) -> Basis {
        let index = states.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        Basis { space, window, states, index }
    }
}

/// All creator monomials with energy `<= E` and zero-mode degree `<= D`,
/// ordered by energy, then degree, then labels.
pub fn enumerate_basis(space: &ModeSpace, w: Window) -> Basis {
    let mut labels = Vec::new();
    for slot in space.slots() {
        for m in 0..=w.e_max {
            labels.push(Label::q(slot, m));
            if m > 0 {
                labels.push(Label::p(slot, m));
            }
        }
    }
    labels.sort();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(space, &labels, 0, w.e_max, w.d_max, &mut cur, &mut out);
    out.sort_by(|a: &FockState, b| (a.energy(), a.degree(), a).cmp(&(b.energy(), b.degree(), b)));
    Basis::from_states(space.clone(), w, out)
}

fn fill(
    space: &ModeSpace,
    labels: &[Label],
    k: usize,
    e_left: i64,
    d_left: u32,
    cur: &mut Vec<(Label, u32)>,
    out: &mut Vec<FockState>,
) {
    if k == labels.len() {
        out.push(FockState::from_sorted(cur.clone()));
        return;
    }
    fill(space, labels, k + 1, e_left, d_left, cur, out);
    let l = labels[k];
    let cap = if space.is_odd(l.slot) { 1 } else { u32::MAX };
    let zero_mode = l.mode == 0;
    for n in 1..=cap {
        let e = l.mode * n as i64;
        let d = if zero_mode { n } else { 0 };
        if e > e_left || d > d_left {
            break;
        }
        cur.push((l, n));
        fill(space, labels, k + 1, e_left - e, d_left - d, cur, out);
        cur.pop();
    }
}
