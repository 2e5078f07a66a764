//! Exact sparse matrices on a truncated Fock basis.

use super::basis::{Basis, Window};
use crate::error::{Error, Result};
use crate::graded_symbolic::Parity;
use crate::scalar::Gq;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Column scheduling for assembly and products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        #[cfg(feature = "parallel")]
        return Exec::Parallel;
        #[cfg(not(feature = "parallel"))]
        Exec::Sequential
    }
}

/// `(0..n).map(f)` under the chosen schedule; output order is index order.
pub fn map_columns<T: Send>(exec: Exec, n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    match exec {
        Exec::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
    }
}

pub type Column = Vec<(usize, Gq)>;

/// Entries are `value * tau^tau_power`; columns are sorted by row.
#[derive(Clone, Debug)]
pub struct WindowMatrix {
    pub basis: Arc<Basis>,
    pub tau_power: i32,
    pub parity: Parity,
    columns: Vec<Column>,
}

fn same_basis(a: &Arc<Basis>, b: &Arc<Basis>) -> bool {
    Arc::ptr_eq(a, b) || (a.window == b.window && a.space == b.space)
}

fn accumulate(map: &mut BTreeMap<usize, Gq>, r: usize, v: Gq) {
    let e = map.entry(r).or_insert(Gq::ZERO);
    *e += v;
    if e.is_zero() {
        map.remove(&r);
    }
}

impl WindowMatrix {
    pub fn zero(basis: Arc<Basis>) -> WindowMatrix {
        let n = basis.len();
        WindowMatrix { basis, tau_power: 0, parity: Parity::Even, columns: vec![Vec::new(); n] }
    }

    pub fn identity(basis: Arc<Basis>) -> WindowMatrix {
        let columns = (0..basis.len()).map(|k| vec![(k, Gq::ONE)]).collect();
        WindowMatrix { basis, tau_power: 0, parity: Parity::Even, columns }
    }

    pub fn from_columns(basis: Arc<Basis>, tau_power: i32, parity: Parity, columns: Vec<Column>) -> WindowMatrix {
        assert_eq!(columns.len(), basis.len());
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                c.retain(|e| !e.1.is_zero());
                c
            })
            .collect();
        WindowMatrix { basis, tau_power, parity, columns }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &Column {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Gq {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |e| e.0).map(|k| col[k].1).unwrap_or(Gq::ZERO)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Nonzero entries as `(row, column, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Gq)> + '_ {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    fn check_compatible(&self, other: &WindowMatrix) -> Result<()> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::DimensionMismatch(self.basis.window.to_string(), other.basis.window.to_string()));
        }
        Ok(())
    }

    fn combine(&self, other: &WindowMatrix, sign: Gq) -> Result<WindowMatrix> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.scale(sign));
        }
        if self.tau_power != other.tau_power {
            return Err(Error::Invalid(format!(
                "adding matrices with tau powers {} and {}",
                self.tau_power, other.tau_power
            )));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut m: BTreeMap<usize, Gq> = a.iter().copied().collect();
                for &(r, v) in b {
                    accumulate(&mut m, r, v * sign);
                }
                m.into_iter().collect()
            })
            .collect();
        Ok(WindowMatrix { basis: self.basis.clone(), tau_power: self.tau_power, parity: self.parity, columns })
    }

    pub fn add(&self, other: &WindowMatrix) -> Result<WindowMatrix> {
        self.combine(other, Gq::ONE)
    }

    pub fn sub(&self, other: &WindowMatrix) -> Result<WindowMatrix> {
        self.combine(other, -Gq::ONE)
    }

    pub fn scale(&self, c: Gq) -> WindowMatrix {
        let columns = if c.is_zero() {
            vec![Vec::new(); self.dim()]
        } else {
            self.columns.iter().map(|col| col.iter().map(|&(r, v)| (r, v * c)).collect()).collect()
        };
        WindowMatrix { basis: self.basis.clone(), tau_power: self.tau_power, parity: self.parity, columns }
    }

    pub fn shift_tau(&self, by: i32) -> WindowMatrix {
        WindowMatrix { tau_power: self.tau_power + by, ..self.clone() }
    }

    /// `self * other` within the window.
    pub fn mul_with(&self, other: &WindowMatrix, exec: Exec) -> Result<WindowMatrix> {
        self.check_compatible(other)?;
        let columns = map_columns(exec, other.dim(), |c| {
            let mut m = BTreeMap::new();
            for &(k, b) in &other.columns[c] {
                for &(r, a) in &self.columns[k] {
                    accumulate(&mut m, r, a * b);
                }
            }
            m.into_iter().collect::<Column>()
        });
        Ok(WindowMatrix {
            basis: self.basis.clone(),
            tau_power: self.tau_power + other.tau_power,
            parity: self.parity + other.parity,
            columns,
        })
    }

    pub fn mul(&self, other: &WindowMatrix) -> Result<WindowMatrix> {
        self.mul_with(other, Exec::default())
    }

    /// `[A, B} = AB - (-)^{ab} BA`.
    pub fn graded_commutator(&self, other: &WindowMatrix) -> Result<WindowMatrix> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        let both_odd = self.parity.is_odd() && other.parity.is_odd();
        if both_odd {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// Submatrix on the states of a smaller window.
    pub fn restrict(&self, w: Window) -> Result<WindowMatrix> {
        if !self.basis.window.covers(w) {
            return Err(Error::InsufficientMargin(format!(
                "window {} does not cover {w}",
                self.basis.window
            )));
        }
        let inner = Arc::new(self.basis.restrict(w));
        let map: Vec<Option<usize>> = self.basis.states().iter().map(|s| inner.index_of(s)).collect();
        let mut columns = vec![Vec::new(); inner.len()];
        for (c, col) in self.columns.iter().enumerate() {
            if let Some(nc) = map[c] {
                columns[nc] = col.iter().filter_map(|&(r, v)| map[r].map(|nr| (nr, v))).collect();
            }
        }
        Ok(WindowMatrix { basis: inner, tau_power: self.tau_power, parity: self.parity, columns })
    }

    /// `<0| M |0>`; the vacuum is always the first basis state.
    pub fn vacuum_element(&self) -> Gq {
        self.get(0, 0)
    }
}

/// First nonzero entries of a residual, for reports.
pub fn residual_summary(m: &WindowMatrix, limit: usize) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let shown: Vec<String> = m
        .entries()
        .take(limit)
        .map(|(r, c, v)| format!("<{}|.|{}> = {v}", m.basis.states()[r], m.basis.states()[c]))
        .collect();
    format!("{} nonzero entries; {}", m.nnz(), shown.join("; "))
}

impl PartialEq for WindowMatrix {
    fn eq(&self, other: &WindowMatrix) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl fmt::Display for WindowMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau = if self.tau_power == 0 { String::new() } else { format!(" * tau^{}", self.tau_power) };
        writeln!(f, "{}x{} matrix, {} nonzero{tau}", self.dim(), self.dim(), self.nnz())?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  <{}| |{}> = {v}", self.basis.states()[r], self.basis.states()[c])?;
        }
        Ok(())
    }
}
