//! Window checks that an operator family realizes a mode algebra.

use super::basis::{enumerate_basis, Window};
use super::matrix::{residual_summary, WindowMatrix};
use super::operator::FieldOperator;
use super::state::ModeSpace;
use crate::error::Result;
use crate::mode_algebra::{ModeAlgebraSpec, Poly, Target};
use crate::scalar::Gq;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Field operators `X_m` for each generator of a mode algebra.
pub trait ModeFamily: Sync {
    fn space(&self) -> ModeSpace;
    /// Operator for generator `name` at mode `m`.
    fn operator(&self, name: &str, m: i64) -> Result<FieldOperator>;
    /// Bound on the zero-mode degree any single operator adds.
    fn degree(&self) -> u32;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub a: String,
    pub b: String,
    pub m: i64,
    pub n: i64,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub checked: usize,
    pub failures: Vec<PairFailure>,
}

impl RealizationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn eval(p: &Poly, m: i64, n: i64) -> Gq {
    p.eval([m, n, 0])
}

/// Checks every bracket `[X_m, Y_n}` of `spec` for `|m|, |n| <= range` on
/// `inner`, with products taken on the widened window.
pub fn verify_realization(
    spec: &ModeAlgebraSpec,
    family: &dyn ModeFamily,
    range: i64,
    inner: Window,
) -> Result<RealizationReport> {
    let outer = inner.widen(Window::new(range, family.degree()));
    let basis = Arc::new(enumerate_basis(&family.space(), outer));
    let inner_basis = Arc::new(basis.restrict(inner));
    let gens: Vec<String> = spec.generators().iter().map(|g| g.name.clone()).collect();
    let mut on_outer: BTreeMap<(usize, i64), WindowMatrix> = BTreeMap::new();
    let mut on_inner: BTreeMap<(usize, i64), WindowMatrix> = BTreeMap::new();
    for (a, name) in gens.iter().enumerate() {
        for m in -range..=range {
            on_outer.insert((a, m), family.operator(name, m)?.matrix(&basis)?);
        }
        for m in -2 * range..=2 * range {
            on_inner.insert((a, m), family.operator(name, m)?.matrix(&inner_basis)?);
        }
    }
    let mut report = RealizationReport { checked: 0, failures: Vec::new() };
    for a in 0..gens.len() {
        for b in 0..gens.len() {
            let value = spec.bracket(a, b);
            for m in -range..=range {
                for n in -range..=range {
                    let lhs = on_outer[&(a, m)].graded_commutator(&on_outer[&(b, n)])?.restrict(inner)?;
                    let mut rhs = WindowMatrix::zero(inner_basis.clone());
                    for (t, p) in &value {
                        let c = eval(p, m, n);
                        if c.is_zero() {
                            continue;
                        }
                        let term = match t {
                            Target::Gen(z) => on_inner[&(*z, m + n)].scale(c),
                            Target::Central if m + n == 0 => WindowMatrix::identity(inner_basis.clone()).scale(c),
                            Target::Central => continue,
                        };
                        rhs = rhs.add(&term)?;
                    }
                    let res = lhs.sub(&rhs)?;
                    report.checked += 1;
                    if !res.is_zero() {
                        report.failures.push(PairFailure {
                            a: gens[a].clone(),
                            b: gens[b].clone(),
                            m,
                            n,
                            residual: residual_summary(&res, 3),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

