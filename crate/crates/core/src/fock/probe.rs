//! Central charge extraction from a Virasoro family on a window.

use super::aux::AuxConfig;
use super::basis::{enumerate_basis, Window};
use super::generators::{generator_operator, temporal_generator};
use super::matrix::{residual_summary, WindowMatrix};
use super::operator::FieldOperator;
use super::state::ModeSpace;
use crate::error::{Error, Result};
use crate::graded_symbolic::SuperDimension;
use crate::scalar::Gq;
use std::sync::Arc;

/// Operators `L_m` with `[L_m, L_n] = (n - m) L_{m+n} + central`.
pub trait VirasoroFamily {
    fn space(&self) -> ModeSpace;
    fn mode(&self, m: i64) -> Result<FieldOperator>;
    /// Zero-mode degree raised by any `L_m`.
    fn degree(&self) -> u32 {
        0
    }
}

/// `L_m = -i L_xi` with `xi = exp(imt) d_0`.
#[derive(Clone, Copy, Debug)]
pub struct TemporalFamily {
    pub dim: SuperDimension,
    pub aux: AuxConfig,
}

impl VirasoroFamily for TemporalFamily {
    fn space(&self) -> ModeSpace {
        self.aux.space(self.dim)
    }

    fn mode(&self, m: i64) -> Result<FieldOperator> {
        generator_operator(&temporal_generator(self.dim, m), &self.aux)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub c: Gq,
    pub h0: Gq,
    /// `(m, <0|[L_m, L_-m]|0>)`.
    pub vacuum_values: Vec<(i64, Gq)>,
}

const CLOSURE_RANGE: i64 = 2;

/// Vacuum element of `[L_m, L_-m]`, computed on energies up to `2|m|`.
pub fn vacuum_commutator(family: &dyn VirasoroFamily, m: i64) -> Result<Gq> {
    let basis = Arc::new(enumerate_basis(&family.space(), Window::new(2 * m.abs(), 2 * family.degree())));
    let a = family.mode(m)?.matrix(&basis)?;
    let b = family.mode(-m)?.matrix(&basis)?;
    let c = a.graded_commutator(&b)?;
    if c.tau_power != 0 && !c.is_zero() {
        return Err(Error::Invalid(format!("vacuum element carries tau^{}", c.tau_power)));
    }
    Ok(c.vacuum_element())
}

/// Checks `[L_m, L_n] - (n - m) L_{m+n}` is central on `inner` for small modes.
pub fn check_closure(family: &dyn VirasoroFamily, inner: Window) -> Result<()> {
    let d = family.degree();
    let outer = inner.widen(Window::new(2 * CLOSURE_RANGE, 2 * d));
    let basis = Arc::new(enumerate_basis(&family.space(), outer));
    let inner_basis = Arc::new(basis.restrict(inner));
    let mats: Vec<WindowMatrix> =
        (-CLOSURE_RANGE..=CLOSURE_RANGE).map(|m| family.mode(m)?.matrix(&basis)).collect::<Result<_>>()?;
    for m in -CLOSURE_RANGE..=CLOSURE_RANGE {
        for n in -CLOSURE_RANGE..=CLOSURE_RANGE {
            let lm = &mats[(m + CLOSURE_RANGE) as usize];
            let ln = &mats[(n + CLOSURE_RANGE) as usize];
            let comm = lm.graded_commutator(ln)?.restrict(inner)?;
            let target = family.mode(m + n)?.matrix(&inner_basis)?.scale(Gq::int((n - m) as i128));
            let defect = comm.sub(&target)?;
            let central = defect.vacuum_element();
            let expect = WindowMatrix::identity(inner_basis.clone()).scale(central).shift_tau(defect.tau_power);
            if (m + n != 0 && !defect.is_zero()) || defect != expect {
                return Err(Error::NonClosure(format!(
                    "[L_{m}, L_{n}] is not Virasoro: {}",
                    residual_summary(&defect.sub(&expect)?, 4)
                )));
            }
        }
    }
    Ok(())
}

/// Solves `<0|[L_m, L_-m]|0> = -2m h0 - (c/12)(m^3 - m)` at `m = 2, 3`.
pub fn central_charge_probe(family: &dyn VirasoroFamily) -> Result<ProbeResult> {
    check_closure(family, Window::new(1, family.degree()))?;
    let v2 = vacuum_commutator(family, 2)?;
    let v3 = vacuum_commutator(family, 3)?;
    let c = -(v3 - v2 * Gq::frac(3, 2)) * Gq::frac(4, 5);
    let h0 = -(v2 + c * Gq::frac(1, 2)) * Gq::frac(1, 4);
    Ok(ProbeResult { c, h0, vacuum_values: vec![(2, v2), (3, v3)] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn probe(n: usize, m: usize, aux: AuxConfig) -> ProbeResult {
        central_charge_probe(&TemporalFamily { dim: SuperDimension::new(n, m), aux }).unwrap()
    }

    #[test]
    fn temporal_trivial_aux() {
        assert_eq!(probe(1, 0, AuxConfig::Trivial).c, Gq::int(2));
        assert_eq!(probe(2, 0, AuxConfig::Trivial).c, Gq::int(4));
        assert_eq!(probe(1, 1, AuxConfig::Trivial).c, Gq::ZERO);
        assert_eq!(probe(0, 1, AuxConfig::Trivial).c, Gq::int(-2));
    }

    #[test]
    fn oscillator_aux_matches_declared() {
        for (b, f) in [(1, 0), (0, 1), (2, 1)] {
            let aux = AuxConfig::Oscillator { bosons: b, fermions: f };
            let got = probe(1, 0, aux);
            assert_eq!(got.c, aux.declared().c + Gq::int(2), "{aux}");
        }
    }
}
