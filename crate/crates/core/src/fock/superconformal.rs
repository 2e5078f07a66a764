//! Fock realization of the extended `K(1|1)` algebra on `(0|1)` trajectories.

use super::aux::AuxConfig;
use super::basis::Window;
use super::generators::generator_operator;
use super::operator::{Field, FieldOperator, Word};
use super::probe::VirasoroFamily;
use super::realization::{verify_realization, ModeFamily, RealizationReport};
use super::state::ModeSpace;
use crate::error::{Error, Result};
use crate::graded_symbolic::{contact_field, Parity, SuperDimension};
use crate::mode_algebra::contact::{k11_basis, ContactBasis};
use crate::mode_algebra::{xsc, xsc_parameters, XscParameters};
use crate::scalar::Gq;

/// `L_m = L(K(l_m))`, `G_m = L(K(g_m))` and the aux operators
/// `theta_m, U_m, V_m, W_m` built from `theta(t)` and its derivatives.
#[derive(Clone, Debug)]
pub struct SuperconformalFamily {
    pub aux: AuxConfig,
    basis: ContactBasis,
}

const THETA: usize = 1;

impl SuperconformalFamily {
    pub fn new(aux: AuxConfig) -> SuperconformalFamily {
        SuperconformalFamily { aux, basis: k11_basis() }
    }

    pub fn dim(&self) -> SuperDimension {
        self.basis.data.dim
    }

    /// Parameters the family is expected to realize.
    pub fn expected_parameters(&self) -> XscParameters {
        let k = self.aux.declared();
        xsc_parameters(k.c, k.k1, k.k2)
    }

    fn contact(&self, element: usize, m: i64) -> Result<FieldOperator> {
        let f = self.basis.element(element, m);
        generator_operator(&contact_field(&f, &self.basis.data), &self.aux)
    }

    fn theta_word(coeff: Gq, m: i64, factors: Vec<Field>, parity: Parity) -> FieldOperator {
        let w = Word { coeff, tau: -1, fourier: m, factors };
        FieldOperator { words: vec![w], parity: Some(parity) }
    }
}

impl ModeFamily for SuperconformalFamily {
    fn space(&self) -> ModeSpace {
        self.aux.space(self.dim())
    }

    fn operator(&self, name: &str, m: i64) -> Result<FieldOperator> {
        let minus_i = -Gq::I;
        Ok(match name {
            "L" => self.contact(0, m)?,
            "G" => self.contact(1, m)?,
            "theta" => Self::theta_word(minus_i, m, vec![Field::Q(THETA)], Parity::Odd),
            "U" => Self::theta_word(minus_i, m, vec![Field::Qd(THETA), Field::Q(THETA)], Parity::Even),
            "V" => Self::theta_word(minus_i, m, vec![Field::Qdd(THETA), Field::Qd(THETA)], Parity::Even),
            "W" => Self::theta_word(Gq::ONE, m, vec![Field::Qdd(THETA), Field::Qd(THETA), Field::Q(THETA)], Parity::Odd),
            _ => return Err(Error::MissingGenerator(name.to_string())),
        })
    }

    fn degree(&self) -> u32 {
        2
    }
}

impl VirasoroFamily for SuperconformalFamily {
    fn space(&self) -> ModeSpace {
        ModeFamily::space(self)
    }

    fn mode(&self, m: i64) -> Result<FieldOperator> {
        self.contact(0, m)
    }

    fn degree(&self) -> u32 {
        ModeFamily::degree(self)
    }
}

/// All extended brackets for `|m|, |n| <= range` on `inner`.
pub fn verify_superconformal(aux: AuxConfig, params: &XscParameters, range: i64, inner: Window) -> Result<RealizationReport> {
    let family = SuperconformalFamily::new(aux);
    verify_realization(&xsc(params), &family, range, inner)
}

/// Rejects trajectory dimensions other than `(0|1)`.
pub fn require_dimension(dim: SuperDimension) -> Result<()> {
    if dim != SuperDimension::new(0, 1) {
        return Err(Error::WrongDimension(format!("superconformal family needs (1|1), got {dim}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_aux_realizes_extended_algebra() {
        let fam = SuperconformalFamily::new(AuxConfig::Trivial);
        let r = verify_superconformal(AuxConfig::Trivial, &fam.expected_parameters(), 2, Window::new(2, 1)).unwrap();
        assert!(r.holds(), "{} of {} brackets fail: {:?}", r.failures.len(), r.checked, r.failures.first());
    }

    #[test]
    fn perturbed_parameters_fail() {
        let base = SuperconformalFamily::new(AuxConfig::Trivial).expected_parameters();
        assert_eq!(base.a, Gq::frac(-11, 12));
        for k in 0..8 {
            let mut p = base;
            let slot = match k {
                0 => &mut p.a,
                1 => &mut p.a_prime,
                2 => &mut p.alpha,
                3 => &mut p.beta,
                4 => &mut p.gamma,
                5 => &mut p.gamma_prime,
                6 => &mut p.e,
                _ => &mut p.b,
            };
            *slot += Gq::ONE;
            let r = verify_superconformal(AuxConfig::Trivial, &p, 2, Window::new(2, 1)).unwrap();
            assert!(!r.holds(), "parameter {k} is not detected ({} checked)", r.checked);
        }
    }

    #[test]
    fn oscillator_aux_shifts_c() {
        let aux = AuxConfig::Oscillator { bosons: 1, fermions: 0 };
        let fam = SuperconformalFamily::new(aux);
        let r = verify_superconformal(aux, &fam.expected_parameters(), 2, Window::new(1, 1)).unwrap();
        assert!(r.holds(), "{:?}", r.failures.first());
    }
}
