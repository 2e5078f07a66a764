//! Generators of Hamiltonian and contact vector fields.

use super::aux::AuxConfig;
use super::generators::generator_operator;
use super::operator::{Field, FieldOperator};
use crate::error::{Error, Result};
use crate::graded_symbolic::{contact_field, hamiltonian_field, SuperFunction, SymplecticData};
use crate::scalar::Gq;

/// `L(H_f)`.
pub fn hamiltonian_generator(f: &SuperFunction, w: &SymplecticData, aux: &AuxConfig) -> Result<FieldOperator> {
    generator_operator(&hamiltonian_field(f, w), aux)
}

/// `L(K_f)`.
pub fn contact_generator(f: &SuperFunction, w: &SymplecticData, aux: &AuxConfig) -> Result<FieldOperator> {
    generator_operator(&contact_field(f, w), aux)
}

/// `int dt :F(q) p_s:` written out directly, `F` of definite parity.
pub fn normal_ordered_momentum(f: &SuperFunction, slot: usize, coeff: Gq) -> Result<FieldOperator> {
    let d = f.dim();
    let p = f.parity_or_even()?;
    let s = Gq::sign(p.is_odd() && d.is_fermionic(slot));
    let mut op = FieldOperator::from_function(f, coeff, 0, &[], &[Field::PLess(slot)])?;
    op.extend(FieldOperator::from_function(f, coeff * s, 0, &[Field::PGreater(slot)], &[])?);
    op.parity = Some(p + d.deg(slot));
    Ok(op)
}

/// Extension of two time-independent Hamiltonian generators when
/// `omega^{0 v} = 0`:
/// `(1+k1)/(2 pi i) (-)^{fk+gl+(f+g)j+i} int d_j d_k f' omega^{ki} d_i d_l g omega^{lj}`.
pub fn hamiltonian_ext(f: &SuperFunction, g: &SuperFunction, w: &SymplecticData, aux: &AuxConfig) -> Result<FieldOperator> {
    let d = w.dim;
    if d.indices().any(|nu| !w.omega_upper[0][nu].is_zero() || !w.omega_upper[nu][0].is_zero()) {
        return Err(Error::Invalid("omega must have no time components".into()));
    }
    for h in [f, g] {
        if !h.derive(0).is_zero() {
            return Err(Error::Invalid(format!("{h} depends on time")));
        }
    }
    let (pf, pg) = (f.parity_or_even()?.is_odd(), g.parity_or_even()?.is_odd());
    let b = |i: usize| d.is_fermionic(i);
    let mut density = SuperFunction::zero(d);
    for i in d.spatial() {
        for j in d.spatial() {
            for k in d.spatial() {
                let wki = w.omega_upper[k][i];
                if wki.is_zero() {
                    continue;
                }
                for l in d.spatial() {
                    let wlj = w.omega_upper[l][j];
                    if wlj.is_zero() {
                        continue;
                    }
                    let neg = (pf && b(k)) ^ (pg && b(l)) ^ ((pf ^ pg) && b(j)) ^ b(i);
                    let a = f.derive(k).derive(j).v_grad();
                    let c = g.derive(l).derive(i);
                    density += &(&a * &c).scale(wki * wlj * Gq::sign(neg));
                }
            }
        }
    }
    let k1 = aux.declared().k1;
    let mut op = FieldOperator::from_function(&density, -Gq::I * (Gq::ONE + k1), -1, &[], &[])?;
    op.parity = Some(f.parity_or_even()? + g.parity_or_even()?);
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis::{enumerate_basis, Window};
    use crate::graded_symbolic::{parse_function, poisson_bracket, SuperDimension};
    use crate::mode_algebra::contact::k11_basis;
    use std::sync::Arc;

    #[test]
    fn constant_function_gives_zero() {
        let w = SymplecticData::bosonic_darboux(1);
        let b = Arc::new(enumerate_basis(&AuxConfig::Trivial.space(w.dim), Window::new(2, 2)));
        let op = hamiltonian_generator(&SuperFunction::constant(w.dim, Gq::int(5)), &w, &AuxConfig::Trivial).unwrap();
        assert!(op.matrix(&b).unwrap().is_zero());
    }

    #[test]
    fn contact_generators_match_explicit_k11_form() {
        let basis = k11_basis();
        let d = basis.data.dim;
        let b = Arc::new(enumerate_basis(&AuxConfig::Trivial.space(d), Window::new(3, 1)));
        let th = SuperFunction::coord(d, 1);
        let thd = SuperFunction::velocity(d, 1);
        for m in -2i64..=2 {
            let e = SuperFunction::fourier(d, m);
            let l = contact_generator(&basis.element(0, m), &basis.data, &AuxConfig::Trivial).unwrap();
            let mut want = normal_ordered_momentum(&(&e * &thd), 1, Gq::I).unwrap();
            want.extend(normal_ordered_momentum(&(&e * &th), 1, Gq::frac(m as i128, 2)).unwrap());
            assert_eq!(l.matrix(&b).unwrap(), want.matrix(&b).unwrap(), "L_{m}");
            let g = contact_generator(&basis.element(1, m), &basis.data, &AuxConfig::Trivial).unwrap();
            let mut want = normal_ordered_momentum(&(&e * &(&thd * &th)), 1, Gq::ONE).unwrap();
            want.extend(normal_ordered_momentum(&e, 1, -Gq::I).unwrap());
            assert_eq!(g.matrix(&b).unwrap(), want.matrix(&b).unwrap(), "G_{m}");
        }
    }

    fn check_hamiltonian(w: &SymplecticData, f: &str, g: &str) {
        let d = w.dim;
        let aux = AuxConfig::Trivial;
        let (f, g) = (parse_function(f, d).unwrap(), parse_function(g, d).unwrap());
        let (hf, hg) = (hamiltonian_field(&f, w), hamiltonian_field(&g, w));
        let margin = crate::fock::generators::required_margin(&hf, &hg);
        let inner = Window::new(2, 1);
        let outer = Arc::new(enumerate_basis(&aux.space(d), inner.widen(margin)));
        let inner_b = Arc::new(outer.restrict(inner));
        let lf = hamiltonian_generator(&f, w, &aux).unwrap().matrix(&outer).unwrap();
        let lg = hamiltonian_generator(&g, w, &aux).unwrap().matrix(&outer).unwrap();
        let comm = lf.graded_commutator(&lg).unwrap().restrict(inner).unwrap();
        let pb = hamiltonian_generator(&poisson_bracket(&f, &g, w), w, &aux).unwrap().matrix(&inner_b).unwrap();
        let ext = hamiltonian_ext(&f, &g, w, &aux).unwrap().matrix(&inner_b).unwrap();
        let defect = comm.sub(&pb).unwrap();
        assert!(!defect.is_zero(), "{f}, {g}: trivial");
        assert_eq!(defect, ext, "{f}, {g}");
    }

    #[test]
    fn hamiltonian_extension_display() {
        let w = SymplecticData::bosonic_darboux(1);
        check_hamiltonian(&w, "x1^3", "x2^3");
        check_hamiltonian(&w, "x1^2*x2", "x1*x2^2");
        let w = SymplecticData::from_upper(
            SuperDimension::new(2, 1),
            &[(1, 2, Gq::ONE), (2, 1, -Gq::ONE), (3, 3, Gq::ONE)],
        )
        .unwrap();
        check_hamiltonian(&w, "x1^2*th1", "x2^2*th1");
        check_hamiltonian(&w, "x1^3", "x1*x2^2*th1");
    }
}
